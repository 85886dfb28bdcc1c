//! Ballot containers and the line-oriented ballots CSV format.
//!
//! CSV layout: `voter_id,payload`, one ballot per line, `#` comments and
//! blank lines ignored, an optional `voter_id,...` header tolerated. The
//! payload encoding depends on the kind: a single candidate, `;`-joined
//! approvals, `>`-joined rankings, or `;`-joined `candidate:votes` pairs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub type CandidateId = String;
pub type VoterId = String;

/// Input method: the way votes are cast.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallotKind {
    SingleChoice,
    Approval,
    Ranked,
    Quadratic,
}

impl BallotKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BallotKind::SingleChoice => "single_choice",
            BallotKind::Approval => "approval",
            BallotKind::Ranked => "ranked",
            BallotKind::Quadratic => "quadratic",
        }
    }
}

/// Per-voter entries, one variant per input method.
#[derive(Debug, Clone, PartialEq)]
pub enum Ballots {
    SingleChoice(Vec<(VoterId, CandidateId)>),
    Approval(Vec<(VoterId, BTreeSet<CandidateId>)>),
    /// Strict ranking, top-truncation allowed (possibly empty).
    Ranked(Vec<(VoterId, Vec<CandidateId>)>),
    /// Signed votes per candidate; the quadratic budget is checked at tally
    /// time, when the budget is known.
    Quadratic(Vec<(VoterId, BTreeMap<CandidateId, i64>)>),
}

impl Ballots {
    pub fn kind(&self) -> BallotKind {
        match self {
            Ballots::SingleChoice(_) => BallotKind::SingleChoice,
            Ballots::Approval(_) => BallotKind::Approval,
            Ballots::Ranked(_) => BallotKind::Ranked,
            Ballots::Quadratic(_) => BallotKind::Quadratic,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Ballots::SingleChoice(b) => b.len(),
            Ballots::Approval(b) => b.len(),
            Ballots::Ranked(b) => b.len(),
            Ballots::Quadratic(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn referenced_candidates(&self) -> BTreeSet<CandidateId> {
        let mut set = BTreeSet::new();
        match self {
            Ballots::SingleChoice(b) => {
                for (_, c) in b {
                    set.insert(c.clone());
                }
            }
            Ballots::Approval(b) => {
                for (_, cs) in b {
                    set.extend(cs.iter().cloned());
                }
            }
            Ballots::Ranked(b) => {
                for (_, ranking) in b {
                    set.extend(ranking.iter().cloned());
                }
            }
            Ballots::Quadratic(b) => {
                for (_, votes) in b {
                    set.extend(votes.keys().cloned());
                }
            }
        }
        set
    }
}

/// An election input: the candidate slate plus all cast ballots.
#[derive(Debug, Clone, PartialEq)]
pub struct BallotSet {
    candidates: Vec<CandidateId>,
    ballots: Ballots,
}

impl BallotSet {
    /// Validates that every referenced candidate is on the slate and that
    /// rankings contain no duplicates.
    pub fn new(candidates: Vec<CandidateId>, ballots: Ballots) -> Result<Self> {
        if candidates.is_empty() {
            return Err(Error::invalid_parameter("candidates", "empty slate"));
        }
        let slate: BTreeSet<&CandidateId> = candidates.iter().collect();
        if slate.len() != candidates.len() {
            return Err(Error::invalid_parameter("candidates", "duplicate id"));
        }
        for c in ballots.referenced_candidates() {
            if !slate.contains(&c) {
                return Err(Error::Invalid(format!("ballot references unknown candidate '{c}'")));
            }
        }
        if let Ballots::Ranked(entries) = &ballots {
            for (voter, ranking) in entries {
                let distinct: BTreeSet<&CandidateId> = ranking.iter().collect();
                if distinct.len() != ranking.len() {
                    return Err(Error::Invalid(format!(
                        "ranked ballot of voter '{voter}' repeats a candidate"
                    )));
                }
            }
        }
        Ok(BallotSet { candidates, ballots })
    }

    /// Builds a set whose slate is the (sorted) set of referenced candidates.
    pub fn from_ballots(ballots: Ballots) -> Result<Self> {
        let candidates: Vec<CandidateId> = ballots.referenced_candidates().into_iter().collect();
        BallotSet::new(candidates, ballots)
    }

    pub fn kind(&self) -> BallotKind {
        self.ballots.kind()
    }

    pub fn candidates(&self) -> &[CandidateId] {
        &self.candidates
    }

    pub fn ballots(&self) -> &Ballots {
        &self.ballots
    }

    /// Parses the ballots CSV for the given kind; the slate is inferred from
    /// the referenced candidates.
    pub fn parse_csv(kind: BallotKind, text: &str) -> Result<Self> {
        let mut single = Vec::new();
        let mut approval = Vec::new();
        let mut ranked = Vec::new();
        let mut quadratic = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            if lineno == 0 && content.starts_with("voter_id,") {
                continue; // header
            }
            let (voter, payload) = content
                .split_once(',')
                .ok_or_else(|| Error::malformed(line, "expected 'voter_id,payload'"))?;
            let voter = voter.trim();
            if voter.is_empty() {
                return Err(Error::malformed(line, "empty voter id"));
            }
            let payload = payload.trim();
            match kind {
                BallotKind::SingleChoice => {
                    if payload.is_empty() {
                        return Err(Error::malformed(line, "empty candidate"));
                    }
                    single.push((voter.to_string(), payload.to_string()));
                }
                BallotKind::Approval => {
                    let set: BTreeSet<CandidateId> = split_nonempty(payload, ';');
                    approval.push((voter.to_string(), set));
                }
                BallotKind::Ranked => {
                    let ranking: Vec<CandidateId> = payload
                        .split('>')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect();
                    ranked.push((voter.to_string(), ranking));
                }
                BallotKind::Quadratic => {
                    let mut votes = BTreeMap::new();
                    for pair in payload.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                        let (cand, count) = pair.split_once(':').ok_or_else(|| {
                            Error::malformed(line, format!("expected 'candidate:votes' in '{pair}'"))
                        })?;
                        let cand = cand.trim().to_string();
                        let count: i64 = count.trim().parse().map_err(|_| {
                            Error::malformed(line, format!("non-integer votes '{}'", count.trim()))
                        })?;
                        if votes.insert(cand.clone(), count).is_some() {
                            return Err(Error::malformed(
                                line,
                                format!("candidate '{cand}' repeated in quadratic ballot"),
                            ));
                        }
                    }
                    quadratic.push((voter.to_string(), votes));
                }
            }
        }

        let ballots = match kind {
            BallotKind::SingleChoice => Ballots::SingleChoice(single),
            BallotKind::Approval => Ballots::Approval(approval),
            BallotKind::Ranked => Ballots::Ranked(ranked),
            BallotKind::Quadratic => Ballots::Quadratic(quadratic),
        };
        BallotSet::from_ballots(ballots)
    }
}

fn split_nonempty(payload: &str, sep: char) -> BTreeSet<CandidateId> {
    payload
        .split(sep)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_choice_csv() {
        let set = BallotSet::parse_csv(BallotKind::SingleChoice, "v1,x\nv2,x\nv3,y\n").unwrap();
        assert_eq!(set.kind(), BallotKind::SingleChoice);
        assert_eq!(set.candidates(), ["x".to_string(), "y".to_string()]);
        assert_eq!(set.ballots().len(), 3);
    }

    #[test]
    fn parse_tolerates_header_and_comments() {
        let set = BallotSet::parse_csv(
            BallotKind::SingleChoice,
            "voter_id,choice\n# a comment\nv1,x\n\nv2,y\n",
        )
        .unwrap();
        assert_eq!(set.ballots().len(), 2);
    }

    #[test]
    fn parse_approval_csv() {
        let set = BallotSet::parse_csv(BallotKind::Approval, "v1,x;y\nv2,y\nv3,\n").unwrap();
        match set.ballots() {
            Ballots::Approval(entries) => {
                assert_eq!(entries[0].1.len(), 2);
                assert!(entries[2].1.is_empty());
            }
            other => panic!("wrong variant {other:?}"),
        }
    }

    #[test]
    fn parse_ranked_csv() {
        let set = BallotSet::parse_csv(BallotKind::Ranked, "v1,x>y>z\nv2,y>x\n").unwrap();
        match set.ballots() {
            Ballots::Ranked(entries) => {
                assert_eq!(entries[0].1, ["x", "y", "z"]);
                assert_eq!(entries[1].1, ["y", "x"]);
            }
            other => panic!("wrong variant {other:?}"),
        }
    }

    #[test]
    fn parse_quadratic_csv() {
        let set =
            BallotSet::parse_csv(BallotKind::Quadratic, "v1,x:+5\nv2,x:-3;y:4\n").unwrap();
        match set.ballots() {
            Ballots::Quadratic(entries) => {
                assert_eq!(entries[0].1["x"], 5);
                assert_eq!(entries[1].1["x"], -3);
                assert_eq!(entries[1].1["y"], 4);
            }
            other => panic!("wrong variant {other:?}"),
        }
    }

    #[test]
    fn parse_quadratic_rejects_non_integer_votes() {
        let err = BallotSet::parse_csv(BallotKind::Quadratic, "v1,x:2.5").unwrap_err();
        assert!(err.to_string().contains("non-integer votes"), "{err}");
    }

    #[test]
    fn ranked_duplicates_rejected() {
        let ballots = Ballots::Ranked(vec![("v1".into(), vec!["x".into(), "x".into()])]);
        assert!(BallotSet::from_ballots(ballots).is_err());
    }

    #[test]
    fn unknown_candidate_rejected() {
        let ballots = Ballots::SingleChoice(vec![("v1".into(), "z".into())]);
        assert!(BallotSet::new(vec!["x".into(), "y".into()], ballots).is_err());
    }

    #[test]
    fn malformed_line_reports_number() {
        let err = BallotSet::parse_csv(BallotKind::SingleChoice, "v1,x\njunk").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
