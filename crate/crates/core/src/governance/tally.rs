//! Aggregation methods: plurality, approval, instant-runoff and quadratic
//! tallies with optional token weighting.
//!
//! Ties everywhere resolve to the lexicographically smallest candidate id;
//! in IRV elimination the lowest-weight candidate goes first, ties again by
//! smallest id. Deterministic over realism.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::ballots::{BallotKind, BallotSet, Ballots, CandidateId, VoterId};
use super::ledger::TokenLedger;

/// Outcome of a tally. `rounds` is present for IRV, `quadratic_costs` for
/// quadratic voting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TallyResult<S = f64> {
    pub scores: BTreeMap<CandidateId, S>,
    pub winner: CandidateId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounds: Option<Vec<TallyRound<S>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadratic_costs: Option<BTreeMap<VoterId, u64>>,
}

/// One IRV round: the weight held by each surviving candidate, and who was
/// eliminated (none on the final round).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TallyRound<S = f64> {
    pub counts: BTreeMap<CandidateId, S>,
    pub eliminated: Option<CandidateId>,
}

impl<S: Real> TallyResult<S> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tally result serializes")
    }
}

fn expect_kind(ballots: &BallotSet, expected: BallotKind) -> Result<()> {
    if ballots.kind() != expected {
        return Err(Error::WrongBallotKind {
            expected: expected.as_str(),
            got: ballots.kind().as_str(),
        });
    }
    Ok(())
}

/// Resolves a voter's weight: their ledger balance in weighted mode
/// (unknown voters are an error), 1 otherwise.
fn voter_weight<S: Real>(voter: &str, weights: Option<&TokenLedger<S>>) -> Result<S> {
    match weights {
        None => Ok(S::one()),
        Some(ledger) => ledger
            .balance(voter)
            .ok_or_else(|| Error::UnknownVoter(voter.to_string())),
    }
}

fn check_weights<S: Real>(weights: Option<&TokenLedger<S>>) -> Result<()> {
    if let Some(ledger) = weights {
        ledger.require_positive()?;
    }
    Ok(())
}

/// Argmax over a BTreeMap; iteration order plus strict `>` keeps the
/// lexicographically smallest id on ties.
fn winner_of<S: Real>(scores: &BTreeMap<CandidateId, S>) -> CandidateId {
    let mut best: Option<(&CandidateId, S)> = None;
    for (c, &s) in scores {
        if best.map_or(true, |(_, bs)| s > bs) {
            best = Some((c, s));
        }
    }
    best.expect("non-empty slate").0.clone()
}

fn zero_scores<S: Real>(ballots: &BallotSet) -> BTreeMap<CandidateId, S> {
    ballots
        .candidates()
        .iter()
        .map(|c| (c.clone(), S::zero()))
        .collect()
}

/// Plurality: each ballot adds its weight to its chosen candidate.
pub fn tally_single_choice<S: Real>(
    ballots: &BallotSet,
    weights: Option<&TokenLedger<S>>,
) -> Result<TallyResult<S>> {
    expect_kind(ballots, BallotKind::SingleChoice)?;
    check_weights(weights)?;
    let entries = match ballots.ballots() {
        Ballots::SingleChoice(entries) => entries,
        _ => unreachable!("kind checked"),
    };
    let mut scores = zero_scores(ballots);
    for (voter, choice) in entries {
        let w = voter_weight(voter, weights)?;
        *scores.get_mut(choice).expect("validated candidate") =
            scores[choice] + w;
    }
    Ok(TallyResult {
        winner: winner_of(&scores),
        scores,
        rounds: None,
        quadratic_costs: None,
    })
}

/// Approval: each ballot adds its weight to every approved candidate.
pub fn tally_approval<S: Real>(
    ballots: &BallotSet,
    weights: Option<&TokenLedger<S>>,
) -> Result<TallyResult<S>> {
    expect_kind(ballots, BallotKind::Approval)?;
    check_weights(weights)?;
    let entries = match ballots.ballots() {
        Ballots::Approval(entries) => entries,
        _ => unreachable!("kind checked"),
    };
    let mut scores = zero_scores(ballots);
    for (voter, approved) in entries {
        let w = voter_weight(voter, weights)?;
        for c in approved {
            *scores.get_mut(c).expect("validated candidate") = scores[c] + w;
        }
    }
    Ok(TallyResult {
        winner: winner_of(&scores),
        scores,
        rounds: None,
        quadratic_costs: None,
    })
}

/// Instant-runoff (Hare): each round every non-exhausted ballot counts its
/// weight toward its highest-ranked surviving candidate. A candidate holding
/// strictly more than half the active weight wins; otherwise the candidate
/// with the least weight is eliminated and its ballots redistribute. When
/// all survivors are tied no elimination can make progress, so the round is
/// final and the winner tie-break applies.
pub fn tally_ranked_irv<S: Real>(
    ballots: &BallotSet,
    weights: Option<&TokenLedger<S>>,
) -> Result<TallyResult<S>> {
    expect_kind(ballots, BallotKind::Ranked)?;
    check_weights(weights)?;
    let entries = match ballots.ballots() {
        Ballots::Ranked(entries) => entries,
        _ => unreachable!("kind checked"),
    };
    if entries.iter().all(|(_, ranking)| ranking.is_empty()) {
        return Err(Error::Invalid("all ranked ballots are empty".to_string()));
    }

    let mut weighted: Vec<(S, &[CandidateId])> = Vec::with_capacity(entries.len());
    for (voter, ranking) in entries {
        weighted.push((voter_weight(voter, weights)?, ranking.as_slice()));
    }

    // ballot index -> position of its current top surviving candidate
    let mut cursor = vec![0usize; weighted.len()];
    let mut surviving: BTreeMap<CandidateId, ()> =
        ballots.candidates().iter().map(|c| (c.clone(), ())).collect();
    let mut rounds: Vec<TallyRound<S>> = Vec::new();

    loop {
        let mut counts: BTreeMap<CandidateId, S> =
            surviving.keys().map(|c| (c.clone(), S::zero())).collect();
        let mut active = S::zero();
        for (idx, &(w, ranking)) in weighted.iter().enumerate() {
            while cursor[idx] < ranking.len() && !counts.contains_key(&ranking[cursor[idx]]) {
                cursor[idx] += 1;
            }
            if let Some(c) = ranking.get(cursor[idx]) {
                *counts.get_mut(c).expect("surviving") = counts[c] + w;
                active = active + w;
            }
        }

        let leader = winner_of(&counts);
        let top = counts[&leader];
        if top + top > active {
            rounds.push(TallyRound {
                counts: counts.clone(),
                eliminated: None,
            });
            return Ok(finish_irv(ballots, counts, leader, rounds));
        }

        let min = counts.values().copied().fold(S::infinity(), S::min);
        let max = counts.values().copied().fold(S::neg_infinity(), S::max);
        if min == max {
            // every survivor holds the same weight; eliminating would only
            // cycle, so settle by the winner tie-break
            rounds.push(TallyRound {
                counts: counts.clone(),
                eliminated: None,
            });
            return Ok(finish_irv(ballots, counts, leader, rounds));
        }

        let victim = counts
            .iter()
            .find(|(_, &w)| w == min)
            .map(|(c, _)| c.clone())
            .expect("min exists");
        rounds.push(TallyRound {
            counts,
            eliminated: Some(victim.clone()),
        });
        surviving.remove(&victim);
    }
}

fn finish_irv<S: Real>(
    ballots: &BallotSet,
    final_counts: BTreeMap<CandidateId, S>,
    winner: CandidateId,
    rounds: Vec<TallyRound<S>>,
) -> TallyResult<S> {
    // scores: final-round weights; eliminated candidates report zero
    let mut scores = zero_scores(ballots);
    for (c, w) in final_counts {
        scores.insert(c, w);
    }
    TallyResult {
        scores,
        winner,
        rounds: Some(rounds),
        quadratic_costs: None,
    }
}

/// Quadratic voting: casting `v` signed votes costs `v^2` credits against a
/// per-ballot budget; scores are plain signed sums.
pub fn tally_quadratic<S: Real>(ballots: &BallotSet, budget: u64) -> Result<TallyResult<S>> {
    expect_kind(ballots, BallotKind::Quadratic)?;
    if budget == 0 {
        return Err(Error::invalid_parameter("budget", "must be >= 1"));
    }
    let entries = match ballots.ballots() {
        Ballots::Quadratic(entries) => entries,
        _ => unreachable!("kind checked"),
    };

    let mut totals: BTreeMap<&CandidateId, i64> = BTreeMap::new();
    let mut costs: BTreeMap<VoterId, u64> = BTreeMap::new();
    for (voter, votes) in entries {
        let cost: u128 = votes
            .values()
            .map(|&v| (v as i128 * v as i128) as u128)
            .sum();
        if cost > budget as u128 {
            return Err(Error::BudgetExceeded {
                voter: voter.clone(),
                cost: cost.min(u64::MAX as u128) as u64,
                budget,
            });
        }
        costs.insert(voter.clone(), cost as u64);
        for (c, &v) in votes {
            *totals.entry(c).or_insert(0) += v;
        }
    }

    let mut scores = zero_scores(ballots);
    for (c, v) in totals {
        scores.insert(c.clone(), S::from_i64(v).expect("desk-scale votes"));
    }
    Ok(TallyResult {
        winner: winner_of(&scores),
        scores,
        rounds: None,
        quadratic_costs: Some(costs),
    })
}
