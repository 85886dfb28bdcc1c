//! Proposal-lifecycle simulation and turnout statistics.
//!
//! Average per-proposal turnout understates engagement when members vote on
//! some proposals but not all; cumulative turnout (the fraction of members
//! who voted at least once) is reported alongside it.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Per-member proposal participation probability.
#[derive(Debug, Clone, PartialEq)]
pub enum Participation {
    Uniform(f64),
    PerMember(Vec<f64>),
}

impl Participation {
    fn validate(&self, n_members: usize) -> Result<()> {
        match self {
            Participation::Uniform(rate) => {
                if !(0.0..=1.0).contains(rate) {
                    return Err(Error::invalid_parameter(
                        "participation",
                        format!("{rate} outside [0, 1]"),
                    ));
                }
            }
            Participation::PerMember(rates) => {
                if rates.len() != n_members {
                    return Err(Error::invalid_parameter(
                        "participation",
                        format!("{} rates for {} members", rates.len(), n_members),
                    ));
                }
                for &rate in rates {
                    if !(0.0..=1.0).contains(&rate) {
                        return Err(Error::invalid_parameter(
                            "participation",
                            format!("{rate} outside [0, 1]"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn rate(&self, member: usize) -> f64 {
        match self {
            Participation::Uniform(rate) => *rate,
            Participation::PerMember(rates) => rates[member],
        }
    }
}

/// One proposal: who voted, and who voted yes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proposal {
    pub id: usize,
    pub voters: BTreeSet<usize>,
    pub yes: BTreeSet<usize>,
}

impl Proposal {
    /// Strict majority of those voting; abstainers excluded.
    pub fn approved(&self) -> bool {
        2 * self.yes.len() > self.voters.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProposalHistory {
    pub n_members: usize,
    pub proposals: Vec<Proposal>,
}

impl ProposalHistory {
    pub fn new(n_members: usize, proposals: Vec<Proposal>) -> Result<Self> {
        if n_members == 0 {
            return Err(Error::invalid_parameter("n_members", "must be >= 1"));
        }
        for p in &proposals {
            if let Some(&m) = p.voters.iter().max() {
                if m >= n_members {
                    return Err(Error::Invalid(format!(
                        "proposal {}: voter {m} outside member set 0..{n_members}",
                        p.id
                    )));
                }
            }
            if !p.yes.is_subset(&p.voters) {
                return Err(Error::Invalid(format!(
                    "proposal {}: yes set is not a subset of the voter set",
                    p.id
                )));
            }
        }
        Ok(ProposalHistory {
            n_members,
            proposals,
        })
    }

    pub fn turnout(&self, idx: usize) -> f64 {
        self.proposals[idx].voters.len() as f64 / self.n_members as f64
    }
}

/// Draws `k` proposals: each member votes independently with their
/// participation rate; each vote is a yes with probability `approve_rate`.
/// The Bernoulli draws run in (proposal, member) order from a ChaCha stream
/// seeded with `seed`, so the history is a pure function of the inputs.
pub fn simulate_proposals(
    n_members: usize,
    k: usize,
    participation: &Participation,
    approve_rate: f64,
    seed: u64,
) -> Result<ProposalHistory> {
    if n_members == 0 {
        return Err(Error::invalid_parameter("n_members", "must be >= 1"));
    }
    if k == 0 {
        return Err(Error::invalid_parameter("k", "proposal count must be >= 1"));
    }
    participation.validate(n_members)?;
    if !(0.0..=1.0).contains(&approve_rate) {
        return Err(Error::invalid_parameter(
            "approve_rate",
            format!("{approve_rate} outside [0, 1]"),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut proposals = Vec::with_capacity(k);
    for id in 0..k {
        let mut voters = BTreeSet::new();
        let mut yes = BTreeSet::new();
        for member in 0..n_members {
            if rng.gen_bool(participation.rate(member)) {
                voters.insert(member);
                if rng.gen_bool(approve_rate) {
                    yes.insert(member);
                }
            }
        }
        proposals.push(Proposal { id, voters, yes });
    }
    ProposalHistory::new(n_members, proposals)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TurnoutMetrics {
    /// Mean over proposals of |voters| / n.
    pub average_turnout: f64,
    /// |union of all voter sets| / n.
    pub cumulative_turnout: f64,
    pub per_proposal: Vec<f64>,
    /// Fraction of proposals approved by a strict majority of their voters.
    pub approval_rate: f64,
}

pub fn turnout_metrics(history: &ProposalHistory) -> Result<TurnoutMetrics> {
    if history.n_members == 0 {
        return Err(Error::invalid_parameter("n_members", "must be >= 1"));
    }
    if history.proposals.is_empty() {
        return Err(Error::Invalid("empty proposal history".to_string()));
    }
    let n = history.n_members as f64;
    let per_proposal: Vec<f64> = (0..history.proposals.len())
        .map(|i| history.turnout(i))
        .collect();
    let average_turnout = per_proposal.iter().sum::<f64>() / per_proposal.len() as f64;
    let mut union: BTreeSet<usize> = BTreeSet::new();
    let mut approved = 0usize;
    for p in &history.proposals {
        union.extend(p.voters.iter().copied());
        if p.approved() {
            approved += 1;
        }
    }
    Ok(TurnoutMetrics {
        average_turnout,
        cumulative_turnout: union.len() as f64 / n,
        per_proposal,
        approval_rate: approved as f64 / history.proposals.len() as f64,
    })
}
