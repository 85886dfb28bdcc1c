//! Token balances, voting weight lookup, and centralization metrics.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::ballots::VoterId;

/// Map from voter to non-negative token balance.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenLedger<S = f64> {
    balances: BTreeMap<VoterId, S>,
}

impl<S: Real> TokenLedger<S> {
    pub fn new(balances: BTreeMap<VoterId, S>) -> Result<Self> {
        for (voter, &b) in &balances {
            if !(b >= S::zero()) || !b.is_finite() {
                return Err(Error::Invalid(format!(
                    "negative balance {b} for voter '{voter}'"
                )));
            }
        }
        Ok(TokenLedger { balances })
    }

    pub fn balance(&self, voter: &str) -> Option<S> {
        self.balances.get(voter).copied()
    }

    pub fn balances(&self) -> &BTreeMap<VoterId, S> {
        &self.balances
    }

    pub fn total(&self) -> S {
        self.balances.values().fold(S::zero(), |acc, &b| acc + b)
    }

    /// Weighted tallies require at least one positive balance.
    pub fn require_positive(&self) -> Result<()> {
        if self.balances.values().any(|&b| b > S::zero()) {
            Ok(())
        } else {
            Err(Error::Invalid(
                "token ledger has no positive balance".to_string(),
            ))
        }
    }

    /// Parses the ledger CSV format `voter_id,balance`; `#` comments, blank
    /// lines and an optional `voter_id,...` header are ignored.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut balances = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            if lineno == 0 && content.starts_with("voter_id,") {
                continue;
            }
            let (voter, amount) = content
                .split_once(',')
                .ok_or_else(|| Error::malformed(line, "expected 'voter_id,balance'"))?;
            let voter = voter.trim().to_string();
            let amount: f64 = amount
                .trim()
                .parse()
                .map_err(|_| Error::malformed(line, format!("malformed balance '{}'", amount.trim())))?;
            if !(amount >= 0.0) || !amount.is_finite() {
                return Err(Error::malformed(line, format!("negative balance {amount}")));
            }
            let amount = S::from_f64(amount)
                .ok_or_else(|| Error::malformed(line, format!("balance {amount} out of range")))?;
            if balances.insert(voter.clone(), amount).is_some() {
                return Err(Error::malformed(line, format!("duplicate voter '{voter}'")));
            }
        }
        TokenLedger::new(balances)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CentralizationMetrics<S = f64> {
    pub gini: S,
    pub nakamoto: usize,
}

/// Gini coefficient (population formula `G = sum_ij |b_i - b_j| / (2 n total)`,
/// evaluated literally so implementations agree bit-for-bit) and Nakamoto
/// coefficient (minimal number of largest holders whose combined balance
/// strictly exceeds half the total).
pub fn centralization_metrics<S: Real>(ledger: &TokenLedger<S>) -> Result<CentralizationMetrics<S>> {
    let balances: Vec<S> = ledger.balances().values().copied().collect();
    if balances.is_empty() {
        return Err(Error::Invalid("ledger is empty".to_string()));
    }
    let total = ledger.total();
    if !(total > S::zero()) {
        return Err(Error::Invalid(
            "all balances are zero; centralization metrics undefined".to_string(),
        ));
    }

    let mut abs_diff_sum = S::zero();
    for &bi in &balances {
        for &bj in &balances {
            abs_diff_sum = abs_diff_sum + (bi - bj).abs();
        }
    }
    let two = S::from_count(2);
    let n = S::from_count(balances.len());
    let gini = abs_diff_sum / (two * n * total);

    let mut sorted = balances;
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite balances"));
    let mut cumulative = S::zero();
    let mut nakamoto = sorted.len();
    for (count, &b) in sorted.iter().enumerate() {
        cumulative = cumulative + b;
        if cumulative + cumulative > total {
            nakamoto = count + 1;
            break;
        }
    }

    Ok(CentralizationMetrics { gini, nakamoto })
}
