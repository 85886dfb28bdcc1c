//! Voting input/aggregation methods, token-weighted power metrics, and
//! proposal-lifecycle turnout analysis.

pub mod ballots;
pub mod ledger;
pub mod proposals;
pub mod tally;

pub use ballots::{BallotKind, BallotSet, Ballots, CandidateId, VoterId};
pub use ledger::{centralization_metrics, CentralizationMetrics, TokenLedger};
pub use proposals::{
    simulate_proposals, turnout_metrics, Participation, Proposal, ProposalHistory, TurnoutMetrics,
};
pub use tally::{
    tally_approval, tally_quadratic, tally_ranked_irv, tally_single_choice, TallyResult, TallyRound,
};

/// Default per-ballot quadratic voting budget, in credits.
pub const DEFAULT_QUADRATIC_BUDGET: u64 = 100;
