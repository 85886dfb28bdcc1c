//! daosim: a deterministic simulation and analysis toolkit for DAO
//! governance dynamics.
//!
//! The crate has five parts:
//!
//! - [`graph`]: weighted undirected interaction networks, generators
//!   (complete, ring lattice, Erdős–Rényi, Barabási–Albert, Watts–Strogatz)
//!   and the edge-list text format.
//! - [`dynamics`]: binary standard-adoption dynamics under a threshold
//!   switching rule with relative advantage `q` and switching costs, with
//!   synchronous and random-sequential schedules, cycle detection and the
//!   global performance measure.
//! - [`percolation`]: same-state cluster analysis, consensus/fork
//!   classification and deterministic parameter sweeps (CSV and SVG output).
//! - [`governance`]: single-choice, approval, instant-runoff and quadratic
//!   tallies with optional token weighting; Gini and Nakamoto centralization
//!   metrics; proposal-lifecycle simulation with turnout statistics.
//! - [`viability`]: the eight-principle scoring rubric with weakest-link
//!   aggregation and report rendering.
//!
//! Numeric code is generic over the scalar type (`f32` or `f64`) through the
//! [`Real`] trait; the aliases below fix the common double-precision
//! instantiation. Everything that consumes a seed is a pure function of its
//! inputs, so runs, sweeps and tallies reproduce bit-identically.

pub mod dynamics;
pub mod error;
pub mod governance;
pub mod graph;
pub mod percolation;
pub mod scalar;
pub mod seed;
pub mod viability;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision aliases for the generic core types.
pub type Network64 = graph::Network<f64>;
pub type Network32 = graph::Network<f32>;
pub type DynamicsParams64 = dynamics::DynamicsParams<f64>;
pub type Trajectory64 = dynamics::Trajectory<f64>;
pub type SweepSpec64 = percolation::SweepSpec<f64>;
pub type SweepTable64 = percolation::SweepTable<f64>;
pub type TokenLedger64 = governance::TokenLedger<f64>;
pub type TallyResult64 = governance::TallyResult<f64>;
