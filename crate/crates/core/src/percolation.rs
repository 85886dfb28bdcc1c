//! Terminal-state analysis: same-state cluster structure, consensus/fork
//! classification, and deterministic parameter-grid sweeps.
//!
//! A fork is a community that ends up persistently split between both
//! standards: either a mixed fixed point or a cycle visiting both. Cluster
//! structure is reported through largest-cluster fractions rather than a
//! spanning criterion since the graphs are general, not lattices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{run, DynamicsParams, Schedule, Standard, StateVector, Termination, Trajectory};
use crate::error::{Error, Result};
use crate::graph::{generate_network, Network, NetworkSpec};
use crate::scalar::Real;
use crate::seed::{cell_seed, substream};

/// Fraction of replicas above which a standard counts as percolating in
/// summary statistics.
pub const DOMINANCE_THRESHOLD: f64 = 0.5;

/// Maximal connected set of agents sharing one standard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub standard: Standard,
    /// Sorted agent ids.
    pub members: Vec<usize>,
}

impl Cluster {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Connected-component decomposition of the subgraphs induced by each
/// standard. Clusters partition the agent set.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterReport {
    /// Ordered by smallest member id.
    pub clusters: Vec<Cluster>,
    pub largest_a_fraction: f64,
    pub largest_b_fraction: f64,
}

impl ClusterReport {
    pub fn largest(&self, s: Standard) -> usize {
        self.clusters
            .iter()
            .filter(|c| c.standard == s)
            .map(Cluster::size)
            .max()
            .unwrap_or(0)
    }
}

/// Decomposes the agent set into maximal same-state connected clusters.
pub fn same_state_clusters<S: Real>(
    network: &Network<S>,
    states: &StateVector,
) -> Result<ClusterReport> {
    if states.len() != network.n() {
        return Err(Error::LengthMismatch {
            got: states.len(),
            expected: network.n(),
        });
    }
    let n = network.n();
    let mut visited = vec![false; n];
    let mut clusters = Vec::new();
    let mut queue = Vec::new();

    for start in 0..n {
        if visited[start] {
            continue;
        }
        let standard = states.states[start];
        let mut members = vec![start];
        visited[start] = true;
        queue.push(start);
        while let Some(i) = queue.pop() {
            for &(j, _) in network.neighbors(i) {
                if !visited[j] && states.states[j] == standard {
                    visited[j] = true;
                    members.push(j);
                    queue.push(j);
                }
            }
        }
        members.sort_unstable();
        clusters.push(Cluster { standard, members });
    }

    let nf = n as f64;
    let report = ClusterReport {
        largest_a_fraction: 0.0,
        largest_b_fraction: 0.0,
        clusters,
    };
    Ok(ClusterReport {
        largest_a_fraction: report.largest(Standard::A) as f64 / nf,
        largest_b_fraction: report.largest(Standard::B) as f64 / nf,
        clusters: report.clusters,
    })
}

/// Terminal classification of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeClass {
    ConsensusA,
    ConsensusB,
    Fork,
    Undecided,
}

impl OutcomeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeClass::ConsensusA => "consensus_A",
            OutcomeClass::ConsensusB => "consensus_B",
            OutcomeClass::Fork => "fork",
            OutcomeClass::Undecided => "undecided",
        }
    }
}

impl std::fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub class: OutcomeClass,
    pub cluster_report: ClusterReport,
    pub termination: Termination,
}

/// Classifies the end of a trajectory. Consensus requires a unanimous fixed
/// point; for cycles, coexistence is evaluated on the union of standards
/// appearing anywhere in the cycle (an oscillating community has not
/// converged). `max_steps_reached` is undecided.
pub fn classify_outcome<S: Real>(
    network: &Network<S>,
    trajectory: &Trajectory<S>,
) -> Result<Outcome> {
    let final_state = trajectory.final_state();
    let cluster_report = same_state_clusters(network, final_state)?;

    let class = match trajectory.termination {
        Termination::MaxStepsReached => OutcomeClass::Undecided,
        Termination::FixedPoint | Termination::Cycle { .. } => {
            let mut has_a = false;
            let mut has_b = false;
            for state in trajectory.cycle_states() {
                for &s in &state.states {
                    match s {
                        Standard::A => has_a = true,
                        Standard::B => has_b = true,
                    }
                }
            }
            match (has_a, has_b) {
                (true, true) => OutcomeClass::Fork,
                (true, false) => OutcomeClass::ConsensusA,
                (false, true) => OutcomeClass::ConsensusB,
                (false, false) => unreachable!("state vectors are non-empty"),
            }
        }
    };

    Ok(Outcome {
        class,
        cluster_report,
        termination: trajectory.termination,
    })
}

/// Network source for a sweep: generated once from a spec, or supplied.
#[derive(Debug, Clone)]
pub enum SweepNetwork<S = f64> {
    Spec(NetworkSpec),
    Fixed(Network<S>),
}

/// Parameter grid and replication plan for a sweep.
#[derive(Debug, Clone)]
pub struct SweepSpec<S = f64> {
    pub q_grid: Vec<S>,
    pub c_a_grid: Vec<S>,
    pub c_b_grid: Vec<S>,
    pub network: SweepNetwork<S>,
    /// Probability that an agent starts in A when drawing initial states.
    pub rho: f64,
    pub replicas: usize,
    pub base_seed: u64,
    pub schedule: Schedule,
    pub max_steps: usize,
}

impl<S: Real> SweepSpec<S> {
    pub fn validate(&self) -> Result<()> {
        for (field, grid) in [
            ("q_grid", &self.q_grid),
            ("c_A_grid", &self.c_a_grid),
            ("c_B_grid", &self.c_b_grid),
        ] {
            if grid.is_empty() {
                return Err(Error::invalid_parameter(field, "grid is empty"));
            }
        }
        for &q in &self.q_grid {
            if !(q >= S::zero() && q <= S::one()) {
                return Err(Error::invalid_parameter(
                    "q_grid",
                    format!("{q} outside [0, 1]"),
                ));
            }
        }
        for (field, grid) in [("c_A_grid", &self.c_a_grid), ("c_B_grid", &self.c_b_grid)] {
            for &c in grid {
                if !(c >= S::zero()) {
                    return Err(Error::invalid_parameter(field, format!("{c} is negative")));
                }
            }
        }
        if !(0.0..=1.0).contains(&self.rho) {
            return Err(Error::invalid_parameter(
                "rho",
                format!("{} outside [0, 1]", self.rho),
            ));
        }
        if self.replicas == 0 {
            return Err(Error::invalid_parameter("replicas", "must be >= 1"));
        }
        if self.max_steps == 0 {
            return Err(Error::invalid_parameter("max_steps", "must be >= 1"));
        }
        if let SweepNetwork::Spec(spec) = &self.network {
            spec.validate()?;
        }
        Ok(())
    }

    fn cells(&self) -> Vec<(usize, S, S, S)> {
        let mut cells = Vec::new();
        let mut index = 0;
        for &q in &self.q_grid {
            for &c_a in &self.c_a_grid {
                for &c_b in &self.c_b_grid {
                    cells.push((index, q, c_a, c_b));
                    index += 1;
                }
            }
        }
        cells
    }
}

/// One grid-cell replica result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow<S = f64> {
    pub q: S,
    pub c_a: S,
    pub c_b: S,
    pub replica: usize,
    pub outcome: OutcomeClass,
    pub final_c: S,
    pub steps: usize,
    pub largest_a_frac: f64,
    pub largest_b_frac: f64,
}

/// Replica-aggregated view of one grid cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary<S = f64> {
    pub q: S,
    pub c_a: S,
    pub c_b: S,
    pub fork_fraction: f64,
    /// Fraction of replicas whose largest A-cluster exceeds the threshold.
    pub a_percolates: f64,
    pub b_percolates: f64,
}

/// All rows of a sweep in deterministic order (cell index, then replica),
/// independent of how many workers executed it.
#[derive(Debug, Clone)]
pub struct SweepTable<S = f64> {
    pub rows: Vec<SweepRow<S>>,
    pub q_grid: Vec<S>,
    pub c_a_grid: Vec<S>,
    pub c_b_grid: Vec<S>,
    pub replicas: usize,
}

// Sub-stream labels for deriving independent RNG streams per run.
const STREAM_NETWORK: u64 = 1;
const STREAM_INIT: u64 = 2;
const STREAM_SCHEDULER: u64 = 3;

/// Runs every grid cell and replica. The network is resolved once (generated
/// from the base seed when given as a spec) and shared by all runs; each
/// (cell, replica) derives its own RNG streams from the base seed via
/// [`cell_seed`], so results do not depend on execution order. Cells run in
/// parallel on the current rayon pool.
pub fn sweep<S: Real>(spec: &SweepSpec<S>) -> Result<SweepTable<S>> {
    spec.validate()?;
    let network: Network<S> = match &spec.network {
        SweepNetwork::Fixed(net) => net.clone(),
        SweepNetwork::Spec(ns) => generate_network(ns, substream(spec.base_seed, STREAM_NETWORK))?,
    };

    let mut jobs = Vec::new();
    for (cell, q, c_a, c_b) in spec.cells() {
        for replica in 0..spec.replicas {
            jobs.push((cell, q, c_a, c_b, replica));
        }
    }

    let rows: Result<Vec<SweepRow<S>>> = jobs
        .par_iter()
        .map(|&(cell, q, c_a, c_b, replica)| {
            let seed = cell_seed(spec.base_seed, cell as u64, replica as u64);
            let init = draw_initial_state(network.n(), spec.rho, substream(seed, STREAM_INIT));
            let params = DynamicsParams {
                q,
                c_a,
                c_b,
                schedule: spec.schedule,
                max_steps: spec.max_steps,
            };
            let trajectory = run(&network, &init, &params, substream(seed, STREAM_SCHEDULER))?;
            let outcome = classify_outcome(&network, &trajectory)?;
            Ok(SweepRow {
                q,
                c_a,
                c_b,
                replica,
                outcome: outcome.class,
                final_c: trajectory.final_performance(),
                steps: trajectory.steps(),
                largest_a_frac: outcome.cluster_report.largest_a_fraction,
                largest_b_frac: outcome.cluster_report.largest_b_fraction,
            })
        })
        .collect();

    Ok(SweepTable {
        rows: rows?,
        q_grid: spec.q_grid.clone(),
        c_a_grid: spec.c_a_grid.clone(),
        c_b_grid: spec.c_b_grid.clone(),
        replicas: spec.replicas,
    })
}

/// Each agent independently starts in A with probability `rho`.
fn draw_initial_state(n: usize, rho: f64, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    StateVector::new(
        (0..n)
            .map(|_| {
                if rng.gen_bool(rho) {
                    Standard::A
                } else {
                    Standard::B
                }
            })
            .collect(),
    )
}

impl<S: Real> SweepTable<S> {
    /// CSV with the canonical column set; byte-identical across re-runs.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "q,c_A,c_B,replica,outcome,final_C,steps,largest_A_frac,largest_B_frac\n",
        );
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                row.q,
                row.c_a,
                row.c_b,
                row.replica,
                row.outcome,
                row.final_c,
                row.steps,
                row.largest_a_frac,
                row.largest_b_frac
            ));
        }
        out
    }

    /// Fraction of replicas classified as fork, per cell, in cell order.
    pub fn fork_frequencies(&self) -> Vec<f64> {
        let cells = self.q_grid.len() * self.c_a_grid.len() * self.c_b_grid.len();
        let mut counts = vec![0usize; cells];
        for (i, row) in self.rows.iter().enumerate() {
            if row.outcome == OutcomeClass::Fork {
                counts[i / self.replicas] += 1;
            }
        }
        counts
            .into_iter()
            .map(|c| c as f64 / self.replicas as f64)
            .collect()
    }

    /// Per-cell summary statistics. A standard counts as percolating in a
    /// replica when its largest cluster covers more than `theta` of the
    /// agents ([`DOMINANCE_THRESHOLD`] by default; spanning is ill-defined
    /// off-lattice).
    pub fn summarize(&self, theta: f64) -> Vec<CellSummary<S>> {
        self.rows
            .chunks(self.replicas)
            .map(|cell| {
                let frac = |pred: &dyn Fn(&SweepRow<S>) -> bool| {
                    cell.iter().filter(|r| pred(r)).count() as f64 / cell.len() as f64
                };
                CellSummary {
                    q: cell[0].q,
                    c_a: cell[0].c_a,
                    c_b: cell[0].c_b,
                    fork_fraction: frac(&|r| r.outcome == OutcomeClass::Fork),
                    a_percolates: frac(&|r| r.largest_a_frac > theta),
                    b_percolates: frac(&|r| r.largest_b_frac > theta),
                }
            })
            .collect()
    }

    /// SVG heatmap of fork frequency: one column per q value, one row per
    /// (c_A, c_B) pair. Exact values sit in each cell's `<title>`.
    pub fn to_svg(&self) -> String {
        const CELL_W: usize = 48;
        const CELL_H: usize = 28;
        const LEFT: usize = 150;
        const TOP: usize = 40;

        let freqs = self.fork_frequencies();
        let cols = self.q_grid.len();
        let pairs: Vec<(S, S)> = self
            .c_a_grid
            .iter()
            .flat_map(|&a| self.c_b_grid.iter().map(move |&b| (a, b)))
            .collect();
        let width = LEFT + cols * CELL_W + 10;
        let height = TOP + pairs.len() * CELL_H + 10;

        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
             font-family=\"monospace\" font-size=\"11\">\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{LEFT}\" y=\"14\">fork frequency over {} replicas</text>\n",
            self.replicas
        ));
        for (col, q) in self.q_grid.iter().enumerate() {
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\">q={q}</text>\n",
                LEFT + col * CELL_W + 4,
                TOP - 6
            ));
        }
        for (rowi, (c_a, c_b)) in pairs.iter().enumerate() {
            svg.push_str(&format!(
                "<text x=\"4\" y=\"{}\">cA={c_a} cB={c_b}</text>\n",
                TOP + rowi * CELL_H + CELL_H / 2 + 4
            ));
            for (col, q) in self.q_grid.iter().enumerate() {
                // cell index follows the sweep's lexicographic order
                let cell = (col * self.c_a_grid.len()
                    + rowi / self.c_b_grid.len())
                    * self.c_b_grid.len()
                    + rowi % self.c_b_grid.len();
                let f = freqs[cell];
                let (r, g, b) = heat_color(f);
                svg.push_str(&format!(
                    "<rect x=\"{}\" y=\"{}\" width=\"{CELL_W}\" height=\"{CELL_H}\" \
                     fill=\"rgb({r},{g},{b})\" stroke=\"#777\">\
                     <title>q={q}, c_A={c_a}, c_B={c_b}: fork {f}</title></rect>\n",
                    LEFT + col * CELL_W,
                    TOP + rowi * CELL_H
                ));
            }
        }
        svg.push_str("</svg>\n");
        svg
    }
}

/// White at 0 to saturated red at 1.
fn heat_color(f: f64) -> (u8, u8, u8) {
    let t = f.clamp(0.0, 1.0);
    let lerp = |from: f64, to: f64| (from + (to - from) * t).round() as u8;
    (lerp(255.0, 215.0), lerp(255.0, 48.0), lerp(255.0, 39.0))
}
