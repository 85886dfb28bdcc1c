//! Binary standard-adoption dynamics on a weighted network.
//!
//! Each agent holds one of two competing standards. Per step, an agent
//! compares the weighted share of its neighborhood holding its own standard
//! against a threshold built from the relative advantage `q` and the
//! switching costs: an A-agent switches to B iff `x_A < 1 - q - c_A`, a
//! B-agent switches to A iff `x_B < q - c_B`. Comparisons are strict;
//! equality means hold. Isolated agents have no social signal and never
//! switch.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Network;
use crate::scalar::Real;

/// One of the two competing standards. `A < B` for deterministic ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Standard {
    A,
    B,
}

impl Standard {
    pub fn other(self) -> Standard {
        match self {
            Standard::A => Standard::B,
            Standard::B => Standard::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Standard::A => 'A',
            Standard::B => 'B',
        }
    }
}

impl fmt::Display for Standard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Per-agent standard assignment at one time step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateVector {
    pub states: Vec<Standard>,
    pub t: usize,
}

impl StateVector {
    pub fn new(states: Vec<Standard>) -> Self {
        StateVector { states, t: 0 }
    }

    pub fn uniform(n: usize, s: Standard) -> Self {
        StateVector::new(vec![s; n])
    }

    /// Parses a compact string like `"ABB"`, or the one-state-per-line file
    /// format (both accept the same alphabet).
    pub fn parse(text: &str) -> Result<Self> {
        let mut states = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            for ch in trimmed.chars() {
                match ch {
                    'A' => states.push(Standard::A),
                    'B' => states.push(Standard::B),
                    _ => {
                        return Err(Error::malformed(
                            lineno + 1,
                            format!("unexpected state character '{ch}'"),
                        ))
                    }
                }
            }
        }
        if states.is_empty() {
            return Err(Error::Invalid("empty state description".to_string()));
        }
        Ok(StateVector::new(states))
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn count(&self, s: Standard) -> usize {
        self.states.iter().filter(|&&x| x == s).count()
    }

    /// Compact representation, e.g. `"ABB"`.
    pub fn compact(&self) -> String {
        self.states.iter().map(|s| s.as_char()).collect()
    }

    /// Swaps every agent's standard; used by the label-symmetry checks.
    pub fn swapped(&self) -> Self {
        StateVector {
            states: self.states.iter().map(|s| s.other()).collect(),
            t: self.t,
        }
    }
}

/// Scheduling of agent updates within one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Schedule {
    /// All agents update simultaneously from the previous state.
    Synchronous,
    /// Agents update one at a time in a seeded uniformly random permutation,
    /// each seeing the partially updated state.
    AsynchronousRandomSequential,
}

/// Parameters of the switching rule and the run loop.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsParams<S = f64> {
    /// Relative advantage of standard A, in `[0, 1]`.
    pub q: S,
    /// Cost of abandoning A, `>= 0`.
    pub c_a: S,
    /// Cost of abandoning B, `>= 0`.
    pub c_b: S,
    pub schedule: Schedule,
    pub max_steps: usize,
}

impl<S: Real> DynamicsParams<S> {
    pub fn new(q: S, c_a: S, c_b: S) -> Self {
        DynamicsParams {
            q,
            c_a,
            c_b,
            schedule: Schedule::Synchronous,
            max_steps: 1000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q >= S::zero() && self.q <= S::one()) {
            return Err(Error::invalid_parameter(
                "q",
                format!("{} outside [0, 1]", self.q),
            ));
        }
        if !(self.c_a >= S::zero()) {
            return Err(Error::invalid_parameter(
                "c_A",
                format!("{} is negative", self.c_a),
            ));
        }
        if !(self.c_b >= S::zero()) {
            return Err(Error::invalid_parameter(
                "c_B",
                format!("{} is negative", self.c_b),
            ));
        }
        if self.max_steps == 0 {
            return Err(Error::invalid_parameter("max_steps", "must be >= 1"));
        }
        Ok(())
    }
}

/// Per-agent contribution used by [`global_performance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum PerformanceMeasure {
    #[default]
    IndicatorA,
    IndicatorB,
}

impl PerformanceMeasure {
    fn contribution(self, s: Standard) -> u8 {
        match (self, s) {
            (PerformanceMeasure::IndicatorA, Standard::A) => 1,
            (PerformanceMeasure::IndicatorB, Standard::B) => 1,
            _ => 0,
        }
    }
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Termination {
    /// The state reproduced itself in one step.
    FixedPoint,
    /// The state returned to an earlier one `period >= 2` steps back.
    Cycle { period: usize },
    MaxStepsReached,
}

/// Full record of a run: every visited state plus the performance series.
#[derive(Debug, Clone)]
pub struct Trajectory<S = f64> {
    pub history: Vec<StateVector>,
    pub termination: Termination,
    pub performance_series: Vec<S>,
}

impl<S: Real> Trajectory<S> {
    pub fn final_state(&self) -> &StateVector {
        self.history.last().expect("trajectory is never empty")
    }

    /// Number of steps taken (t of the final state).
    pub fn steps(&self) -> usize {
        self.history.len() - 1
    }

    pub fn final_performance(&self) -> S {
        *self
            .performance_series
            .last()
            .expect("trajectory is never empty")
    }

    /// The states forming the terminal cycle: the last `period` entries for a
    /// cycle, the final state otherwise.
    pub fn cycle_states(&self) -> &[StateVector] {
        match self.termination {
            Termination::Cycle { period } => &self.history[self.history.len() - period..],
            _ => &self.history[self.history.len() - 1..],
        }
    }

    /// Trajectory CSV with columns `t,agent_id,state`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,agent_id,state\n");
        for state in &self.history {
            for (agent, s) in state.states.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", state.t, agent, s.as_char()));
            }
        }
        out
    }
}

/// Weighted fraction of `i`'s neighborhood currently holding standard `s`:
/// `sum_j a_ij * 1[s_j = s] / sum_j a_ij`.
pub fn neighborhood_share<S: Real>(
    network: &Network<S>,
    states: &StateVector,
    i: usize,
    s: Standard,
) -> Result<S> {
    check_len(network, states)?;
    if i >= network.n() {
        return Err(Error::AgentOutOfRange {
            agent: i,
            n: network.n(),
        });
    }
    let mut num = S::zero();
    let mut den = S::zero();
    for &(j, w) in network.neighbors(i) {
        den = den + w;
        if states.states[j] == s {
            num = num + w;
        }
    }
    if den == S::zero() {
        return Err(Error::IsolatedAgent { agent: i });
    }
    Ok(num / den)
}

fn check_len<S: Real>(network: &Network<S>, states: &StateVector) -> Result<()> {
    if states.len() != network.n() {
        return Err(Error::LengthMismatch {
            got: states.len(),
            expected: network.n(),
        });
    }
    Ok(())
}

/// Decides agent `i`'s next standard given the share of its own standard in
/// its neighborhood. Strict thresholds, exactly as displayed in the case
/// rule; isolated agents are handled by the callers (hold).
fn next_standard<S: Real>(current: Standard, own_share: S, params: &DynamicsParams<S>) -> Standard {
    match current {
        Standard::A => {
            if own_share < S::one() - params.q - params.c_a {
                Standard::B
            } else {
                Standard::A
            }
        }
        Standard::B => {
            if own_share < params.q - params.c_b {
                Standard::A
            } else {
                Standard::B
            }
        }
    }
}

/// One synchronous step: every agent's new state is computed from the old
/// vector. The input is not mutated.
pub fn step_sync<S: Real>(
    network: &Network<S>,
    states: &StateVector,
    params: &DynamicsParams<S>,
) -> Result<StateVector> {
    check_len(network, states)?;
    let mut next = Vec::with_capacity(states.len());
    for i in 0..network.n() {
        next.push(updated_agent(network, states, i, params));
    }
    Ok(StateVector {
        states: next,
        t: states.t + 1,
    })
}

fn updated_agent<S: Real>(
    network: &Network<S>,
    states: &StateVector,
    i: usize,
    params: &DynamicsParams<S>,
) -> Standard {
    let current = states.states[i];
    if network.degree(i) == 0 {
        return current; // isolated: hold
    }
    let share = neighborhood_share(network, states, i, current)
        .expect("non-isolated agent has a defined share");
    next_standard(current, share, params)
}

/// One asynchronous step: agents update one at a time in a uniformly random
/// permutation drawn from `rng`, each seeing the partially updated vector.
pub fn step_async<S: Real>(
    network: &Network<S>,
    states: &StateVector,
    params: &DynamicsParams<S>,
    rng: &mut ChaCha8Rng,
) -> Result<StateVector> {
    check_len(network, states)?;
    let mut order: Vec<usize> = (0..network.n()).collect();
    // Fisher-Yates from the seeded stream
    for i in (1..order.len()).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let mut next = states.clone();
    next.t = states.t + 1;
    for &i in &order {
        next.states[i] = updated_agent(network, &next, i, params);
    }
    Ok(next)
}

/// Iterates the scheduled step until a fixed point, a cycle, or `max_steps`.
///
/// Fully deterministic given `(network, init, params, seed)`; the seed only
/// feeds the asynchronous scheduler. Cycle detection compares the current
/// state against the entire history (hash map over full state vectors);
/// period-1 repeats are reported as fixed points.
pub fn run<S: Real>(
    network: &Network<S>,
    init: &StateVector,
    params: &DynamicsParams<S>,
    seed: u64,
) -> Result<Trajectory<S>> {
    params.validate()?;
    check_len(network, init)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let measure = PerformanceMeasure::IndicatorA;
    let mut history = vec![init.clone()];
    let mut performance_series = vec![global_performance(init, measure)?];
    let mut seen: HashMap<Vec<Standard>, usize> = HashMap::new();
    seen.insert(init.states.clone(), 0);

    let termination = loop {
        let current = history.last().expect("non-empty");
        if current.t >= params.max_steps {
            break Termination::MaxStepsReached;
        }
        let next = match params.schedule {
            Schedule::Synchronous => step_sync(network, current, params)?,
            Schedule::AsynchronousRandomSequential => {
                step_async(network, current, params, &mut rng)?
            }
        };
        performance_series.push(global_performance(&next, measure)?);
        let repeat = seen.get(&next.states).copied();
        let t = next.t;
        history.push(next);
        match repeat {
            Some(earlier) => {
                let period = t - earlier;
                if period == 1 {
                    break Termination::FixedPoint;
                }
                break Termination::Cycle { period };
            }
            None => {
                seen.insert(history.last().expect("non-empty").states.clone(), t);
            }
        }
    };

    Ok(Trajectory {
        history,
        termination,
        performance_series,
    })
}

/// Population mean of the per-agent contribution: with `IndicatorA` this is
/// the fraction of agents holding A.
pub fn global_performance<S: Real>(states: &StateVector, measure: PerformanceMeasure) -> Result<S> {
    if states.is_empty() {
        return Err(Error::Invalid("empty state vector".to_string()));
    }
    let total: usize = states
        .states
        .iter()
        .map(|&s| measure.contribution(s) as usize)
        .sum();
    Ok(S::from_count(total) / S::from_count(states.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_network, load_edge_list, NetworkSpec, Topology};

    fn path3() -> Network {
        load_edge_list("0 1\n1 2").unwrap()
    }

    fn complete(n: usize) -> Network {
        generate_network(
            &NetworkSpec {
                n,
                topology: Topology::Complete,
            },
            0,
        )
        .unwrap()
    }

    fn sv(text: &str) -> StateVector {
        StateVector::parse(text).unwrap()
    }

    #[test]
    fn share_on_path() {
        let net = path3();
        let states = sv("ABB");
        assert_eq!(
            neighborhood_share(&net, &states, 1, Standard::A).unwrap(),
            0.5
        );
        assert_eq!(
            neighborhood_share(&net, &states, 1, Standard::B).unwrap(),
            0.5
        );
    }

    #[test]
    fn share_unanimity_is_one() {
        let net = complete(6);
        let states = StateVector::uniform(6, Standard::A);
        for i in 0..6 {
            assert_eq!(
                neighborhood_share(&net, &states, i, Standard::A).unwrap(),
                1.0
            );
        }
    }

    #[test]
    fn share_weighted_star() {
        let net: Network = load_edge_list("0 1 2.5\n0 2 1.0").unwrap();
        let states = sv("BAB");
        let x = neighborhood_share(&net, &states, 0, Standard::A).unwrap();
        assert!((x - 2.5 / 3.5).abs() < 1e-12, "got {x}");
    }

    #[test]
    fn share_errors_for_isolated_agent() {
        let net: Network = load_edge_list("1 2").unwrap();
        let states = sv("AAA");
        assert_eq!(
            neighborhood_share(&net, &states, 0, Standard::A),
            Err(Error::IsolatedAgent { agent: 0 })
        );
    }

    #[test]
    fn shares_sum_to_one() {
        let net: Network = generate_network(
            &NetworkSpec {
                n: 25,
                topology: Topology::ErdosRenyi { p: 0.4 },
            },
            5,
        )
        .unwrap();
        let states = StateVector::new(
            (0..25)
                .map(|i| if i % 3 == 0 { Standard::A } else { Standard::B })
                .collect(),
        );
        for i in 0..25 {
            if net.degree(i) == 0 {
                continue;
            }
            let a = neighborhood_share(&net, &states, i, Standard::A).unwrap();
            let b = neighborhood_share(&net, &states, i, Standard::B).unwrap();
            assert!((a + b - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn step_sync_path_example() {
        // agent 0: x_A = 0 < 0.5 switches; agent 1: x_B = 0.5 not < 0.5 holds;
        // agent 2: x_B = 1 holds
        let net = path3();
        let params = DynamicsParams::new(0.5, 0.0, 0.0);
        let next = step_sync(&net, &sv("ABB"), &params).unwrap();
        assert_eq!(next.compact(), "BBB");
        assert_eq!(next.t, 1);
    }

    #[test]
    fn step_sync_does_not_mutate_input() {
        let net = path3();
        let params = DynamicsParams::new(0.5, 0.0, 0.0);
        let input = sv("ABB");
        let _ = step_sync(&net, &input, &params).unwrap();
        assert_eq!(input.compact(), "ABB");
        assert_eq!(input.t, 0);
    }

    #[test]
    fn unanimity_is_absorbing() {
        let net = complete(8);
        for (q, ca, cb) in [(0.0, 0.0, 0.0), (0.5, 0.2, 0.6), (1.0, 0.0, 0.3)] {
            let params = DynamicsParams::new(q, ca, cb);
            let next = step_sync(&net, &StateVector::uniform(8, Standard::A), &params).unwrap();
            assert_eq!(next.count(Standard::A), 8);
            let next = step_sync(&net, &StateVector::uniform(8, Standard::B), &params).unwrap();
            assert_eq!(next.count(Standard::B), 8);
        }
    }

    #[test]
    fn negative_threshold_freezes_b_agents() {
        // q = 0, c_B = 0: x_B < 0 is impossible, no B-agent ever leaves
        let net = complete(5);
        let params = DynamicsParams::new(0.0, 0.0, 0.0);
        let states = sv("ABABB");
        let next = step_sync(&net, &states, &params).unwrap();
        for i in 0..5 {
            if states.states[i] == Standard::B {
                assert_eq!(next.states[i], Standard::B);
            }
        }
    }

    #[test]
    fn step_sync_rejects_length_mismatch() {
        let net = path3();
        let params = DynamicsParams::new(0.5, 0.0, 0.0);
        assert!(matches!(
            step_sync(&net, &sv("AB"), &params),
            Err(Error::LengthMismatch { got: 2, expected: 3 })
        ));
    }

    #[test]
    fn step_async_unanimity_any_permutation() {
        let net = complete(6);
        let params = DynamicsParams::new(0.3, 0.1, 0.1);
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let next = step_async(&net, &StateVector::uniform(6, Standard::A), &params, &mut rng)
                .unwrap();
            assert_eq!(next.count(Standard::A), 6);
        }
    }

    #[test]
    fn step_async_single_agent_holds() {
        let net: Network = Network::from_edges(1, Vec::new()).unwrap();
        let params = DynamicsParams::new(0.5, 0.0, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let next = step_async(&net, &sv("A"), &params, &mut rng).unwrap();
        assert_eq!(next.compact(), "A");
    }

    #[test]
    fn async_hand_trace_with_fixed_permutation() {
        // Permutation (2,1,0) on path A,B,B with q=0.5, c=0: agent 2 holds
        // (x_B=1), agent 1 holds (x_B=0.5), agent 0 switches (x_A=0).
        // Asserted through the sequential-update semantics directly.
        let net = path3();
        let params = DynamicsParams::new(0.5, 0.0, 0.0);
        let mut state = sv("ABB");
        state.t = 0;
        let mut partial = state.clone();
        for &i in &[2usize, 1, 0] {
            partial.states[i] = super::updated_agent(&net, &partial, i, &params);
        }
        assert_eq!(partial.compact(), "BBB");
    }

    #[test]
    fn run_all_a_fixed_point_after_one_confirming_step() {
        let net = complete(4);
        let params = DynamicsParams::new(0.5, 0.0, 0.0);
        let traj = run(&net, &StateVector::uniform(4, Standard::A), &params, 0).unwrap();
        assert_eq!(traj.termination, Termination::FixedPoint);
        assert_eq!(traj.history.len(), 2);
        assert_eq!(traj.final_state().t, 1);
        assert_eq!(traj.final_performance(), 1.0);
    }

    #[test]
    fn run_path_reaches_all_b() {
        let net = path3();
        let params = DynamicsParams::new(0.5, 0.0, 0.0);
        let traj = run(&net, &sv("ABB"), &params, 0).unwrap();
        assert_eq!(traj.termination, Termination::FixedPoint);
        assert_eq!(traj.final_state().compact(), "BBB");
        assert!(traj.final_state().t <= 2);
    }

    #[test]
    fn run_isolated_pair_coexists_forever() {
        let net: Network = Network::from_edges(2, Vec::new()).unwrap();
        let params = DynamicsParams::new(0.5, 0.0, 0.0);
        let traj = run(&net, &sv("AB"), &params, 0).unwrap();
        assert_eq!(traj.termination, Termination::FixedPoint);
        assert_eq!(traj.final_state().compact(), "AB");
    }

    #[test]
    fn run_detects_two_cycle() {
        // Complete bipartite-free: two nodes, one edge, q=0.5, c=0.
        // x_own = 0 for both when they disagree, so they swap forever.
        let net: Network = load_edge_list("0 1").unwrap();
        let params = DynamicsParams::new(0.5, 0.0, 0.0);
        let traj = run(&net, &sv("AB"), &params, 0).unwrap();
        assert_eq!(traj.termination, Termination::Cycle { period: 2 });
    }

    #[test]
    fn run_honors_max_steps() {
        let net: Network = load_edge_list("0 1").unwrap();
        let mut params = DynamicsParams::new(0.5, 0.0, 0.0);
        params.max_steps = 1;
        // one step is not enough to revisit a state on this instance
        let traj = run(&net, &sv("AB"), &params, 0).unwrap();
        assert_eq!(traj.termination, Termination::MaxStepsReached);
        assert_eq!(traj.steps(), 1);
    }

    #[test]
    fn run_is_deterministic() {
        let net: Network = generate_network(
            &NetworkSpec {
                n: 30,
                topology: Topology::ErdosRenyi { p: 0.2 },
            },
            3,
        )
        .unwrap();
        let mut params = DynamicsParams::new(0.4, 0.1, 0.2);
        params.schedule = Schedule::AsynchronousRandomSequential;
        let init = StateVector::new(
            (0..30)
                .map(|i| if i % 2 == 0 { Standard::A } else { Standard::B })
                .collect(),
        );
        let a = run(&net, &init, &params, 123).unwrap();
        let b = run(&net, &init, &params, 123).unwrap();
        assert_eq!(a.history, b.history);
        assert_eq!(a.termination, b.termination);
    }

    #[test]
    fn performance_examples() {
        let all_a = StateVector::uniform(4, Standard::A);
        assert_eq!(
            global_performance::<f64>(&all_a, PerformanceMeasure::IndicatorA).unwrap(),
            1.0
        );
        let mixed = sv("ABBB");
        assert_eq!(
            global_performance::<f64>(&mixed, PerformanceMeasure::IndicatorA).unwrap(),
            0.25
        );
        let a: f64 = global_performance(&mixed, PerformanceMeasure::IndicatorA).unwrap();
        let b: f64 = global_performance(&mixed, PerformanceMeasure::IndicatorB).unwrap();
        assert_eq!(a + b, 1.0);
        assert!(global_performance::<f64>(
            &StateVector::new(Vec::new()),
            PerformanceMeasure::IndicatorA
        )
        .is_err());
    }

    #[test]
    fn trajectory_csv_shape() {
        let net = path3();
        let params = DynamicsParams::new(0.5, 0.0, 0.0);
        let traj = run(&net, &sv("ABB"), &params, 0).unwrap();
        let csv = traj.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,agent_id,state"));
        assert_eq!(lines.next(), Some("0,0,A"));
        assert_eq!(csv.lines().count(), 1 + 3 * traj.history.len());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        prop_compose! {
            fn arb_instance()(n in 2usize..12, seed in any::<u64>(),
                              q in 0.0f64..=1.0, ca in 0.0f64..=0.8, cb in 0.0f64..=0.8,
                              states_seed in any::<u64>())
                -> (Network, StateVector, DynamicsParams) {
                let net: Network = generate_network(&NetworkSpec {
                    n,
                    topology: Topology::ErdosRenyi { p: 0.5 },
                }, seed).unwrap();
                let mut rng = ChaCha8Rng::seed_from_u64(states_seed);
                let states = StateVector::new((0..n).map(|_| {
                    if rng.gen_bool(0.5) { Standard::A } else { Standard::B }
                }).collect());
                (net, states, DynamicsParams::new(q, ca, cb))
            }
        }

        proptest! {
            #[test]
            fn label_swap_symmetry((net, states, params) in arb_instance()) {
                let swapped_params = DynamicsParams::new(
                    1.0 - params.q, params.c_b, params.c_a);
                let direct = step_sync(&net, &states, &params).unwrap().swapped();
                let via_swap = step_sync(&net, &states.swapped(), &swapped_params).unwrap();
                prop_assert_eq!(direct.states, via_swap.states);
            }

            #[test]
            fn raising_c_a_shrinks_switcher_set((net, states, params) in arb_instance()) {
                let mut costlier = params.clone();
                costlier.c_a = params.c_a + 0.1;
                let base = step_sync(&net, &states, &params).unwrap();
                let with_cost = step_sync(&net, &states, &costlier).unwrap();
                for i in 0..states.len() {
                    if states.states[i] == Standard::A
                        && with_cost.states[i] == Standard::B {
                        prop_assert_eq!(base.states[i], Standard::B);
                    }
                }
            }

            #[test]
            fn step_preserves_length((net, states, params) in arb_instance()) {
                let next = step_sync(&net, &states, &params).unwrap();
                prop_assert_eq!(next.len(), states.len());
                prop_assert_eq!(next.t, states.t + 1);
            }

            #[test]
            fn sync_step_is_order_independent((net, states, params) in arb_instance()) {
                // recompute with reversed iteration order
                let forward = step_sync(&net, &states, &params).unwrap();
                let mut reversed = vec![Standard::A; states.len()];
                for i in (0..states.len()).rev() {
                    reversed[i] = super::super::updated_agent(&net, &states, i, &params);
                }
                prop_assert_eq!(forward.states, reversed);
            }
        }
    }
}
