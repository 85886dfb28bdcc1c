//! Subcommand implementations. Each resolves its parameters (flag, then
//! config, then default), validates, computes everything in memory, and only
//! then writes output files.

use std::path::{Path, PathBuf};

use serde::Serialize;

use daosim::dynamics::{
    global_performance, run, DynamicsParams, PerformanceMeasure, Schedule, StateVector,
    Termination,
};
use daosim::governance::{
    centralization_metrics, simulate_proposals, tally_approval, tally_quadratic,
    tally_ranked_irv, tally_single_choice, turnout_metrics, BallotKind, BallotSet, Participation,
    TokenLedger, TurnoutMetrics, DEFAULT_QUADRATIC_BUDGET,
};
use daosim::graph::{generate_network, load_edge_list, Network, NetworkSpec, Topology};
use daosim::percolation::{sweep as run_sweep, SweepNetwork, SweepSpec};
use daosim::viability::{render_report, score_assessment, Assessment, ReportFormat};

use crate::config::Section;
use crate::{
    emit, read_file, write_file, AssessArgs, CliError, GenerateArgs, GovernArgs, NetworkArgs,
    SimulateArgs, SweepArgs, VoteArgs,
};

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::validation(format!("missing required --{flag}")))
}

// ---------------------------------------------------------------------------
// network resolution
// ---------------------------------------------------------------------------

enum NetworkSource {
    Edges(PathBuf),
    Spec(NetworkSpec),
}

impl NetworkArgs {
    fn resolve(self, section: Section<'_>) -> Result<NetworkSource, CliError> {
        let edges = match self.edges {
            Some(path) => Some(path),
            None => section.path("edges")?,
        };
        let topology = match self.topology {
            Some(t) => Some(t),
            None => section.string("topology")?,
        };
        match (edges, topology) {
            (Some(_), Some(_)) => Err(CliError::validation(
                "--edges and --topology are mutually exclusive",
            )),
            (Some(path), None) => Ok(NetworkSource::Edges(path)),
            (None, Some(name)) => {
                let n = require(
                    self.n.or(section.usize("n")?),
                    "n (required with --topology)",
                )?;
                let k = self.k.or(section.usize("k")?);
                let p = self.p.or(section.f64("p")?);
                let m = self.m.or(section.usize("m")?);
                let beta = self.beta.or(section.f64("beta")?);
                let topology = match name.as_str() {
                    "complete" => Topology::Complete,
                    "ring" | "ring_lattice" => Topology::RingLattice {
                        k: require(k, "k (required for ring)")?,
                    },
                    "er" | "erdos_renyi" => Topology::ErdosRenyi {
                        p: require(p, "p (required for er)")?,
                    },
                    "ba" | "barabasi_albert" => Topology::BarabasiAlbert {
                        m: require(m, "m (required for ba)")?,
                    },
                    "ws" | "watts_strogatz" => Topology::WattsStrogatz {
                        k: require(k, "k (required for ws)")?,
                        beta: require(beta, "beta (required for ws)")?,
                    },
                    other => {
                        return Err(CliError::validation(format!(
                            "unknown topology '{other}' (expected complete, ring, er, ba or ws)"
                        )))
                    }
                };
                Ok(NetworkSource::Spec(NetworkSpec { n, topology }))
            }
            (None, None) => Err(CliError::validation(
                "a network is required: pass --edges FILE or --topology NAME",
            )),
        }
    }
}

fn load_network(source: &NetworkSource, seed: u64) -> Result<Network, CliError> {
    match source {
        NetworkSource::Edges(path) => Ok(load_edge_list(&read_file(path)?)?),
        NetworkSource::Spec(spec) => Ok(generate_network(spec, seed)?),
    }
}

fn parse_schedule(value: Option<String>) -> Result<Schedule, CliError> {
    match value.as_deref() {
        None | Some("sync") | Some("synchronous") => Ok(Schedule::Synchronous),
        Some("async") | Some("asynchronous") => Ok(Schedule::AsynchronousRandomSequential),
        Some(other) => Err(CliError::validation(format!(
            "unknown schedule '{other}' (expected sync or async)"
        ))),
    }
}

fn parse_grid(value: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::validation(format!("--{flag}: '{s}' is not a number")))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

pub fn generate(args: GenerateArgs, section: Section<'_>) -> Result<(), CliError> {
    let source = args.network.resolve(section)?;
    if matches!(source, NetworkSource::Edges(_)) {
        return Err(CliError::validation(
            "generate needs --topology, not --edges",
        ));
    }
    let seed = args.seed.or(section.u64("seed")?).unwrap_or(0);
    let out = require(args.out.or(section.path("out")?), "out")?;
    let network = load_network(&source, seed)?;
    write_file(&out, &network.to_edge_list())
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SimulationSummary {
    termination: &'static str,
    period: Option<usize>,
    steps: usize,
    #[serde(rename = "final_C")]
    final_c: f64,
    final_state: String,
}

/// An existing file wins over the inline reading; otherwise the value must
/// be a plain A/B string.
fn resolve_init(value: &str) -> Result<StateVector, CliError> {
    let path = Path::new(value);
    if path.is_file() {
        return Ok(StateVector::parse(&read_file(path)?)?);
    }
    if !value.is_empty() && value.chars().all(|c| c == 'A' || c == 'B') {
        return Ok(StateVector::parse(value)?);
    }
    Err(CliError::validation(format!(
        "--init '{value}' is neither an existing file nor an inline A/B string"
    )))
}

pub fn simulate(args: SimulateArgs, section: Section<'_>) -> Result<(), CliError> {
    let source = args.network.resolve(section)?;
    let seed = args.seed.or(section.u64("seed")?).unwrap_or(0);
    let init_arg = require(args.init.or(section.string("init")?), "init")?;
    let params = DynamicsParams {
        q: require(args.q.or(section.f64("q")?), "q")?,
        c_a: require(args.c_a.or(section.f64("cA")?), "cA")?,
        c_b: require(args.c_b.or(section.f64("cB")?), "cB")?,
        schedule: parse_schedule(args.schedule.or(section.string("schedule")?))?,
        max_steps: args
            .max_steps
            .or(section.usize("max-steps")?)
            .unwrap_or(1000),
    };
    params.validate()?;
    let measure = match args
        .measure
        .or(section.string("measure")?)
        .as_deref()
        .unwrap_or("A")
    {
        "A" => PerformanceMeasure::IndicatorA,
        "B" => PerformanceMeasure::IndicatorB,
        other => {
            return Err(CliError::validation(format!(
                "unknown measure '{other}' (expected A or B)"
            )))
        }
    };
    let out_trajectory = args
        .out_trajectory
        .or(section.path("out-trajectory")?)
        .unwrap_or_else(|| PathBuf::from("trajectory.csv"));
    let out_summary = args
        .out_summary
        .or(section.path("out-summary")?)
        .unwrap_or_else(|| PathBuf::from("summary.json"));

    let network = load_network(&source, seed)?;
    let init = resolve_init(&init_arg)?;
    let trajectory = run(&network, &init, &params, seed)?;

    let (termination, period) = match trajectory.termination {
        Termination::FixedPoint => ("fixed_point", None),
        Termination::Cycle { period } => ("cycle", Some(period)),
        Termination::MaxStepsReached => ("max_steps_reached", None),
    };
    let summary = SimulationSummary {
        termination,
        period,
        steps: trajectory.steps(),
        final_c: global_performance(trajectory.final_state(), measure)?,
        final_state: trajectory.final_state().compact(),
    };
    let mut summary_json =
        serde_json::to_string_pretty(&summary).expect("summary serializes");
    summary_json.push('\n');

    write_file(&out_trajectory, &trajectory.to_csv())?;
    write_file(&out_summary, &summary_json)
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

pub fn sweep(args: SweepArgs, section: Section<'_>) -> Result<(), CliError> {
    let source = args.network.resolve(section)?;
    let q_grid = parse_grid(
        &require(args.q_grid.or(section.string("q-grid")?), "q-grid")?,
        "q-grid",
    )?;
    let c_a_grid = parse_grid(
        &require(args.ca_grid.or(section.string("ca-grid")?), "ca-grid")?,
        "ca-grid",
    )?;
    let c_b_grid = parse_grid(
        &require(args.cb_grid.or(section.string("cb-grid")?), "cb-grid")?,
        "cb-grid",
    )?;
    let base_seed = args.seed.or(section.u64("seed")?).unwrap_or(0);
    let spec = SweepSpec {
        q_grid,
        c_a_grid,
        c_b_grid,
        network: match &source {
            NetworkSource::Edges(path) => {
                SweepNetwork::Fixed(load_edge_list(&read_file(path)?)?)
            }
            NetworkSource::Spec(ns) => SweepNetwork::Spec(ns.clone()),
        },
        rho: require(args.rho.or(section.f64("rho")?), "rho")?,
        replicas: args.replicas.or(section.usize("replicas")?).unwrap_or(1),
        base_seed,
        schedule: parse_schedule(args.schedule.or(section.string("schedule")?))?,
        max_steps: args
            .max_steps
            .or(section.usize("max-steps")?)
            .unwrap_or(1000),
    };
    let out = require(args.out.or(section.path("out")?), "out")?;
    let svg = match args.svg {
        Some(path) => Some(path),
        None => section.path("svg")?,
    };

    let jobs = args.jobs.or(section.usize("jobs")?);
    let table = match jobs {
        // row order is deterministic either way; --jobs only sizes the pool
        Some(jobs) => {
            if jobs == 0 {
                return Err(CliError::validation("--jobs must be >= 1"));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| CliError::validation(format!("worker pool: {e}")))?;
            pool.install(|| run_sweep(&spec))?
        }
        None => run_sweep(&spec)?,
    };

    write_file(&out, &table.to_csv())?;
    if let Some(svg_path) = svg {
        write_file(&svg_path, &table.to_svg())?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// vote
// ---------------------------------------------------------------------------

pub fn vote(args: VoteArgs, section: Section<'_>) -> Result<(), CliError> {
    let kind = match require(args.kind.or(section.string("kind")?), "kind")?.as_str() {
        "single" | "single_choice" => BallotKind::SingleChoice,
        "approval" => BallotKind::Approval,
        "ranked" => BallotKind::Ranked,
        "quadratic" => BallotKind::Quadratic,
        other => {
            return Err(CliError::validation(format!(
                "unknown ballot kind '{other}' (expected single, approval, ranked or quadratic)"
            )))
        }
    };
    let ballots_path = require(args.ballots.or(section.path("ballots")?), "ballots")?;
    let weights_path = match args.weights {
        Some(path) => Some(path),
        None => section.path("weights")?,
    };
    let budget = args.budget.or(section.u64("budget")?);

    if kind == BallotKind::Quadratic && weights_path.is_some() {
        return Err(CliError::validation(
            "quadratic tallies take no --weights; the budget bounds each ballot",
        ));
    }
    if kind != BallotKind::Quadratic && budget.is_some() {
        return Err(CliError::validation(
            "--budget only applies to --kind quadratic",
        ));
    }

    let ballots = BallotSet::parse_csv(kind, &read_file(&ballots_path)?)?;
    let weights: Option<TokenLedger> = match &weights_path {
        Some(path) => Some(TokenLedger::parse_csv(&read_file(path)?)?),
        None => None,
    };

    let result = match kind {
        BallotKind::SingleChoice => tally_single_choice(&ballots, weights.as_ref())?,
        BallotKind::Approval => tally_approval(&ballots, weights.as_ref())?,
        BallotKind::Ranked => tally_ranked_irv(&ballots, weights.as_ref())?,
        BallotKind::Quadratic => {
            tally_quadratic(&ballots, budget.unwrap_or(DEFAULT_QUADRATIC_BUDGET))?
        }
    };

    let mut json = result.to_json();
    json.push('\n');
    emit(args.out.as_deref(), &json)
}

// ---------------------------------------------------------------------------
// govern
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct GovernReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    turnout: Option<TurnoutMetrics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    centralization: Option<daosim::governance::CentralizationMetrics<f64>>,
}

fn parse_participation(value: &str) -> Result<Participation, CliError> {
    let rates = parse_grid(value, "participation")?;
    match rates.len() {
        0 => Err(CliError::validation("--participation is empty")),
        1 => Ok(Participation::Uniform(rates[0])),
        _ => Ok(Participation::PerMember(rates)),
    }
}

pub fn govern(args: GovernArgs, section: Section<'_>) -> Result<(), CliError> {
    let members = args.members.or(section.usize("members")?);
    let proposals = args.proposals.or(section.usize("proposals")?);
    let participation = args.participation.or(section.string("participation")?);
    let approve_rate = args.approve_rate.or(section.f64("approve-rate")?);
    let ledger_path = match args.ledger {
        Some(path) => Some(path),
        None => section.path("ledger")?,
    };

    let wants_simulation = members.is_some()
        || proposals.is_some()
        || participation.is_some()
        || approve_rate.is_some();
    if !wants_simulation && ledger_path.is_none() {
        return Err(CliError::validation(
            "nothing to do: pass --members/--proposals/--participation/--approve-rate \
             for a turnout simulation, --ledger for centralization metrics, or both",
        ));
    }

    let turnout = if wants_simulation {
        let history = simulate_proposals(
            require(members, "members")?,
            require(proposals, "proposals")?,
            &parse_participation(&require(participation, "participation")?)?,
            require(approve_rate, "approve-rate")?,
            args.seed.or(section.u64("seed")?).unwrap_or(0),
        )?;
        Some(turnout_metrics(&history)?)
    } else {
        None
    };

    let centralization = match &ledger_path {
        Some(path) => {
            let ledger: TokenLedger = TokenLedger::parse_csv(&read_file(path)?)?;
            Some(centralization_metrics(&ledger)?)
        }
        None => None,
    };

    let report = GovernReport {
        turnout,
        centralization,
    };
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    emit(args.out.as_deref(), &json)
}

// ---------------------------------------------------------------------------
// assess
// ---------------------------------------------------------------------------

pub fn assess(args: AssessArgs, section: Section<'_>) -> Result<(), CliError> {
    let file = require(args.file.or(section.path("file")?), "file")?;
    let format = ReportFormat::parse(
        args.format
            .or(section.string("format")?)
            .as_deref()
            .unwrap_or("text"),
    )?;
    let assessment = Assessment::from_json(&read_file(&file)?)?;
    let report = score_assessment(&assessment)?;
    let mut rendered = render_report(&report, format);
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    emit(args.out.as_deref(), &rendered)
}
