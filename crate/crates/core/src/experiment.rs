//! Experiment orchestration: design, scheduling, repeated DDA trials,
//! theory overlays and sweeps.
//!
//! The base graph depends only on the master seed; each trial draws its own
//! regression instance from `trial_seed(master, k)`, so adding trials never
//! changes earlier ones.

use crate::config::{DesignMethod, ExperimentConfig, ModeName};
use crate::dda::{self, ProblemInstance, ScheduleSpec, StepRule, Trajectory};
use crate::design::{self, ConstraintMode, FiedlerBackend, SelectionProblem, SelectionResult, SolverConfig};
use crate::error::{Error, Result};
use crate::graph::{self, DynamicNetwork, Edge, Graph, NetworkSpectra};
use crate::rng;
use crate::spectral::PowerConfig;
use crate::theory::{self, BoundReport, ScheduleTerm};

/// Iterations of the centralized reference-optimum run.
pub const ORACLE_STEPS: usize = 1_000_000;
/// Target accuracy for convergence-time measurements.
pub const EPSILON: f64 = 0.1;

fn mode_of(cfg: &ExperimentConfig) -> ConstraintMode {
    match cfg.design.mode {
        ModeName::C1 => ConstraintMode::Box,
        ModeName::C2 => ConstraintMode::CappedSimplex { k: cfg.design.k },
    }
}

/// Base graph and selection problem of a configuration.
#[derive(Clone, Debug)]
pub struct Setup {
    pub config: ExperimentConfig,
    pub graph: Graph,
    pub problem: SelectionProblem,
}

impl Setup {
    pub fn new(config: &ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let seed = rng::stream_seed(config.seed, rng::STREAM_GRAPH);
        let graph = graph::random_sensor_graph(config.graph.n, config.graph.radius, seed)?;
        Self::with_graph(config, graph)
    }

    pub fn with_graph(config: &ExperimentConfig, graph: Graph) -> Result<Self> {
        let mut mode = mode_of(config);
        let kk = graph::candidate_edges(&graph).len();
        if let ConstraintMode::CappedSimplex { k } = mode {
            mode = ConstraintMode::CappedSimplex { k: k.min(kk) };
        }
        let problem = SelectionProblem::from_graph(graph.clone(), &config.cost, config.design.gamma, mode)?;
        Ok(Self { config: config.clone(), graph, problem })
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            step_scale: self.config.design.step_scale,
            iters: self.config.design.iters,
            power: PowerConfig {
                seed: rng::stream_seed(self.config.seed, rng::STREAM_POWER),
                detect_degeneracy: false,
                ..PowerConfig::default()
            },
            ..SolverConfig::default()
        }
    }

    pub fn cost_of(&self, edges: &[Edge]) -> f64 {
        edges
            .iter()
            .map(|e| self.problem.candidates.iter().position(|c| c.edge == *e).map_or(0.0, |i| self.problem.costs[i]))
            .sum()
    }
}

/// Selected edges, in selection order.
#[derive(Clone, Debug, PartialEq)]
pub struct Design {
    pub selected: Vec<Edge>,
    /// Present for the subgradient method.
    pub relaxed: Option<SelectionResult>,
}

/// Selects edges with the configured method. Greedy selection picks
/// `min(k, K)` edges.
pub fn run_design(setup: &Setup) -> Result<Design> {
    match setup.config.design.method {
        DesignMethod::Greedy => {
            let budget = setup.config.design.k.min(setup.problem.k_candidates());
            let picks = design::greedy_select(&setup.problem, budget, &FiedlerBackend::Exact)?;
            Ok(Design { selected: picks.into_iter().map(|c| c.edge).collect(), relaxed: None })
        }
        DesignMethod::Subgradient => {
            let r = design::projected_subgradient_solve(&setup.problem, &setup.solver_config())?;
            Ok(Design { selected: r.selected_edges.clone(), relaxed: Some(r) })
        }
    }
}

/// A scheduled network with its spectra and schedule terms.
#[derive(Clone, Debug)]
pub struct ScheduledNetwork {
    pub network: DynamicNetwork,
    pub spectra: NetworkSpectra,
    pub terms: Vec<ScheduleTerm>,
}

impl ScheduledNetwork {
    pub fn build(base: &Graph, selected: &[Edge], cfg: &ExperimentConfig, delta: usize) -> Result<Self> {
        let spec = ScheduleSpec {
            selected: selected.to_vec(),
            ordering: cfg.schedule.ordering,
            delta,
            horizon: cfg.dda.horizon,
        };
        let network = spec.network(base, &FiedlerBackend::Exact)?;
        Self::from_network(network, cfg.dda.horizon)
    }

    pub fn from_network(network: DynamicNetwork, horizon: usize) -> Result<Self> {
        let spectra = NetworkSpectra::compute(&network, horizon)?;
        let terms = theory::schedule_terms(&network, &spectra);
        Ok(Self { network, spectra, terms })
    }

    pub fn added_edges(&self, horizon: usize) -> Vec<Edge> {
        self.network.additions().iter().filter(|a| a.0 <= horizon).map(|a| a.1).collect()
    }
}

/// One trial's regression instance and reference optimum.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialData {
    pub seed: u64,
    pub instance: ProblemInstance,
    pub f_star: f64,
}

/// Draws the instances of `trials` trials and their reference optima.
pub fn prepare_trials(cfg: &ExperimentConfig, trials: usize, oracle_steps: usize) -> Result<Vec<TrialData>> {
    let seeds: Vec<u64> = (0..trials).map(|k| rng::trial_seed(cfg.seed, k)).collect();
    parallel_map(&seeds, |&seed| {
        let instance = ProblemInstance::random(cfg.graph.n, cfg.dda.p, cfg.dda.radius, seed)?;
        let opt = dda::reference_optimum(&instance, oracle_steps, rng::splitmix64(seed));
        Ok(TrialData { seed, instance, f_star: opt.value })
    })
}

/// Maps `f` over `items` on scoped threads, preserving order.
pub fn parallel_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Result<U> + Sync) -> Result<Vec<U>> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(threads).max(1);
    let f = &f;
    let parts: Vec<Result<Vec<U>>> = std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(move || c.iter().map(f).collect())).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(items.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Runs every trial over the same scheduled network.
pub fn run_trials(net: &ScheduledNetwork, trials: &[TrialData], horizon: usize, cadence: usize, step: StepRule) -> Result<Vec<Trajectory>> {
    parallel_map(trials, |tr| dda::run_dda(&tr.instance, &net.network, &net.spectra, horizon, step, cadence, tr.f_star))
}

/// Mean and standard error.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// First checkpoint with regret at most `eps` (the last checkpoint's time
/// if it is never reached).
pub fn convergence_time(tr: &Trajectory, eps: f64) -> usize {
    tr.checkpoints
        .iter()
        .find(|c| c.max_regret <= eps)
        .or(tr.checkpoints.last())
        .map_or(0, |c| c.t)
}

/// Theory bounds for a network when every trial uses the prescribed step.
pub fn bounds_for(net: &ScheduledNetwork, trials: &[TrialData], cfg: &ExperimentConfig, checkpoints: &[usize]) -> Result<Vec<BoundReport>> {
    let sigma2 = net.spectra.initial().sigma2;
    trials
        .iter()
        .map(|tr| {
            let inst = &tr.instance;
            let a = StepRule::default().constant(inst.radius, inst.lipschitz, sigma2);
            theory::bound_report(
                &net.spectra,
                &net.terms,
                inst.radius,
                inst.lipschitz,
                a,
                cfg.dda.horizon,
                cfg.graph.n,
                EPSILON,
                checkpoints,
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub axis: f64,
    pub regret_mean: f64,
    pub regret_stderr: f64,
    /// Smallest regret bound over the trials (each trial has its own `L`).
    pub regret_bound: f64,
    pub delta_star: usize,
    pub edges_added: usize,
    pub cost_total: f64,
    /// Mean empirical convergence time to [`EPSILON`].
    pub convergence_time: f64,
    /// Convergence-time scale at [`EPSILON`].
    pub time_scale: f64,
    /// `n - lambda_{n-1}` of the final graph.
    pub connectivity_distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub axis_name: String,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        use crate::io::fmt_g12;
        let mut s = format!("{}\n", crate::io::SWEEP_HEADER);
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                fmt_g12(r.axis),
                fmt_g12(r.regret_mean),
                fmt_g12(r.regret_stderr),
                fmt_g12(r.regret_bound),
                r.delta_star,
                r.edges_added,
                fmt_g12(r.cost_total)
            ));
        }
        s
    }

    /// Companion table of design-side quantities.
    pub fn design_csv(&self) -> String {
        use crate::io::fmt_g12;
        let mut s = String::from("axis,connectivity_distance,edges_added,cost_total,convergence_time,prop3_scale\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_g12(r.axis),
                fmt_g12(r.connectivity_distance),
                r.edges_added,
                fmt_g12(r.cost_total),
                fmt_g12(r.convergence_time),
                fmt_g12(r.time_scale)
            ));
        }
        s
    }
}

/// Evaluates one scheduled network over all trials.
pub fn evaluate(setup: &Setup, net: &ScheduledNetwork, trials: &[TrialData], axis: f64) -> Result<SweepRow> {
    let cfg = &setup.config;
    let horizon = cfg.dda.horizon;
    let trajectories = run_trials(net, trials, horizon, cfg.checkpoint_every(), StepRule::default())?;
    let finals: Vec<f64> = trajectories.iter().map(Trajectory::final_regret).collect();
    let (regret_mean, regret_stderr) = mean_stderr(&finals);
    let times: Vec<f64> = trajectories.iter().map(|t| convergence_time(t, EPSILON) as f64).collect();
    let bounds = bounds_for(net, trials, cfg, &[])?;
    let regret_bound = bounds.iter().map(|b| b.regret_bound).fold(f64::INFINITY, f64::min);
    let first = bounds.first().ok_or_else(|| Error::InvalidArgument("at least one trial is required".into()))?;
    let added = net.added_edges(horizon);
    let last = net.spectra.versions.last().expect("base version");
    Ok(SweepRow {
        axis,
        regret_mean,
        regret_stderr,
        regret_bound,
        delta_star: first.mixing.delta_star,
        edges_added: added.len(),
        cost_total: setup.cost_of(&added),
        convergence_time: mean_stderr(&times).0,
        time_scale: first.time_bound.scale,
        connectivity_distance: cfg.graph.n as f64 - last.algebraic_connectivity,
    })
}

/// Regret versus switching interval for a fixed design.
pub fn sweep_delta(setup: &Setup, design: &Design, trials: &[TrialData], deltas: &[usize]) -> Result<SweepResult> {
    let mut ds = deltas.to_vec();
    ds.sort_unstable();
    let rows = ds
        .iter()
        .map(|&d| {
            let net = ScheduledNetwork::build(&setup.graph, &design.selected, &setup.config, d)?;
            evaluate(setup, &net, trials, d as f64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { axis_name: "Delta".into(), rows })
}

/// Regret and mixing time versus the number of selected edges. Greedy
/// selection is nested, so every budget uses a prefix of one greedy run;
/// the subgradient method re-solves the cardinality-constrained problem.
pub fn sweep_edges_vs_regret(setup: &Setup, trials: &[TrialData], budgets: &[usize]) -> Result<SweepResult> {
    let mut bs = budgets.to_vec();
    bs.sort_unstable();
    let kk = setup.problem.k_candidates();
    if let Some(&b) = bs.iter().find(|&&b| b > kk) {
        return Err(Error::BudgetTooLarge { budget: b, available: kk });
    }
    let greedy = match setup.config.design.method {
        DesignMethod::Greedy => {
            let max = bs.last().copied().unwrap_or(0);
            Some(design::greedy_select(&setup.problem, max, &FiedlerBackend::Exact)?)
        }
        DesignMethod::Subgradient => None,
    };
    let rows = bs
        .iter()
        .map(|&b| {
            let selected: Vec<Edge> = match &greedy {
                Some(picks) => picks[..b].iter().map(|c| c.edge).collect(),
                None => {
                    let mut p = setup.problem.clone();
                    p.mode = ConstraintMode::CappedSimplex { k: b };
                    design::projected_subgradient_solve(&p, &setup.solver_config())?.selected_edges
                }
            };
            let net = ScheduledNetwork::build(&setup.graph, &selected, &setup.config, setup.config.schedule.delta)?;
            evaluate(setup, &net, trials, b as f64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { axis_name: "budget".into(), rows })
}

/// Design tradeoff versus the cost weight `gamma`, using the projected
/// subgradient method in the configured constraint mode.
pub fn sweep_gamma(setup: &Setup, trials: &[TrialData], gammas: &[f64]) -> Result<SweepResult> {
    if gammas.is_empty() {
        return Err(Error::InvalidArgument("gamma list is empty".into()));
    }
    let mut gs = gammas.to_vec();
    gs.sort_by(f64::total_cmp);
    let rows = gs
        .iter()
        .map(|&g| {
            let mut p = setup.problem.clone();
            p.gamma = g;
            let r = design::projected_subgradient_solve(&p, &setup.solver_config())?;
            let net = ScheduledNetwork::build(&setup.graph, &r.selected_edges, &setup.config, setup.config.schedule.delta)?;
            let mut row = evaluate(setup, &net, trials, g)?;
            let final_graph = setup.graph.with_added(&r.selected_edges)?;
            row.connectivity_distance = setup.config.graph.n as f64 - graph::algebraic_connectivity(&final_graph)?;
            row.cost_total = setup.cost_of(&r.selected_edges);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { axis_name: "gamma".into(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> ExperimentConfig {
        let mut c = ExperimentConfig::desk();
        c.graph.n = 8;
        c.graph.radius = 0.5;
        c.design.k = 4;
        c.dda.horizon = 200;
        c.dda.trials = 2;
        c
    }

    #[test]
    fn stats_helpers() {
        assert_eq!(mean_stderr(&[1.0, 3.0]), (2.0, 1.0));
        assert_eq!(mean_stderr(&[5.0]), (5.0, 0.0));
    }

    #[test]
    fn small_pipeline() {
        let cfg = tiny();
        let setup = Setup::new(&cfg).unwrap();
        let design = run_design(&setup).unwrap();
        assert_eq!(design.selected.len(), 4.min(setup.problem.k_candidates()));
        let trials = prepare_trials(&cfg, 2, 20_000).unwrap();
        let sweep = sweep_delta(&setup, &design, &trials, &[200, 1]).unwrap();
        assert_eq!(sweep.rows[0].axis, 1.0);
        for r in &sweep.rows {
            assert!(r.regret_mean.is_finite());
            assert!(r.regret_bound >= r.regret_mean);
        }
        let again = sweep_delta(&setup, &design, &trials, &[200, 1]).unwrap();
        assert_eq!(sweep, again);
    }
}
