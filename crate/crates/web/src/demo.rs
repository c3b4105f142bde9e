//! Plain-Rust side of the browser demo. Everything here runs single-threaded
//! so it works unchanged under wasm32.

use serde::Serialize;

use ddatopo::config::ExperimentConfig;
use ddatopo::dda::{self, ProblemInstance, StepRule};
use ddatopo::design::{self, FiedlerBackend};
use ddatopo::experiment::{ScheduledNetwork, Setup};
use ddatopo::graph::{self, DynamicNetwork, Graph};
use ddatopo::{rng, theory, Result};

/// Reference-optimum steps; far fewer than the CLI uses to keep the page responsive.
pub const ORACLE_STEPS: usize = 200_000;
const CHECKPOINTS: usize = 200;

#[derive(Clone, Debug)]
pub struct Params {
    pub n: usize,
    pub radius: f64,
    pub seed: u64,
    pub budget: usize,
    pub delta: usize,
    pub horizon: usize,
}

impl Default for Params {
    fn default() -> Self {
        Self { n: 30, radius: 0.3, seed: 42, budget: 20, delta: 50, horizon: 2000 }
    }
}

impl Params {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::desk();
        cfg.seed = self.seed;
        cfg.graph.n = self.n;
        cfg.graph.radius = self.radius;
        cfg.design.k = self.budget;
        cfg.schedule.delta = self.delta;
        cfg.dda.horizon = self.horizon;
        cfg.dda.trials = 1;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphView {
    pub n: usize,
    pub positions: Vec<[f64; 2]>,
    pub edges: Vec<[usize; 2]>,
    pub connectivity: f64,
}

impl GraphView {
    fn of(g: &Graph) -> Result<Self> {
        Ok(Self {
            n: g.n(),
            positions: g.positions().map(<[_]>::to_vec).unwrap_or_default(),
            edges: g.edges().iter().map(|e| [e.i, e.j]).collect(),
            connectivity: graph::algebraic_connectivity(g)?,
        })
    }
}

pub fn sensor_graph(n: usize, radius: f64, seed: u64) -> Result<GraphView> {
    let g = graph::random_sensor_graph(n, radius, rng::stream_seed(seed, rng::STREAM_GRAPH))?;
    GraphView::of(&g)
}

#[derive(Clone, Debug, Serialize)]
pub struct Pick {
    pub edge: [usize; 2],
    pub cost: f64,
    /// Algebraic connectivity once this edge and all earlier picks are in.
    pub connectivity: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DesignView {
    pub base: GraphView,
    pub candidates: usize,
    pub picks: Vec<Pick>,
}

pub fn greedy_design(p: &Params) -> Result<DesignView> {
    let setup = Setup::new(&p.config()?)?;
    let problem = &setup.problem;
    let budget = p.budget.min(problem.k_candidates());
    let chosen = design::greedy_select(problem, budget, &FiedlerBackend::Exact)?;
    let mut g = setup.graph.clone();
    let mut picks = Vec::with_capacity(chosen.len());
    for c in &chosen {
        g = g.with_added(&[c.edge])?;
        picks.push(Pick {
            edge: [c.edge.i, c.edge.j],
            cost: setup.cost_of(&[c.edge]),
            connectivity: graph::algebraic_connectivity(&g)?,
        });
    }
    Ok(DesignView { base: GraphView::of(&setup.graph)?, candidates: problem.k_candidates(), picks })
}

#[derive(Clone, Debug, Serialize)]
pub struct RunView {
    pub t: Vec<usize>,
    pub regret: Vec<f64>,
    pub static_regret: Vec<f64>,
    pub bound: Vec<f64>,
    pub sigma2: Vec<f64>,
    pub edges_added: Vec<usize>,
    pub delta_star: usize,
    pub f_star: f64,
}

pub fn simulate(p: &Params) -> Result<RunView> {
    let cfg = p.config()?;
    let setup = Setup::new(&cfg)?;
    let budget = p.budget.min(setup.problem.k_candidates());
    let picks = design::greedy_select(&setup.problem, budget, &FiedlerBackend::Exact)?;
    let selected: Vec<_> = picks.iter().map(|c| c.edge).collect();
    let growing = ScheduledNetwork::build(&setup.graph, &selected, &cfg, p.delta)?;
    let fixed = ScheduledNetwork::from_network(DynamicNetwork::fixed(setup.graph.clone()), p.horizon)?;

    let seed = rng::trial_seed(cfg.seed, 0);
    let inst = ProblemInstance::random(cfg.graph.n, cfg.dda.p, cfg.dda.radius, seed)?;
    let f_star = dda::reference_optimum(&inst, ORACLE_STEPS, rng::splitmix64(seed)).value;
    let cadence = (p.horizon / CHECKPOINTS).max(1);
    let run = |net: &ScheduledNetwork| dda::run_dda(&inst, &net.network, &net.spectra, p.horizon, StepRule::default(), cadence, f_star);
    let dynamic = run(&growing)?;
    let base = run(&fixed)?;

    let ts: Vec<usize> = dynamic.checkpoints.iter().map(|c| c.t).collect();
    let report = theory::bound_report(
        &growing.spectra,
        &growing.terms,
        inst.radius,
        inst.lipschitz,
        dynamic.step_constant,
        p.horizon,
        cfg.graph.n,
        ddatopo::experiment::EPSILON,
        &ts,
    )?;
    Ok(RunView {
        t: ts,
        regret: dynamic.checkpoints.iter().map(|c| c.max_regret).collect(),
        static_regret: base.checkpoints.iter().map(|c| c.max_regret).collect(),
        bound: report.regret_bound_series.iter().map(|&(_, b)| b).collect(),
        sigma2: dynamic.checkpoints.iter().map(|c| c.sigma2).collect(),
        edges_added: dynamic.checkpoints.iter().map(|c| c.edges_added).collect(),
        delta_star: report.mixing.delta_star,
        f_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_view_matches_generator() {
        let v = sensor_graph(20, 0.4, 3).unwrap();
        assert_eq!(v.positions.len(), 20);
        assert!(v.connectivity > 0.0);
        assert!(v.edges.iter().all(|e| e[0] < e[1] && e[1] < 20));
    }

    #[test]
    fn greedy_connectivity_is_nondecreasing() {
        let d = greedy_design(&Params { n: 15, budget: 6, ..Params::default() }).unwrap();
        assert_eq!(d.picks.len(), 6);
        let mut prev = d.base.connectivity;
        for p in &d.picks {
            assert!(p.connectivity >= prev - 1e-12);
            prev = p.connectivity;
        }
    }

    #[test]
    fn budget_is_clamped_to_candidates() {
        let d = greedy_design(&Params { n: 6, radius: 0.5, budget: 100, ..Params::default() }).unwrap();
        assert_eq!(d.picks.len(), d.candidates);
    }

    #[test]
    fn simulation_series_line_up() {
        let r = simulate(&Params { n: 12, budget: 5, delta: 20, horizon: 400, ..Params::default() }).unwrap();
        assert_eq!(r.t.len(), r.regret.len());
        assert_eq!(r.t.len(), r.static_regret.len());
        assert_eq!(r.t.len(), r.bound.len());
        assert_eq!(*r.t.last().unwrap(), 400);
        assert_eq!(*r.edges_added.last().unwrap(), 5);
        assert!(r.regret.iter().all(|x| x.is_finite()));
        assert!(r.bound.iter().zip(&r.regret).all(|(b, g)| b >= g));
    }

    #[test]
    fn bad_parameters_are_errors() {
        assert!(simulate(&Params { delta: 0, ..Params::default() }).is_err());
        assert!(sensor_graph(1, 0.3, 0).is_err());
    }
}
