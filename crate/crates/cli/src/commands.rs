use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use ddatopo::config::{ExperimentConfig, Scale};
use ddatopo::dda::{ScheduleSpec, StepRule, Trajectory};
use ddatopo::design::{FiedlerBackend, SelectionResult};
use ddatopo::experiment::{self, Design, ScheduledNetwork, Setup, TrialData};
use ddatopo::graph::{DynamicNetwork, Edge, Graph, MixingRows};
use ddatopo::{io, protocols, spectral, theory, Error, Result};

use crate::{Axis, GlobalArgs, ScaleArg};

pub struct Context {
    setup: Setup,
    out: PathBuf,
}

impl Context {
    pub fn new(args: &GlobalArgs) -> Result<Self> {
        let scale = match args.scale {
            ScaleArg::Desk => Scale::Desk,
            ScaleArg::Paper => Scale::Paper,
        };
        let mut cfg = match &args.config {
            Some(path) => ExperimentConfig::preset(scale).overlay(&read(path)?)?,
            None => ExperimentConfig::preset(scale),
        };
        if let Some(s) = args.seed {
            cfg.seed = s;
        }
        if let Some(g) = args.gamma {
            cfg.design.gamma = g;
        }
        if let Some(d) = args.delta {
            cfg.schedule.delta = d;
        }
        if let Some(k) = args.budget {
            cfg.design.k = k;
        }
        if let Some(t) = args.trials {
            cfg.dda.trials = t;
        }
        let setup = match &args.graph {
            Some(path) => {
                let g = io::parse_graph(&read(path)?)?;
                cfg.graph.n = g.n();
                cfg.validate()?;
                Setup::with_graph(&cfg, g)?
            }
            None => {
                cfg.validate()?;
                Setup::new(&cfg)?
            }
        };
        fs::create_dir_all(&args.out)?;
        Ok(Self { setup, out: args.out.clone() })
    }

    fn cfg(&self) -> &ExperimentConfig {
        &self.setup.config
    }

    fn write(&self, name: &str, contents: &str, written: &mut Vec<String>) -> Result<()> {
        let path = self.out.join(name);
        io::write_atomic(&path, contents)?;
        written.push(path.display().to_string());
        Ok(())
    }

    fn selection_of(&self, design: &Design) -> Result<SelectionResult> {
        if let Some(r) = &design.relaxed {
            return Ok(r.clone());
        }
        let problem = &self.setup.problem;
        let w_binary: Vec<bool> = problem.candidates.iter().map(|c| design.selected.contains(&c.edge)).collect();
        let w: Vec<f64> = w_binary.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        let value = problem.objective_phi(&w)?;
        Ok(SelectionResult {
            w_relaxed: w,
            w_binary,
            objective_trace: vec![value],
            best_iteration: 0,
            selected_edges: design.selected.clone(),
            best_objective: value,
            binary_objective: value,
        })
    }

    pub fn design(&self) -> Result<Value> {
        let mut written = Vec::new();
        let design = experiment::run_design(&self.setup)?;
        let selection = self.selection_of(&design)?;
        let base = &self.setup.graph;
        self.write("graph.txt", &io::graph_to_string(base), &mut written)?;
        self.write("selection.txt", &io::selection_to_string(&selection, self.cfg().design.gamma, self.setup.problem.mode), &mut written)?;
        let chosen = Graph::new(base.n(), design.selected.iter().copied())?;
        self.write("selected_edges.txt", &io::graph_to_string(&chosen), &mut written)?;

        let mut summary = json!({
            "command": "design",
            "method": format!("{:?}", self.cfg().design.method).to_lowercase(),
            "candidates": self.setup.problem.k_candidates(),
            "selected": design.selected.len(),
            "cost_total": self.setup.cost_of(&design.selected),
            "objective": selection.binary_objective,
            "algebraic_connectivity_before": spectral::fiedler_pair_exact(&base.laplacian())?.value,
            "algebraic_connectivity_after": spectral::fiedler_pair_exact(&base.with_added(&design.selected)?.laplacian())?.value,
        });
        if self.cfg().decentralized.enabled {
            let rows = MixingRows::from_dense(&spectral::design_matrix(&base.laplacian()));
            let dc = &self.cfg().decentralized;
            let run = protocols::decentralized_top_eigvec(&rows, dc.outer_rounds, dc.inner_rounds, self.cfg().seed, true)?;
            self.write("protocol_trace.csv", &io::trace_csv(&run.trace), &mut written)?;
            summary["protocol"] = json!({
                "rounds": run.stats.rounds,
                "messages": run.stats.messages,
                "final_error": run.stats.final_error,
            });
        }
        summary["files"] = json!(written);
        Ok(summary)
    }

    fn selected_from_file(&self, path: &Path) -> Result<Vec<Edge>> {
        let sel = io::parse_selection(&read(path)?)?;
        let cands = &self.setup.problem.candidates;
        if sel.w_binary.len() != cands.len() {
            return Err(Error::DimensionMismatch { expected: cands.len(), got: sel.w_binary.len() });
        }
        Ok(cands.iter().zip(&sel.w_binary).filter(|(_, b)| **b).map(|(c, _)| c.edge).collect())
    }

    pub fn schedule(&self, selection: Option<&Path>) -> Result<Value> {
        let selected = match selection {
            Some(p) => self.selected_from_file(p)?,
            None => experiment::run_design(&self.setup)?.selected,
        };
        let cfg = self.cfg();
        let spec = ScheduleSpec { selected, ordering: cfg.schedule.ordering, delta: cfg.schedule.delta, horizon: cfg.dda.horizon };
        let additions = spec.additions(&self.setup.graph, &FiedlerBackend::Exact)?;
        let mut written = Vec::new();
        self.write("schedule.txt", &io::schedule_to_string(self.setup.graph.n(), &additions), &mut written)?;
        Ok(json!({
            "command": "schedule",
            "scheduled": additions.len(),
            "dropped": spec.selected.len() - additions.len(),
            "files": written,
        }))
    }

    fn network(&self, schedule: Option<&Path>) -> Result<ScheduledNetwork> {
        let cfg = self.cfg();
        match schedule {
            Some(p) => {
                let (n, additions) = io::parse_schedule(&read(p)?)?;
                if n != self.setup.graph.n() {
                    return Err(Error::DimensionMismatch { expected: self.setup.graph.n(), got: n });
                }
                ScheduledNetwork::from_network(DynamicNetwork::new(self.setup.graph.clone(), additions)?, cfg.dda.horizon)
            }
            None => {
                let design = experiment::run_design(&self.setup)?;
                ScheduledNetwork::build(&self.setup.graph, &design.selected, cfg, cfg.schedule.delta)
            }
        }
    }

    fn trials(&self, count: usize) -> Result<Vec<TrialData>> {
        experiment::prepare_trials(self.cfg(), count, experiment::ORACLE_STEPS)
    }

    fn trajectories(&self, net: &ScheduledNetwork, trials: &[TrialData]) -> Result<Vec<Trajectory>> {
        let cfg = self.cfg();
        experiment::run_trials(net, trials, cfg.dda.horizon, cfg.checkpoint_every(), StepRule::default())
    }

    pub fn run(&self, schedule: Option<&Path>) -> Result<Value> {
        let net = self.network(schedule)?;
        let trials = self.trials(self.cfg().dda.trials)?;
        let trajs = self.trajectories(&net, &trials)?;
        let mut mean = trajs[0].clone();
        for (k, c) in mean.checkpoints.iter_mut().enumerate() {
            let vals: Vec<f64> = trajs.iter().map(|t| t.checkpoints[k].max_regret).collect();
            c.max_regret = experiment::mean_stderr(&vals).0;
        }
        let finals: Vec<f64> = trajs.iter().map(Trajectory::final_regret).collect();
        let (m, se) = experiment::mean_stderr(&finals);
        let mut written = Vec::new();
        self.write("trajectory.csv", &io::trajectory_csv(&mean), &mut written)?;
        Ok(json!({
            "command": "run",
            "trials": trials.len(),
            "horizon": self.cfg().dda.horizon,
            "edges_added": net.added_edges(self.cfg().dda.horizon).len(),
            "regret_mean": m,
            "regret_stderr": se,
            "files": written,
        }))
    }

    pub fn theory(&self, schedule: Option<&Path>) -> Result<Value> {
        let cfg = self.cfg();
        let net = self.network(schedule)?;
        let trials = self.trials(1)?;
        let traj = &self.trajectories(&net, &trials)?[0];
        let ts: Vec<usize> = traj.checkpoints.iter().map(|c| c.t).collect();
        let report = experiment::bounds_for(&net, &trials, cfg, &ts)?.remove(0);
        let sigma2 = net.spectra.initial().sigma2;
        let pairs: Vec<(usize, f64)> = net.terms.iter().map(|s| (s.t, s.term)).collect();
        let rows = traj
            .checkpoints
            .iter()
            .zip(&report.regret_bound_series)
            .map(|(c, &(t, bound))| Ok((t, theory::solve_mixing_time(&pairs, sigma2, t, cfg.graph.n)?.delta_star, bound, c.max_regret)))
            .collect::<Result<Vec<_>>>()?;
        let mut written = Vec::new();
        let m = &report.mixing;
        self.write("theory.csv", &io::theory_csv(m.delta_star, m.beta_star, report.net_bound, report.regret_bound, report.time_bound.scale), &mut written)?;
        self.write("theory_checkpoints.csv", &io::theory_checkpoints_csv(&rows), &mut written)?;
        Ok(json!({
            "command": "theory",
            "delta_star": m.delta_star,
            "delta_star_approx": report.approx_delta,
            "beta_star": m.beta_star,
            "clamped": m.clamped,
            "sigma2_p0": sigma2,
            "regret_bound": report.regret_bound,
            "empirical_regret": traj.final_regret(),
            "files": written,
        }))
    }

    pub fn sweep(&self, axis: Axis, values: &[f64]) -> Result<Value> {
        let cfg = self.cfg();
        let trials = self.trials(cfg.dda.trials)?;
        let kk = self.setup.problem.k_candidates();
        let result = match axis {
            Axis::Gamma => {
                let gammas = if values.is_empty() { vec![0.0, 0.001, 0.01, 0.1, 1.0] } else { values.to_vec() };
                experiment::sweep_gamma(&self.setup, &trials, &gammas)?
            }
            Axis::Delta => {
                let t = cfg.dda.horizon;
                let mut deltas = if values.is_empty() { vec![1, 50.min(t), 500.min(t), t] } else { counts(values)? };
                deltas.sort_unstable();
                deltas.dedup();
                let design = experiment::run_design(&self.setup)?;
                experiment::sweep_delta(&self.setup, &design, &trials, &deltas)?
            }
            Axis::Budget => {
                let mut budgets = if values.is_empty() { vec![0, kk / 8, kk / 4, kk / 2, kk] } else { counts(values)? };
                budgets.sort_unstable();
                budgets.dedup();
                experiment::sweep_edges_vs_regret(&self.setup, &trials, &budgets)?
            }
        };
        let mut written = Vec::new();
        self.write("sweep.csv", &result.to_csv(), &mut written)?;
        self.write("sweep_design.csv", &result.design_csv(), &mut written)?;
        Ok(json!({
            "command": "sweep",
            "axis": result.axis_name,
            "rows": result.rows.len(),
            "trials": trials.len(),
            "files": written,
        }))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn counts(values: &[f64]) -> Result<Vec<usize>> {
    values
        .iter()
        .map(|&v| {
            if v >= 0.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(Error::InvalidArgument(format!("axis value {v} must be a non-negative integer")))
            }
        })
        .collect()
}
