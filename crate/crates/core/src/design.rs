//! Centralized edge selection.
//!
//! A selection is a weight vector `w` over the candidate edges of a base
//! graph. The relaxed problem minimizes
//!
//! ```text
//! phi(w) = n * lambda_1(P(w) - 11^T/n) + gamma * c^T w,    P(w) = I - L(w)/n
//! ```
//!
//! over the box `[0,1]^K` (optionally intersected with `1^T w = k`), which is
//! `n - lambda_{n-1}(L(w))` plus the cost penalty. The relaxed optimum is
//! rounded back to a Boolean selection. [`greedy_select`] is the one-edge-at-a-time
//! alternative.

use crate::error::{Error, Result};
use crate::graph::{candidate_edges, edge_costs, CostModel, Edge, EdgeVector, Graph};
use crate::matrix::SymMatrix;
use crate::spectral::{self, PowerConfig};

/// Feasible set of the relaxed selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintMode {
    /// `w in [0,1]^K`.
    Box,
    /// `w in [0,1]^K` with `1^T w = k`.
    CappedSimplex { k: usize },
}

impl ConstraintMode {
    pub fn label(&self) -> &'static str {
        match self {
            ConstraintMode::Box => "C1",
            ConstraintMode::CappedSimplex { .. } => "C2",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelectionProblem {
    pub base: Graph,
    pub candidates: Vec<EdgeVector>,
    pub costs: Vec<f64>,
    pub gamma: f64,
    pub mode: ConstraintMode,
}

impl SelectionProblem {
    pub fn new(
        base: Graph,
        candidates: Vec<EdgeVector>,
        costs: Vec<f64>,
        gamma: f64,
        mode: ConstraintMode,
    ) -> Result<Self> {
        if costs.len() != candidates.len() {
            return Err(Error::DimensionMismatch { expected: candidates.len(), got: costs.len() });
        }
        if let Some(c) = costs.iter().find(|c| !(**c > 0.0 && c.is_finite())) {
            return Err(Error::InvalidArgument(format!("edge costs must be positive, got {c}")));
        }
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidArgument(format!("gamma must be >= 0, got {gamma}")));
        }
        if let ConstraintMode::CappedSimplex { k } = mode {
            if k > candidates.len() {
                return Err(Error::InvalidCardinality { k, max: candidates.len() });
            }
        }
        Ok(Self { base, candidates, costs, gamma, mode })
    }

    /// All complement edges of a positioned graph, priced by `model`.
    pub fn from_graph(base: Graph, model: &CostModel, gamma: f64, mode: ConstraintMode) -> Result<Self> {
        let candidates = candidate_edges(&base);
        let costs = edge_costs(&base, &candidates, model)?;
        Self::new(base, candidates, costs, gamma, mode)
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn k_candidates(&self) -> usize {
        self.candidates.len()
    }

    fn check_box(&self, w: &[f64]) -> Result<()> {
        if w.len() != self.candidates.len() {
            return Err(Error::DimensionMismatch { expected: self.candidates.len(), got: w.len() });
        }
        match w.iter().position(|x| !(-1e-12..=1.0 + 1e-12).contains(x)) {
            Some(index) => Err(Error::OutsideBox { index, value: w[index] }),
            None => Ok(()),
        }
    }

    /// `L(w) = L_0 + sum_l w_l a_l a_l^T`.
    pub fn laplacian_of(&self, w: &[f64]) -> SymMatrix {
        let mut l = self.base.laplacian();
        for (c, &wl) in self.candidates.iter().zip(w) {
            if wl != 0.0 {
                l.add_edge_outer(c.edge.i, c.edge.j, wl);
            }
        }
        l
    }

    /// `P(w) = I - L(w)/n`.
    pub fn design_matrix(&self, w: &[f64]) -> SymMatrix {
        spectral::design_matrix(&self.laplacian_of(w))
    }

    pub fn cost_of(&self, w: &[f64]) -> f64 {
        self.costs.iter().zip(w).map(|(c, x)| c * x).sum()
    }

    /// `phi(w)` from the exact spectrum of the deflated design matrix.
    pub fn objective_phi(&self, w: &[f64]) -> Result<f64> {
        self.check_box(w)?;
        let n = self.n();
        let mut b = self.design_matrix(w);
        let avg = 1.0 / n as f64;
        for i in 0..n {
            for j in i..n {
                b.add_to(i, j, -avg);
            }
        }
        let top = spectral::eigenvalues(&b)?.first().copied().unwrap_or(0.0);
        Ok(n as f64 * top + self.gamma * self.cost_of(w))
    }

    /// Subgradient `-(y_i - y_j)^2 + gamma c_l` with `y` the top eigenvector
    /// of the deflated design matrix (power iteration). Also returns the
    /// power-iteration objective value and the eigenvector.
    pub fn subgradient_phi(&self, w: &[f64], cfg: &PowerConfig) -> Result<Subgradient> {
        self.check_box(w)?;
        let p = self.design_matrix(w);
        let out = spectral::top_eig_deflated(&p, cfg);
        Ok(self.subgradient_from(w, out))
    }

    fn subgradient_from(&self, w: &[f64], out: spectral::PowerOutcome) -> Subgradient {
        let y = out.pair.vector;
        let grad = self
            .candidates
            .iter()
            .zip(&self.costs)
            .map(|(c, cost)| -c.edge.incidence_dot(&y).powi(2) + self.gamma * cost)
            .collect();
        let value = self.n() as f64 * out.pair.value + self.gamma * self.cost_of(w);
        Subgradient { grad, value, eigvec: y, near_degenerate: out.near_degenerate }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Subgradient {
    pub grad: Vec<f64>,
    /// `phi(w)` as estimated by the power iteration.
    pub value: f64,
    pub eigvec: Vec<f64>,
    pub near_degenerate: bool,
}

/// Elementwise clamp to `[0, 1]`.
pub fn project_box(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| x.clamp(0.0, 1.0)).collect()
}

/// Euclidean projection onto `{w in [0,1]^K : 1^T w = k}`.
///
/// The multiplier `mu` of the sum constraint solves
/// `h(mu) = 1^T clamp(v - mu) - k = 0`. `h` is piecewise linear with kinks at
/// `v_l` and `v_l - 1`; the bracket `[min v - 1, max v]` is bisected over those
/// kinks until none is left inside, then `mu` follows in closed form from the
/// free set `S = {0 < v_l - mu < 1}` and the saturated set `S1 = {v_l - mu >= 1}`:
/// `mu = (sum_S v_l + |S1| - k) / |S|`.
pub fn project_capped_simplex(v: &[f64], k: usize) -> Result<Vec<f64>> {
    let kk = v.len();
    if k > kk {
        return Err(Error::InvalidCardinality { k, max: kk });
    }
    if kk == 0 {
        return Ok(Vec::new());
    }
    let h = |mu: f64| v.iter().map(|x| (x - mu).clamp(0.0, 1.0)).sum::<f64>() - k as f64;
    let vmin = v.iter().copied().fold(f64::INFINITY, f64::min);
    let vmax = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (mut lo, mut hi) = (vmin - 1.0, vmax);

    let mut kinks: Vec<f64> = v.iter().flat_map(|&x| [x, x - 1.0]).collect();
    kinks.sort_by(f64::total_cmp);
    kinks.dedup();
    loop {
        let a = kinks.partition_point(|&b| b <= lo);
        let b = kinks.partition_point(|&b| b < hi);
        if a >= b {
            break;
        }
        let mid = kinks[a + (b - a) / 2];
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let probe = 0.5 * (lo + hi);
    let (mut free_sum, mut free, mut saturated) = (0.0, 0usize, 0usize);
    for &x in v {
        let r = x - probe;
        if r >= 1.0 {
            saturated += 1;
        } else if r > 0.0 {
            free_sum += x;
            free += 1;
        }
    }
    let mu = if free == 0 {
        probe
    } else {
        ((free_sum + saturated as f64 - k as f64) / free as f64).clamp(lo, hi)
    };
    Ok(v.iter().map(|x| (x - mu).clamp(0.0, 1.0)).collect())
}

fn project(mode: ConstraintMode, v: &[f64]) -> Vec<f64> {
    match mode {
        ConstraintMode::Box => project_box(v),
        ConstraintMode::CappedSimplex { k } => {
            project_capped_simplex(v, k).expect("cardinality validated by the problem")
        }
    }
}

/// How a relaxed selection is turned into a Boolean one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rounding {
    /// `w_l >= rho` selects edge `l`.
    Threshold(f64),
    /// The `k` largest entries, ties to the lower index.
    TopK(usize),
}

pub fn round_selection(w: &[f64], rule: Rounding) -> Vec<bool> {
    match rule {
        Rounding::Threshold(rho) => w.iter().map(|x| x - rho >= 0.0).collect(),
        Rounding::TopK(k) => {
            let mut order: Vec<usize> = (0..w.len()).collect();
            order.sort_by(|&a, &b| w[b].total_cmp(&w[a]).then(a.cmp(&b)));
            let mut out = vec![false; w.len()];
            for &i in order.iter().take(k) {
                out[i] = true;
            }
            out
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// `kappa_l = 1 / (step_scale * sqrt(l))`.
    pub step_scale: f64,
    pub iters: usize,
    /// Starting point; `None` means the projection of `0.5 * 1`.
    pub init: Option<Vec<f64>>,
    /// Threshold for box-mode rounding.
    pub rho: f64,
    pub power: PowerConfig,
    /// Start each power iteration from the previous eigenvector.
    pub warm_start: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            step_scale: 0.2,
            iters: 2000,
            init: None,
            rho: 0.5,
            power: PowerConfig { detect_degeneracy: false, ..PowerConfig::default() },
            warm_start: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelectionResult {
    pub w_relaxed: Vec<f64>,
    pub w_binary: Vec<bool>,
    /// `phi` of every iterate, starting with the initial point.
    pub objective_trace: Vec<f64>,
    pub best_iteration: usize,
    pub selected_edges: Vec<Edge>,
    /// Exact `phi(w_relaxed)`.
    pub best_objective: f64,
    /// Exact `phi(w_binary)`.
    pub binary_objective: f64,
}

impl SelectionResult {
    pub fn binary_weights(&self) -> Vec<f64> {
        self.w_binary.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
    }

    pub fn selected_count(&self) -> usize {
        self.w_binary.iter().filter(|b| **b).count()
    }
}

/// Projected subgradient descent `w <- P_C(w - kappa_l g)`, keeping the best iterate.
pub fn projected_subgradient_solve(problem: &SelectionProblem, cfg: &SolverConfig) -> Result<SelectionResult> {
    let kk = problem.k_candidates();
    let mut w = match &cfg.init {
        Some(w0) => {
            if w0.len() != kk {
                return Err(Error::DimensionMismatch { expected: kk, got: w0.len() });
            }
            project(problem.mode, w0)
        }
        None => project(problem.mode, &vec![0.5; kk]),
    };

    let mut trace = Vec::with_capacity(cfg.iters + 1);
    let mut best = (f64::INFINITY, 0usize, w.clone());
    let mut start: Option<Vec<f64>> = None;
    for l in 0..=cfg.iters {
        let p = problem.design_matrix(&w);
        let out = match (&start, cfg.warm_start) {
            (Some(s), true) => spectral::top_eig_deflated_from(&p, s, &cfg.power),
            _ => spectral::top_eig_deflated(&p, &cfg.power),
        };
        let sg = problem.subgradient_from(&w, out);
        trace.push(sg.value);
        if sg.value < best.0 {
            best = (sg.value, l, w.clone());
        }
        if l == cfg.iters || kk == 0 {
            break;
        }
        let kappa = 1.0 / (cfg.step_scale * ((l + 1) as f64).sqrt());
        let stepped: Vec<f64> = w.iter().zip(&sg.grad).map(|(x, g)| x - kappa * g).collect();
        w = project(problem.mode, &stepped);
        start = Some(sg.eigvec);
    }

    let (_, best_iteration, w_relaxed) = best;
    let rule = match problem.mode {
        ConstraintMode::Box => Rounding::Threshold(cfg.rho),
        ConstraintMode::CappedSimplex { k } => Rounding::TopK(k),
    };
    let w_binary = round_selection(&w_relaxed, rule);
    let selected_edges = problem
        .candidates
        .iter()
        .zip(&w_binary)
        .filter(|(_, b)| **b)
        .map(|(c, _)| c.edge)
        .collect();
    let binary: Vec<f64> = w_binary.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
    Ok(SelectionResult {
        best_objective: problem.objective_phi(&w_relaxed)?,
        binary_objective: problem.objective_phi(&binary)?,
        w_relaxed,
        w_binary,
        objective_trace: trace,
        best_iteration,
        selected_edges,
    })
}

/// Source of Fiedler vectors for greedy selection and scheduling.
#[derive(Clone, Debug, PartialEq)]
pub enum FiedlerBackend {
    /// Jacobi decomposition.
    Exact,
    /// Deflated power iteration.
    Power(PowerConfig),
}

impl FiedlerBackend {
    pub fn fiedler_vector(&self, l: &SymMatrix) -> Result<Vec<f64>> {
        if l.dim() < 2 {
            return Ok(vec![1.0; l.dim()]);
        }
        match self {
            FiedlerBackend::Exact => Ok(spectral::fiedler_pair_exact(l)?.vector),
            FiedlerBackend::Power(cfg) => Ok(spectral::fiedler_pair(l, cfg).pair.vector),
        }
    }
}

/// Index of the highest score among `eligible` entries; scores within
/// `1e-12` of the running best keep the lower index.
pub fn argmax_lowest(scores: &[f64], eligible: impl Fn(usize) -> bool) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &s) in scores.iter().enumerate() {
        if !eligible(i) {
            continue;
        }
        match best {
            Some(b) if s <= scores[b] + 1e-12 => {}
            _ => best = Some(i),
        }
    }
    best
}

/// Greedy scores `(v_i - v_j)^2 - gamma c_l` of all candidates.
pub fn greedy_scores(problem: &SelectionProblem, v: &[f64]) -> Vec<f64> {
    problem
        .candidates
        .iter()
        .zip(&problem.costs)
        .map(|(c, cost)| c.edge.incidence_dot(v).powi(2) - problem.gamma * cost)
        .collect()
}

/// Picks `budget` candidates one at a time, each maximizing the greedy
/// score against the Fiedler vector of the graph built so far.
pub fn greedy_select(problem: &SelectionProblem, budget: usize, backend: &FiedlerBackend) -> Result<Vec<EdgeVector>> {
    let kk = problem.k_candidates();
    if budget > kk {
        return Err(Error::BudgetTooLarge { budget, available: kk });
    }
    let mut chosen = vec![false; kk];
    let mut picks = Vec::with_capacity(budget);
    let mut l = problem.base.laplacian();
    for _ in 0..budget {
        let v = backend.fiedler_vector(&l)?;
        let scores = greedy_scores(problem, &v);
        let pick = argmax_lowest(&scores, |i| !chosen[i]).expect("budget <= K");
        chosen[pick] = true;
        let c = problem.candidates[pick];
        l.add_edge_outer(c.edge.i, c.edge.j, 1.0);
        picks.push(c);
    }
    Ok(picks)
}
