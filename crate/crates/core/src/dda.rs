//! Distributed dual averaging over a growing network.
//!
//! Agent `i` keeps a dual vector `z_i` and a primal point `x_i`:
//!
//! ```text
//! z_i(t+1) = sum_j P_t[j,i] z_j(t) + g_i(t)
//! x_i(t+1) = argmin_{||x|| <= R} { z_i(t+1)^T x + ||x||^2 / (2 alpha_t) }
//! ```
//!
//! with `g_i(t)` a subgradient of the local loss at `x_i(t)`, starting from
//! `z_i(0) = 0`. Regret is measured on the running averages
//! `xhat_i(t) = (1/t) sum_{s=1..t} x_i(s)`.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::design::{argmax_lowest, FiedlerBackend};
use crate::error::{Error, Result};
use crate::graph::{laplacian_of, DynamicNetwork, Edge, Graph, MixingRows, NetworkSpectra};
use crate::matrix::{dot, norm2};
use crate::rng;

/// Local losses `f_i(x) = |y_i - b_i^T x|` over the ball `||x|| <= R`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemInstance {
    pub n: usize,
    pub p: usize,
    pub radius: f64,
    /// `max_i ||b_i||`.
    pub lipschitz: f64,
    pub y: Vec<f64>,
    /// Row-major `n x p`.
    pub b: Vec<f64>,
}

impl ProblemInstance {
    pub fn new(p: usize, radius: f64, y: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let n = y.len();
        if b.len() != n * p {
            return Err(Error::DimensionMismatch { expected: n * p, got: b.len() });
        }
        if !(radius > 0.0) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
        }
        let lipschitz = b.chunks(p.max(1)).map(norm2).fold(0.0, f64::max);
        if !(lipschitz > 0.0) {
            return Err(Error::InvalidArgument("all regressors are zero".into()));
        }
        Ok(Self { n, p, radius, lipschitz, y, b })
    }

    /// Standard normal responses and regressors.
    pub fn random(n: usize, p: usize, radius: f64, seed: u64) -> Result<Self> {
        let mut rng = rng::rng_from_seed(seed);
        let b: Vec<f64> = (0..n * p).map(|_| rng.sample(StandardNormal)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        Self::new(p, radius, y, b)
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.b[i * self.p..(i + 1) * self.p]
    }

    pub fn local_loss(&self, i: usize, x: &[f64]) -> f64 {
        (self.y[i] - dot(self.row(i), x)).abs()
    }

    /// `f(x) = (1/n) sum_i f_i(x)`.
    pub fn objective(&self, x: &[f64]) -> f64 {
        (0..self.n).map(|i| self.local_loss(i, x)).sum::<f64>() / self.n as f64
    }
}

/// `argmin_{||x|| <= R} z^T x + ||x||^2 / (2 alpha)`.
pub fn prox_step(z: &[f64], alpha: f64, radius: f64) -> Vec<f64> {
    let mut x = vec![0.0; z.len()];
    prox_into(z, alpha, radius, &mut x);
    x
}

fn prox_into(z: &[f64], alpha: f64, radius: f64, x: &mut [f64]) {
    let nz = norm2(z);
    if alpha * nz <= radius {
        x.iter_mut().zip(z).for_each(|(xi, zi)| *xi = -alpha * zi);
    } else {
        x.iter_mut().zip(z).for_each(|(xi, zi)| *xi = -radius * zi / nz);
    }
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `g = -sign(y - b^T x) b`, with `sign(0) = 0`.
pub fn l1_subgradient(x: &[f64], y: f64, b: &[f64]) -> Vec<f64> {
    let s = sign(y - dot(b, x));
    b.iter().map(|bi| -s * bi).collect()
}

/// Step sizes `alpha_t = a / sqrt(t)` (with `alpha_0 = alpha_1`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepRule {
    /// `a = scale * R sqrt(1 - sigma_2(P_0)) / L`.
    Prescribed { scale: f64 },
    Constant(f64),
}

impl Default for StepRule {
    fn default() -> Self {
        StepRule::Prescribed { scale: 1.0 }
    }
}

impl StepRule {
    pub fn constant(&self, radius: f64, lipschitz: f64, sigma2_p0: f64) -> f64 {
        match *self {
            StepRule::Prescribed { scale } => scale * radius * (1.0 - sigma2_p0).max(0.0).sqrt() / lipschitz,
            StepRule::Constant(a) => a,
        }
    }
}

pub fn step_size(a: f64, t: usize) -> f64 {
    a / (t.max(1) as f64).sqrt()
}

/// Per-agent iterates.
#[derive(Clone, Debug, PartialEq)]
pub struct DdaState {
    pub n: usize,
    pub p: usize,
    pub z: Vec<f64>,
    pub x: Vec<f64>,
    /// `sum_{s=1..t} x_i(s)`.
    pub x_sum: Vec<f64>,
    pub t: usize,
    scratch: Vec<f64>,
}

impl DdaState {
    pub fn new(n: usize, p: usize) -> Self {
        Self { n, p, z: vec![0.0; n * p], x: vec![0.0; n * p], x_sum: vec![0.0; n * p], t: 0, scratch: vec![0.0; n * p] }
    }

    pub fn x_of(&self, i: usize) -> &[f64] {
        &self.x[i * self.p..(i + 1) * self.p]
    }

    pub fn z_of(&self, i: usize) -> &[f64] {
        &self.z[i * self.p..(i + 1) * self.p]
    }

    /// `xhat_i(t)`; zero before the first step.
    pub fn average(&self, i: usize) -> Vec<f64> {
        let s = &self.x_sum[i * self.p..(i + 1) * self.p];
        let t = self.t.max(1) as f64;
        s.iter().map(|v| v / t).collect()
    }
}

/// One DDA step with mixing rows `P_t` and step `alpha_t`.
pub fn dda_step(state: &mut DdaState, rows: &MixingRows, instance: &ProblemInstance, alpha: f64) -> Result<()> {
    let (n, p) = (state.n, state.p);
    if rows.n() != n || instance.n != n || instance.p != p {
        return Err(Error::DimensionMismatch { expected: n, got: rows.n().min(instance.n) });
    }
    for i in 0..n {
        let out = &mut state.scratch[i * p..(i + 1) * p];
        let row = rows.row(i);
        let (j0, w0) = row[0];
        for (o, zj) in out.iter_mut().zip(&state.z[j0 * p..(j0 + 1) * p]) {
            *o = w0 * zj;
        }
        for &(j, w) in &row[1..] {
            for (o, zj) in out.iter_mut().zip(&state.z[j * p..(j + 1) * p]) {
                *o += w * zj;
            }
        }
        let bi = instance.row(i);
        let s = sign(instance.y[i] - dot(bi, &state.x[i * p..(i + 1) * p]));
        for (o, b) in out.iter_mut().zip(bi) {
            *o += -s * b;
        }
    }
    std::mem::swap(&mut state.z, &mut state.scratch);
    for i in 0..n {
        let (z, x) = (&state.z[i * p..(i + 1) * p], &mut state.x[i * p..(i + 1) * p]);
        prox_into(z, alpha, instance.radius, x);
    }
    state.x_sum.iter_mut().zip(&state.x).for_each(|(s, x)| *s += x);
    state.t += 1;
    Ok(())
}

/// Ordering applied to a selected edge set before scheduling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    /// Largest Fiedler-coordinate gap first, recomputed after every addition.
    Greedy,
    AsGiven,
}

/// Orders `selected` greedily: each pick maximizes `(v_i - v_j)^2` for the
/// Fiedler vector `v` of the graph so far; ties go to the
/// lexicographically smaller edge.
pub fn greedy_schedule(selected: &[Edge], base: &Graph, backend: &FiedlerBackend) -> Result<Vec<Edge>> {
    let mut pool = selected.to_vec();
    pool.sort_unstable();
    let mut used = vec![false; pool.len()];
    let mut edges = base.edges().to_vec();
    let mut order = Vec::with_capacity(pool.len());
    for _ in 0..pool.len() {
        let v = backend.fiedler_vector(&laplacian_of(base.n(), &edges))?;
        let scores: Vec<f64> = pool.iter().map(|e| e.incidence_dot(&v).powi(2)).collect();
        let k = argmax_lowest(&scores, |i| !used[i]).expect("pool not exhausted");
        used[k] = true;
        edges.push(pool[k]);
        order.push(pool[k]);
    }
    Ok(order)
}

/// Interval schedule of a selected edge set.
#[derive(Clone, Debug, PartialEq)]
pub struct ScheduleSpec {
    pub selected: Vec<Edge>,
    pub ordering: Ordering,
    /// Switching interval `Delta >= 1`.
    pub delta: usize,
    pub horizon: usize,
}

impl ScheduleSpec {
    /// The `q`-th ordered edge is added at `t = (q - 1) Delta + 1`, for
    /// `q <= floor(T / Delta)`.
    pub fn additions(&self, base: &Graph, backend: &FiedlerBackend) -> Result<Vec<(usize, Edge)>> {
        if self.delta == 0 || self.delta > self.horizon.max(1) {
            return Err(Error::InvalidSchedule(format!(
                "Delta = {} outside [1, T = {}]",
                self.delta, self.horizon
            )));
        }
        let ordered = match self.ordering {
            Ordering::Greedy => greedy_schedule(&self.selected, base, backend)?,
            Ordering::AsGiven => self.selected.clone(),
        };
        let slots = self.horizon / self.delta;
        Ok(ordered.into_iter().take(slots).enumerate().map(|(q, e)| (q * self.delta + 1, e)).collect())
    }

    pub fn network(&self, base: &Graph, backend: &FiedlerBackend) -> Result<DynamicNetwork> {
        DynamicNetwork::new(base.clone(), self.additions(base, backend)?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub t: usize,
    /// `max_i f(xhat_i(t))`.
    pub max_objective: f64,
    /// `max_i f(xhat_i(t)) - f(x*)`.
    pub max_regret: f64,
    pub sigma2: f64,
    pub lambda_n1: f64,
    pub edges_added: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub checkpoints: Vec<Checkpoint>,
    /// Step constant `a` in `alpha_t = a / sqrt(t)`.
    pub step_constant: f64,
    pub f_star: f64,
    pub final_state: DdaState,
}

impl Trajectory {
    pub fn final_regret(&self) -> f64 {
        self.checkpoints.last().map_or(f64::NAN, |c| c.max_regret)
    }
}

/// Default checkpoint spacing `max(1, T / 1000)`.
pub fn default_cadence(horizon: usize) -> usize {
    (horizon / 1000).max(1)
}

/// Runs `horizon` DDA steps over `network`, recording the largest agent
/// regret against `f_star` every `cadence` steps and at the horizon.
pub fn run_dda(
    instance: &ProblemInstance,
    network: &DynamicNetwork,
    spectra: &NetworkSpectra,
    horizon: usize,
    step: StepRule,
    cadence: usize,
    f_star: f64,
) -> Result<Trajectory> {
    let n = network.n();
    if instance.n != n {
        return Err(Error::DimensionMismatch { expected: n, got: instance.n });
    }
    if horizon == 0 || cadence == 0 {
        return Err(Error::InvalidArgument("horizon and checkpoint cadence must be >= 1".into()));
    }
    if !network.base().is_connected() {
        return Err(Error::Disconnected);
    }
    let sigma2_p0 = spectra.initial().sigma2;
    let a = step.constant(instance.radius, instance.lipschitz, sigma2_p0);

    let mut state = DdaState::new(n, instance.p);
    let mut version = 0;
    let mut rows = network.mixing_rows(0);
    let mut checkpoints = Vec::with_capacity(horizon / cadence + 1);
    for t in 0..horizon {
        let in_force = network.added_by(t);
        if in_force != version {
            version = in_force;
            rows = network.mixing_rows(version);
        }
        dda_step(&mut state, &rows, instance, step_size(a, t))?;
        let done = state.t;
        if done.is_multiple_of(cadence) || done == horizon {
            let max_objective = (0..n).map(|i| instance.objective(&state.average(i))).fold(f64::NEG_INFINITY, f64::max);
            let spec = spectra.at(done);
            checkpoints.push(Checkpoint {
                t: done,
                max_objective,
                max_regret: max_objective - f_star,
                sigma2: spec.sigma2,
                lambda_n1: spec.algebraic_connectivity,
                edges_added: network.added_by(done),
            });
        }
    }
    Ok(Trajectory { checkpoints, step_constant: a, f_star, final_state: state })
}

/// Output of [`centralized_dual_averaging`].
#[derive(Clone, Debug, PartialEq)]
pub struct CentralizedRun {
    pub x: Vec<f64>,
    pub x_sum: Vec<f64>,
    pub steps: usize,
    /// `f` of the running average at each requested checkpoint.
    pub checkpoint_values: Vec<(usize, f64)>,
    /// Lowest `f` over all iterates and the returned averages.
    pub best_value: f64,
    pub best_point: Vec<f64>,
    /// Average of the last 10% of iterates.
    pub tail_average: Vec<f64>,
}

/// Dual averaging on the full objective: `z <- z + (1/n) sum_i g_i`,
/// `x = prox(z, a / sqrt(t))`.
pub fn centralized_dual_averaging(
    instance: &ProblemInstance,
    steps: usize,
    a: f64,
    x0: Option<&[f64]>,
    checkpoints: &[usize],
) -> CentralizedRun {
    let (n, p) = (instance.n, instance.p);
    let mut z = vec![0.0; p];
    let mut x = x0.map_or_else(|| vec![0.0; p], <[f64]>::to_vec);
    let mut x_sum = vec![0.0; p];
    let mut g = vec![0.0; p];
    let tail_from = steps - steps / 10;
    let mut tail_sum = vec![0.0; p];
    let mut best_value = f64::INFINITY;
    let mut best_point = x.clone();
    let mut checkpoint_values = Vec::new();
    let mut next_cp = checkpoints.iter().peekable();
    for t in 0..steps {
        g.iter_mut().for_each(|v| *v = 0.0);
        let mut loss = 0.0;
        for i in 0..n {
            let bi = instance.row(i);
            let r = instance.y[i] - dot(bi, &x);
            loss += r.abs();
            let s = sign(r);
            g.iter_mut().zip(bi).for_each(|(gk, b)| *gk += -s * b);
        }
        let value = loss / n as f64;
        if value < best_value {
            best_value = value;
            best_point.clone_from(&x);
        }
        for (zk, gk) in z.iter_mut().zip(&g) {
            *zk += gk / n as f64;
        }
        prox_into(&z, step_size(a, t), instance.radius, &mut x);
        x_sum.iter_mut().zip(&x).for_each(|(s, v)| *s += v);
        if t + 1 > tail_from {
            tail_sum.iter_mut().zip(&x).for_each(|(s, v)| *s += v);
        }
        while next_cp.peek().is_some_and(|&&c| c <= t + 1) {
            let c = *next_cp.next().expect("peeked");
            if c == t + 1 {
                let avg: Vec<f64> = x_sum.iter().map(|s| s / (t + 1) as f64).collect();
                checkpoint_values.push((c, instance.objective(&avg)));
            }
        }
    }
    let tail_len = (steps - tail_from).max(1) as f64;
    let tail_average: Vec<f64> = tail_sum.iter().map(|s| s / tail_len).collect();
    let steps_f = steps.max(1) as f64;
    let average: Vec<f64> = x_sum.iter().map(|s| s / steps_f).collect();
    for cand in [&x, &tail_average, &average] {
        let v = instance.objective(cand);
        if v < best_value {
            best_value = v;
            best_point.clone_from(cand);
        }
    }
    CentralizedRun { x, x_sum, steps, checkpoint_values, best_value, best_point, tail_average }
}

/// Reference optimum `(x*, f(x*))` of an instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceOptimum {
    pub x: Vec<f64>,
    pub value: f64,
    /// Whether the vertex refinement certified the point as optimal.
    pub certified: bool,
}

/// Long-run centralized dual averaging with `alpha_t = R / (L sqrt t)`
/// from a seeded start, then an exact descent over interpolating vertices
/// of the piecewise-linear objective. The lowest value found is returned.
pub fn reference_optimum(instance: &ProblemInstance, steps: usize, seed: u64) -> ReferenceOptimum {
    let p = instance.p;
    let mut rng = rng::rng_from_seed(seed);
    let mut x0: Vec<f64> = (0..p).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let scale = 0.5 * instance.radius / norm2(&x0).max(1e-12);
    x0.iter_mut().for_each(|v| *v *= scale);
    let a = instance.radius / instance.lipschitz;
    let run = centralized_dual_averaging(instance, steps, a, Some(&x0), &[]);
    let mut best = ReferenceOptimum { x: run.best_point.clone(), value: run.best_value, certified: false };
    if let Some((x, certified)) = vertex_descent(instance, &run.tail_average) {
        let v = instance.objective(&x);
        if norm2(&x) <= instance.radius && v <= best.value + 1e-12 {
            best = ReferenceOptimum { x, value: v.min(best.value), certified };
        }
    }
    best
}

/// Solves `M x = rhs` for a dense `p x p` system by partial pivoting.
fn solve_dense(m: &[f64], rhs: &[f64], p: usize) -> Option<Vec<f64>> {
    let mut a = m.to_vec();
    let mut b = rhs.to_vec();
    for col in 0..p {
        let piv = (col..p).max_by(|&i, &j| a[i * p + col].abs().total_cmp(&a[j * p + col].abs()))?;
        if a[piv * p + col].abs() < 1e-10 {
            return None;
        }
        if piv != col {
            for k in 0..p {
                a.swap(col * p + k, piv * p + k);
            }
            b.swap(col, piv);
        }
        for r in (col + 1)..p {
            let f = a[r * p + col] / a[col * p + col];
            for k in col..p {
                a[r * p + k] -= f * a[col * p + k];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; p];
    for r in (0..p).rev() {
        let s: f64 = ((r + 1)..p).map(|k| a[r * p + k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r * p + r];
    }
    Some(x)
}

/// Basis-exchange descent for `min (1/n) sum |y_i - b_i^T x|` (ball ignored).
///
/// A vertex interpolates `p` observations. From each vertex the `2p` edge
/// directions are tried; the first strictly descending one is followed to
/// the minimizing breakpoint, which swaps one observation into the basis.
/// Returns the final vertex and whether it was certified (no descent edge).
fn vertex_descent(instance: &ProblemInstance, start: &[f64]) -> Option<(Vec<f64>, bool)> {
    let (n, p) = (instance.n, instance.p);
    if n < p || p == 0 {
        return None;
    }
    let resid = |x: &[f64]| -> Vec<f64> { (0..n).map(|i| instance.y[i] - dot(instance.row(i), x)).collect() };
    let r0 = resid(start);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| r0[a].abs().total_cmp(&r0[b].abs()));

    let mut basis: Vec<usize> = Vec::with_capacity(p);
    for &i in &order {
        basis.push(i);
        if basis.len() == p {
            break;
        }
    }
    // Replace rows that make the basis singular.
    let mut spare = order[p..].iter();
    let build = |basis: &[usize]| -> Vec<f64> { basis.iter().flat_map(|&i| instance.row(i).to_vec()).collect() };
    let solve_basis = |basis: &[usize]| -> Option<Vec<f64>> {
        let rhs: Vec<f64> = basis.iter().map(|&i| instance.y[i]).collect();
        solve_dense(&build(basis), &rhs, p)
    };
    let mut x = loop {
        if let Some(x) = solve_basis(&basis) {
            break x;
        }
        let next = *spare.next()?;
        basis.remove(0);
        basis.push(next);
    };

    let max_swaps = 50 * n;
    for _ in 0..max_swaps {
        let r = resid(&x);
        let in_basis = {
            let mut m = vec![false; n];
            basis.iter().for_each(|&i| m[i] = true);
            m
        };
        // Columns of B^{-1}: d_j with b_k^T d_j = delta_kj over the basis.
        let bm = build(&basis);
        let mut improved = false;
        'dirs: for j in 0..p {
            let mut e = vec![0.0; p];
            e[j] = 1.0;
            let d = solve_dense(&bm, &e, p)?;
            let c: Vec<f64> = (0..n).map(|i| dot(instance.row(i), &d)).collect();
            for s in [1.0, -1.0] {
                // Slope of f along x + tau s d at tau = 0+ (times n).
                let mut slope = 1.0;
                for i in 0..n {
                    if in_basis[i] {
                        continue;
                    }
                    let ci = s * c[i];
                    slope += if r[i] > 1e-12 {
                        -ci
                    } else if r[i] < -1e-12 {
                        ci
                    } else {
                        ci.abs()
                    };
                }
                if slope >= -1e-10 {
                    continue;
                }
                // Breakpoints tau_i = r_i / (s c_i) > 0; walk until the slope turns.
                let mut bps: Vec<(f64, usize)> = (0..n)
                    .filter(|&i| !in_basis[i] && (s * c[i]).abs() > 1e-14)
                    .map(|i| (r[i] / (s * c[i]), i))
                    .filter(|(tau, _)| *tau > 1e-14)
                    .collect();
                bps.sort_by(|a, b| a.0.total_cmp(&b.0));
                for (tau, i) in bps {
                    slope += 2.0 * (s * c[i]).abs();
                    if slope >= 0.0 {
                        let new_x: Vec<f64> = x.iter().zip(&d).map(|(xk, dk)| xk + tau * s * dk).collect();
                        let mut new_basis = basis.clone();
                        new_basis[j] = i;
                        if solve_basis(&new_basis).is_none() {
                            continue 'dirs;
                        }
                        basis = new_basis;
                        x = new_x;
                        improved = true;
                        break 'dirs;
                    }
                }
            }
        }
        if !improved {
            return Some((x, true));
        }
    }
    Some((x, false))
}

/// `max_i f(xhat_i(t)) - f(x*)` at every checkpoint.
pub fn regret(trajectory: &Trajectory) -> Vec<f64> {
    trajectory.checkpoints.iter().map(|c| c.max_regret).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prox_examples() {
        assert_eq!(prox_step(&[0.0, 0.0], 1.0, 5.0), vec![0.0, 0.0]);
        assert_eq!(prox_step(&[3.0, 4.0], 1.0, 5.0), vec![-3.0, -4.0]);
        let x = prox_step(&[3.0, 4.0], 1.0, 1.0);
        assert!((x[0] + 0.6).abs() < 1e-15 && (x[1] + 0.8).abs() < 1e-15);
    }

    #[test]
    fn subgradient_signs() {
        assert_eq!(l1_subgradient(&[0.0, 0.0], 1.0, &[2.0, -1.0]), vec![-2.0, 1.0]);
        assert_eq!(l1_subgradient(&[1.0, 0.0], 2.0, &[2.0, -1.0]), vec![0.0, 0.0]);
    }

    #[test]
    fn two_agent_step_by_hand() {
        let inst = ProblemInstance::new(1, 10.0, vec![1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let g = Graph::path(2);
        let rows = MixingRows::new(&g, 1);
        let mut st = DdaState::new(2, 1);
        st.z = vec![1.0, 3.0];
        dda_step(&mut st, &rows, &inst, 0.5).unwrap();
        // P = [[3/4, 1/4], [1/4, 3/4]]; x = 0 so g = (-1, +1).
        assert_eq!(st.z, vec![0.75 + 0.75 - 1.0, 0.25 + 2.25 + 1.0]);
        assert_eq!(st.x, vec![-0.25, -1.75]);
    }

    #[test]
    fn consensus_is_preserved() {
        let inst = ProblemInstance::new(1, 10.0, vec![1.0; 3], vec![1.0; 3]).unwrap();
        let rows = MixingRows::new(&Graph::path(3), 2);
        let mut st = DdaState::new(3, 1);
        st.z = vec![2.0; 3];
        dda_step(&mut st, &rows, &inst, 0.1).unwrap();
        assert!(st.z.iter().all(|v| (v - st.z[0]).abs() < 1e-15));
    }

    #[test]
    fn zero_responses_have_zero_optimum() {
        let inst = ProblemInstance::new(2, 5.0, vec![0.0; 4], vec![1.0, 2.0, -1.0, 0.5, 0.3, 0.3, 2.0, 1.0]).unwrap();
        let opt = reference_optimum(&inst, 1000, 1);
        assert!(opt.value.abs() < 1e-12);
    }

    #[test]
    fn vertex_descent_finds_median() {
        // p = 1, b = 1: the optimum is the median of y.
        let inst = ProblemInstance::new(1, 10.0, vec![0.0, 1.0, 5.0, 2.0, -3.0], vec![1.0; 5]).unwrap();
        let (x, certified) = vertex_descent(&inst, &[4.0]).unwrap();
        assert!(certified);
        assert_eq!(x, vec![1.0]);
    }

    #[test]
    fn schedule_intervals() {
        let base = Graph::path(4);
        let sel = vec![Edge { i: 0, j: 3 }, Edge { i: 1, j: 3 }];
        let spec = ScheduleSpec { selected: sel.clone(), ordering: Ordering::AsGiven, delta: 3, horizon: 10 };
        let adds = spec.additions(&base, &FiedlerBackend::Exact).unwrap();
        assert_eq!(adds, vec![(1, sel[0]), (4, sel[1])]);
        let spec = ScheduleSpec { delta: 10, ..spec };
        assert_eq!(spec.additions(&base, &FiedlerBackend::Exact).unwrap().len(), 1);
        let bad = ScheduleSpec { delta: 0, ..spec };
        assert!(bad.additions(&base, &FiedlerBackend::Exact).is_err());
    }

    #[test]
    fn greedy_schedule_on_path4() {
        let base = Graph::path(4);
        let sel = vec![Edge { i: 0, j: 2 }, Edge { i: 0, j: 3 }];
        let order = greedy_schedule(&sel, &base, &FiedlerBackend::Exact).unwrap();
        assert_eq!(order[0], Edge { i: 0, j: 3 });
    }
}
