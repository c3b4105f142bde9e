//! Computable convergence theory for DDA over growing networks.
//!
//! Every edge addition shrinks `sigma_2` of the mixing matrix by at least
//! a *schedule term* `b_{k-1} (a^T v_{k-1})^2`, where `v_{k-1}` is the
//! Fiedler vector of the graph before the addition and `b_{k-1}` depends on
//! its spectral gap. The terms feed the mixing-time program, whose solution
//! `delta*` enters the network-error and regret bounds.

use crate::error::{Error, Result};
use crate::graph::{DynamicNetwork, Edge, NetworkSpectra};
use crate::matrix::SymMatrix;
use crate::spectral::LaplacianSpectrum;

/// Gaps at or below this count as zero.
pub const ZERO_GAP: f64 = 1e-12;
/// Floor for the factors `1 - S_k / sigma_2` of the mixing-time program.
pub const FACTOR_FLOOR: f64 = 1e-12;

/// A value that may have been obtained through a degenerate limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Flagged {
    pub value: f64,
    pub flagged: bool,
}

/// Lower bound on the connectivity gain of adding `edge` (when `u = 1`):
/// `u (a^T v)^2 / (6 / gap + 1)`.
pub fn connectivity_increment_bound(l_prev: &SymMatrix, edge: &Edge, u: bool) -> Result<Flagged> {
    let n = l_prev.dim();
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    if !u {
        return Ok(Flagged { value: 0.0, flagged: false });
    }
    let s = LaplacianSpectrum::of(l_prev)?;
    let gap = s.gap();
    if gap <= ZERO_GAP {
        return Ok(Flagged { value: 0.0, flagged: true });
    }
    let proj = edge.incidence_dot(&s.fiedler).powi(2);
    Ok(Flagged { value: proj / (6.0 / gap + 1.0), flagged: false })
}

/// `b = 1 / (2 (1 + delta_max) + 12 (1 + delta_max) / gap)`; `0` for a zero gap.
pub fn b_from_gap(gap: f64, delta_max: usize) -> Flagged {
    if gap <= ZERO_GAP {
        return Flagged { value: 0.0, flagged: true };
    }
    let d = 1.0 + delta_max as f64;
    Flagged { value: 1.0 / (2.0 * d + 12.0 * d / gap), flagged: false }
}

pub fn b_coefficient(l: &SymMatrix, delta_max: usize) -> Result<Flagged> {
    Ok(b_from_gap(LaplacianSpectrum::of(l)?.gap(), delta_max))
}

/// Schedule term of one addition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScheduleTerm {
    pub t: usize,
    pub edge: Edge,
    pub term: f64,
    /// The preceding graph had a zero spectral gap.
    pub flagged: bool,
}

/// Terms `b_{k-1} (a_k^T v_{k-1})^2` of every addition covered by `spectra`.
pub fn schedule_terms(network: &DynamicNetwork, spectra: &NetworkSpectra) -> Vec<ScheduleTerm> {
    network
        .additions()
        .iter()
        .zip(spectra.versions.windows(2))
        .map(|(&(t, edge), w)| {
            let prev = &w[0];
            let b = b_from_gap(prev.gap(), spectra.delta_max);
            ScheduleTerm { t, edge, term: b.value * edge.incidence_dot(&prev.fiedler).powi(2), flagged: b.flagged }
        })
        .collect()
}

/// `sigma_2(P_0) - sum_{i <= t} term_i` at the start time of every network
/// version, paired with the exact `sigma_2(P_t)`.
pub fn recursion_check(spectra: &NetworkSpectra, terms: &[ScheduleTerm]) -> Vec<(usize, f64, f64)> {
    let s0 = spectra.initial().sigma2;
    let mut acc = 0.0;
    let mut out = vec![(0, s0, s0)];
    for (k, term) in terms.iter().enumerate() {
        acc += term.term;
        let v = &spectra.versions[k + 1];
        out.push((v.from_t, v.sigma2, s0 - acc));
    }
    out
}

/// The mixing-time program for one horizon.
///
/// With `S_k` the sum of terms added up to step `k`,
/// `log beta(delta) = sum_{k=1}^{delta-1} log(1 - S_k / sigma_2(P_0))`, and
/// `delta` is feasible when
/// `delta >= log(T sqrt n) / log(1/sigma_2) - log(1/beta) / log(1/sigma_2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixingProgram {
    sigma2: f64,
    /// `log(T sqrt n) / log(1 / sigma_2)`.
    base_rhs: f64,
    log_inv_sigma: f64,
    /// `log beta(delta)` for `delta = 1, 2, ...` (index `delta - 1`).
    log_beta: Vec<f64>,
    clamped_at: Option<usize>,
    terms: Vec<(usize, f64)>,
    next_term: usize,
    partial_sum: f64,
    floor: f64,
}

impl MixingProgram {
    /// `terms` are `(t, term)` pairs; only `t <= horizon` are used.
    pub fn new(terms: &[(usize, f64)], sigma2_p0: f64, horizon: usize, n: usize) -> Result<Self> {
        if horizon == 0 || n == 0 {
            return Err(Error::InvalidArgument("horizon and n must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&sigma2_p0) {
            return Err(Error::InvalidArgument(format!("sigma_2(P_0) = {sigma2_p0} outside [0, 1)")));
        }
        let mut terms: Vec<(usize, f64)> = terms.iter().copied().filter(|(t, _)| *t <= horizon).collect();
        terms.sort_by_key(|p| p.0);
        let log_inv_sigma = -sigma2_p0.ln();
        let base_rhs = ((horizon as f64) * (n as f64).sqrt()).ln() / log_inv_sigma;
        Ok(Self {
            sigma2: sigma2_p0,
            base_rhs,
            log_inv_sigma,
            log_beta: vec![0.0],
            clamped_at: None,
            terms,
            next_term: 0,
            partial_sum: 0.0,
            floor: FACTOR_FLOOR,
        })
    }

    /// Smallest always-feasible `delta`: `max(1, ceil(log(T sqrt n) / log(1/sigma_2)))`.
    pub fn cap(&self) -> usize {
        static_delta_from(self.base_rhs)
    }

    fn extend_to(&mut self, delta: usize) {
        while self.log_beta.len() < delta {
            let k = self.log_beta.len();
            while self.next_term < self.terms.len() && self.terms[self.next_term].0 <= k {
                self.partial_sum += self.terms[self.next_term].1;
                self.next_term += 1;
            }
            let mut factor = 1.0 - self.partial_sum / self.sigma2;
            if factor < self.floor {
                factor = self.floor;
                self.clamped_at.get_or_insert(k);
            }
            let prev = *self.log_beta.last().expect("starts non-empty");
            self.log_beta.push(prev + factor.ln());
        }
    }

    pub fn log_beta(&mut self, delta: usize) -> f64 {
        let delta = delta.max(1);
        self.extend_to(delta);
        self.log_beta[delta - 1]
    }

    /// Right-hand side of the feasibility constraint at `delta`.
    pub fn rhs(&mut self, delta: usize) -> f64 {
        self.base_rhs + self.log_beta(delta) / self.log_inv_sigma
    }

    pub fn solve(&mut self) -> MixingTimeResult {
        if self.sigma2 == 0.0 {
            return MixingTimeResult { delta_star: 1, beta_star: 1.0, lower_bound_rhs: 0.0, clamped: false };
        }
        let cap = self.cap();
        let mut delta = 1;
        while delta < cap && (delta as f64) < self.rhs(delta) {
            delta += 1;
        }
        let rhs = self.rhs(delta);
        MixingTimeResult {
            delta_star: delta,
            beta_star: self.log_beta(delta).exp(),
            lower_bound_rhs: rhs,
            clamped: self.clamped_at.is_some_and(|k| k < delta),
        }
    }
}

fn static_delta_from(base_rhs: f64) -> usize {
    (base_rhs.ceil() as usize).max(1)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingTimeResult {
    pub delta_star: usize,
    pub beta_star: f64,
    /// Constraint right-hand side at `(beta*, delta*)`.
    pub lower_bound_rhs: f64,
    /// Some factor `1 - S_k / sigma_2` hit the floor.
    pub clamped: bool,
}

pub fn solve_mixing_time(terms: &[(usize, f64)], sigma2_p0: f64, horizon: usize, n: usize) -> Result<MixingTimeResult> {
    Ok(MixingProgram::new(terms, sigma2_p0, horizon, n)?.solve())
}

/// Mixing time of a static network.
pub fn static_mixing_time(sigma2_p0: f64, horizon: usize, n: usize) -> Result<usize> {
    if sigma2_p0 == 0.0 {
        return Ok(1);
    }
    Ok(MixingProgram::new(&[], sigma2_p0, horizon, n)?.cap())
}

/// `ceil(log(T sqrt n)/log(1/sigma_2) - log(1/beta)/log(1/sigma_2))`, at least 1.
pub fn approx_delta(beta_star: f64, sigma2_p0: f64, horizon: usize, n: usize) -> usize {
    if sigma2_p0 <= 0.0 {
        return 1;
    }
    let lis = -sigma2_p0.ln();
    let v = ((horizon as f64) * (n as f64).sqrt()).ln() / lis - (1.0 / beta_star).ln() / lis;
    static_delta_from(v)
}

/// `sum_t (L^2 alpha_t / T)(6 delta* + 9)` over `alphas = [alpha_1, ..., alpha_T]`.
pub fn net_bound(delta_star: usize, alphas: &[f64], lipschitz: f64) -> f64 {
    let t = alphas.len().max(1) as f64;
    let factor = 6.0 * delta_star as f64 + 9.0;
    alphas.iter().map(|a| lipschitz * lipschitz * a / t * factor).sum()
}

/// `psi(x*) / (T alpha_T) + (L^2 / 2T) sum_{t=1}^T alpha_{t-1}` with
/// `psi(x*) = ||x*||^2 / 2`; `alphas = [alpha_0, ..., alpha_T]`.
pub fn opt_bound(x_star_norm: f64, alphas: &[f64], lipschitz: f64) -> f64 {
    let t = alphas.len().saturating_sub(1).max(1);
    let psi = 0.5 * x_star_norm * x_star_norm;
    let tail: f64 = alphas[..t].iter().sum();
    psi / (t as f64 * alphas[t]) + lipschitz * lipschitz / (2.0 * t as f64) * tail
}

/// Explicit regret bound `R^2/(a sqrt T) + a L^2 (12 delta* + 19) / sqrt T`
/// for steps `alpha_t = a / sqrt t`.
pub fn regret_bound_with_step(radius: f64, lipschitz: f64, a: f64, delta_star: usize, horizon: usize) -> f64 {
    if a <= 0.0 {
        return f64::INFINITY;
    }
    let st = (horizon as f64).sqrt();
    radius * radius / (a * st) + a * lipschitz * lipschitz * (12.0 * delta_star as f64 + 19.0) / st
}

/// [`regret_bound_with_step`] at the prescribed `a = R sqrt(1 - sigma_2(P_0)) / L`.
pub fn regret_bound(radius: f64, lipschitz: f64, sigma2_p0: f64, delta_star: usize, horizon: usize) -> f64 {
    let a = radius * (1.0 - sigma2_p0).max(0.0).sqrt() / lipschitz;
    regret_bound_with_step(radius, lipschitz, a, delta_star, horizon)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeBound {
    /// `1 - sum terms / sigma_2(P_0)`, clamped to `[0, 1]`.
    pub alpha: f64,
    /// `(1/eps^2) (1 - sigma_2) / (1 - alpha sigma_2)^2`.
    pub scale: f64,
}

pub fn convergence_time_bound(epsilon: f64, sigma2_p0: f64, total_terms: f64) -> Result<TimeBound> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    let alpha = if sigma2_p0 > 0.0 { (1.0 - total_terms / sigma2_p0).clamp(0.0, 1.0) } else { 0.0 };
    let denom = (1.0 - alpha * sigma2_p0).powi(2);
    Ok(TimeBound { alpha, scale: (1.0 - sigma2_p0) / denom / (epsilon * epsilon) })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderingVerdict {
    pub early: MixingTimeResult,
    pub late: MixingTimeResult,
    pub holds: bool,
}

/// Compares the mixing times of two schedules of the same edge set, where
/// every edge of `early` is added no later than in `late`.
pub fn ordering_check(
    early: &[ScheduleTerm],
    late: &[ScheduleTerm],
    sigma2_p0: f64,
    horizon: usize,
    n: usize,
) -> Result<OrderingVerdict> {
    let mut a: Vec<&ScheduleTerm> = early.iter().collect();
    let mut b: Vec<&ScheduleTerm> = late.iter().collect();
    a.sort_by_key(|s| s.edge);
    b.sort_by_key(|s| s.edge);
    if a.len() != b.len() || a.iter().zip(&b).any(|(x, y)| x.edge != y.edge) {
        return Err(Error::InvalidSchedule("schedules add different edge sets".into()));
    }
    if let Some((x, _)) = a.iter().zip(&b).find(|(x, y)| x.t > y.t) {
        return Err(Error::InvalidSchedule(format!("edge {} is added later in the early schedule", x.edge)));
    }
    let pairs = |s: &[ScheduleTerm]| -> Vec<(usize, f64)> { s.iter().map(|x| (x.t, x.term)).collect() };
    let e = solve_mixing_time(&pairs(early), sigma2_p0, horizon, n)?;
    let l = solve_mixing_time(&pairs(late), sigma2_p0, horizon, n)?;
    Ok(OrderingVerdict { early: e, late: l, holds: e.delta_star <= l.delta_star })
}

/// Theory summary of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub mixing: MixingTimeResult,
    pub approx_delta: usize,
    pub net_bound: f64,
    pub opt_bound: f64,
    pub regret_bound: f64,
    /// `(t, bound at horizon t)` using `delta*(t)` from the terms up to `t`.
    pub regret_bound_series: Vec<(usize, f64)>,
    pub time_bound: TimeBound,
}

/// Bounds for a network and step constant `a` over `horizon` steps.
/// `checkpoints` selects the horizons of the regret-bound series.
#[allow(clippy::too_many_arguments)]
pub fn bound_report(
    spectra: &NetworkSpectra,
    terms: &[ScheduleTerm],
    radius: f64,
    lipschitz: f64,
    step_constant: f64,
    horizon: usize,
    n: usize,
    epsilon: f64,
    checkpoints: &[usize],
) -> Result<BoundReport> {
    let sigma2 = spectra.initial().sigma2;
    let pairs: Vec<(usize, f64)> = terms.iter().map(|s| (s.t, s.term)).collect();
    let mixing = solve_mixing_time(&pairs, sigma2, horizon, n)?;
    let alpha = |t: usize| step_constant / (t.max(1) as f64).sqrt();
    let alphas: Vec<f64> = (1..=horizon).map(alpha).collect();
    let alphas0: Vec<f64> = (0..=horizon).map(alpha).collect();
    let regret_bound_series = checkpoints
        .iter()
        .map(|&t| {
            let d = solve_mixing_time(&pairs, sigma2, t, n)?.delta_star;
            Ok((t, regret_bound_with_step(radius, lipschitz, step_constant, d, t)))
        })
        .collect::<Result<Vec<_>>>()?;
    let total: f64 = pairs.iter().filter(|p| p.0 <= horizon).map(|p| p.1).sum();
    Ok(BoundReport {
        approx_delta: approx_delta(mixing.beta_star, sigma2, horizon, n),
        net_bound: net_bound(mixing.delta_star, &alphas, lipschitz),
        opt_bound: opt_bound(radius, &alphas0, lipschitz),
        regret_bound: regret_bound_with_step(radius, lipschitz, step_constant, mixing.delta_star, horizon),
        regret_bound_series,
        time_bound: convergence_time_bound(epsilon, sigma2, total)?,
        mixing,
    })
}
