//! Dense symmetric eigen-computations.
//!
//! Two independent routes are provided:
//!
//! * [`full_spectrum`]: cyclic Jacobi rotations, the reference decomposition
//!   used wherever accuracy matters (theory terms, oracles, spectral gaps).
//! * [`top_eig_deflated`]: power iteration on `P - 11^T/n`, the cheap route
//!   used inside the edge-selection solver. Its value equals `lambda_2(P)`
//!   for a doubly stochastic `P`, and [`fiedler_pair`] maps it back to the
//!   algebraic connectivity through `lambda_{n-1}(L) = n - n * lambda_1(P - 11^T/n)`
//!   with `P = I - L/n`.
//!
//! Eigenvalues are always reported in descending order and eigenvectors are
//! sign-normalized so that their first non-negligible component is positive.

use crate::error::{Error, Result};
use crate::matrix::{dot, norm2, SquareMatrix, SymMatrix};
use crate::rng;

/// An eigenvalue with a unit-norm eigenvector.
#[derive(Clone, Debug, PartialEq)]
pub struct EigPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

impl EigPair {
    /// `||A v - lambda v||_2`.
    pub fn residual(&self, a: &SymMatrix) -> f64 {
        let av = a.matvec(&self.vector);
        av.iter()
            .zip(&self.vector)
            .map(|(x, v)| (x - self.value * v).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Default relative tolerance on the off-diagonal Frobenius norm.
const WARM_START_BLEND: f64 = 1e-3;

pub const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Flips `v` so that its first non-negligible entry is positive.
pub fn canonicalize_sign(v: &mut [f64]) {
    let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return;
    }
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-10 * scale) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Full eigen-decomposition of a symmetric matrix by cyclic Jacobi sweeps.
///
/// Stops once the off-diagonal Frobenius norm is at most `tol * ||A||_F`.
pub fn full_spectrum(a: &SymMatrix, tol: f64) -> Result<Vec<EigPair>> {
    let n = a.dim();
    let mut m = a.to_rows();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let fro = a.frobenius_norm();
    if !fro.is_finite() {
        return Err(Error::NoConvergence { sweeps: 0 });
    }
    let target = tol * fro;

    let mut sweep = 0;
    loop {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| 2.0 * m[p][q] * m[p][q])
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        if !off.is_finite() || sweep >= JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps: sweep });
        }
        sweep += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in m.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
                for k in 0..n {
                    let (pk, qk) = (m[p][k], m[q][k]);
                    m[p][k] = c * pk - s * qk;
                    m[q][k] = s * pk + c * qk;
                }
                for row in v.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
            }
        }
    }

    let mut pairs: Vec<EigPair> = (0..n)
        .map(|k| {
            let mut vector: Vec<f64> = (0..n).map(|i| v[i][k]).collect();
            let nv = norm2(&vector);
            vector.iter_mut().for_each(|x| *x /= nv);
            canonicalize_sign(&mut vector);
            EigPair { value: m[k][k], vector }
        })
        .collect();
    pairs.sort_by(|a, b| b.value.total_cmp(&a.value));
    Ok(pairs)
}

/// Eigenvalues only, descending.
pub fn eigenvalues(a: &SymMatrix) -> Result<Vec<f64>> {
    Ok(full_spectrum(a, JACOBI_TOL)?.into_iter().map(|p| p.value).collect())
}

/// Settings for the deflated power iteration.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerConfig {
    /// Stop when successive Rayleigh quotients differ by less than this.
    pub tol: f64,
    pub cap: IterationCap,
    /// Seed of the start vector.
    pub seed: u64,
    /// Probe the orthogonal complement for a second eigenvalue within
    /// `degeneracy_tol` of the top one.
    pub detect_degeneracy: bool,
    pub degeneracy_tol: f64,
}

impl Default for PowerConfig {
    fn default() -> Self {
        Self { tol: 1e-12, cap: IterationCap::Fixed(200_000), seed: 0, detect_degeneracy: true, degeneracy_tol: 1e-8 }
    }
}

/// Upper limit on power-iteration steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IterationCap {
    /// `ceil(10 n ln n)`: a cheap budget for warm-started calls inside an
    /// outer loop. Too short for a cold start when the gap is small.
    NLogN,
    Fixed(usize),
}

impl PowerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    /// Budgeted variant for warm-started inner loops.
    pub fn budgeted(seed: u64) -> Self {
        Self { seed, cap: IterationCap::NLogN, detect_degeneracy: false, ..Self::default() }
    }

    pub fn iteration_cap(&self, n: usize) -> usize {
        match self.cap {
            IterationCap::Fixed(k) => k,
            IterationCap::NLogN => {
                let n = n.max(2) as f64;
                (10.0 * n * n.ln()).ceil() as usize
            }
        }
    }
}

/// Result of a power iteration.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerOutcome {
    pub pair: EigPair,
    pub iterations: usize,
    pub converged: bool,
    /// Set when the top eigenvalue looks non-simple (or the iteration hit
    /// its cap); the value is still usable, the vector is then only some
    /// unit vector of the top eigenspace.
    pub near_degenerate: bool,
}

/// `y <- y - mean(y) 1`.
fn remove_mean(y: &mut [f64]) {
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    y.iter_mut().for_each(|x| *x -= mean);
}

/// Applies `P - 11^T/n` to `y`.
fn deflated_apply(p: &SymMatrix, y: &[f64], out: &mut [f64]) {
    p.matvec_into(y, out);
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    out.iter_mut().for_each(|x| *x -= mean);
}

/// Top eigenpair of `P - 11^T/n` by power iteration from a seeded start.
pub fn top_eig_deflated(p: &SymMatrix, cfg: &PowerConfig) -> PowerOutcome {
    let start = rng::unit_vector_orthogonal_to_ones(p.dim(), cfg.seed);
    top_eig_deflated_from(p, &start, cfg)
}

/// Top eigenpair of `P - 11^T/n` by power iteration from `start`.
///
/// The start is projected orthogonally to `1` first; if nothing is left a
/// seeded start vector is used instead.
pub fn top_eig_deflated_from(p: &SymMatrix, start: &[f64], cfg: &PowerConfig) -> PowerOutcome {
    let n = p.dim();
    if n <= 1 {
        return PowerOutcome {
            pair: EigPair { value: 0.0, vector: vec![1.0; n] },
            iterations: 0,
            converged: true,
            near_degenerate: false,
        };
    }
    // A little of the seeded vector keeps a warm start from sitting exactly
    // orthogonal to the top eigenspace (which symmetric graphs can cause).
    let seeded = rng::unit_vector_orthogonal_to_ones(n, cfg.seed);
    let mut y = start.to_vec();
    remove_mean(&mut y);
    let ny = norm2(&y);
    if ny < 1e-12 {
        y = seeded.clone();
    } else {
        y.iter_mut().zip(&seeded).for_each(|(a, r)| *a = *a / ny + WARM_START_BLEND * r);
        let ny = norm2(&y);
        y.iter_mut().for_each(|x| *x /= ny);
    }

    let cap = cfg.iteration_cap(n);
    let mut w = vec![0.0; n];
    deflated_apply(p, &y, &mut w);
    let mut q = dot(&y, &w);
    let mut converged = false;
    let mut restarted = false;
    let mut iterations = 0;
    while iterations < cap {
        iterations += 1;
        let nw = norm2(&w);
        if nw < 1e-300 {
            // y lies in the null space. Retry once from the seeded vector
            // before concluding the deflated matrix vanishes.
            if !restarted {
                restarted = true;
                y.copy_from_slice(&seeded);
                deflated_apply(p, &y, &mut w);
                q = dot(&y, &w);
                continue;
            }
            q = 0.0;
            converged = true;
            break;
        }
        y.iter_mut().zip(&w).for_each(|(yi, wi)| *yi = wi / nw);
        remove_mean(&mut y);
        let ny = norm2(&y);
        y.iter_mut().for_each(|x| *x /= ny);
        deflated_apply(p, &y, &mut w);
        let q_new = dot(&y, &w);
        let delta = (q_new - q).abs();
        q = q_new;
        if delta < cfg.tol {
            converged = true;
            break;
        }
    }

    let mut near_degenerate = !converged;
    if cfg.detect_degeneracy && !near_degenerate && n > 2 {
        let second = complement_rayleigh(p, &y, q, cfg, cap);
        near_degenerate = second >= q - cfg.degeneracy_tol * q.abs().max(1.0);
    }
    canonicalize_sign(&mut y);
    PowerOutcome { pair: EigPair { value: q, vector: y }, iterations, converged, near_degenerate }
}

/// Largest Rayleigh quotient found by power iteration of the deflated
/// operator restricted to the complement of `{1, y}`.
fn complement_rayleigh(p: &SymMatrix, y: &[f64], top: f64, cfg: &PowerConfig, cap: usize) -> f64 {
    let n = p.dim();
    let project = |u: &mut Vec<f64>| {
        remove_mean(u);
        let c = dot(u, y);
        u.iter_mut().zip(y).for_each(|(ui, yi)| *ui -= c * yi);
    };
    let mut u = rng::unit_vector_orthogonal_to_ones(n, rng::splitmix64(cfg.seed ^ 0xD1B5));
    project(&mut u);
    let nu = norm2(&u);
    if nu < 1e-12 {
        return f64::NEG_INFINITY;
    }
    u.iter_mut().for_each(|x| *x /= nu);
    let mut w = vec![0.0; n];
    let mut q = f64::NEG_INFINITY;
    for _ in 0..cap {
        deflated_apply(p, &u, &mut w);
        project(&mut w);
        let q_new = dot(&u, &w);
        let nw = norm2(&w);
        if nw < 1e-300 {
            return q_new.max(q);
        }
        let settled = (q_new - q).abs() < cfg.tol;
        q = q_new;
        if settled || q >= top - cfg.degeneracy_tol * top.abs().max(1.0) {
            break;
        }
        u.iter_mut().zip(&w).for_each(|(ui, wi)| *ui = wi / nw);
    }
    q
}

/// Algebraic connectivity and Fiedler vector of a Laplacian via
/// [`top_eig_deflated`] on `I - L/n`.
pub fn fiedler_pair(l: &SymMatrix, cfg: &PowerConfig) -> PowerOutcome {
    let n = l.dim();
    let p = design_matrix(l);
    let mut out = top_eig_deflated(&p, cfg);
    out.pair.value = n as f64 - n as f64 * out.pair.value;
    out
}

/// `P = I - L/n`.
pub fn design_matrix(l: &SymMatrix) -> SymMatrix {
    let n = l.dim();
    SymMatrix::identity(n).add_scaled(l, -1.0 / n.max(1) as f64)
}

/// Algebraic connectivity and Fiedler vector via the Jacobi decomposition.
pub fn fiedler_pair_exact(l: &SymMatrix) -> Result<EigPair> {
    let n = l.dim();
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let mut spec = full_spectrum(l, JACOBI_TOL)?;
    Ok(spec.swap_remove(n - 2))
}

/// Extreme part of a Laplacian spectrum needed by the theory layer.
#[derive(Clone, Debug, PartialEq)]
pub struct LaplacianSpectrum {
    /// `lambda_{n-1}(L)`.
    pub algebraic_connectivity: f64,
    /// `lambda_{n-2}(L)`; equals the connectivity when `n < 3`.
    pub third_smallest: f64,
    pub fiedler: Vec<f64>,
}

impl LaplacianSpectrum {
    pub fn of(l: &SymMatrix) -> Result<Self> {
        let n = l.dim();
        if n < 2 {
            return Err(Error::TooSmall { n, min: 2 });
        }
        let spec = full_spectrum(l, JACOBI_TOL)?;
        let fiedler = spec[n - 2].clone();
        let third = if n >= 3 { spec[n - 3].value } else { fiedler.value };
        Ok(Self { algebraic_connectivity: fiedler.value, third_smallest: third, fiedler: fiedler.vector })
    }

    /// `lambda_{n-2}(L) - lambda_{n-1}(L)`, clamped at zero.
    pub fn gap(&self) -> f64 {
        (self.third_smallest - self.algebraic_connectivity).max(0.0)
    }
}

/// `lambda_{n-2}(L) - lambda_{n-1}(L)`.
pub fn spectral_gap(l: &SymMatrix) -> Result<f64> {
    let n = l.dim();
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    Ok(LaplacianSpectrum::of(l)?.gap())
}

/// Second-largest singular value of a symmetric matrix (`lambda_2` when PSD).
/// A `1 x 1` matrix has no second singular value; `0` is returned.
pub fn sigma2(p: &SymMatrix) -> Result<f64> {
    if p.dim() < 2 {
        return Ok(0.0);
    }
    let mut s: Vec<f64> = eigenvalues(p)?.into_iter().map(f64::abs).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s[1])
}

/// `sigma_2(P_t P_{t-1} ... P_s)` for `ps = [P_s, ..., P_t]`, computed from
/// the Gram matrix of the product.
pub fn sigma2_of_product(ps: &[SymMatrix]) -> Result<f64> {
    let first = ps.first().ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
    let n = first.dim();
    let mut phi = SquareMatrix::identity(n);
    for p in ps {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.dim() });
        }
        phi = p.to_square().mul(&phi);
    }
    if n < 2 {
        return Ok(0.0);
    }
    let ev = eigenvalues(&phi.gram())?;
    Ok(ev[1].max(0.0).sqrt())
}
