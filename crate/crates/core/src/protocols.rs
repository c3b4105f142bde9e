//! Message-passing simulations of the decentralized design steps.
//!
//! Agents update synchronously: every round reads the previous round's
//! state of all neighbors. Randomized protocols draw from a seeded
//! generator, so runs replay exactly.

use rand::Rng;

use crate::design::argmax_lowest;
use crate::error::{Error, Result};
use crate::graph::{EdgeVector, Graph, MixingRows};
use crate::matrix::{dot, norm2};
use crate::rng;

/// Local view of one agent during the eigenvector protocol.
#[derive(Clone, Debug, PartialEq)]
pub struct AgentState {
    pub id: usize,
    pub y_local: f64,
    pub phi_local: Vec<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ProtocolStats {
    pub rounds: usize,
    /// Scalars sent over all directed links.
    pub messages: usize,
    /// `1 - |cos|` between the decentralized and centralized vectors.
    pub final_error: f64,
}

/// One trace record: `(round, agent, quantity, value)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub round: usize,
    pub agent: usize,
    pub quantity: &'static str,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigvecRun {
    /// Stacked local estimates `y_i`.
    pub y: Vec<f64>,
    /// Centralized power iteration from the same start, same number of outer steps.
    pub reference: Vec<f64>,
    pub stats: ProtocolStats,
    pub trace: Vec<TraceRow>,
}

/// `|cos|` of the angle between two vectors (`0` if either vanishes).
pub fn abs_cosine(a: &[f64], b: &[f64]) -> f64 {
    let d = norm2(a) * norm2(b);
    if d == 0.0 {
        0.0
    } else {
        (dot(a, b) / d).abs()
    }
}

/// Synchronous averaging `phi_i <- sum_j P_ij phi_j` for `rounds` rounds.
/// `on_round` sees the state after every round.
pub fn run_inner_consensus(
    rows: &MixingRows,
    phi: &mut Vec<Vec<f64>>,
    rounds: usize,
    mut on_round: impl FnMut(usize, &[Vec<f64>]),
) {
    let n = rows.n();
    let dim = phi.first().map_or(0, Vec::len);
    let mut next = vec![vec![0.0; dim]; n];
    for q in 0..rounds {
        for (i, out) in next.iter_mut().enumerate() {
            out.iter_mut().for_each(|x| *x = 0.0);
            for &(j, w) in rows.row(i) {
                for (o, x) in out.iter_mut().zip(&phi[j]) {
                    *o += w * x;
                }
            }
        }
        std::mem::swap(phi, &mut next);
        on_round(q + 1, phi);
    }
}

/// Decentralized top eigenvector of `P - 11^T/n`.
///
/// Outer round `s`: every agent seeds `phi_i = y_i e_i`, runs `inner_rounds`
/// of averaging so that `phi_i` approaches `y / n`, then updates
/// `y_i <- (sum_j P_ij y_j - 1^T phi_i) / (n ||phi_i||)`.
pub fn decentralized_top_eigvec(
    rows: &MixingRows,
    outer_rounds: usize,
    inner_rounds: usize,
    seed: u64,
    record_trace: bool,
) -> Result<EigvecRun> {
    let n = rows.n();
    if outer_rounds == 0 || inner_rounds == 0 {
        return Err(Error::InvalidArgument("outer and inner rounds must be >= 1".into()));
    }
    let start = rng::unit_vector_orthogonal_to_ones(n, seed);
    let mut agents: Vec<AgentState> = start
        .iter()
        .enumerate()
        .map(|(id, &y)| AgentState { id, y_local: y, phi_local: vec![0.0; n] })
        .collect();
    let mut reference = start.clone();
    let links = rows.links();
    let mut stats = ProtocolStats::default();
    let mut trace = Vec::new();
    let mut reseeds = 0u64;

    for s in 0..outer_rounds {
        let mut phi: Vec<Vec<f64>> = agents
            .iter()
            .map(|a| {
                let mut v = vec![0.0; n];
                v[a.id] = a.y_local;
                v
            })
            .collect();
        run_inner_consensus(rows, &mut phi, inner_rounds, |_, _| {});
        stats.rounds += inner_rounds + 1;
        stats.messages += inner_rounds * links * n + links;

        let y_prev: Vec<f64> = agents.iter().map(|a| a.y_local).collect();
        let mut underflow = false;
        for (a, phi_i) in agents.iter_mut().zip(phi) {
            let mixed: f64 = rows.row(a.id).iter().map(|&(j, w)| w * y_prev[j]).sum();
            let norm = norm2(&phi_i);
            if !(norm > 1e-300) {
                underflow = true;
            }
            a.y_local = (mixed - phi_i.iter().sum::<f64>()) / (n as f64 * norm);
            a.phi_local = phi_i;
        }
        if underflow || agents.iter().any(|a| !a.y_local.is_finite()) {
            reseeds += 1;
            let fresh = rng::unit_vector_orthogonal_to_ones(n, rng::splitmix64(seed ^ reseeds));
            for (a, y) in agents.iter_mut().zip(fresh) {
                a.y_local = y;
            }
        }
        if record_trace {
            trace.extend(agents.iter().map(|a| TraceRow { round: s + 1, agent: a.id, quantity: "y", value: a.y_local }));
        }
        reference = centralized_deflated_step(rows, &reference);
    }

    let y: Vec<f64> = agents.iter().map(|a| a.y_local).collect();
    stats.final_error = 1.0 - abs_cosine(&y, &reference);
    Ok(EigvecRun { y, reference, stats, trace })
}

/// One normalized step of `y <- (P - 11^T/n) y`.
pub fn centralized_deflated_step(rows: &MixingRows, y: &[f64]) -> Vec<f64> {
    let n = rows.n();
    let mean = y.iter().sum::<f64>() / n as f64;
    let mut out: Vec<f64> = (0..n).map(|i| rows.row(i).iter().map(|&(j, w)| w * y[j]).sum::<f64>() - mean).collect();
    let norm = norm2(&out);
    if norm > 0.0 {
        out.iter_mut().for_each(|x| *x /= norm);
    }
    out
}

/// Random-broadcast consensus with a custom order: each round a uniformly
/// drawn node broadcasts and every neighbor keeps the better value.
pub fn max_consensus_by<T: Clone>(
    values: Vec<T>,
    graph: &Graph,
    rounds: usize,
    seed: u64,
    better: impl Fn(&T, &T) -> bool,
) -> Vec<T> {
    let n = graph.n();
    let adj = graph.neighbors();
    let mut state = values;
    if n == 0 {
        return state;
    }
    let mut rng = rng::rng_from_seed(seed);
    for _ in 0..rounds {
        let u = rng.random_range(0..n);
        for &v in &adj[u] {
            if better(&state[u], &state[v]) {
                state[v] = state[u].clone();
            }
        }
    }
    state
}

/// Random-broadcast max consensus. For a minimum, pass negated values.
pub fn max_consensus(values: &[f64], graph: &Graph, rounds: usize, seed: u64) -> Vec<f64> {
    max_consensus_by(values.to_vec(), graph, rounds, seed, |a, b| a > b)
}

/// Candidate edges owned by each agent (the lower endpoint).
pub fn edges_by_owner(n: usize, candidates: &[EdgeVector]) -> Vec<Vec<usize>> {
    let mut owned = vec![Vec::new(); n];
    for c in candidates {
        owned[c.edge.i].push(c.index);
    }
    owned
}

/// One decentralized subgradient step: the owner of edge `l ~ (i, j)` sets
/// `w_l <- clamp(w_l - kappa gamma c_l + kappa (y_i - y_j)^2)`.
pub fn decentralized_subgradient_round(
    w: &[f64],
    candidates: &[EdgeVector],
    costs: &[f64],
    kappa: f64,
    gamma: f64,
    y: &[f64],
) -> Vec<f64> {
    let n = y.len();
    let mut out = w.to_vec();
    for owned in edges_by_owner(n, candidates) {
        for l in owned {
            let e = candidates[l].edge;
            out[l] = (w[l] - kappa * gamma * costs[l] + kappa * e.incidence_dot(y).powi(2)).clamp(0.0, 1.0);
        }
    }
    out
}

/// Outcome of the decentralized greedy step.
#[derive(Clone, Debug, PartialEq)]
pub struct GreedyPick {
    /// Candidate index held by agent 0 (`None` when there are no candidates).
    pub index: Option<usize>,
    /// Whether every agent ended up holding the same pair.
    pub agreed: bool,
}

/// Each agent scores its own candidates by `(y_i - y_j)^2 - gamma c_l`; a
/// max consensus over `(score, index)` pairs (higher score, then lower
/// index) spreads the global winner.
pub fn decentralized_greedy_pick(
    graph: &Graph,
    candidates: &[EdgeVector],
    costs: &[f64],
    gamma: f64,
    y: &[f64],
    rounds: usize,
    seed: u64,
) -> GreedyPick {
    let n = graph.n();
    let scores: Vec<f64> = candidates
        .iter()
        .zip(costs)
        .map(|(c, cost)| c.edge.incidence_dot(y).powi(2) - gamma * cost)
        .collect();
    let local: Vec<(f64, usize)> = edges_by_owner(n, candidates)
        .into_iter()
        .map(|owned| {
            let local_scores: Vec<f64> = owned.iter().map(|&l| scores[l]).collect();
            match argmax_lowest(&local_scores, |_| true) {
                Some(k) => (local_scores[k], owned[k]),
                None => (f64::NEG_INFINITY, usize::MAX),
            }
        })
        .collect();
    let better = |a: &(f64, usize), b: &(f64, usize)| {
        if a.0 > b.0 + 1e-12 {
            true
        } else if (a.0 - b.0).abs() <= 1e-12 || (a.0 == b.0) {
            a.1 < b.1
        } else {
            false
        }
    };
    let held = max_consensus_by(local, graph, rounds, seed, better);
    let first = held.first().copied();
    let agreed = held.iter().all(|h| Some(*h) == first);
    let index = first.and_then(|(_, id)| (id != usize::MAX).then_some(id));
    GreedyPick { index, agreed }
}
