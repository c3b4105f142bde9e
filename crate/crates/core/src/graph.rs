//! Undirected graphs, Laplacians, mixing matrices and growing networks.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::rng;
use crate::spectral::{self, LaplacianSpectrum};

/// An undirected edge with `i < j` (zero-based). Ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
}

impl Edge {
    /// Orders the endpoints; self-loops are rejected.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop at node {a}")));
        }
        Ok(Self { i: a.min(b), j: a.max(b) })
    }

    /// `a^T v = v_i - v_j` for the incidence vector `a` of this edge.
    pub fn incidence_dot(&self, v: &[f64]) -> f64 {
        v[self.i] - v[self.j]
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// An edge together with its position in a fixed candidate ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeVector {
    pub index: usize,
    pub edge: Edge,
}

impl EdgeVector {
    /// Dense incidence vector: `+1` at `i`, `-1` at `j`.
    pub fn dense(&self, n: usize) -> Vec<f64> {
        let mut a = vec![0.0; n];
        a[self.edge.i] = 1.0;
        a[self.edge.j] = -1.0;
        a
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    positions: Option<Vec<[f64; 2]>>,
}

impl Graph {
    /// Builds a graph, sorting the edges. Duplicates and out-of-range
    /// endpoints are errors.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidGraph(format!("duplicate edge {}", w[0])));
            }
        }
        if let Some(e) = edges.iter().find(|e| e.j >= n) {
            return Err(Error::InvalidGraph(format!("edge {e} out of range for n = {n}")));
        }
        Ok(Self { n, edges, positions: None })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect::<Result<Vec<_>>>()?;
        Self::new(n, edges)
    }

    pub fn with_positions(mut self, positions: Vec<[f64; 2]>) -> Result<Self> {
        if positions.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: positions.len() });
        }
        self.positions = Some(positions);
        Ok(self)
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new(), positions: None }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| Edge { i, j })).collect();
        Self { n, edges, positions: None }
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|j| Edge { i: j - 1, j }).collect();
        Self { n, edges, positions: None }
    }

    /// Node 0 joined to every other node.
    pub fn star(n: usize) -> Self {
        let edges = (1..n).map(|j| Edge { i: 0, j }).collect();
        Self { n, edges, positions: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn positions(&self) -> Option<&[[f64; 2]]> {
        self.positions.as_deref()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.i] += 1;
            d[e.j] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.i].push(e.j);
            adj[e.j].push(e.i);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// A copy with `extra` edges added (positions are kept).
    pub fn with_added(&self, extra: &[Edge]) -> Result<Self> {
        let mut g = Self::new(self.n, self.edges.iter().chain(extra).copied())?;
        g.positions = self.positions.clone();
        Ok(g)
    }

    /// `L = sum_l a_l a_l^T`.
    pub fn laplacian(&self) -> SymMatrix {
        laplacian_of(self.n, &self.edges)
    }

    pub fn edge_length(&self, e: &Edge) -> Result<f64> {
        let pos = self.positions.as_ref().ok_or(Error::MissingPosition { node: e.i })?;
        let (a, b) = (pos[e.i], pos[e.j]);
        Ok(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt())
    }
}

pub fn laplacian_of(n: usize, edges: &[Edge]) -> SymMatrix {
    let mut l = SymMatrix::zeros(n);
    for e in edges {
        l.add_edge_outer(e.i, e.j, 1.0);
    }
    l
}

/// `P = I - L / (2 (1 + delta_max))`.
pub fn consensus_matrix(l: &SymMatrix, delta_max: usize) -> Result<SymMatrix> {
    let n = l.dim();
    let max_deg = (0..n).map(|i| l.get(i, i)).fold(0.0_f64, f64::max);
    if (delta_max as f64) < max_deg - 1e-9 {
        return Err(Error::DeltaMaxTooSmall { given: delta_max, required: max_deg.round() as usize });
    }
    Ok(SymMatrix::identity(n).add_scaled(l, -1.0 / (2.0 * (1.0 + delta_max as f64))))
}

/// All node pairs not already joined, in lexicographic order.
pub fn candidate_edges(graph: &Graph) -> Vec<EdgeVector> {
    let n = graph.n();
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| Edge { i, j }))
        .filter(|e| !graph.contains(e))
        .enumerate()
        .map(|(index, edge)| EdgeVector { index, edge })
        .collect()
}

/// Random geometric graph on the unit square.
///
/// Nodes are placed uniformly; pairs within `radius` are joined. While the
/// graph is disconnected the radius grows by 5% (capped at `sqrt(2)`, where
/// the graph is complete).
pub fn random_sensor_graph(n: usize, radius: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("sensor graph needs n >= 2, got {n}")));
    }
    let max_r = std::f64::consts::SQRT_2;
    if !(radius > 0.0 && radius <= max_r) {
        return Err(Error::InvalidArgument(format!("radius {radius} outside (0, sqrt 2]")));
    }
    let mut rng = rng::rng_from_seed(seed);
    let pos: Vec<[f64; 2]> = (0..n).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect();
    let dist = |a: usize, b: usize| ((pos[a][0] - pos[b][0]).powi(2) + (pos[a][1] - pos[b][1]).powi(2)).sqrt();
    let mut r = radius;
    loop {
        let edges: Vec<Edge> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| Edge { i, j }))
            .filter(|e| dist(e.i, e.j) <= r)
            .collect();
        let g = Graph::new(n, edges)?;
        if g.is_connected() || r >= max_r {
            return g.with_positions(pos);
        }
        r = (r * 1.05).min(max_r);
    }
}

/// Exponential edge-cost model `c = tau1 * exp(tau2 * (d - d0))`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostModel {
    pub tau1: f64,
    pub tau2: f64,
    pub d0: f64,
}

impl Default for CostModel {
    fn default() -> Self {
        Self { tau1: 10.0, tau2: 0.5, d0: 0.7 }
    }
}

impl CostModel {
    pub fn cost_at(&self, length: f64) -> f64 {
        self.tau1 * (self.tau2 * (length - self.d0)).exp()
    }
}

pub fn edge_cost(graph: &Graph, edge: &Edge, model: &CostModel) -> Result<f64> {
    Ok(model.cost_at(graph.edge_length(edge)?))
}

pub fn edge_costs(graph: &Graph, candidates: &[EdgeVector], model: &CostModel) -> Result<Vec<f64>> {
    candidates.iter().map(|c| edge_cost(graph, &c.edge, model)).collect()
}

/// A base graph plus timed edge additions (at most one per step).
///
/// The graph in force at step `t` contains every addition with time `<= t`;
/// time `0` is the base graph. `delta_max` is the maximum degree of the
/// final graph, so every mixing matrix of the sequence shares it.
#[derive(Clone, Debug, PartialEq)]
pub struct DynamicNetwork {
    base: Graph,
    additions: Vec<(usize, Edge)>,
    delta_max: usize,
}

impl DynamicNetwork {
    pub fn new(base: Graph, additions: Vec<(usize, Edge)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut last_t = 0;
        for &(t, e) in &additions {
            if t <= last_t {
                return Err(Error::InvalidSchedule(format!(
                    "addition times must be strictly increasing and >= 1 (got {t} after {last_t})"
                )));
            }
            last_t = t;
            if e.j >= base.n() || base.contains(&e) || !seen.insert(e) {
                return Err(Error::UnknownEdge { i: e.i, j: e.j });
            }
        }
        let finals: Vec<Edge> = additions.iter().map(|a| a.1).collect();
        let delta_max = base.with_added(&finals)?.max_degree();
        Ok(Self { base, additions, delta_max })
    }

    pub fn fixed(base: Graph) -> Self {
        let delta_max = base.max_degree();
        Self { base, additions: Vec::new(), delta_max }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn additions(&self) -> &[(usize, Edge)] {
        &self.additions
    }

    pub fn delta_max(&self) -> usize {
        self.delta_max
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Number of additions in force at step `t`.
    pub fn added_by(&self, t: usize) -> usize {
        self.additions.partition_point(|a| a.0 <= t)
    }

    pub fn graph_at(&self, t: usize) -> Graph {
        let extra: Vec<Edge> = self.additions[..self.added_by(t)].iter().map(|a| a.1).collect();
        self.base.with_added(&extra).expect("validated on construction")
    }

    pub fn laplacian_at(&self, t: usize) -> SymMatrix {
        self.graph_at(t).laplacian()
    }

    pub fn mixing_at(&self, t: usize) -> SymMatrix {
        consensus_matrix(&self.laplacian_at(t), self.delta_max).expect("delta_max covers every step")
    }

    /// Sparse rows of the mixing matrix after the first `k` additions.
    pub fn mixing_rows(&self, k: usize) -> MixingRows {
        let extra: Vec<Edge> = self.additions[..k].iter().map(|a| a.1).collect();
        let g = self.base.with_added(&extra).expect("validated on construction");
        MixingRows::new(&g, self.delta_max)
    }
}

/// Sparse representation of `P = I - L / (2 (1 + delta_max))`: per node,
/// `(neighbor, weight)` pairs with the self weight first.
#[derive(Clone, Debug, PartialEq)]
pub struct MixingRows {
    rows: Vec<Vec<(usize, f64)>>,
}

impl MixingRows {
    pub fn new(graph: &Graph, delta_max: usize) -> Self {
        let w = 1.0 / (2.0 * (1.0 + delta_max as f64));
        let rows = graph
            .neighbors()
            .into_iter()
            .enumerate()
            .map(|(i, mut nb)| {
                nb.sort_unstable();
                let mut row = vec![(i, 1.0 - nb.len() as f64 * w)];
                row.extend(nb.into_iter().map(|j| (j, w)));
                row
            })
            .collect();
        Self { rows }
    }

    /// Nonzero pattern of a dense matrix, diagonal first in every row.
    pub fn from_dense(m: &SymMatrix) -> Self {
        let n = m.dim();
        let rows = (0..n)
            .map(|i| {
                let mut row = vec![(i, m.get(i, i))];
                row.extend((0..n).filter(|&j| j != i && m.get(i, j) != 0.0).map(|j| (j, m.get(i, j))));
                row
            })
            .collect();
        Self { rows }
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Number of directed neighbor links (twice the edge count).
    pub fn links(&self) -> usize {
        self.rows.iter().map(|r| r.len() - 1).sum()
    }

    pub fn to_dense(&self) -> SymMatrix {
        let n = self.rows.len();
        let mut m = SymMatrix::zeros(n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                if j >= i {
                    m.set(i, j, w);
                }
            }
        }
        m
    }
}

/// Spectral summary of one version of a dynamic network.
#[derive(Clone, Debug, PartialEq)]
pub struct VersionSpectrum {
    /// First step at which this version is in force (`0` for the base).
    pub from_t: usize,
    pub sigma2: f64,
    pub algebraic_connectivity: f64,
    pub third_smallest: f64,
    pub fiedler: Vec<f64>,
}

impl VersionSpectrum {
    pub fn gap(&self) -> f64 {
        (self.third_smallest - self.algebraic_connectivity).max(0.0)
    }
}

/// Exact spectra of every network version whose start time is `<= horizon`.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkSpectra {
    pub delta_max: usize,
    pub versions: Vec<VersionSpectrum>,
}

impl NetworkSpectra {
    pub fn compute(network: &DynamicNetwork, horizon: usize) -> Result<Self> {
        let n = network.n();
        let dm = network.delta_max();
        let mut versions = Vec::new();
        let mut edges: Vec<Edge> = network.base().edges().to_vec();
        let times = std::iter::once(0).chain(network.additions().iter().map(|a| a.0));
        for (k, t) in times.enumerate() {
            if t > horizon {
                break;
            }
            if k > 0 {
                edges.push(network.additions()[k - 1].1);
            }
            let l = laplacian_of(n, &edges);
            versions.push(if n < 2 {
                VersionSpectrum {
                    from_t: t,
                    sigma2: 0.0,
                    algebraic_connectivity: 0.0,
                    third_smallest: 0.0,
                    fiedler: vec![1.0; n],
                }
            } else {
                let s = LaplacianSpectrum::of(&l)?;
                // Eigenvalues of P are 1 - lambda(L) / (2 (1 + delta_max)), all >= 0.
                let sigma2 = 1.0 - s.algebraic_connectivity / (2.0 * (1.0 + dm as f64));
                VersionSpectrum {
                    from_t: t,
                    sigma2,
                    algebraic_connectivity: s.algebraic_connectivity,
                    third_smallest: s.third_smallest,
                    fiedler: s.fiedler,
                }
            });
        }
        Ok(Self { delta_max: dm, versions })
    }

    /// Version in force at step `t`.
    pub fn at(&self, t: usize) -> &VersionSpectrum {
        let k = self.versions.partition_point(|v| v.from_t <= t);
        &self.versions[k.saturating_sub(1)]
    }

    pub fn initial(&self) -> &VersionSpectrum {
        &self.versions[0]
    }
}

/// Algebraic connectivity of a graph from the exact spectrum (`0` for `n < 2`).
pub fn algebraic_connectivity(graph: &Graph) -> Result<f64> {
    if graph.n() < 2 {
        return Ok(0.0);
    }
    Ok(spectral::fiedler_pair_exact(&graph.laplacian())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_laplacian() {
        let l = Graph::path(3).laplacian();
        assert_eq!(l.to_rows(), vec![vec![1.0, -1.0, 0.0], vec![-1.0, 2.0, -1.0], vec![0.0, -1.0, 1.0]]);
        assert_eq!(Graph::empty(3).laplacian(), SymMatrix::zeros(3));
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(Edge::new(2, 2).is_err());
        assert!(Graph::from_pairs(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_pairs(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn consensus_rows() {
        let l = Graph::path(3).laplacian();
        let p = consensus_matrix(&l, 2).unwrap();
        for s in p.row_sums() {
            assert!((s - 1.0).abs() < 1e-15);
        }
        assert_eq!(p.get(0, 1), 1.0 / 6.0);
        assert!(consensus_matrix(&l, 1).is_err());
        assert_eq!(consensus_matrix(&SymMatrix::zeros(1), 0).unwrap().get(0, 0), 1.0);
    }

    #[test]
    fn candidates() {
        assert!(candidate_edges(&Graph::complete(3)).is_empty());
        let c = candidate_edges(&Graph::path(3));
        assert_eq!(c, vec![EdgeVector { index: 0, edge: Edge { i: 0, j: 2 } }]);
        let c = candidate_edges(&Graph::star(5));
        assert_eq!(c.len(), 6);
        assert!(c.iter().all(|e| e.edge.i != 0));
    }

    #[test]
    fn sensor_graph() {
        let g = random_sensor_graph(2, std::f64::consts::SQRT_2, 1).unwrap();
        assert_eq!(g.edges().len(), 1);
        let a = random_sensor_graph(100, 0.15, 7).unwrap();
        let b = random_sensor_graph(100, 0.15, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.is_connected());
        assert!(algebraic_connectivity(&a).unwrap() > 0.0);
        assert!(random_sensor_graph(1, 0.2, 0).is_err());
        assert!(random_sensor_graph(5, 2.0, 0).is_err());
    }

    #[test]
    fn costs() {
        let m = CostModel::default();
        assert_eq!(m.cost_at(0.7), 10.0);
        let want = 10.0 * 1f64.exp().powi(2);
        assert!((m.cost_at(0.7 + 2.0 / 0.5) - want).abs() < 1e-12);
        let g = Graph::path(2);
        assert!(matches!(edge_cost(&g, &g.edges()[0], &m), Err(Error::MissingPosition { .. })));
    }

    #[test]
    fn dynamic_network_versions() {
        let e = Edge { i: 0, j: 2 };
        let net = DynamicNetwork::new(Graph::path(3), vec![(3, e)]).unwrap();
        assert_eq!(net.delta_max(), 2);
        assert_eq!(net.graph_at(2).edges().len(), 2);
        assert_eq!(net.graph_at(3).edges().len(), 3);
        assert!(DynamicNetwork::new(Graph::path(3), vec![(0, e)]).is_err());
        assert!(DynamicNetwork::new(Graph::path(3), vec![(1, Edge { i: 0, j: 1 })]).is_err());
        let spectra = NetworkSpectra::compute(&net, 10).unwrap();
        assert_eq!(spectra.versions.len(), 2);
        assert!((spectra.at(2).algebraic_connectivity - 1.0).abs() < 1e-12);
        assert!((spectra.at(3).algebraic_connectivity - 3.0).abs() < 1e-12);
        assert!((spectra.at(3).sigma2 - 0.5).abs() < 1e-12);
        assert_eq!(net.mixing_rows(1).to_dense(), net.mixing_at(3));
    }
}
