//! Multimode graph representation, single-source searches, balls, induced
//! subgraphs, and exact brute-force parameter oracles.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

/// Extended nonnegative distance: a finite value or `Distance::INF`.
///
/// `INF` compares greater than every finite value and is absorbing under
/// addition. Finite values in any valid graph are bounded by `n * M`, far
/// below the sentinel, so saturation never conflates a finite sum with `INF`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Distance(u64);

impl Distance {
    pub const ZERO: Distance = Distance(0);
    pub const INF: Distance = Distance(u64::MAX);

    pub fn new(v: u64) -> Distance {
        debug_assert!(v < u64::MAX);
        Distance(v)
    }

    pub fn is_finite(self) -> bool {
        self != Distance::INF
    }

    /// Finite value, or None for `INF`.
    pub fn value(self) -> Option<u64> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }

    /// Finite value; panics on `INF`.
    pub fn unwrap(self) -> u64 {
        assert!(self.is_finite(), "unwrap of infinite distance");
        self.0
    }
}

impl std::ops::Add for Distance {
    type Output = Distance;
    fn add(self, rhs: Distance) -> Distance {
        Distance(self.0.saturating_add(rhs.0))
    }
}

impl std::ops::Add<u64> for Distance {
    type Output = Distance;
    fn add(self, rhs: u64) -> Distance {
        Distance(self.0.saturating_add(rhs))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "inf")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    VertexOutOfRange { v: usize, n: usize },
    ModeOutOfRange { mode: usize, k: usize },
    ZeroModes,
    EmptySourceSet,
    RequiresUndirected,
    RequiresDirected,
    WrongModeCount { expected: usize, got: usize },
    CyclicMode { mode: usize },
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    InvalidParameter(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange { v, n } => {
                write!(f, "vertex {} out of range for n={}", v, n)
            }
            GraphError::ModeOutOfRange { mode, k } => {
                write!(f, "mode {} out of range for k={}", mode, k)
            }
            GraphError::ZeroModes => write!(f, "mode count must be at least 1"),
            GraphError::EmptySourceSet => write!(f, "source set must be non-empty"),
            GraphError::RequiresUndirected => write!(f, "operation requires an undirected graph"),
            GraphError::RequiresDirected => write!(f, "operation requires a directed graph"),
            GraphError::WrongModeCount { expected, got } => {
                write!(f, "operation requires k={}, graph has k={}", expected, got)
            }
            GraphError::CyclicMode { mode } => write!(f, "mode {} contains a cycle", mode),
            GraphError::DimensionMismatch { left, right } => {
                write!(f, "matrix dimensions {:?} and {:?} do not compose", left, right)
            }
            GraphError::InvalidParameter(msg) => write!(f, "{}", msg),
        }
    }
}

impl std::error::Error for GraphError {}

/// Packed adjacency for one mode in one direction: offsets plus flat
/// neighbor and weight arrays.
#[derive(Debug, Clone)]
struct Csr {
    offsets: Vec<usize>,
    nbrs: Vec<u32>,
    wts: Vec<u64>,
}

impl Csr {
    fn build(n: usize, arcs: &[(usize, usize, u64)]) -> Csr {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _, _) in arcs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut nbrs = vec![0u32; arcs.len()];
        let mut wts = vec![0u64; arcs.len()];
        let mut pos = offsets.clone();
        for &(u, v, w) in arcs {
            nbrs[pos[u]] = v as u32;
            wts[pos[u]] = w;
            pos[u] += 1;
        }
        Csr { offsets, nbrs, wts }
    }

    fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let lo = self.offsets[u];
        let hi = self.offsets[u + 1];
        self.nbrs[lo..hi]
            .iter()
            .zip(&self.wts[lo..hi])
            .map(|(&v, &w)| (v as usize, w))
    }
}

/// One vertex set with k separate edge sets; immutable after construction.
#[derive(Debug)]
pub struct MultimodeGraph {
    n: usize,
    k: usize,
    directed: bool,
    max_weight: u64,
    fwd: Vec<Csr>,
    rev: Vec<Csr>,
    unweighted: Vec<bool>,
    edge_counts: Vec<usize>,
    searches: AtomicU64,
}

impl Clone for MultimodeGraph {
    fn clone(&self) -> MultimodeGraph {
        MultimodeGraph {
            n: self.n,
            k: self.k,
            directed: self.directed,
            max_weight: self.max_weight,
            fwd: self.fwd.clone(),
            rev: self.rev.clone(),
            unweighted: self.unweighted.clone(),
            edge_counts: self.edge_counts.clone(),
            searches: AtomicU64::new(self.searches.load(Ordering::Relaxed)),
        }
    }
}

/// Source of a distance map: a single vertex or a contracted vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    One(usize),
    Set(Vec<usize>),
}

/// Exact distances from (or to) a source within one mode.
#[derive(Debug, Clone)]
pub struct DistanceMap {
    pub source: Source,
    pub mode: usize,
    pub dist: Vec<Distance>,
}

/// Result of the brute-force eccentricity sweep.
#[derive(Debug, Clone)]
pub struct ExactParameters {
    pub eccentricities: Vec<Distance>,
    pub diameter: Distance,
    pub radius: Distance,
    /// A pair realizing the diameter.
    pub diameter_pair: (usize, usize),
    /// A vertex realizing the radius.
    pub center: usize,
}

/// Dense n-by-n table of distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    pub n: usize,
    data: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn filled(n: usize, d: Distance) -> DistanceMatrix {
        DistanceMatrix { n, data: vec![d; n * n] }
    }

    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.data[u * self.n + v]
    }

    pub fn set(&mut self, u: usize, v: usize, d: Distance) {
        self.data[u * self.n + v] = d;
    }

    pub fn min_with(&mut self, other: &DistanceMatrix) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if *b < *a {
                *a = *b;
            }
        }
    }
}

/// Induced subgraph together with both vertex relabelings.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: MultimodeGraph,
    /// New id -> old id, in increasing old-id order.
    pub to_old: Vec<usize>,
    /// Old id -> new id.
    pub to_new: Vec<Option<usize>>,
}

impl MultimodeGraph {
    /// Builds a graph from (mode, u, v, w) edges. Undirected edges are
    /// mirrored; parallel edges are kept (harmless for shortest paths).
    pub fn build(
        n: usize,
        k: usize,
        directed: bool,
        edges: &[(usize, usize, usize, u64)],
    ) -> Result<MultimodeGraph, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroModes);
        }
        for &(mode, u, v, _) in edges {
            if mode >= k {
                return Err(GraphError::ModeOutOfRange { mode, k });
            }
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
        }
        let mut per_mode_fwd: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); k];
        let mut per_mode_rev: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); k];
        let mut max_weight = 1u64;
        for &(mode, u, v, w) in edges {
            max_weight = max_weight.max(w);
            per_mode_fwd[mode].push((u, v, w));
            if directed {
                per_mode_rev[mode].push((v, u, w));
            } else {
                per_mode_fwd[mode].push((v, u, w));
            }
        }
        let fwd: Vec<Csr> = per_mode_fwd.iter().map(|arcs| Csr::build(n, arcs)).collect();
        let rev: Vec<Csr> = if directed {
            per_mode_rev.iter().map(|arcs| Csr::build(n, arcs)).collect()
        } else {
            Vec::new()
        };
        let unweighted = fwd.iter().map(|c| c.wts.iter().all(|&w| w == 1)).collect();
        let mut edge_counts = vec![0usize; k];
        for &(mode, _, _, _) in edges {
            edge_counts[mode] += 1;
        }
        Ok(MultimodeGraph {
            n,
            k,
            directed,
            max_weight,
            fwd,
            rev,
            unweighted,
            edge_counts,
            searches: AtomicU64::new(0),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Maximum stored edge weight; 1 for graphs with no edges.
    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    /// Input edge count of one mode (mirror arcs not double-counted).
    pub fn edge_count(&self, mode: usize) -> usize {
        self.edge_counts[mode]
    }

    pub fn is_mode_unweighted(&self, mode: usize) -> bool {
        self.unweighted[mode]
    }

    /// Upper bound on any finite distance: n * M.
    pub fn distance_bound(&self) -> u64 {
        self.n as u64 * self.max_weight
    }

    /// Out-neighbors of u in one mode.
    pub fn neighbors(&self, mode: usize, u: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.fwd[mode].neighbors(u)
    }

    /// In-neighbors of u in one mode (same as out for undirected graphs).
    pub fn in_neighbors(&self, mode: usize, u: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let csr = if self.directed { &self.rev[mode] } else { &self.fwd[mode] };
        csr.neighbors(u)
    }

    /// Iterates the stored edges of one mode as (u, v, w); undirected
    /// graphs yield each edge once per direction.
    pub fn arcs(&self, mode: usize) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.fwd[mode].neighbors(u).map(move |(v, w)| (u, v, w))
        })
    }

    fn csr(&self, mode: usize, reverse: bool) -> &Csr {
        if reverse && self.directed {
            &self.rev[mode]
        } else {
            &self.fwd[mode]
        }
    }

    /// Exact single-source distances in one mode. BFS when every weight of
    /// the mode is 1, binary-heap search otherwise. With `reverse` the map
    /// holds distances TO the source.
    pub fn sssp(&self, mode: usize, source: usize, reverse: bool) -> DistanceMap {
        let dist = self.search(mode, &[source], reverse);
        DistanceMap { source: Source::One(source), mode, dist }
    }

    /// Distances from the nearest of several sources, by seeding them all
    /// at distance 0.
    pub fn multi_source_sssp(
        &self,
        mode: usize,
        sources: &[usize],
    ) -> Result<DistanceMap, GraphError> {
        if sources.is_empty() {
            return Err(GraphError::EmptySourceSet);
        }
        let dist = self.search(mode, sources, false);
        Ok(DistanceMap { source: Source::Set(sources.to_vec()), mode, dist })
    }

    /// Reverse variant of `multi_source_sssp`: distances TO the nearest source.
    pub fn multi_source_sssp_rev(
        &self,
        mode: usize,
        sources: &[usize],
    ) -> Result<DistanceMap, GraphError> {
        if sources.is_empty() {
            return Err(GraphError::EmptySourceSet);
        }
        let dist = self.search(mode, sources, true);
        Ok(DistanceMap { source: Source::Set(sources.to_vec()), mode, dist })
    }

    fn search(&self, mode: usize, sources: &[usize], reverse: bool) -> Vec<Distance> {
        self.searches.fetch_add(1, Ordering::Relaxed);
        let csr = self.csr(mode, reverse);
        if self.unweighted[mode] {
            bfs(self.n, csr, sources)
        } else {
            dijkstra(self.n, csr, sources)
        }
    }

    /// Running count of shortest-path searches issued on this graph.
    pub fn searches_performed(&self) -> u64 {
        self.searches.load(Ordering::Relaxed)
    }

    /// Ball B(v, r) = vertices u with d(u, v) < r, strict. For directed
    /// graphs the distance runs from u to v.
    pub fn ball(&self, mode: usize, v: usize, r: u64) -> Vec<usize> {
        let map = self.sssp(mode, v, true);
        (0..self.n).filter(|&u| map.dist[u] < Distance::new(r)).collect()
    }

    /// Minimum over modes of the per-mode distance from u to v.
    pub fn kmode_distance(&self, u: usize, v: usize) -> Distance {
        (0..self.k)
            .map(|mode| self.sssp(mode, u, false).dist[v])
            .min()
            .unwrap_or(Distance::INF)
    }

    /// All k-mode distances out of u (one search per mode).
    pub fn kmode_distances_from(&self, u: usize) -> Vec<Distance> {
        let mut best = vec![Distance::INF; self.n];
        for mode in 0..self.k {
            let map = self.sssp(mode, u, false);
            for v in 0..self.n {
                if map.dist[v] < best[v] {
                    best[v] = map.dist[v];
                }
            }
        }
        best
    }

    /// Brute-force eccentricities, diameter, and radius (k * n searches).
    pub fn exact_parameters(&self) -> ExactParameters {
        let mut eccentricities = Vec::with_capacity(self.n);
        let mut diameter = Distance::ZERO;
        let mut diameter_pair = (0, 0);
        let mut radius = Distance::INF;
        let mut center = 0;
        for u in 0..self.n {
            let dists = self.kmode_distances_from(u);
            let mut ecc = Distance::ZERO;
            let mut far = u;
            for v in 0..self.n {
                if dists[v] > ecc {
                    ecc = dists[v];
                    far = v;
                }
            }
            if ecc > diameter {
                diameter = ecc;
                diameter_pair = (u, far);
            }
            if ecc < radius {
                radius = ecc;
                center = u;
            }
            eccentricities.push(ecc);
        }
        if self.n == 0 {
            radius = Distance::ZERO;
        }
        ExactParameters { eccentricities, diameter, radius, diameter_pair, center }
    }

    /// Dense k-mode distance matrix (k * n searches).
    pub fn exact_apsp(&self) -> DistanceMatrix {
        let mut m = DistanceMatrix::filled(self.n, Distance::INF);
        for u in 0..self.n {
            let dists = self.kmode_distances_from(u);
            for v in 0..self.n {
                m.set(u, v, dists[v]);
            }
        }
        m
    }

    /// Subgraph induced by a vertex set, with compact relabeling.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> InducedSubgraph {
        let mut to_old: Vec<usize> = vertices.to_vec();
        to_old.sort_unstable();
        to_old.dedup();
        let mut to_new = vec![None; self.n];
        for (new, &old) in to_old.iter().enumerate() {
            to_new[old] = Some(new);
        }
        let mut edges = Vec::new();
        for mode in 0..self.k {
            for &old_u in &to_old {
                for (old_v, w) in self.fwd[mode].neighbors(old_u) {
                    if let (Some(u), Some(v)) = (to_new[old_u], to_new[old_v]) {
                        if self.directed || u <= v {
                            edges.push((mode, u, v, w));
                        }
                    }
                }
            }
        }
        let graph = MultimodeGraph::build(to_old.len(), self.k, self.directed, &edges)
            .expect("induced edges are in range by construction");
        InducedSubgraph { graph, to_old, to_new }
    }
}

fn bfs(n: usize, csr: &Csr, sources: &[usize]) -> Vec<Distance> {
    let mut dist = vec![Distance::INF; n];
    let mut queue = std::collections::VecDeque::with_capacity(sources.len());
    for &s in sources {
        if dist[s] != Distance::ZERO {
            dist[s] = Distance::ZERO;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for (v, _) in csr.neighbors(u) {
            if dist[v] == Distance::INF {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

fn dijkstra(n: usize, csr: &Csr, sources: &[usize]) -> Vec<Distance> {
    let mut dist = vec![Distance::INF; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s] = Distance::ZERO;
        heap.push(Reverse((Distance::ZERO, s)));
    }
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for (v, w) in csr.neighbors(u) {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}
