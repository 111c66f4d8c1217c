//! Exact computations: reductions of k-mode diameter and radius to their
//! single-graph counterparts, trivial k-mode APSP, bounded-weight k-mode
//! APSP through sampled hitting-set levels and capped min-plus products,
//! and the negative-triangle instance generator.

use std::fmt;

use rand::Rng;

use crate::graph::{DistanceMatrix, GraphError, MultimodeGraph};
use crate::stats::AlgoStats;

/// Signed extended distance, used only by the bounded-weight computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignedDistance(i64);

impl SignedDistance {
    pub const INF: SignedDistance = SignedDistance(i64::MAX / 4);
    pub const ZERO: SignedDistance = SignedDistance(0);

    pub fn new(v: i64) -> SignedDistance {
        debug_assert!(v < Self::INF.0);
        SignedDistance(v)
    }

    pub fn is_finite(self) -> bool {
        self != Self::INF
    }

    pub fn value(self) -> Option<i64> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }

    pub fn add(self, other: SignedDistance) -> SignedDistance {
        if self.is_finite() && other.is_finite() {
            SignedDistance(self.0 + other.0)
        } else {
            Self::INF
        }
    }
}

impl fmt::Display for SignedDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{}", v),
            None => write!(f, "inf"),
        }
    }
}

/// Dense rectangular matrix of signed distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<SignedDistance>,
}

impl SignedMatrix {
    pub fn filled(rows: usize, cols: usize, d: SignedDistance) -> SignedMatrix {
        SignedMatrix { rows, cols, data: vec![d; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> SignedDistance {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, d: SignedDistance) {
        self.data[r * self.cols + c] = d;
    }

    pub fn min_assign(&mut self, other: &SignedMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if *b < *a {
                *a = *b;
            }
        }
    }
}

fn capped(x: SignedDistance, cap: Option<i64>) -> SignedDistance {
    match (x.value(), cap) {
        (Some(v), Some(c)) if v.abs() > c => SignedDistance::INF,
        _ => x,
    }
}

/// Min-plus product with an optional entry cap: inputs with magnitude above
/// the cap are treated as infinite before multiplying. Blocked cubic loop.
pub fn min_plus_product(
    a: &SignedMatrix,
    b: &SignedMatrix,
    cap: Option<i64>,
) -> Result<SignedMatrix, GraphError> {
    if a.cols != b.rows {
        return Err(GraphError::DimensionMismatch {
            left: (a.rows, a.cols),
            right: (b.rows, b.cols),
        });
    }
    let av: Vec<SignedDistance> = a.data.iter().map(|&x| capped(x, cap)).collect();
    let bv: Vec<SignedDistance> = b.data.iter().map(|&x| capped(x, cap)).collect();
    let mut out = SignedMatrix::filled(a.rows, b.cols, SignedDistance::INF);
    const BLOCK: usize = 32;
    let inner = a.cols;
    let cols = b.cols;
    for ib in (0..a.rows).step_by(BLOCK) {
        for kb in (0..inner).step_by(BLOCK) {
            for i in ib..(ib + BLOCK).min(a.rows) {
                for kk in kb..(kb + BLOCK).min(inner) {
                    let x = av[i * inner + kk];
                    let xv = match x.value() {
                        Some(v) => v,
                        None => continue,
                    };
                    let brow = &bv[kk * cols..(kk + 1) * cols];
                    let orow = &mut out.data[i * cols..(i + 1) * cols];
                    for (o, &y) in orow.iter_mut().zip(brow) {
                        if let Some(yv) = y.value() {
                            let cand = SignedDistance(xv + yv);
                            if cand < *o {
                                *o = cand;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Directed multimode graph with signed integer weights; only the exact
/// bounded-weight computations accept negative weights.
#[derive(Debug, Clone)]
pub struct SignedGraph {
    n: usize,
    k: usize,
    arcs: Vec<Vec<(usize, usize, i64)>>,
}

impl SignedGraph {
    pub fn new(
        n: usize,
        k: usize,
        edges: &[(usize, usize, usize, i64)],
    ) -> Result<SignedGraph, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroModes);
        }
        let mut arcs = vec![Vec::new(); k];
        for &(mode, u, v, w) in edges {
            if mode >= k {
                return Err(GraphError::ModeOutOfRange { mode, k });
            }
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            arcs[mode].push((u, v, w));
        }
        Ok(SignedGraph { n, k, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn arcs(&self, mode: usize) -> &[(usize, usize, i64)] {
        &self.arcs[mode]
    }

    /// Largest weight magnitude, at least 1.
    pub fn weight_bound(&self) -> i64 {
        self.arcs
            .iter()
            .flatten()
            .map(|&(_, _, w)| w.abs())
            .max()
            .unwrap_or(1)
            .max(1)
    }

    fn adjacency(&self, mode: usize) -> SignedMatrix {
        let mut m = SignedMatrix::filled(self.n, self.n, SignedDistance::INF);
        for v in 0..self.n {
            m.set(v, v, SignedDistance::ZERO);
        }
        for &(u, v, w) in &self.arcs[mode] {
            if SignedDistance::new(w) < m.get(u, v) {
                m.set(u, v, SignedDistance::new(w));
            }
        }
        m
    }
}

/// Per-mode Bellman-Ford from every source, entrywise minimum over modes.
pub fn signed_apsp_trivial(g: &SignedGraph) -> Result<SignedMatrix, GraphError> {
    let n = g.n;
    let mut out = SignedMatrix::filled(n, n, SignedDistance::INF);
    for v in 0..n {
        out.set(v, v, SignedDistance::ZERO);
    }
    for mode in 0..g.k {
        for src in 0..n {
            let mut dist = vec![SignedDistance::INF; n];
            dist[src] = SignedDistance::ZERO;
            for round in 0..n {
                let mut improved = false;
                for &(u, v, w) in &g.arcs[mode] {
                    let cand = dist[u].add(SignedDistance::new(w));
                    if cand < dist[v] {
                        dist[v] = cand;
                        improved = true;
                    }
                }
                if !improved {
                    break;
                }
                if round + 1 == n && improved {
                    return Err(GraphError::InvalidParameter(format!(
                        "negative cycle in mode {}",
                        mode
                    )));
                }
            }
            for v in 0..n {
                if dist[v] < out.get(src, v) {
                    out.set(src, v, dist[v]);
                }
            }
        }
    }
    Ok(out)
}

/// Runs one shortest-path search per vertex per mode and keeps the
/// entrywise minimum.
pub fn kmode_apsp_trivial(g: &MultimodeGraph) -> DistanceMatrix {
    g.exact_apsp()
}

/// Nested sampled vertex sets with per-level, per-mode hop-limited distance
/// tables; level i covers paths on roughly (3/2)^i hops.
#[derive(Debug, Clone)]
pub struct LeveledSamples {
    /// S_1 ⊇ S_2 ⊇ …, each sorted ascending (S_0 is the full vertex set).
    pub sets: Vec<Vec<usize>>,
    /// Hop budget (3/2)^i per stored level.
    pub hop_budgets: Vec<f64>,
    /// Per level, per mode: distances from every vertex to the samples.
    pub to_samples: Vec<Vec<SignedMatrix>>,
    /// Per level, per mode: distances from the samples to every vertex.
    pub from_samples: Vec<Vec<SignedMatrix>>,
}

/// Builds the nested sample sets and hop-limited tables by capped min-plus
/// composition, level by level. |S_i| = min(|S_{i-1}|, ceil(9 n ln n/(3/2)^i)).
pub fn leveled_samples<R: Rng>(
    g: &SignedGraph,
    rng: &mut R,
) -> Result<LeveledSamples, GraphError> {
    let n = g.n;
    let k = g.k;
    let bound = g.weight_bound();
    let ln_n = (n.max(2) as f64).ln();
    let mut samples = LeveledSamples {
        sets: Vec::new(),
        hop_budgets: Vec::new(),
        to_samples: Vec::new(),
        from_samples: Vec::new(),
    };
    if n == 0 {
        return Ok(samples);
    }

    let mut s_prev: Vec<usize> = (0..n).collect();
    let mut to_prev: Vec<SignedMatrix> = (0..k).map(|j| g.adjacency(j)).collect();
    let mut from_prev = to_prev.clone();
    let mut hop = 1.0f64;
    loop {
        hop *= 1.5;
        let target = ((9.0 * n as f64 * ln_n) / hop).ceil() as usize;
        let size = s_prev.len().min(target.max(1));
        let mut s_cur: Vec<usize> = rand::seq::index::sample(rng, s_prev.len(), size)
            .into_iter()
            .map(|ix| s_prev[ix])
            .collect();
        s_cur.sort_unstable();
        let col_of: Vec<usize> = {
            // position of each S_i member inside the sorted S_{i-1} columns
            let mut pos = Vec::with_capacity(s_cur.len());
            let mut p = 0;
            for &s in &s_cur {
                while s_prev[p] != s {
                    p += 1;
                }
                pos.push(p);
            }
            pos
        };
        let cap_prev = ((bound as f64) * hop / 1.5).ceil() as i64;

        let mut to_cur = Vec::with_capacity(k);
        let mut from_cur = Vec::with_capacity(k);
        for j in 0..k {
            // compose u -> s' -> s over s' in the previous sample set
            let mut mid = SignedMatrix::filled(s_prev.len(), s_cur.len(), SignedDistance::INF);
            for (p, &sp) in s_prev.iter().enumerate() {
                for (q, &cp) in col_of.iter().enumerate() {
                    mid.set(p, q, to_prev[j].get(sp, cp));
                }
            }
            let mut to_new = min_plus_product(&to_prev[j], &mid, Some(cap_prev))?;
            for u in 0..n {
                for (q, &cp) in col_of.iter().enumerate() {
                    let old = to_prev[j].get(u, cp);
                    if old < to_new.get(u, q) {
                        to_new.set(u, q, old);
                    }
                }
            }

            let mut head = SignedMatrix::filled(s_cur.len(), s_prev.len(), SignedDistance::INF);
            for (q, &s) in s_cur.iter().enumerate() {
                for p in 0..s_prev.len() {
                    head.set(q, p, to_prev[j].get(s, p));
                }
            }
            let mut from_new = min_plus_product(&head, &from_prev[j], Some(cap_prev))?;
            for (q, &pp) in col_of.iter().enumerate() {
                for u in 0..n {
                    let old = from_prev[j].get(pp, u);
                    if old < from_new.get(q, u) {
                        from_new.set(q, u, old);
                    }
                }
            }

            for (q, &s) in s_cur.iter().enumerate() {
                if to_new.get(s, q) < SignedDistance::ZERO {
                    return Err(GraphError::InvalidParameter(format!(
                        "negative cycle in mode {}",
                        j
                    )));
                }
            }
            to_cur.push(to_new);
            from_cur.push(from_new);
        }

        samples.sets.push(s_cur.clone());
        samples.hop_budgets.push(hop);
        samples.to_samples.push(to_cur.clone());
        samples.from_samples.push(from_cur.clone());

        s_prev = s_cur;
        to_prev = to_cur;
        from_prev = from_cur;
        if hop >= n as f64 {
            break;
        }
    }
    Ok(samples)
}

/// k-mode APSP for bounded signed weights: base adjacency plus, per level,
/// the through-sample combination min over modes, done with a stacked capped
/// min-plus product or a brute-force scan once the sample set is below √n.
pub fn kmode_apsp_bounded<R: Rng>(
    g: &SignedGraph,
    rng: &mut R,
    stats: &mut AlgoStats,
) -> Result<SignedMatrix, GraphError> {
    let n = g.n;
    let k = g.k;
    let bound = g.weight_bound();
    let mut result = SignedMatrix::filled(n, n, SignedDistance::INF);
    for v in 0..n {
        result.set(v, v, SignedDistance::ZERO);
    }
    if n == 0 {
        return Ok(result);
    }
    for j in 0..k {
        result.min_assign(&g.adjacency(j));
    }

    let samples = leveled_samples(g, rng)?;
    for (li, s_cur) in samples.sets.iter().enumerate() {
        let cap = ((bound as f64) * samples.hop_budgets[li]).ceil() as i64;
        let to = &samples.to_samples[li];
        let from = &samples.from_samples[li];
        if s_cur.len() * s_cur.len() <= n {
            for j in 0..k {
                for q in 0..s_cur.len() {
                    for u in 0..n {
                        let x = match capped(to[j].get(u, q), Some(cap)).value() {
                            Some(v) => v,
                            None => continue,
                        };
                        for v in 0..n {
                            if let Some(y) = capped(from[j].get(q, v), Some(cap)).value() {
                                let cand = SignedDistance(x + y);
                                if cand < result.get(u, v) {
                                    result.set(u, v, cand);
                                }
                            }
                        }
                    }
                }
            }
        } else {
            let stacked = k * s_cur.len();
            let mut a = SignedMatrix::filled(n, stacked, SignedDistance::INF);
            let mut b = SignedMatrix::filled(stacked, n, SignedDistance::INF);
            for j in 0..k {
                for q in 0..s_cur.len() {
                    let col = j * s_cur.len() + q;
                    for u in 0..n {
                        a.set(u, col, to[j].get(u, q));
                        b.set(col, u, from[j].get(q, u));
                    }
                }
            }
            stats.matmul_dims.push((n, stacked, n));
            result.min_assign(&min_plus_product(&a, &b, Some(cap))?);
        }
    }
    Ok(result)
}

/// Standard single-mode graph encoding a k-multimode one: k disjoint mode
/// copies tied to the original vertex set by weight-W connectors, a central
/// hub x at weight W/2 from every copy vertex, and for the radius flavor an
/// extra hub y at weight 2W from every original vertex.
#[derive(Debug, Clone)]
pub struct ReducedGraph {
    pub graph: MultimodeGraph,
    /// Even connector weight, larger than any simple-path length.
    pub w: u64,
    /// Subtracting this from the reduced parameter recovers the k-mode one.
    pub offset: u64,
    pub n_original: usize,
    pub k_original: usize,
    pub hub_x: usize,
    pub hub_y: Option<usize>,
}

impl ReducedGraph {
    /// Id of vertex v inside the copy of the given mode.
    pub fn copy_id(&self, mode: usize, v: usize) -> usize {
        self.n_original + mode * self.n_original + v
    }
}

fn smallest_even_above(x: u64) -> u64 {
    let mut w = x + 1;
    if w % 2 == 1 {
        w += 1;
    }
    w
}

fn reduce_to_standard(g: &MultimodeGraph, with_y: bool) -> Result<ReducedGraph, GraphError> {
    let n = g.n();
    let k = g.k();
    let w = smallest_even_above(n as u64 * g.max_weight());
    let x = n + k * n;
    let y = if with_y { Some(x + 1) } else { None };
    let total = x + 1 + usize::from(with_y);
    let directed = g.is_directed();

    let mut edges: Vec<(usize, usize, usize, u64)> = Vec::new();
    for mode in 0..k {
        for (u, v, wt) in g.arcs(mode) {
            if !directed && u > v {
                continue;
            }
            edges.push((0, n + mode * n + u, n + mode * n + v, wt));
        }
    }
    for v in 0..n {
        for mode in 0..k {
            let c = n + mode * n + v;
            edges.push((0, v, c, w));
            if directed {
                edges.push((0, c, v, w));
            }
        }
    }
    for c in n..x {
        edges.push((0, c, x, w / 2));
        if directed {
            edges.push((0, x, c, w / 2));
        }
    }
    if let Some(y) = y {
        for v in 0..n {
            edges.push((0, v, y, 2 * w));
            if directed {
                edges.push((0, y, v, 2 * w));
            }
        }
    }
    let graph = MultimodeGraph::build(total, 1, directed, &edges)?;
    Ok(ReducedGraph {
        graph,
        w,
        offset: 2 * w,
        n_original: n,
        k_original: k,
        hub_x: x,
        hub_y: y,
    })
}

/// Encodes k-mode diameter as standard diameter: the reduced diameter is
/// 2W + D(G), or exactly 3W when D(G) is infinite (valid for n >= 2).
pub fn reduce_to_standard_diameter(g: &MultimodeGraph) -> Result<ReducedGraph, GraphError> {
    reduce_to_standard(g, false)
}

/// Encodes k-mode radius as standard radius: the reduced radius is 2W + R(G).
pub fn reduce_to_standard_radius(g: &MultimodeGraph) -> Result<ReducedGraph, GraphError> {
    reduce_to_standard(g, true)
}

/// Tripartite negative-triangle instance with weights in [-bound, bound];
/// missing edges are None.
#[derive(Debug, Clone)]
pub struct NegTriInstance {
    n: usize,
    bound: i64,
    ij: Vec<Vec<Option<i64>>>,
    jl: Vec<Vec<Option<i64>>>,
    li: Vec<Vec<Option<i64>>>,
}

impl NegTriInstance {
    pub fn new(
        n: usize,
        bound: i64,
        ij: Vec<Vec<Option<i64>>>,
        jl: Vec<Vec<Option<i64>>>,
        li: Vec<Vec<Option<i64>>>,
    ) -> Result<NegTriInstance, GraphError> {
        if n == 0 || bound < 1 {
            return Err(GraphError::InvalidParameter(
                "need at least one node per part and a positive weight bound".into(),
            ));
        }
        for table in [&ij, &jl, &li] {
            if table.len() != n || table.iter().any(|row| row.len() != n) {
                return Err(GraphError::InvalidParameter(format!(
                    "weight tables must be {0}x{0}",
                    n
                )));
            }
            for w in table.iter().flatten().flatten() {
                if w.abs() > bound {
                    return Err(GraphError::InvalidParameter(format!(
                        "weight {} outside [-{1}, {1}]",
                        w, bound
                    )));
                }
            }
        }
        Ok(NegTriInstance { n, bound, ij, jl, li })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Brute-force scan for i, j, l with all three edges present and a
    /// negative weight sum.
    pub fn has_negative_triangle(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let Some(w1) = self.ij[i][j] else { continue };
                for l in 0..self.n {
                    if let (Some(w2), Some(w3)) = (self.jl[j][l], self.li[l][i]) {
                        if w1 + w2 + w3 < 0 {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

fn cube_root_floor(k: usize) -> usize {
    (1..=k).take_while(|g| g * g * g <= k).last().unwrap_or(1)
}

/// Encodes a negative-triangle instance as a k-multimode graph on four
/// layers: one mode per group triple, every edge shifted up by 10 bound so
/// that some a_i-to-d_i k-mode distance drops below 30 bound exactly when a
/// negative triangle exists. The radius flavor adds hub edges at 30 bound - 1
/// pinning the center to the first layer. Returns the graph and the brute
/// force answer bit.
pub fn negtri_to_kmode(
    inst: &NegTriInstance,
    k: usize,
    radius_flavor: bool,
) -> Result<(MultimodeGraph, bool), GraphError> {
    if k == 0 {
        return Err(GraphError::InvalidParameter("need at least one mode".into()));
    }
    let g_cnt = cube_root_floor(k);
    let n = inst.n;
    let m = inst.bound;
    let width = (n + g_cnt - 1) / g_cnt;
    let shift = 10 * m;
    let group = |p: usize| (p * width)..(((p + 1) * width).min(n));

    let mut edges: Vec<(usize, usize, usize, u64)> = Vec::new();
    for p in 0..g_cnt {
        for r in 0..g_cnt {
            for s in 0..g_cnt {
                let mode = (p * g_cnt + r) * g_cnt + s;
                for (ii, gi) in group(p).enumerate() {
                    for (jj, gj) in group(r).enumerate() {
                        if let Some(w) = inst.ij[gi][gj] {
                            edges.push((mode, ii, width + jj, (shift + w) as u64));
                        }
                    }
                }
                for (ii, gi) in group(r).enumerate() {
                    for (jj, gj) in group(s).enumerate() {
                        if let Some(w) = inst.jl[gi][gj] {
                            edges.push((mode, width + ii, 2 * width + jj, (shift + w) as u64));
                        }
                    }
                }
                for (ii, gi) in group(s).enumerate() {
                    for (jj, gj) in group(p).enumerate() {
                        if let Some(w) = inst.li[gi][gj] {
                            edges.push((mode, 2 * width + ii, 3 * width + jj, (shift + w) as u64));
                        }
                    }
                }
            }
        }
    }

    let mut total = 4 * width;
    if radius_flavor {
        let hub_w = (30 * m - 1) as u64;
        let x = total;
        total += 1;
        for i in 0..width {
            let a = i;
            let d = 3 * width + i;
            for u in 0..4 * width {
                if u != d && u != a {
                    edges.push((0, a, u, hub_w));
                }
            }
            edges.push((0, x, a, hub_w));
        }
    }
    let graph = MultimodeGraph::build(total, g_cnt.pow(3), false, &edges)?;
    Ok((graph, inst.has_negative_triangle()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Distance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn inf() -> SignedDistance {
        SignedDistance::INF
    }

    fn sd(v: i64) -> SignedDistance {
        SignedDistance::new(v)
    }

    fn naive_min_plus(a: &SignedMatrix, b: &SignedMatrix) -> SignedMatrix {
        let mut out = SignedMatrix::filled(a.rows, b.cols, inf());
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut best = inf();
                for kk in 0..a.cols {
                    let cand = a.get(i, kk).add(b.get(kk, j));
                    if cand < best {
                        best = cand;
                    }
                }
                out.set(i, j, best);
            }
        }
        out
    }

    fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> SignedMatrix {
        let mut m = SignedMatrix::filled(rows, cols, inf());
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(0.8) {
                    m.set(r, c, sd(rng.gen_range(-50..50)));
                }
            }
        }
        m
    }

    #[test]
    fn min_plus_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let a = random_matrix(7, 7, &mut rng);
        let mut id = SignedMatrix::filled(7, 7, inf());
        for i in 0..7 {
            id.set(i, i, SignedDistance::ZERO);
        }
        assert_eq!(min_plus_product(&a, &id, None).unwrap(), a);
    }

    #[test]
    fn min_plus_keeps_infinite_rows() {
        let a = SignedMatrix::filled(3, 3, inf());
        let b = random_matrix(3, 3, &mut ChaCha8Rng::seed_from_u64(42));
        let c = min_plus_product(&a, &b, None).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c.get(i, j), inf());
            }
        }
    }

    #[test]
    fn min_plus_matches_naive_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let a = random_matrix(15, 15, &mut rng);
        let b = random_matrix(15, 15, &mut rng);
        assert_eq!(min_plus_product(&a, &b, None).unwrap(), naive_min_plus(&a, &b));
    }

    #[test]
    fn min_plus_is_associative_without_caps() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..5 {
            let a = random_matrix(8, 8, &mut rng);
            let b = random_matrix(8, 8, &mut rng);
            let c = random_matrix(8, 8, &mut rng);
            let left = min_plus_product(&min_plus_product(&a, &b, None).unwrap(), &c, None).unwrap();
            let right = min_plus_product(&a, &min_plus_product(&b, &c, None).unwrap(), None).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn min_plus_rejects_mismatched_dimensions() {
        let a = SignedMatrix::filled(2, 3, inf());
        let b = SignedMatrix::filled(4, 2, inf());
        assert!(matches!(
            min_plus_product(&a, &b, None),
            Err(GraphError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn min_plus_cap_drops_large_entries() {
        let mut a = SignedMatrix::filled(1, 1, sd(10));
        let b = SignedMatrix::filled(1, 1, sd(1));
        assert_eq!(min_plus_product(&a, &b, Some(5)).unwrap().get(0, 0), inf());
        a.set(0, 0, sd(4));
        assert_eq!(min_plus_product(&a, &b, Some(5)).unwrap().get(0, 0), sd(5));
    }

    fn random_signed_dags(n: usize, k: usize, rng: &mut ChaCha8Rng) -> SignedGraph {
        let mut edges = Vec::new();
        for mode in 0..k {
            for _ in 0..3 * n {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                if a != b {
                    edges.push((mode, a.min(b), a.max(b), rng.gen_range(-2..=2)));
                }
            }
        }
        SignedGraph::new(n, k, &edges).unwrap()
    }

    #[test]
    fn trivial_signed_apsp_detects_negative_cycle() {
        let g = SignedGraph::new(2, 1, &[(0, 0, 1, -1), (0, 1, 0, -1)]).unwrap();
        assert!(matches!(
            signed_apsp_trivial(&g),
            Err(GraphError::InvalidParameter(_))
        ));
    }

    #[test]
    fn bounded_apsp_detects_negative_cycle() {
        let g = SignedGraph::new(2, 1, &[(0, 0, 1, -1), (0, 1, 0, -1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        let mut stats = AlgoStats::new();
        assert!(matches!(
            kmode_apsp_bounded(&g, &mut rng, &mut stats),
            Err(GraphError::InvalidParameter(_))
        ));
    }

    #[test]
    fn bounded_apsp_single_negative_edge() {
        let g = SignedGraph::new(2, 1, &[(0, 0, 1, -1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        let mut stats = AlgoStats::new();
        let m = kmode_apsp_bounded(&g, &mut rng, &mut stats).unwrap();
        assert_eq!(m.get(0, 1), sd(-1));
        assert_eq!(m.get(1, 0), inf());
        assert_eq!(signed_apsp_trivial(&g).unwrap().get(0, 1), sd(-1));
    }

    #[test]
    fn bounded_apsp_matches_trivial_on_unweighted_path() {
        let edges: Vec<(usize, usize, usize, i64)> =
            (0..6).map(|v| (0, v, v + 1, 1)).collect();
        let g = SignedGraph::new(7, 1, &edges).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let mut stats = AlgoStats::new();
        let fast = kmode_apsp_bounded(&g, &mut rng, &mut stats).unwrap();
        assert_eq!(fast, signed_apsp_trivial(&g).unwrap());
    }

    #[test]
    fn bounded_apsp_matches_trivial_on_random_dags() {
        let mut rng = ChaCha8Rng::seed_from_u64(48);
        for trial in 0..15 {
            let n = 4 + trial % 10;
            let k = 1 + trial % 3;
            let g = random_signed_dags(n, k, &mut rng);
            let mut stats = AlgoStats::new();
            let fast = kmode_apsp_bounded(&g, &mut rng, &mut stats).unwrap();
            let slow = signed_apsp_trivial(&g).unwrap();
            assert_eq!(fast, slow, "trial {}", trial);
        }
    }

    #[test]
    fn level_tables_never_undercut_true_distances() {
        let mut rng = ChaCha8Rng::seed_from_u64(49);
        let g = random_signed_dags(10, 2, &mut rng);
        let samples = leveled_samples(&g, &mut rng).unwrap();
        for j in 0..g.k() {
            let single = SignedGraph::new(
                g.n(),
                1,
                &g.arcs(j).iter().map(|&(u, v, w)| (0, u, v, w)).collect::<Vec<_>>(),
            )
            .unwrap();
            let exact = signed_apsp_trivial(&single).unwrap();
            for (li, s_cur) in samples.sets.iter().enumerate() {
                for u in 0..g.n() {
                    for (q, &s) in s_cur.iter().enumerate() {
                        assert!(samples.to_samples[li][j].get(u, q) >= exact.get(u, s));
                        assert!(samples.from_samples[li][j].get(q, u) >= exact.get(s, u));
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_diameter_on_path() {
        let g = MultimodeGraph::build(3, 1, false, &[(0, 0, 1, 1), (0, 1, 2, 1)]).unwrap();
        let red = reduce_to_standard_diameter(&g).unwrap();
        assert_eq!(red.w, 4);
        assert_eq!(red.graph.exact_parameters().diameter, Distance::new(10));
    }

    #[test]
    fn reduced_diameter_of_disconnected_pair_is_three_w() {
        let g = MultimodeGraph::build(2, 2, false, &[]).unwrap();
        let red = reduce_to_standard_diameter(&g).unwrap();
        assert_eq!(
            red.graph.exact_parameters().diameter,
            Distance::new(3 * red.w)
        );
    }

    #[test]
    fn reduced_radius_of_star() {
        let edges: Vec<(usize, usize, usize, u64)> =
            (1..5).map(|v| (0, 0, v, 1)).collect();
        let g = MultimodeGraph::build(5, 1, false, &edges).unwrap();
        let red = reduce_to_standard_radius(&g).unwrap();
        assert_eq!(
            red.graph.exact_parameters().radius,
            Distance::new(red.offset + 1)
        );
    }

    #[test]
    fn reduced_radius_with_one_complete_mode() {
        let mut edges = vec![(0, 0, 1, 1)];
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((1, u, v, 1));
            }
        }
        let g = MultimodeGraph::build(4, 2, false, &edges).unwrap();
        let red = reduce_to_standard_radius(&g).unwrap();
        assert_eq!(
            red.graph.exact_parameters().radius,
            Distance::new(red.offset + 1)
        );
    }

    #[test]
    fn reduced_radius_singleton_is_offset() {
        let g = MultimodeGraph::build(1, 1, false, &[]).unwrap();
        let red = reduce_to_standard_radius(&g).unwrap();
        assert_eq!(red.graph.exact_parameters().radius, Distance::new(red.offset));
    }

    #[test]
    fn reductions_recover_exact_parameters_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for trial in 0..25 {
            let n = 2 + trial % 9;
            let k = 1 + trial % 3;
            let directed = trial % 2 == 0;
            let mut edges = Vec::new();
            for _ in 0..2 * n {
                let mode = rng.gen_range(0..k);
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v {
                    edges.push((mode, u, v, rng.gen_range(1..=3)));
                }
            }
            let g = MultimodeGraph::build(n, k, directed, &edges).unwrap();
            let exact = g.exact_parameters();

            let red = reduce_to_standard_diameter(&g).unwrap();
            let got = red.graph.exact_parameters().diameter;
            match exact.diameter.value() {
                Some(d) => assert_eq!(got, Distance::new(red.offset + d), "trial {}", trial),
                None => assert_eq!(got, Distance::new(3 * red.w), "trial {}", trial),
            }

            let red = reduce_to_standard_radius(&g).unwrap();
            let got = red.graph.exact_parameters().radius;
            match exact.radius.value() {
                Some(r) => assert_eq!(got, Distance::new(red.offset + r), "trial {}", trial),
                None => assert_eq!(got, Distance::new(3 * red.w), "trial {}", trial),
            }
        }
    }

    fn full_tables(n: usize, w: i64) -> Vec<Vec<Option<i64>>> {
        vec![vec![Some(w); n]; n]
    }

    #[test]
    fn negtri_all_positive_has_no_triangle() {
        let inst =
            NegTriInstance::new(4, 2, full_tables(4, 2), full_tables(4, 2), full_tables(4, 2))
                .unwrap();
        let (g, answer) = negtri_to_kmode(&inst, 1, false).unwrap();
        assert!(!answer);
        let apsp = g.exact_apsp();
        let width = 4;
        for i in 0..width {
            assert!(apsp.get(i, 3 * width + i) >= Distance::new(60));
        }
    }

    #[test]
    fn negtri_planted_triangle_drops_radius() {
        let mut ij = full_tables(3, 2);
        let mut jl = full_tables(3, 2);
        let mut li = full_tables(3, 2);
        ij[1][2] = Some(-2);
        jl[2][0] = Some(-2);
        li[0][1] = Some(-1);
        let inst = NegTriInstance::new(3, 2, ij, jl, li).unwrap();
        assert!(inst.has_negative_triangle());
        let (g, answer) = negtri_to_kmode(&inst, 1, true).unwrap();
        assert!(answer);
        let exact = g.exact_parameters();
        assert!(exact.radius < Distance::new(60));
    }

    #[test]
    fn negtri_answer_matches_distance_predicate() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for trial in 0..20 {
            let n = 6;
            let m = 3i64;
            let mut make = || {
                let mut t = vec![vec![None; n]; n];
                for row in t.iter_mut() {
                    for cell in row.iter_mut() {
                        if rng.gen_bool(0.7) {
                            *cell = Some(rng.gen_range(-m..=m));
                        }
                    }
                }
                t
            };
            let (ij, jl, li) = (make(), make(), make());
            let inst = NegTriInstance::new(n, m, ij, jl, li).unwrap();
            for flavor in [false, true] {
                let (g, answer) = negtri_to_kmode(&inst, 8, flavor).unwrap();
                assert_eq!(g.k(), 8);
                let apsp = g.exact_apsp();
                let width = 3;
                let close = (0..width)
                    .any(|i| apsp.get(i, 3 * width + i) < Distance::new(30 * m as u64));
                assert_eq!(answer, close, "trial {} flavor {}", trial, flavor);
                if flavor {
                    let radius_close = g.exact_parameters().radius < Distance::new(30 * m as u64);
                    assert_eq!(answer, radius_close, "trial {}", trial);
                }
            }
        }
    }

    #[test]
    fn negtri_rejects_out_of_band_weight() {
        let mut ij = full_tables(2, 1);
        ij[0][0] = Some(5);
        assert!(matches!(
            NegTriInstance::new(2, 1, ij, full_tables(2, 1), full_tables(2, 1)),
            Err(GraphError::InvalidParameter(_))
        ));
    }
}
