//! Diameter approximation on undirected multimode graphs: a linear-time
//! 3-approximation for two modes, a boolean-product pair subroutine, sampled
//! decision procedures for ratios 2 and 2.5, a deterministic three-mode
//! decision, and a binary-search driver turning decisions into estimates.

use rand::Rng;

use crate::boolmat::{bool_matmul, BoolMatrix};
use crate::graph::{Distance, GraphError, MultimodeGraph};
use crate::stats::AlgoStats;
use crate::stdiam::st_diameter_2approx;

/// Answer of a threshold decision: a certified far pair, or the assertion
/// that the tested threshold exceeds the true diameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionOutcome {
    /// `dist` is the exact k-mode distance between `a` and `b`.
    Witness { a: usize, b: usize, dist: Distance },
    Below,
}

/// Which distance band the 2.5-approximation uses to pick its second hub.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandVariant {
    /// Hubs near 2D/5, the default.
    TwoFifths,
    /// Hubs near D/2.
    Half,
}

/// Ratio alpha = num/den in (1/3, 1/2], threshold under test, and the weight
/// slack; fixes the three ball radii of the pair subroutine.
#[derive(Debug, Clone, Copy)]
pub struct AlphaParams {
    pub alpha_num: u64,
    pub alpha_den: u64,
    /// Threshold D the decision is probing.
    pub threshold: u64,
    /// Largest edge weight M of the graph.
    pub max_weight: u64,
}

impl AlphaParams {
    pub fn new(
        alpha_num: u64,
        alpha_den: u64,
        threshold: u64,
        max_weight: u64,
    ) -> Result<AlphaParams, GraphError> {
        if alpha_den == 0 || 3 * alpha_num <= alpha_den || 2 * alpha_num > alpha_den {
            return Err(GraphError::InvalidParameter(format!(
                "alpha = {}/{} outside (1/3, 1/2]",
                alpha_num, alpha_den
            )));
        }
        Ok(AlphaParams { alpha_num, alpha_den, threshold, max_weight })
    }

    /// Seed-ball radius (3 alpha - 1)/2 * D + M/2 as (numerator, denominator).
    pub fn r_seed(&self) -> (u64, u64) {
        let den = 2 * self.alpha_den;
        ((3 * self.alpha_num - self.alpha_den) * self.threshold + self.alpha_den * self.max_weight, den)
    }

    /// Near-ball radius (1 - alpha)/2 * D + M/2.
    pub fn r_near(&self) -> (u64, u64) {
        let den = 2 * self.alpha_den;
        ((self.alpha_den - self.alpha_num) * self.threshold + self.alpha_den * self.max_weight, den)
    }

    /// Far-ball radius (1 + alpha)/2 * D + M/2.
    pub fn r_far(&self) -> (u64, u64) {
        let den = 2 * self.alpha_den;
        ((self.alpha_den + self.alpha_num) * self.threshold + self.alpha_den * self.max_weight, den)
    }

    /// Witness acceptance bound alpha * D - M, clamped to zero.
    pub fn witness_bound(&self) -> (u64, u64) {
        let num = (self.alpha_num * self.threshold).saturating_sub(self.alpha_den * self.max_weight);
        (num, self.alpha_den)
    }
}

/// d < num/den, with infinity outside every ball.
fn below_strict(d: Distance, num: u64, den: u64) -> bool {
    match d.value() {
        Some(v) => v.saturating_mul(den) < num,
        None => false,
    }
}

/// d >= num/den, with infinity above every bound.
fn at_least(d: Distance, num: u64, den: u64) -> bool {
    match d.value() {
        Some(v) => v.saturating_mul(den) >= num,
        None => true,
    }
}

fn require_undirected_k(g: &MultimodeGraph, k: usize) -> Result<(), GraphError> {
    if g.is_directed() {
        return Err(GraphError::RequiresUndirected);
    }
    if g.k() != k {
        return Err(GraphError::WrongModeCount { expected: k, got: g.k() });
    }
    Ok(())
}

fn check_vertex(g: &MultimodeGraph, v: usize) -> Result<(), GraphError> {
    if v >= g.n() {
        return Err(GraphError::VertexOutOfRange { v, n: g.n() });
    }
    Ok(())
}

/// Lowest-id vertex of `set` maximizing `dist`.
fn argmax(set: &[usize], dist: &[Distance]) -> (usize, Distance) {
    let mut best = set[0];
    let mut best_d = dist[set[0]];
    for &v in &set[1..] {
        if dist[v] > best_d {
            best = v;
            best_d = dist[v];
        }
    }
    (best, best_d)
}

/// Sample size 2 * n^(1-delta) * ln n, rounded up and clamped to [1, n].
fn sample_count(n: usize, delta: f64) -> usize {
    let nf = n as f64;
    let raw = (2.0 * nf.powf(1.0 - delta) * nf.ln()).ceil() as usize;
    raw.clamp(1, n)
}

/// Linear-time 3-approximation of the 2-mode diameter from an arbitrary
/// start vertex: splits V by which mode is closer to the start, then finds
/// a far pair by one multi-source search per side. Returns a certified pair
/// (a, b, d(a,b)) with ceil(D/3) <= d(a,b) <= D on connected graphs.
pub fn three_approx_2mode(
    g: &MultimodeGraph,
    start: usize,
) -> Result<(usize, usize, Distance), GraphError> {
    require_undirected_k(g, 2)?;
    check_vertex(g, start)?;
    let n = g.n();
    let d0 = g.sssp(0, start, false).dist;
    let d1 = g.sssp(1, start, false).dist;
    let xs: Vec<usize> = (0..n).filter(|&v| d0[v] < d1[v]).collect();
    let ys: Vec<usize> = (0..n).filter(|&v| d0[v] >= d1[v]).collect();

    // start always lands in ys, so beta0 exists; xs may be empty.
    let (far_y, beta0) = argmax(&ys, &d1);
    let mut candidates: Vec<(usize, usize, Distance)> = Vec::new();
    if !xs.is_empty() {
        let (far_x, alpha0) = argmax(&xs, &d0);
        let to_xs = g.multi_source_sssp(0, &xs)?;
        let (y, _) = argmax(&ys, &to_xs.dist);
        let to_ys = g.multi_source_sssp(1, &ys)?;
        let (x, _) = argmax(&xs, &to_ys.dist);
        candidates.push((x, y, g.kmode_distance(x, y)));
        candidates.push((start, far_x, alpha0));
    }
    candidates.push((start, far_y, beta0));

    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if c.2 > best.2 {
            best = c;
        }
    }
    Ok(best)
}

/// Seed balls and boolean matrices the pair subroutine builds around z.
/// Rows and columns over the balls are indexed by position in `xs` / `ys`.
#[derive(Debug, Clone)]
pub struct AlphaStructure {
    /// Mode-0 seed ball around z, ascending.
    pub xs: Vec<usize>,
    /// Mode-1 seed ball around z, ascending.
    pub ys: Vec<usize>,
    /// |xs| x n: near-ball membership per seed-ball vertex x.
    pub near_x: BoolMatrix,
    /// n x |xs|: far-ball complement per x, transposed orientation.
    pub far_x_c: BoolMatrix,
    /// |ys| x n: near-ball membership per y.
    pub near_y: BoolMatrix,
    /// n x |ys|: far-ball complement per y.
    pub far_y_c: BoolMatrix,
    /// |xs| x |ys|: bit (i, j) set iff near(x_i) minus far(y_j) and
    /// near(y_j) minus far(x_i) are both nonempty.
    pub pair_matrix: BoolMatrix,
}

/// Builds the boolean-product structure of the pair subroutine around z.
pub fn alpha_structure(
    g: &MultimodeGraph,
    z: usize,
    params: &AlphaParams,
    stats: &mut AlgoStats,
) -> Result<AlphaStructure, GraphError> {
    require_undirected_k(g, 2)?;
    check_vertex(g, z)?;
    let n = g.n();
    let (seed_num, seed_den) = params.r_seed();
    let (near_num, near_den) = params.r_near();
    let (far_num, far_den) = params.r_far();

    let z0 = g.sssp(0, z, false).dist;
    let z1 = g.sssp(1, z, false).dist;
    let xs: Vec<usize> = (0..n).filter(|&v| below_strict(z0[v], seed_num, seed_den)).collect();
    let ys: Vec<usize> = (0..n).filter(|&v| below_strict(z1[v], seed_num, seed_den)).collect();
    stats.max_seed_ball = stats.max_seed_ball.max(xs.len()).max(ys.len());

    let mut near_x = BoolMatrix::zeros(xs.len(), n);
    let mut far_x_c = BoolMatrix::zeros(n, xs.len());
    for (i, &x) in xs.iter().enumerate() {
        let dx = g.sssp(0, x, false).dist;
        for u in 0..n {
            near_x.set(i, u, below_strict(dx[u], near_num, near_den));
            far_x_c.set(u, i, !below_strict(dx[u], far_num, far_den));
        }
    }
    let mut near_y = BoolMatrix::zeros(ys.len(), n);
    let mut far_y_c = BoolMatrix::zeros(n, ys.len());
    for (j, &y) in ys.iter().enumerate() {
        let dy = g.sssp(1, y, false).dist;
        for u in 0..n {
            near_y.set(j, u, below_strict(dy[u], near_num, near_den));
            far_y_c.set(u, j, !below_strict(dy[u], far_num, far_den));
        }
    }

    stats.matmul_dims.push((xs.len(), n, ys.len()));
    let p1 = bool_matmul(&near_x, &far_y_c)?;
    stats.matmul_dims.push((ys.len(), n, xs.len()));
    let p2 = bool_matmul(&near_y, &far_x_c)?;
    let pair_matrix = p1.and(&p2.transpose())?;

    Ok(AlphaStructure { xs, ys, near_x, far_x_c, near_y, far_y_c, pair_matrix })
}

/// Pair subroutine around seed z: either certifies a pair at distance at
/// least alpha * D - M or reports that no pair admits the ball pattern.
/// Vertices far from z in both modes are caught by a direct scan first.
pub fn sp_alpha_approx(
    g: &MultimodeGraph,
    z: usize,
    params: &AlphaParams,
    stats: &mut AlgoStats,
) -> Result<DecisionOutcome, GraphError> {
    require_undirected_k(g, 2)?;
    check_vertex(g, z)?;
    let n = g.n();
    let (acc_num, acc_den) = params.witness_bound();

    let z0 = g.sssp(0, z, false).dist;
    let z1 = g.sssp(1, z, false).dist;
    for p in 0..n {
        if p == z {
            continue;
        }
        let dist = z0[p].min(z1[p]);
        if at_least(dist, acc_num, acc_den) {
            return Ok(DecisionOutcome::Witness { a: z, b: p, dist });
        }
    }

    let s = alpha_structure(g, z, params, stats)?;
    let (i, j) = match s.pair_matrix.first_set() {
        Some(bit) => bit,
        None => return Ok(DecisionOutcome::Below),
    };
    let x = s.xs[i];
    let y = s.ys[j];
    let (near_num, near_den) = params.r_near();
    let (far_num, far_den) = params.r_far();
    let dx = g.sssp(0, x, false).dist;
    let dy = g.sssp(1, y, false).dist;
    let a = (0..n)
        .find(|&u| below_strict(dx[u], near_num, near_den) && !below_strict(dy[u], far_num, far_den))
        .expect("set pair bit guarantees a vertex near x and far from y");
    let b = (0..n)
        .find(|&u| below_strict(dy[u], near_num, near_den) && !below_strict(dx[u], far_num, far_den))
        .expect("set pair bit guarantees a vertex near y and far from x");
    let dist = g.kmode_distance(a, b);
    Ok(DecisionOutcome::Witness { a, b, dist })
}

/// Sampled decision for two modes at ratio 2: Witness carries a certified
/// pair with d >= D/2 - M, Below asserts the diameter is under D. Each
/// sampled vertex tries two ball-versus-complement ST-diameter probes; seed
/// vertices left uncovered go to the pair subroutine at alpha = 1/2.
pub fn two_approx_decision<R: Rng>(
    g: &MultimodeGraph,
    threshold: u64,
    delta: f64,
    rng: &mut R,
    stats: &mut AlgoStats,
) -> Result<DecisionOutcome, GraphError> {
    require_undirected_k(g, 2)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(GraphError::InvalidParameter(format!("delta = {} outside (0, 1)", delta)));
    }
    let n = g.n();
    if n == 0 {
        return Err(GraphError::InvalidParameter("graph has no vertices".into()));
    }
    let m = g.max_weight();
    let acc_num = threshold.saturating_sub(2 * m);
    let ball_num = threshold + 2 * m;
    let cut_num = (3 * threshold).saturating_sub(2 * m);

    let sample = rand::seq::index::sample(rng, n, sample_count(n, delta));
    let mut covered = vec![false; n];
    for x in sample {
        let d0 = g.sssp(0, x, false).dist;
        let d1 = g.sssp(1, x, false).dist;
        for p in 0..n {
            if p == x {
                continue;
            }
            let dist = d0[p].min(d1[p]);
            if at_least(dist, acc_num, 2) {
                return Ok(DecisionOutcome::Witness { a: x, b: p, dist });
            }
        }
        for u in 0..n {
            covered[u] = covered[u]
                || below_strict(d0[u], ball_num, 4)
                || below_strict(d1[u], ball_num, 4);
        }
        for mode in 0..2 {
            let dm = if mode == 0 { &d0 } else { &d1 };
            let near: Vec<usize> = (0..n).filter(|&u| below_strict(dm[u], ball_num, 4)).collect();
            let far: Vec<usize> = (0..n).filter(|&u| !below_strict(dm[u], cut_num, 4)).collect();
            if far.is_empty() {
                continue;
            }
            let st = st_diameter_2approx(g, 1 - mode, &near, &far, rng)?;
            let dist = g.kmode_distance(st.a, st.b);
            if at_least(dist, acc_num, 2) {
                return Ok(DecisionOutcome::Witness { a: st.a, b: st.b, dist });
            }
        }
    }

    if let Some(z) = covered.iter().position(|&c| !c) {
        let params = AlphaParams::new(1, 2, threshold, m)?;
        if let DecisionOutcome::Witness { a, b, dist } = sp_alpha_approx(g, z, &params, stats)? {
            if at_least(dist, acc_num, 2) {
                return Ok(DecisionOutcome::Witness { a, b, dist });
            }
        }
    }
    Ok(DecisionOutcome::Below)
}

/// Sampled decision for two modes at ratio 2.5: Witness carries a certified
/// pair with d >= 2D/5 - M. Each sampled vertex also searches from one hub
/// per mode picked in the chosen distance band; seed vertices left uncovered
/// go to the pair subroutine at alpha = 2/5.
pub fn two_half_approx_decision<R: Rng>(
    g: &MultimodeGraph,
    threshold: u64,
    delta: f64,
    band: BandVariant,
    rng: &mut R,
    stats: &mut AlgoStats,
) -> Result<DecisionOutcome, GraphError> {
    require_undirected_k(g, 2)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(GraphError::InvalidParameter(format!("delta = {} outside (0, 1)", delta)));
    }
    let n = g.n();
    if n == 0 {
        return Err(GraphError::InvalidParameter("graph has no vertices".into()));
    }
    let m = g.max_weight();
    let acc_num = (2 * threshold).saturating_sub(5 * m);
    let ball_num = threshold + 5 * m;
    let (band_lo, band_hi) = match band {
        BandVariant::TwoFifths => ((4 * threshold).saturating_sub(5 * m), 4 * threshold + 5 * m),
        BandVariant::Half => ((5 * threshold).saturating_sub(5 * m), 5 * threshold + 5 * m),
    };

    let sample = rand::seq::index::sample(rng, n, sample_count(n, delta));
    let mut covered = vec![false; n];
    for x in sample {
        let d0 = g.sssp(0, x, false).dist;
        let d1 = g.sssp(1, x, false).dist;
        for p in 0..n {
            if p == x {
                continue;
            }
            let dist = d0[p].min(d1[p]);
            if at_least(dist, acc_num, 5) {
                return Ok(DecisionOutcome::Witness { a: x, b: p, dist });
            }
        }
        for u in 0..n {
            covered[u] = covered[u]
                || below_strict(d0[u], ball_num, 10)
                || below_strict(d1[u], ball_num, 10);
        }
        for mode in 0..2 {
            let dm = if mode == 0 { &d0 } else { &d1 };
            let hub = (0..n).find(|&y| {
                at_least(dm[y], band_lo, 10) && !at_least(dm[y], band_hi + 1, 10)
            });
            let y = match hub {
                Some(y) => y,
                None => continue,
            };
            let y0 = g.sssp(0, y, false).dist;
            let y1 = g.sssp(1, y, false).dist;
            for p in 0..n {
                if p == y {
                    continue;
                }
                let dist = y0[p].min(y1[p]);
                if at_least(dist, acc_num, 5) {
                    return Ok(DecisionOutcome::Witness { a: y, b: p, dist });
                }
            }
        }
    }

    if let Some(z) = covered.iter().position(|&c| !c) {
        let params = AlphaParams::new(2, 5, threshold, m)?;
        if let DecisionOutcome::Witness { a, b, dist } = sp_alpha_approx(g, z, &params, stats)? {
            if at_least(dist, acc_num, 5) {
                return Ok(DecisionOutcome::Witness { a, b, dist });
            }
        }
    }
    Ok(DecisionOutcome::Below)
}

/// Deterministic decision for three modes: Witness carries a certified pair
/// with d >= D/3, Below asserts the diameter is under D. Partitions V by
/// mode-0 and mode-1 balls of radius D/3 around vertex 0 and probes each
/// part pair through the remaining mode. Exact D/3 comparisons, no weight
/// slack, so the assertion also holds on weighted graphs.
pub fn three_mode_three_approx_decision(
    g: &MultimodeGraph,
    threshold: u64,
) -> Result<DecisionOutcome, GraphError> {
    require_undirected_k(g, 3)?;
    let n = g.n();
    if n == 0 {
        return Err(GraphError::InvalidParameter("graph has no vertices".into()));
    }
    let d0 = g.sssp(0, 0, false).dist;
    let d1 = g.sssp(1, 0, false).dist;
    let d2 = g.sssp(2, 0, false).dist;

    let mut part = vec![2u8; n];
    let mut sets: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for u in 0..n {
        if below_strict(d0[u], threshold, 3) {
            part[u] = 0;
        } else if below_strict(d1[u], threshold, 3) {
            part[u] = 1;
        }
        sets[part[u] as usize].push(u);
    }

    for &u in &sets[2] {
        if at_least(d2[u], threshold, 3) {
            let dist = d0[u].min(d1[u]).min(d2[u]);
            return Ok(DecisionOutcome::Witness { a: 0, b: u, dist });
        }
    }

    // (part, its ball mode) pairs probed through the remaining mode.
    let probes = [(0usize, 1usize, 2usize), (0, 2, 1), (1, 2, 0)];
    for &(pi, qi, cr) in &probes {
        let (pset, qset) = (&sets[pi], &sets[qi]);
        if pset.is_empty() || qset.is_empty() {
            continue;
        }
        let cp = pi;
        let cq = qi;
        let from_p = g.multi_source_sssp(cp, pset)?.dist;
        let from_q = g.multi_source_sssp(cq, qset)?.dist;
        let p1: Vec<usize> = pset.iter().copied().filter(|&p| !below_strict(from_q[p], threshold, 3)).collect();
        let q1: Vec<usize> = qset.iter().copied().filter(|&q| !below_strict(from_p[q], threshold, 3)).collect();
        if p1.is_empty() || q1.is_empty() {
            continue;
        }
        let x_hat = p1[0];
        let from_x = g.sssp(cr, x_hat, false).dist;
        if let Some(&q) = q1.iter().find(|&&q| at_least(from_x[q], threshold, 3)) {
            return Ok(DecisionOutcome::Witness { a: x_hat, b: q, dist: g.kmode_distance(x_hat, q) });
        }
        let y_hat = q1[0];
        let from_y = g.sssp(cr, y_hat, false).dist;
        if let Some(&p) = p1.iter().find(|&&p| at_least(from_y[p], threshold, 3)) {
            return Ok(DecisionOutcome::Witness { a: p, b: y_hat, dist: g.kmode_distance(p, y_hat) });
        }
    }
    Ok(DecisionOutcome::Below)
}

/// Estimate produced by binary-searching a decision procedure.
#[derive(Debug, Clone)]
pub struct DiameterEstimate {
    pub a: usize,
    pub b: usize,
    /// Exact k-mode distance of (a, b).
    pub estimate: Distance,
    /// Largest probed threshold the decision answered with a witness.
    pub witnessed_threshold: Option<u64>,
    /// True when no probe produced a witness and the estimate fell back to
    /// an eccentricity search from vertex 0.
    pub fallback: bool,
}

/// Binary-searches thresholds in [lo, hi], keeping the best certified pair
/// any probe returned. A Below answer shrinks the range, a Witness grows it,
/// so the largest witnessed threshold ends at or above the true diameter
/// whenever every Below answer is sound.
pub fn binary_search_diameter<F>(
    g: &MultimodeGraph,
    lo: u64,
    hi: u64,
    mut decide: F,
) -> Result<DiameterEstimate, GraphError>
where
    F: FnMut(u64) -> Result<DecisionOutcome, GraphError>,
{
    if g.n() == 0 {
        return Err(GraphError::InvalidParameter("graph has no vertices".into()));
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut best: Option<(usize, usize, Distance)> = None;
    let mut witnessed: Option<u64> = None;
    while lo <= hi {
        let mid = lo + (hi - lo) / 2;
        match decide(mid)? {
            DecisionOutcome::Witness { a, b, dist } => {
                if best.map_or(true, |(_, _, d)| dist > d) {
                    best = Some((a, b, dist));
                }
                witnessed = Some(witnessed.map_or(mid, |w: u64| w.max(mid)));
                lo = mid + 1;
            }
            DecisionOutcome::Below => {
                if mid == 0 {
                    break;
                }
                hi = mid - 1;
            }
        }
    }
    if let Some((a, b, dist)) = best {
        return Ok(DiameterEstimate { a, b, estimate: dist, witnessed_threshold: witnessed, fallback: false });
    }
    let dists = g.kmode_distances_from(0);
    let all: Vec<usize> = (0..g.n()).collect();
    let (far, ecc) = argmax(&all, &dists);
    Ok(DiameterEstimate { a: 0, b: far, estimate: ecc, witnessed_threshold: None, fallback: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path_both_modes(n: usize) -> MultimodeGraph {
        let mut edges = Vec::new();
        for u in 0..n - 1 {
            edges.push((0, u, u + 1, 1));
            edges.push((1, u, u + 1, 1));
        }
        MultimodeGraph::build(n, 2, false, &edges).unwrap()
    }

    fn complete_both_modes(n: usize) -> MultimodeGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((0, u, v, 1));
                edges.push((1, u, v, 1));
            }
        }
        MultimodeGraph::build(n, 2, false, &edges).unwrap()
    }

    /// Mode 0: path 0-5-6-7-8 plus spokes 0-1..0-4; mode 1: path 0-1-2-3-4
    /// plus spokes 0-5..0-8. Diameter 5 between the path ends, every vertex
    /// at k-mode distance 1 from vertex 0.
    fn two_fans() -> MultimodeGraph {
        let mut edges = vec![
            (0, 0, 5, 1),
            (0, 5, 6, 1),
            (0, 6, 7, 1),
            (0, 7, 8, 1),
            (1, 0, 1, 1),
            (1, 1, 2, 1),
            (1, 2, 3, 1),
            (1, 3, 4, 1),
        ];
        for v in 1..5 {
            edges.push((0, 0, v, 1));
        }
        for v in 5..9 {
            edges.push((1, 0, v, 1));
        }
        MultimodeGraph::build(9, 2, false, &edges).unwrap()
    }

    fn random_connected_2mode(n: usize, rng: &mut ChaCha8Rng) -> MultimodeGraph {
        let mut edges = Vec::new();
        for v in 1..n {
            let u = rng.gen_range(0..v);
            edges.push((0, u, v, 1));
        }
        for _ in 0..n {
            let mode = rng.gen_range(0..2);
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.push((mode, u, v, 1));
            }
        }
        MultimodeGraph::build(n, 2, false, &edges).unwrap()
    }

    #[test]
    fn three_approx_on_path() {
        let g = path_both_modes(5);
        let (a, b, est) = three_approx_2mode(&g, 0).unwrap();
        assert_eq!(est, g.kmode_distance(a, b));
        assert!(est.unwrap() >= 2 && est.unwrap() <= 4);
    }

    #[test]
    fn three_approx_tight_on_complete_mode() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                edges.push((0, u, v, 1));
            }
        }
        let g = MultimodeGraph::build(6, 2, false, &edges).unwrap();
        let (_, _, est) = three_approx_2mode(&g, 3).unwrap();
        assert_eq!(est.unwrap(), 1);
    }

    #[test]
    fn three_approx_identical_modes_reports_full_eccentricity() {
        let g = path_both_modes(5);
        let (a, b, est) = three_approx_2mode(&g, 0).unwrap();
        assert_eq!((a, b), (0, 4));
        assert_eq!(est.unwrap(), 4);
    }

    #[test]
    fn three_approx_sandwich_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(07);
        for trial in 0..40 {
            let n = 2 + (trial % 24);
            let g = random_connected_2mode(n, &mut rng);
            let exact = g.exact_parameters();
            let d = exact.diameter.unwrap();
            let (a, b, est) = three_approx_2mode(&g, trial % n).unwrap();
            assert_eq!(est, g.kmode_distance(a, b));
            assert!(est.unwrap() * 3 >= d, "estimate {} too small for diameter {}", est, d);
            assert!(est.unwrap() <= d);
        }
    }

    #[test]
    fn alpha_params_radii() {
        let p = AlphaParams::new(1, 2, 20, 1).unwrap();
        assert_eq!(p.r_seed(), (22, 4));
        assert_eq!(p.r_near(), (22, 4));
        assert_eq!(p.r_far(), (62, 4));
        assert_eq!(p.witness_bound(), (18, 2));
    }

    #[test]
    fn alpha_params_rejects_out_of_range_ratio() {
        assert!(AlphaParams::new(1, 3, 10, 1).is_err());
        assert!(AlphaParams::new(2, 3, 10, 1).is_err());
        assert!(AlphaParams::new(2, 5, 10, 1).is_ok());
    }

    #[test]
    fn sp_alpha_single_vertex_is_below() {
        let g = MultimodeGraph::build(1, 2, false, &[]).unwrap();
        let params = AlphaParams::new(1, 2, 1, 1).unwrap();
        let mut stats = AlgoStats::new();
        let out = sp_alpha_approx(&g, 0, &params, &mut stats).unwrap();
        assert_eq!(out, DecisionOutcome::Below);
    }

    #[test]
    fn sp_alpha_matrix_path_finds_far_pair() {
        let g = two_fans();
        let params = AlphaParams::new(1, 2, 5, 1).unwrap();
        let mut stats = AlgoStats::new();
        match sp_alpha_approx(&g, 0, &params, &mut stats).unwrap() {
            DecisionOutcome::Witness { a, b, dist } => {
                assert_eq!(dist, g.kmode_distance(a, b));
                assert!(dist.unwrap() * 2 >= 3, "pair ({}, {}) at {} too close", a, b, dist);
            }
            DecisionOutcome::Below => panic!("expected a witness"),
        }
        assert_eq!(stats.matmul_dims.len(), 2);
        assert!(stats.max_seed_ball >= 2);
    }

    #[test]
    fn sp_alpha_below_when_no_pattern() {
        let g = complete_both_modes(6);
        let params = AlphaParams::new(1, 2, 5, 1).unwrap();
        let mut stats = AlgoStats::new();
        let out = sp_alpha_approx(&g, 0, &params, &mut stats).unwrap();
        assert_eq!(out, DecisionOutcome::Below);
    }

    #[test]
    fn alpha_structure_bits_match_set_predicates() {
        let g = two_fans();
        let params = AlphaParams::new(1, 2, 5, 1).unwrap();
        let mut stats = AlgoStats::new();
        let s = alpha_structure(&g, 0, &params, &mut stats).unwrap();
        let (near_num, near_den) = params.r_near();
        let (far_num, far_den) = params.r_far();
        for (i, &x) in s.xs.iter().enumerate() {
            let dx = g.sssp(0, x, false).dist;
            for (j, &y) in s.ys.iter().enumerate() {
                let dy = g.sssp(1, y, false).dist;
                let left = (0..g.n()).any(|u| {
                    below_strict(dx[u], near_num, near_den)
                        && !below_strict(dy[u], far_num, far_den)
                });
                let right = (0..g.n()).any(|u| {
                    below_strict(dy[u], near_num, near_den)
                        && !below_strict(dx[u], far_num, far_den)
                });
                assert_eq!(s.pair_matrix.get(i, j), left && right, "bit ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn two_approx_decision_rejects_high_threshold() {
        let g = path_both_modes(9);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut stats = AlgoStats::new();
        let out = two_approx_decision(&g, 100, 0.75, &mut rng, &mut stats).unwrap();
        assert_eq!(out, DecisionOutcome::Below);
    }

    #[test]
    fn two_approx_decision_witnesses_true_diameter() {
        let g = path_both_modes(9);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut stats = AlgoStats::new();
        match two_approx_decision(&g, 8, 0.75, &mut rng, &mut stats).unwrap() {
            DecisionOutcome::Witness { a, b, dist } => {
                assert_eq!(dist, g.kmode_distance(a, b));
                assert!(dist.unwrap() * 2 >= 6);
            }
            DecisionOutcome::Below => panic!("threshold 8 equals the diameter"),
        }
    }

    #[test]
    fn two_approx_decision_finds_infinite_pair() {
        let edges = vec![(0, 0, 1, 1), (1, 0, 1, 1), (0, 2, 3, 1), (1, 2, 3, 1)];
        let g = MultimodeGraph::build(4, 2, false, &edges).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut stats = AlgoStats::new();
        match two_approx_decision(&g, 10, 0.75, &mut rng, &mut stats).unwrap() {
            DecisionOutcome::Witness { dist, .. } => assert_eq!(dist, Distance::INF),
            DecisionOutcome::Below => panic!("disconnected graph must witness"),
        }
    }

    #[test]
    fn two_approx_binary_search_sandwich() {
        let g = path_both_modes(9);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut stats = AlgoStats::new();
        let est = binary_search_diameter(&g, 0, g.distance_bound(), |t| {
            two_approx_decision(&g, t, 0.75, &mut rng, &mut stats)
        })
        .unwrap();
        assert!(!est.fallback);
        assert_eq!(est.estimate, g.kmode_distance(est.a, est.b));
        let d = est.estimate.unwrap();
        assert!(d >= 3 && d <= 8, "estimate {} outside [3, 8]", d);
    }

    #[test]
    fn two_half_decision_single_edge_below() {
        let g = path_both_modes(2);
        for band in [BandVariant::TwoFifths, BandVariant::Half] {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let mut stats = AlgoStats::new();
            let out = two_half_approx_decision(&g, 10, 0.5, band, &mut rng, &mut stats).unwrap();
            assert_eq!(out, DecisionOutcome::Below);
        }
    }

    #[test]
    fn two_half_binary_search_sandwich() {
        let g = path_both_modes(9);
        for band in [BandVariant::TwoFifths, BandVariant::Half] {
            let mut rng = ChaCha8Rng::seed_from_u64(8);
            let mut stats = AlgoStats::new();
            let est = binary_search_diameter(&g, 0, g.distance_bound(), |t| {
                two_half_approx_decision(&g, t, 0.5, band, &mut rng, &mut stats)
            })
            .unwrap();
            assert_eq!(est.estimate, g.kmode_distance(est.a, est.b));
            let d = est.estimate.unwrap();
            assert!(5 * d >= 11 && d <= 8, "estimate {} outside the 2.5 sandwich", d);
        }
    }

    #[test]
    fn three_mode_triangle_below() {
        let mut edges = Vec::new();
        for mode in 0..3 {
            edges.push((mode, 0, 1, 1));
            edges.push((mode, 1, 2, 1));
            edges.push((mode, 0, 2, 1));
        }
        let g = MultimodeGraph::build(3, 3, false, &edges).unwrap();
        assert_eq!(three_mode_three_approx_decision(&g, 4).unwrap(), DecisionOutcome::Below);
    }

    #[test]
    fn three_mode_empty_mode_witnesses() {
        let mut edges = Vec::new();
        for u in 0..8 {
            edges.push((1, u, u + 1, 1));
            edges.push((2, u, u + 1, 1));
        }
        let g = MultimodeGraph::build(9, 3, false, &edges).unwrap();
        match three_mode_three_approx_decision(&g, 8).unwrap() {
            DecisionOutcome::Witness { a, b, dist } => {
                assert_eq!(dist, g.kmode_distance(a, b));
                assert!(dist.unwrap() * 3 >= 8, "pair ({}, {}) too close", a, b);
            }
            DecisionOutcome::Below => panic!("diameter is exactly 8"),
        }
    }

    #[test]
    fn three_mode_binary_search_sandwich() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for trial in 0..30 {
            let n = 3 + (trial % 20);
            let mut edges = Vec::new();
            for v in 1..n {
                let u = rng.gen_range(0..v);
                edges.push((0, u, v, 1));
            }
            for _ in 0..n {
                let mode = rng.gen_range(0..3);
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v {
                    edges.push((mode, u, v, 1));
                }
            }
            let g = MultimodeGraph::build(n, 3, false, &edges).unwrap();
            let d = g.exact_parameters().diameter.unwrap();
            let est = binary_search_diameter(&g, 0, g.distance_bound(), |t| {
                three_mode_three_approx_decision(&g, t)
            })
            .unwrap();
            let e = est.estimate.unwrap();
            assert_eq!(est.estimate, g.kmode_distance(est.a, est.b));
            assert!(3 * e >= d && e <= d, "estimate {} for diameter {}", e, d);
        }
    }

    #[test]
    fn binary_search_tracks_best_witness() {
        let g = path_both_modes(4);
        let est = binary_search_diameter(&g, 0, 100, |t| {
            Ok(if t <= 40 {
                DecisionOutcome::Witness { a: 0, b: 1, dist: Distance::new(t.max(1)) }
            } else {
                DecisionOutcome::Below
            })
        })
        .unwrap();
        assert_eq!(est.witnessed_threshold, Some(40));
        assert_eq!(est.estimate.unwrap(), 40);
        assert!(!est.fallback);
    }

    #[test]
    fn binary_search_falls_back_to_eccentricity() {
        let g = path_both_modes(4);
        let est = binary_search_diameter(&g, 0, 100, |_| Ok(DecisionOutcome::Below)).unwrap();
        assert!(est.fallback);
        assert_eq!((est.a, est.b), (0, 3));
        assert_eq!(est.estimate.unwrap(), 3);
    }
}
