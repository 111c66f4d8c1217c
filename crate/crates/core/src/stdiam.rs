//! ST-diameter D_{S,T} = max over s in S, t in T of d(s,t) on a single
//! mode: an exact oracle plus constant-search and sampled approximations.

use rand::Rng;

use crate::graph::{Distance, GraphError, MultimodeGraph};

/// A certified S-T pair: `estimate` is the true distance between `a` and `b`,
/// hence always a lower bound on D_{S,T}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StDiameterResult {
    pub a: usize,
    pub b: usize,
    pub estimate: Distance,
}

fn check_sets(s: &[usize], t: &[usize]) -> Result<(), GraphError> {
    if s.is_empty() || t.is_empty() {
        return Err(GraphError::EmptySourceSet);
    }
    Ok(())
}

/// Index into `set` maximizing `dist`, lowest id on ties.
fn argmax_over(set: &[usize], dist: &[Distance]) -> (usize, Distance) {
    let mut best = set[0];
    let mut best_d = dist[set[0]];
    for &v in &set[1..] {
        if dist[v] > best_d || (dist[v] == best_d && v < best) {
            best = v;
            best_d = dist[v];
        }
    }
    (best, best_d)
}

/// True ST-diameter by one search per vertex of S.
pub fn st_diameter_exact(
    g: &MultimodeGraph,
    mode: usize,
    s: &[usize],
    t: &[usize],
) -> Result<StDiameterResult, GraphError> {
    check_sets(s, t)?;
    let mut best: Option<StDiameterResult> = None;
    for &a in s {
        let map = g.sssp(mode, a, false);
        let (b, d) = argmax_over(t, &map.dist);
        if best.map_or(true, |r| d > r.estimate) {
            best = Some(StDiameterResult { a, b, estimate: d });
        }
    }
    Ok(best.unwrap())
}

/// Deterministic 3-approximation with two searches: search from the lowest
/// vertex s of S, take the farthest t1 in T, search back from t1, and return
/// the better of (s, t1) and (argmax over S, t1). The triangle inequality
/// through s and t1 bounds D_{S,T} by d(s1,t1) + 2 d(s,t1).
pub fn st_diameter_3approx(
    g: &MultimodeGraph,
    mode: usize,
    s: &[usize],
    t: &[usize],
) -> Result<StDiameterResult, GraphError> {
    check_sets(s, t)?;
    if g.is_directed() {
        return Err(GraphError::RequiresUndirected);
    }
    let s0 = *s.iter().min().unwrap();
    let from_s0 = g.sssp(mode, s0, false);
    let (t1, d_s0_t1) = argmax_over(t, &from_s0.dist);
    let from_t1 = g.sssp(mode, t1, false);
    let (s1, d_t1_s1) = argmax_over(s, &from_t1.dist);
    if d_t1_s1 > d_s0_t1 {
        Ok(StDiameterResult { a: s1, b: t1, estimate: d_t1_s1 })
    } else {
        Ok(StDiameterResult { a: s0, b: t1, estimate: d_s0_t1 })
    }
}

/// Sampled 2-approximation: searches from a random vertex sample W, from the
/// S-vertex farthest from W, and from the T-vertex farthest from W; every
/// search origin lying in S or T contributes its farthest partner on the
/// other side as a certified candidate pair.
pub fn st_diameter_2approx<R: Rng>(
    g: &MultimodeGraph,
    mode: usize,
    s: &[usize],
    t: &[usize],
    rng: &mut R,
) -> Result<StDiameterResult, GraphError> {
    check_sets(s, t)?;
    if g.is_directed() {
        return Err(GraphError::RequiresUndirected);
    }
    let n = g.n();
    let sample_size = sample_size(n);
    let mut w: Vec<usize> = rand::seq::index::sample(rng, n, sample_size).into_vec();
    w.sort_unstable();

    let to_w = g.multi_source_sssp(mode, &w)?;
    let (s_far, _) = argmax_over(s, &to_w.dist);
    let (t_far, _) = argmax_over(t, &to_w.dist);

    let mut origins = w;
    origins.push(s_far);
    origins.push(t_far);
    origins.sort_unstable();
    origins.dedup();

    let in_s = member_mask(n, s);
    let in_t = member_mask(n, t);

    let mut best: Option<StDiameterResult> = None;
    let mut consider = |cand: StDiameterResult| {
        let better = match best {
            None => true,
            Some(r) => {
                cand.estimate > r.estimate
                    || (cand.estimate == r.estimate && (cand.a, cand.b) < (r.a, r.b))
            }
        };
        if better {
            best = Some(cand);
        }
    };
    for o in origins {
        if !in_s[o] && !in_t[o] {
            continue;
        }
        let map = g.sssp(mode, o, false);
        if in_s[o] {
            let (b, d) = argmax_over(t, &map.dist);
            consider(StDiameterResult { a: o, b, estimate: d });
        }
        if in_t[o] {
            let (a, d) = argmax_over(s, &map.dist);
            consider(StDiameterResult { a, b: o, estimate: d });
        }
    }
    Ok(best.expect("the farthest S-vertex always contributes a candidate"))
}

/// ceil(sqrt(n) * ln n), capped at n.
fn sample_size(n: usize) -> usize {
    if n <= 1 {
        return n;
    }
    let nf = n as f64;
    let size = (nf.sqrt() * nf.ln()).ceil() as usize;
    size.clamp(1, n)
}

fn member_mask(n: usize, set: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in set {
        mask[v] = true;
    }
    mask
}
