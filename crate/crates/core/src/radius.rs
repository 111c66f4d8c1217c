//! Radius 3-approximation on undirected multimode graphs: a recursive
//! threshold decision branching over modes, and a binary-search driver.

use crate::graph::{Distance, GraphError, MultimodeGraph};
use crate::stats::AlgoStats;

/// Answer of the radius binary search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusEstimate {
    Finite {
        center: usize,
        /// Exact eccentricity of the center, recomputed from scratch.
        eccentricity: Distance,
        /// Smallest probed threshold the decision accepted.
        threshold: u64,
    },
    /// Every probe failed: each vertex misses part of the graph in every
    /// mode, so the radius is infinite.
    Infinite,
}

/// Decides a radius threshold: returns a center x with ecc(x) <= 3R when one
/// is reachable along some branch, or None, certifying R(G) > R whenever the
/// probed R is at least R(G) + 1. Each node checks the lowest candidate's
/// full eccentricity, then branches on the modes not yet used, shrinking the
/// candidate set to the strict mode-ball of radius R around a far vertex.
pub fn radius_3approx_decision(
    g: &MultimodeGraph,
    threshold: u64,
    stats: &mut AlgoStats,
) -> Result<Option<(usize, Distance)>, GraphError> {
    if g.is_directed() {
        return Err(GraphError::RequiresUndirected);
    }
    if g.n() == 0 {
        return Err(GraphError::InvalidParameter("graph has no vertices".into()));
    }
    let candidates: Vec<usize> = (0..g.n()).collect();
    let mut used = vec![false; g.k()];
    Ok(recurse(g, threshold, &candidates, &mut used, stats))
}

fn recurse(
    g: &MultimodeGraph,
    r: u64,
    candidates: &[usize],
    used: &mut Vec<bool>,
    stats: &mut AlgoStats,
) -> Option<(usize, Distance)> {
    stats.recursion_nodes += 1;
    let x = candidates[0];
    let dists = g.kmode_distances_from(x);
    let mut ecc = Distance::ZERO;
    for &d in &dists {
        if d > ecc {
            ecc = d;
        }
    }
    if ecc.value().map_or(false, |e| e <= 3 * r) {
        return Some((x, ecc));
    }
    let y = (0..g.n())
        .find(|&v| dists[v].value().map_or(true, |d| d > 3 * r))
        .expect("eccentricity above 3R has a witness");
    for mode in 0..g.k() {
        if used[mode] {
            continue;
        }
        let to_y = g.sssp(mode, y, true).dist;
        let shrunk: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&w| to_y[w].value().map_or(false, |d| d < r))
            .collect();
        if shrunk.is_empty() {
            continue;
        }
        used[mode] = true;
        let found = recurse(g, r, &shrunk, used, stats);
        used[mode] = false;
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Binary-searches radius thresholds in [lo, hi], keeping the smallest
/// accepted one; the returned eccentricity satisfies R(G) <= ecc and lands
/// within thrice the smallest threshold any probe accepted. With hi at the
/// distance bound, no accepted probe at all means the radius is infinite.
pub fn binary_search_radius(
    g: &MultimodeGraph,
    lo: u64,
    hi: u64,
    stats: &mut AlgoStats,
) -> Result<RadiusEstimate, GraphError> {
    let (mut lo, mut hi) = (lo, hi);
    let mut best: Option<(u64, usize)> = None;
    while lo <= hi {
        let mid = lo + (hi - lo) / 2;
        match radius_3approx_decision(g, mid, stats)? {
            Some((center, _)) => {
                if best.map_or(true, |(t, _)| mid < t) {
                    best = Some((mid, center));
                }
                if mid == 0 {
                    break;
                }
                hi = mid - 1;
            }
            None => {
                lo = mid + 1;
            }
        }
    }
    match best {
        Some((threshold, center)) => {
            let dists = g.kmode_distances_from(center);
            let eccentricity = dists.iter().copied().max().unwrap_or(Distance::ZERO);
            Ok(RadiusEstimate::Finite { center, eccentricity, threshold })
        }
        None => Ok(RadiusEstimate::Infinite),
    }
}
