//! Generators of multimode graphs whose diameter or radius is pinned to one
//! of two well-separated values by the answer to an orthogonal-vectors or
//! hitting-set instance.

use rand::Rng;

use crate::graph::{Distance, GraphError, MultimodeGraph};

/// Two lists of boolean vectors over a shared coordinate set.
#[derive(Debug, Clone)]
pub struct OvInstance {
    a: Vec<Vec<bool>>,
    b: Vec<Vec<bool>>,
    d: usize,
}

impl OvInstance {
    /// Validates that every vector has exactly `d >= 1` coordinates.
    pub fn new(
        a: Vec<Vec<bool>>,
        b: Vec<Vec<bool>>,
        d: usize,
    ) -> Result<OvInstance, GraphError> {
        if d == 0 {
            return Err(GraphError::InvalidParameter(
                "vector dimension must be at least 1".into(),
            ));
        }
        if a.iter().chain(&b).any(|v| v.len() != d) {
            return Err(GraphError::InvalidParameter(
                "vector length differs from the declared dimension".into(),
            ));
        }
        Ok(OvInstance { a, b, d })
    }

    /// Draws every coordinate independently as Bernoulli(p).
    pub fn random<R: Rng>(
        na: usize,
        nb: usize,
        d: usize,
        p: f64,
        rng: &mut R,
    ) -> Result<OvInstance, GraphError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(GraphError::InvalidParameter(
                "coordinate probability must lie in [0, 1]".into(),
            ));
        }
        let a = (0..na)
            .map(|_| (0..d).map(|_| rng.gen_bool(p)).collect())
            .collect();
        let b = (0..nb)
            .map(|_| (0..d).map(|_| rng.gen_bool(p)).collect())
            .collect();
        OvInstance::new(a, b, d)
    }

    pub fn a(&self) -> &[Vec<bool>] {
        &self.a
    }

    pub fn b(&self) -> &[Vec<bool>] {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn na(&self) -> usize {
        self.a.len()
    }

    pub fn nb(&self) -> usize {
        self.b.len()
    }
}

fn orthogonal(x: &[bool], y: &[bool]) -> bool {
    x.iter().zip(y).all(|(p, q)| !*p || !*q)
}

/// True when some pair (a, b) has disjoint supports.
pub fn solve_ov(inst: &OvInstance) -> bool {
    inst.a
        .iter()
        .any(|x| inst.b.iter().any(|y| orthogonal(x, y)))
}

/// True when some a shares a coordinate with every b.
pub fn solve_hse(inst: &OvInstance) -> bool {
    inst.a
        .iter()
        .any(|x| inst.b.iter().all(|y| !orthogonal(x, y)))
}

/// Appends the support edges in `mode` under the shared vertex layout
/// (a_i = i, b_j = na + j, u_t = na + nb + t): a_i-u_t when a_i[t] is set and
/// u_t-b_j when b_j[t] is set, oriented a -> u -> b in directed graphs.
fn support_edges(inst: &OvInstance, mode: usize, edges: &mut Vec<(usize, usize, usize, u64)>) {
    let u0 = inst.na() + inst.nb();
    for (i, x) in inst.a.iter().enumerate() {
        for t in 0..inst.d {
            if x[t] {
                edges.push((mode, i, u0 + t, 1));
            }
        }
    }
    for (j, y) in inst.b.iter().enumerate() {
        for t in 0..inst.d {
            if y[t] {
                edges.push((mode, u0 + t, inst.na() + j, 1));
            }
        }
    }
}

/// Single-mode undirected graph on A, B, and one vertex per coordinate, with
/// an edge from each vector to each coordinate of its support.
pub fn build_gov(inst: &OvInstance) -> Result<MultimodeGraph, GraphError> {
    let mut edges = Vec::new();
    support_edges(inst, 0, &mut edges);
    MultimodeGraph::build(inst.na() + inst.nb() + inst.d, 1, false, &edges)
}

/// A DAG that keeps the originals 0..n in its topological order, adds hub
/// vertices after them, and joins every topologically ordered vertex pair by
/// a path of at most two arcs. Originals are never adjacent to each other.
#[derive(Debug, Clone)]
pub struct DagGadget {
    /// Number of original vertices; they keep ids 0..n.
    pub n: usize,
    /// Originals plus hubs; hubs take ids n..total.
    pub total: usize,
    pub arcs: Vec<(usize, usize)>,
    /// All gadget vertices in topological order.
    pub order: Vec<usize>,
}

impl DagGadget {
    /// Index of each vertex within `order`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0usize; self.total];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Builds the two-hop gadget from ceil(sqrt(n)) blocks of consecutive
/// originals. Each block opens with an entry hub fed by every earlier vertex
/// and feeding the whole block; between consecutive originals of a block sits
/// a relay hub fed by the block prefix and feeding the block suffix. The arc
/// count stays within 3 n^1.5.
pub fn dag_gadget(n: usize) -> DagGadget {
    if n <= 1 {
        return DagGadget { n, total: n, arcs: Vec::new(), order: (0..n).collect() };
    }
    let blocks = (1..).find(|b| b * b >= n).unwrap();
    let size = (n + blocks - 1) / blocks;
    let originals: Vec<usize> = (0..n).collect();
    let mut next_hub = n;
    let mut arcs = Vec::new();
    let mut order: Vec<usize> = Vec::new();
    for members in originals.chunks(size) {
        let entry = next_hub;
        next_hub += 1;
        for &earlier in &order {
            arcs.push((earlier, entry));
        }
        order.push(entry);
        for (i, &v) in members.iter().enumerate() {
            if i > 0 {
                let relay = next_hub;
                next_hub += 1;
                arcs.push((entry, relay));
                for &w in &members[..i] {
                    arcs.push((w, relay));
                }
                for &w in &members[i..] {
                    arcs.push((relay, w));
                }
                order.push(relay);
            }
            arcs.push((entry, v));
            order.push(v);
        }
    }
    DagGadget { n, total: next_hub, arcs, order }
}

/// Generator families, named by parameter, mode count, and graph class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    DiamTwoModeUndirected,
    DiamThreeModeDag,
    DiamLogMode,
    StDiamL2,
    RadiusTwoModeDirected,
    RadiusThreeModeDag,
    RadiusTwoModeDag,
    RadiusTwoModeUndirected,
    RadiusLogMode,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::DiamTwoModeUndirected,
        Family::DiamThreeModeDag,
        Family::DiamLogMode,
        Family::StDiamL2,
        Family::RadiusTwoModeDirected,
        Family::RadiusThreeModeDag,
        Family::RadiusTwoModeDag,
        Family::RadiusTwoModeUndirected,
        Family::RadiusLogMode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::DiamTwoModeUndirected => "diam-2mode-undirected",
            Family::DiamThreeModeDag => "diam-3mode-dag",
            Family::DiamLogMode => "diam-logmode",
            Family::StDiamL2 => "stdiam-l2",
            Family::RadiusTwoModeDirected => "radius-2mode-directed",
            Family::RadiusThreeModeDag => "radius-3mode-dag",
            Family::RadiusTwoModeDag => "radius-2mode-dag",
            Family::RadiusTwoModeUndirected => "radius-2mode-undirected",
            Family::RadiusLogMode => "radius-logmode",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == s)
    }

    /// Parameter the family's label constrains.
    pub fn kind(self) -> ParameterKind {
        match self {
            Family::DiamTwoModeUndirected
            | Family::DiamThreeModeDag
            | Family::DiamLogMode
            | Family::StDiamL2 => ParameterKind::Diameter,
            _ => ParameterKind::Radius,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParameterKind {
    Diameter,
    Radius,
}

impl ParameterKind {
    pub fn name(self) -> &'static str {
        match self {
            ParameterKind::Diameter => "diameter",
            ParameterKind::Radius => "radius",
        }
    }

    pub fn from_name(s: &str) -> Option<ParameterKind> {
        match s {
            "diameter" => Some(ParameterKind::Diameter),
            "radius" => Some(ParameterKind::Radius),
            _ => None,
        }
    }
}

/// Exact or one-sided constraint on a parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Exact(Distance),
    AtLeast(Distance),
    AtMost(Distance),
}

impl Label {
    /// Whether a measured value satisfies the constraint.
    pub fn admits(self, measured: Distance) -> bool {
        match self {
            Label::Exact(d) => measured == d,
            Label::AtLeast(d) => measured >= d,
            Label::AtMost(d) => measured <= d,
        }
    }

    /// Comparison token used by the file format.
    pub fn relation(self) -> &'static str {
        match self {
            Label::Exact(_) => "eq",
            Label::AtLeast(_) => "ge",
            Label::AtMost(_) => "le",
        }
    }

    pub fn bound(self) -> Distance {
        match self {
            Label::Exact(d) | Label::AtLeast(d) | Label::AtMost(d) => d,
        }
    }

    pub fn from_parts(relation: &str, bound: Distance) -> Option<Label> {
        match relation {
            "eq" => Some(Label::Exact(bound)),
            "ge" => Some(Label::AtLeast(bound)),
            "le" => Some(Label::AtMost(bound)),
            _ => None,
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sym = match self {
            Label::Exact(_) => "=",
            Label::AtLeast(_) => ">=",
            Label::AtMost(_) => "<=",
        };
        write!(f, "{} {}", sym, self.bound())
    }
}

/// A generated graph together with the constraint its construction certifies.
#[derive(Debug, Clone)]
pub struct LabeledInstance {
    pub graph: MultimodeGraph,
    pub family: Family,
    pub kind: ParameterKind,
    pub label: Label,
    /// The vector-problem answer the label was derived from.
    pub answer: bool,
}

/// Builds the family's graph over the given vectors and attaches the label
/// its construction certifies for the vector-problem answer. Diameter
/// families key on an orthogonal pair, radius families on a hitting vector.
pub fn gen_lower_bound_instance(
    family: Family,
    inst: &OvInstance,
) -> Result<LabeledInstance, GraphError> {
    if inst.na() == 0 || inst.nb() == 0 {
        return Err(GraphError::InvalidParameter(
            "both vector lists must be non-empty".into(),
        ));
    }
    let two = Distance::new(2);
    let four = Distance::new(4);
    let kind = family.kind();
    let answer = match kind {
        ParameterKind::Diameter => solve_ov(inst),
        ParameterKind::Radius => solve_hse(inst),
    };
    let (graph, label) = match family {
        Family::DiamTwoModeUndirected => {
            let label = if answer { Label::AtLeast(four) } else { Label::Exact(two) };
            (build_diam_two_mode_undirected(inst)?, label)
        }
        Family::DiamThreeModeDag => {
            let label = if answer { Label::Exact(Distance::INF) } else { Label::Exact(two) };
            (build_diam_three_mode_dag(inst)?, label)
        }
        Family::DiamLogMode => {
            let label = if answer { Label::Exact(Distance::INF) } else { Label::Exact(two) };
            (build_diam_logmode(inst)?, label)
        }
        Family::StDiamL2 => {
            let label = if answer { Label::AtLeast(four) } else { Label::Exact(two) };
            (build_stdiam_l2(inst)?, label)
        }
        Family::RadiusTwoModeDirected => {
            let label = if answer { Label::AtMost(two) } else { Label::Exact(Distance::INF) };
            (build_radius_two_mode_directed(inst)?, label)
        }
        Family::RadiusThreeModeDag => {
            let label = if answer { Label::AtMost(two) } else { Label::Exact(Distance::INF) };
            (build_radius_three_mode_dag(inst)?, label)
        }
        Family::RadiusTwoModeDag => {
            let label = if answer { Label::AtMost(two) } else { Label::AtLeast(four) };
            (build_radius_two_mode_dag(inst)?, label)
        }
        Family::RadiusTwoModeUndirected => {
            let label = if answer { Label::AtMost(two) } else { Label::AtLeast(four) };
            (build_radius_two_mode_undirected(inst)?, label)
        }
        Family::RadiusLogMode => {
            let label = if answer { Label::AtMost(two) } else { Label::Exact(Distance::INF) };
            (build_radius_logmode(inst)?, label)
        }
    };
    Ok(LabeledInstance { graph, family, kind, label, answer })
}

/// Mode 0: support edges plus y-A and x-B. Mode 1: x to all of A and U, y to
/// all of U and B. Both modes are bipartite, so A-B distances stay even.
fn build_diam_two_mode_undirected(inst: &OvInstance) -> Result<MultimodeGraph, GraphError> {
    let (na, nb, d) = (inst.na(), inst.nb(), inst.dim());
    let u0 = na + nb;
    let x = u0 + d;
    let y = x + 1;
    let mut edges = Vec::new();
    support_edges(inst, 0, &mut edges);
    for i in 0..na {
        edges.push((0, y, i, 1));
        edges.push((1, x, i, 1));
    }
    for j in 0..nb {
        edges.push((0, x, na + j, 1));
        edges.push((1, y, na + j, 1));
    }
    for t in 0..d {
        edges.push((1, x, u0 + t, 1));
        edges.push((1, y, u0 + t, 1));
    }
    MultimodeGraph::build(y + 1, 2, false, &edges)
}

/// Three DAG modes over A, B, U with a gadget per class and a relay vertex x.
/// Mode 0 carries the support arcs; modes 1 and 2 carry the gadgets forward
/// and reversed plus complete class-to-class arc blocks arranged so every
/// ordered pair sits within two arcs unless an orthogonal pair cuts A off
/// from B in all three modes at once.
fn build_diam_three_mode_dag(inst: &OvInstance) -> Result<MultimodeGraph, GraphError> {
    let (na, nb, d) = (inst.na(), inst.nb(), inst.dim());
    let u0 = na + nb;
    let ga = dag_gadget(na);
    let gb = dag_gadget(nb);
    let gu = dag_gadget(d);
    let ha0 = u0 + d;
    let hb0 = ha0 + ga.total - na;
    let hu0 = hb0 + gb.total - nb;
    let x = hu0 + gu.total - d;
    let map_a = |v: usize| if v < na { v } else { ha0 + v - na };
    let map_b = |v: usize| if v < nb { na + v } else { hb0 + v - nb };
    let map_u = |v: usize| if v < d { u0 + v } else { hu0 + v - d };
    let hat_a: Vec<usize> = (0..ga.total).map(map_a).collect();
    let hat_b: Vec<usize> = (0..gb.total).map(map_b).collect();
    let hat_u: Vec<usize> = (0..gu.total).map(map_u).collect();
    let mut edges = Vec::new();
    support_edges(inst, 0, &mut edges);
    for h in ha0..hb0 {
        edges.push((0, h, x, 1));
    }
    for &v in &hat_b {
        edges.push((0, x, v, 1));
    }
    for &v in &hat_a {
        for h in hb0..hu0 {
            edges.push((0, v, h, 1));
        }
    }
    for &(p, q) in &ga.arcs {
        edges.push((1, map_a(p), map_a(q), 1));
        edges.push((2, map_a(q), map_a(p), 1));
    }
    for &(p, q) in &gb.arcs {
        edges.push((1, map_b(p), map_b(q), 1));
        edges.push((2, map_b(q), map_b(p), 1));
    }
    for &(p, q) in &gu.arcs {
        edges.push((1, map_u(p), map_u(q), 1));
        edges.push((2, map_u(q), map_u(p), 1));
    }
    for &v in hat_a.iter().chain(&hat_b) {
        for &w in &hat_u {
            edges.push((1, v, w, 1));
            edges.push((2, w, v, 1));
        }
    }
    for &v in &hat_b {
        edges.push((1, v, x, 1));
    }
    for &v in &hat_a {
        edges.push((1, x, v, 1));
        edges.push((2, v, x, 1));
    }
    MultimodeGraph::build(x + 1, 3, true, &edges)
}

/// One mode per coordinate carrying only that coordinate's support edges,
/// plus a complete A-U mode and a complete U-B mode.
fn build_diam_logmode(inst: &OvInstance) -> Result<MultimodeGraph, GraphError> {
    let (na, nb, d) = (inst.na(), inst.nb(), inst.dim());
    let u0 = na + nb;
    let mut edges = Vec::new();
    for (i, x) in inst.a.iter().enumerate() {
        for t in 0..d {
            if x[t] {
                edges.push((t, i, u0 + t, 1));
            }
        }
    }
    for (j, y) in inst.b.iter().enumerate() {
        for t in 0..d {
            if y[t] {
                edges.push((t, u0 + t, na + j, 1));
            }
        }
    }
    for i in 0..na {
        for t in 0..d {
            edges.push((d, i, u0 + t, 1));
        }
    }
    for j in 0..nb {
        for t in 0..d {
            edges.push((d + 1, u0 + t, na + j, 1));
        }
    }
    MultimodeGraph::build(u0 + d, d + 2, false, &edges)
}

/// Support edges in mode 0 plus a relay x joined to everything outside B in
/// mode 1 and to everything outside A in mode 2. The 3-mode diameter equals
/// the larger of 2 and the A-to-B diameter of the support graph.
fn build_stdiam_l2(inst: &OvInstance) -> Result<MultimodeGraph, GraphError> {
    let (na, nb, d) = (inst.na(), inst.nb(), inst.dim());
    let u0 = na + nb;
    let x = u0 + d;
    let mut edges = Vec::new();
    support_edges(inst, 0, &mut edges);
    for i in 0..na {
        edges.push((1, x, i, 1));
    }
    for t in 0..d {
        edges.push((1, x, u0 + t, 1));
        edges.push((2, x, u0 + t, 1));
    }
    for j in 0..nb {
        edges.push((2, x, na + j, 1));
    }
    MultimodeGraph::build(x + 1, 3, false, &edges)
}

/// Directed: support arcs a -> u -> b in mode 0; mode 1 sends every a to
/// every u and pairs A with a turnaround vertex x in both directions. B and U
/// are sinks, so in the no case every vertex has infinite eccentricity.
fn build_radius_two_mode_directed(inst: &OvInstance) -> Result<MultimodeGraph, GraphError> {
    let (na, nb, d) = (inst.na(), inst.nb(), inst.dim());
    let u0 = na + nb;
    let x = u0 + d;
    let mut edges = Vec::new();
    support_edges(inst, 0, &mut edges);
    for i in 0..na {
        for t in 0..d {
            edges.push((1, i, u0 + t, 1));
        }
        edges.push((1, i, x, 1));
        edges.push((1, x, i, 1));
    }
    MultimodeGraph::build(x + 1, 2, true, &edges)
}

/// Two hub copies of the A gadget at identical topological positions: mode 1
/// runs both copies forward plus all A -> U arcs, mode 2 runs both reversed.
/// Any path between twin hubs would have to revisit its own position, so in
/// the no case every hub, like every vector vertex, has infinite
/// eccentricity.
fn build_radius_three_mode_dag(inst: &OvInstance) -> Result<MultimodeGraph, GraphError> {
    let (na, nb, d) = (inst.na(), inst.nb(), inst.dim());
    let u0 = na + nb;
    let ga = dag_gadget(na);
    let h1 = u0 + d;
    let h2 = h1 + ga.total - na;
    let n = h2 + ga.total - na;
    let map1 = |v: usize| if v < na { v } else { h1 + v - na };
    let map2 = |v: usize| if v < na { v } else { h2 + v - na };
    let mut edges = Vec::new();
    support_edges(inst, 0, &mut edges);
    for &(p, q) in &ga.arcs {
        edges.push((1, map1(p), map1(q), 1));
        edges.push((1, map2(p), map2(q), 1));
        edges.push((2, map1(q), map1(p), 1));
        edges.push((2, map2(q), map2(p), 1));
    }
    for i in 0..na {
        for t in 0..d {
            edges.push((1, i, u0 + t, 1));
        }
    }
    MultimodeGraph::build(n, 3, true, &edges)
}

/// Like the three-mode variant squeezed into two modes: mode 0 carries the
/// support arcs and both gadget copies forward, mode 1 both copies reversed
/// plus all A -> U arcs. With no direct A-A arcs, a missed b forces every
/// mode-0 walk from a to b through a hub and a second vector, so the no case
/// keeps the radius at 4 or above.
fn build_radius_two_mode_dag(inst: &OvInstance) -> Result<MultimodeGraph, GraphError> {
    let (na, nb, d) = (inst.na(), inst.nb(), inst.dim());
    let u0 = na + nb;
    let ga = dag_gadget(na);
    let h1 = u0 + d;
    let h2 = h1 + ga.total - na;
    let n = h2 + ga.total - na;
    let map1 = |v: usize| if v < na { v } else { h1 + v - na };
    let map2 = |v: usize| if v < na { v } else { h2 + v - na };
    let mut edges = Vec::new();
    support_edges(inst, 0, &mut edges);
    for &(p, q) in &ga.arcs {
        edges.push((0, map1(p), map1(q), 1));
        edges.push((0, map2(p), map2(q), 1));
        edges.push((1, map1(q), map1(p), 1));
        edges.push((1, map2(q), map2(p), 1));
    }
    for i in 0..na {
        for t in 0..d {
            edges.push((1, i, u0 + t, 1));
        }
    }
    MultimodeGraph::build(n, 2, true, &edges)
}

/// Undirected: support edges in mode 0, complete A-U in mode 1. A hitting
/// vector reaches everything within two hops; a missed pair keeps every
/// vertex of A at eccentricity 4 or more, though vertices of U may still sit
/// closer to the rest of the graph.
fn build_radius_two_mode_undirected(inst: &OvInstance) -> Result<MultimodeGraph, GraphError> {
    let (na, nb, d) = (inst.na(), inst.nb(), inst.dim());
    let u0 = na + nb;
    let mut edges = Vec::new();
    support_edges(inst, 0, &mut edges);
    for i in 0..na {
        for t in 0..d {
            edges.push((1, i, u0 + t, 1));
        }
    }
    MultimodeGraph::build(u0 + d, 2, false, &edges)
}

/// One mode per coordinate, a complete A-U mode, and a mode pairing A with a
/// private vertex x. In the no case x is unreachable from outside A in every
/// mode, so all eccentricities are infinite.
fn build_radius_logmode(inst: &OvInstance) -> Result<MultimodeGraph, GraphError> {
    let (na, nb, d) = (inst.na(), inst.nb(), inst.dim());
    let u0 = na + nb;
    let x = u0 + d;
    let mut edges = Vec::new();
    for (i, v) in inst.a.iter().enumerate() {
        for t in 0..d {
            if v[t] {
                edges.push((t, i, u0 + t, 1));
            }
        }
    }
    for (j, v) in inst.b.iter().enumerate() {
        for t in 0..d {
            if v[t] {
                edges.push((t, u0 + t, na + j, 1));
            }
        }
    }
    for i in 0..na {
        for t in 0..d {
            edges.push((d, i, u0 + t, 1));
        }
        edges.push((d + 1, i, x, 1));
    }
    MultimodeGraph::build(x + 1, d + 2, false, &edges)
}
