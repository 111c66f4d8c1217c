//! Command-line front end: graph file I/O, algorithm drivers, labeled
//! instance generation, reductions, and benchmark timing. Emits one
//! machine-readable JSON record per line unless --human is given.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use multimode::diameter::{
    binary_search_diameter, three_approx_2mode, three_mode_three_approx_decision,
    two_approx_decision, two_half_approx_decision, BandVariant, DiameterEstimate,
};
use multimode::directed::{
    dag_2mode_finite_ecc, finite_2mode_diameter, finite_min_ecc, two_mode_dag_diameter_2approx,
    FinitenessVerdict,
};
use multimode::instances::{
    gen_lower_bound_instance, Family, Label, LabeledInstance, OvInstance, ParameterKind,
};
use multimode::radius::{binary_search_radius, RadiusEstimate};
use multimode::{
    reduce_to_standard_diameter, reduce_to_standard_radius, AlgoStats, Distance, MultimodeGraph,
};

/// Line-oriented stdout write that survives the consumer closing the pipe
/// early (`mmg exact --apsp | head` must exit quietly, not panic).
macro_rules! outln {
    ($($arg:tt)*) => {{
        let mut out = std::io::stdout().lock();
        if let Err(e) = writeln!(out, $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            let _ = writeln!(std::io::stderr(), "error: {}", e);
            std::process::exit(2);
        }
    }};
}

#[derive(Parser)]
#[command(name = "mmg", version, about = "Multimode graph distances: exact oracles, approximations, generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact diameter, radius, and eccentricities by brute-force search.
    Exact {
        path: PathBuf,
        /// Also dump the full distance matrix, one `apsp` line per source.
        #[arg(long)]
        apsp: bool,
        #[arg(long)]
        human: bool,
    },
    /// Diameter approximation drivers (estimate via threshold binary search).
    ApproxDiam {
        path: PathBuf,
        /// 3approx | 2approx | 2.5approx | 3mode
        #[arg(long)]
        algo: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-probe failure budget of the sampled decisions.
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Threshold search range as lo:hi (default 1:n*M).
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        human: bool,
    },
    /// Radius 3-approximation via threshold binary search.
    ApproxRadius {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Threshold search range as lo:hi (default 1:n*M).
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        human: bool,
    },
    /// Directed-case routines.
    Directed {
        path: PathBuf,
        /// finite-diam | dag-diam | dag-finite-ecc | min-ecc
        #[arg(long)]
        task: String,
        /// Mode index for per-mode tasks (min-ecc).
        #[arg(long, default_value_t = 0)]
        mode: usize,
        #[arg(long)]
        human: bool,
    },
    /// Generate a labeled hardness instance from vectors.
    Gen {
        /// Family name, e.g. diam-2mode-undirected.
        #[arg(long)]
        family: String,
        /// Vector file with `a <bits>` and `b <bits>` lines.
        #[arg(long, conflicts_with = "random")]
        ov_file: Option<PathBuf>,
        /// Random vectors: N [D] [P] (defaults D = ceil(2 log2 N), P = 0.3).
        #[arg(long, num_args = 1..=3, value_names = ["N", "D", "P"])]
        random: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output graph file; the label goes on an `l` line inside it.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        human: bool,
    },
    /// Reduce a k-mode graph to a single-mode standard instance.
    Reduce {
        path: PathBuf,
        /// diameter | radius
        #[arg(long)]
        target: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        human: bool,
    },
    /// Median wall-clock times over repeated runs, CSV on stdout.
    Bench {
        paths: Vec<PathBuf>,
        /// exact | 3approx | 2approx | 2.5approx | 3mode | radius
        #[arg(long)]
        algo: String,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit 1: unreadable, malformed, or mismatched input. Exit 2: a result
/// failed its own re-certification or another internal invariant broke.
#[derive(Debug)]
enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn report(&self) -> (&str, u8) {
        match self {
            CliError::Input(m) => (m, 1),
            CliError::Internal(m) => (m, 2),
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn internal_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Internal(e.to_string())
}

/// One emitted result; optional fields are dropped from the JSON so records
/// stay line-sized. Everything except `ms` is deterministic per seed.
#[derive(Serialize)]
struct ResultRecord {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diameter: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certified: Option<String>,
    ms: f64,
    searches: u64,
    recursion_nodes: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    matmul_dims: Vec<(usize, usize, usize)>,
}

impl ResultRecord {
    fn new(ms: f64) -> ResultRecord {
        ResultRecord {
            command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
            seed: None,
            verdict: None,
            estimate: None,
            diameter: None,
            radius: None,
            witness: Vec::new(),
            certified: None,
            ms,
            searches: 0,
            recursion_nodes: 0,
            matmul_dims: Vec::new(),
        }
    }

    fn emit(&self, human: bool) -> Result<(), CliError> {
        if human {
            outln!("command:         {}", self.command);
            if let Some(s) = self.seed {
                outln!("seed:            {}", s);
            }
            if let Some(v) = &self.verdict {
                outln!("verdict:         {}", v);
            }
            if let Some(e) = &self.estimate {
                outln!("estimate:        {}", e);
            }
            if let Some(d) = &self.diameter {
                outln!("diameter:        {}", d);
            }
            if let Some(r) = &self.radius {
                outln!("radius:          {}", r);
            }
            if !self.witness.is_empty() {
                let w: Vec<String> = self.witness.iter().map(|v| v.to_string()).collect();
                outln!("witness:         {}", w.join(" "));
            }
            if let Some(c) = &self.certified {
                outln!("certified:       {}", c);
            }
            outln!("ms:              {:.3}", self.ms);
            outln!("searches:        {}", self.searches);
            outln!("recursion nodes: {}", self.recursion_nodes);
            if !self.matmul_dims.is_empty() {
                let d: Vec<String> = self
                    .matmul_dims
                    .iter()
                    .map(|(a, b, c)| format!("{}x{}x{}", a, b, c))
                    .collect();
                outln!("matmul dims:     {}", d.join(" "));
            }
        } else {
            let line = serde_json::to_string(self).map_err(internal_err)?;
            outln!("{}", line);
        }
        Ok(())
    }
}

/// Graph file plus any `l` label lines it carried.
struct ParsedFile {
    graph: MultimodeGraph,
    labels: Vec<(ParameterKind, Label)>,
}

fn parse_distance_token(tok: &str) -> Option<Distance> {
    if tok == "inf" {
        Some(Distance::INF)
    } else {
        tok.parse::<u64>().ok().map(Distance::new)
    }
}

/// Parses the line-oriented format: `c` comments, one `p multimode k n m
/// directed` header, `e mode u v [w]` edges, optional `l kind relation
/// value` labels. Errors cite `origin:line`.
fn parse_graph_text(text: &str, origin: &str) -> Result<ParsedFile, CliError> {
    let mut header: Option<(usize, usize, usize, bool, usize)> = None;
    let mut edges: Vec<(usize, usize, usize, u64)> = Vec::new();
    let mut labels: Vec<(ParameterKind, Label)> = Vec::new();
    let fail = |line: usize, msg: String| CliError::Input(format!("{}:{}: {}", origin, line, msg));
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(fail(line_no, "duplicate header".into()));
                }
                if toks.len() != 6 || toks[1] != "multimode" {
                    return Err(fail(line_no, "expected `p multimode <k> <n> <m> <directed>`".into()));
                }
                let k: usize = toks[2].parse().map_err(|_| fail(line_no, "bad mode count".into()))?;
                let n: usize = toks[3].parse().map_err(|_| fail(line_no, "bad vertex count".into()))?;
                let m: usize = toks[4].parse().map_err(|_| fail(line_no, "bad edge count".into()))?;
                let directed = match toks[5] {
                    "0" => false,
                    "1" => true,
                    _ => return Err(fail(line_no, "directed flag must be 0 or 1".into())),
                };
                header = Some((k, n, m, directed, line_no));
            }
            "e" => {
                let (k, n, ..) = header.ok_or_else(|| fail(line_no, "edge before header".into()))?;
                if toks.len() != 4 && toks.len() != 5 {
                    return Err(fail(line_no, "expected `e <mode> <u> <v> [w]`".into()));
                }
                let mode: usize = toks[1].parse().map_err(|_| fail(line_no, "bad mode".into()))?;
                let u: usize = toks[2].parse().map_err(|_| fail(line_no, "bad endpoint".into()))?;
                let v: usize = toks[3].parse().map_err(|_| fail(line_no, "bad endpoint".into()))?;
                let w: u64 = match toks.get(4) {
                    Some(t) => t.parse().map_err(|_| fail(line_no, "bad weight".into()))?,
                    None => 1,
                };
                if mode >= k {
                    return Err(fail(line_no, format!("mode {} out of range for k={}", mode, k)));
                }
                if u >= n || v >= n {
                    return Err(fail(line_no, format!("endpoint out of range for n={}", n)));
                }
                edges.push((mode, u, v, w));
            }
            "l" => {
                if toks.len() != 4 {
                    return Err(fail(line_no, "expected `l <kind> <relation> <value>`".into()));
                }
                let kind = ParameterKind::from_name(toks[1])
                    .ok_or_else(|| fail(line_no, format!("unknown parameter kind `{}`", toks[1])))?;
                let bound = parse_distance_token(toks[3])
                    .ok_or_else(|| fail(line_no, format!("bad label value `{}`", toks[3])))?;
                let label = Label::from_parts(toks[2], bound)
                    .ok_or_else(|| fail(line_no, format!("unknown relation `{}`", toks[2])))?;
                labels.push((kind, label));
            }
            other => {
                return Err(fail(line_no, format!("unknown line type `{}`", other)));
            }
        }
    }
    let (k, n, m, directed, p_line) =
        header.ok_or_else(|| CliError::Input(format!("{}: missing `p multimode` header", origin)))?;
    if edges.len() != m {
        return Err(fail(
            p_line,
            format!("header declares m={} but file has {} edge lines", m, edges.len()),
        ));
    }
    let graph = MultimodeGraph::build(n, k, directed, &edges)
        .map_err(|e| CliError::Input(format!("{}: {}", origin, e)))?;
    Ok(ParsedFile { graph, labels })
}

fn load_graph(path: &Path) -> Result<ParsedFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))?;
    parse_graph_text(&text, &path.display().to_string())
}

/// Serializes header, comments, labels, then edges sorted by (mode, u, v, w).
/// Undirected edges are written once with u <= v; each stored parallel edge
/// keeps its own line, so parse(serialize(g)) reproduces g on the same ids.
fn serialize_graph(
    g: &MultimodeGraph,
    comments: &[String],
    labels: &[(ParameterKind, Label)],
) -> String {
    let mut lines: Vec<(usize, usize, usize, u64)> = Vec::new();
    for mode in 0..g.k() {
        if g.is_directed() {
            lines.extend(g.arcs(mode).map(|(u, v, w)| (mode, u, v, w)));
        } else {
            lines.extend(g.arcs(mode).filter(|&(u, v, _)| u < v).map(|(u, v, w)| (mode, u, v, w)));
            let mut loops: HashMap<(usize, u64), usize> = HashMap::new();
            for (u, v, w) in g.arcs(mode) {
                if u == v {
                    *loops.entry((u, w)).or_insert(0) += 1;
                }
            }
            let mut loop_edges: Vec<_> = loops.into_iter().collect();
            loop_edges.sort_unstable();
            for ((u, w), cnt) in loop_edges {
                for _ in 0..cnt / 2 {
                    lines.push((mode, u, u, w));
                }
            }
        }
    }
    lines.sort_unstable();
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("c {}\n", c));
    }
    out.push_str(&format!(
        "p multimode {} {} {} {}\n",
        g.k(),
        g.n(),
        lines.len(),
        if g.is_directed() { 1 } else { 0 }
    ));
    for (kind, label) in labels {
        out.push_str(&format!("l {} {} {}\n", kind.name(), label.relation(), label.bound()));
    }
    for (mode, u, v, w) in lines {
        if w == 1 {
            out.push_str(&format!("e {} {} {}\n", mode, u, v));
        } else {
            out.push_str(&format!("e {} {} {} {}\n", mode, u, v, w));
        }
    }
    out
}

/// Parses a vector file: `a <bits>` and `b <bits>` lines (0/1 strings of one
/// shared length), `c` comments. Errors cite `origin:line`.
fn parse_ov_text(text: &str, origin: &str) -> Result<OvInstance, CliError> {
    let mut a: Vec<Vec<bool>> = Vec::new();
    let mut b: Vec<Vec<bool>> = Vec::new();
    let fail = |line: usize, msg: String| CliError::Input(format!("{}:{}: {}", origin, line, msg));
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 || (toks[0] != "a" && toks[0] != "b") {
            return Err(fail(line_no, "expected `a <bits>` or `b <bits>`".into()));
        }
        let mut bits = Vec::with_capacity(toks[1].len());
        for ch in toks[1].chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(fail(line_no, format!("bad bit `{}`", ch))),
            }
        }
        if toks[0] == "a" {
            a.push(bits);
        } else {
            b.push(bits);
        }
    }
    let d = a.first().or_else(|| b.first()).map_or(0, |v| v.len());
    OvInstance::new(a, b, d).map_err(|e| CliError::Input(format!("{}: {}", origin, e)))
}

fn parse_range(arg: &str) -> Result<(u64, u64), CliError> {
    let parts: Vec<&str> = arg.split(':').collect();
    if parts.len() == 2 {
        if let (Ok(lo), Ok(hi)) = (parts[0].parse(), parts[1].parse()) {
            return Ok((lo, hi));
        }
    }
    Err(CliError::Input(format!("bad --range `{}`, expected lo:hi", arg)))
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Re-derives the claimed distance of a witness pair from scratch; a
/// mismatch is an internal failure.
fn certify_pair(g: &MultimodeGraph, a: usize, b: usize, claimed: Distance) -> Result<String, CliError> {
    let real = g.kmode_distance(a, b);
    if real != claimed {
        return Err(CliError::Internal(format!(
            "witness ({}, {}) certifies {} but algorithm claimed {}",
            a, b, real, claimed
        )));
    }
    Ok(real.to_string())
}

fn cmd_exact(path: &Path, apsp: bool, human: bool) -> Result<(), CliError> {
    let parsed = load_graph(path)?;
    let g = parsed.graph;
    let start = Instant::now();
    let params = g.exact_parameters();
    for (kind, label) in &parsed.labels {
        let actual = match kind {
            ParameterKind::Diameter => params.diameter,
            ParameterKind::Radius => params.radius,
        };
        if !label.admits(actual) {
            return Err(CliError::Input(format!(
                "{}: label `{} {}` violated, exact {} is {}",
                path.display(),
                kind.name(),
                label,
                kind.name(),
                actual
            )));
        }
    }
    let mut rec = ResultRecord::new(millis(start));
    if !parsed.labels.is_empty() {
        rec.verdict = Some("labels-ok".into());
    }
    rec.diameter = Some(params.diameter.to_string());
    rec.radius = Some(params.radius.to_string());
    let (a, b) = params.diameter_pair;
    rec.witness = vec![a, b, params.center];
    rec.certified = Some(certify_pair(&g, a, b, params.diameter)?);
    rec.searches = g.searches_performed();
    rec.emit(human)?;
    if apsp {
        let m = g.exact_apsp();
        for u in 0..g.n() {
            let row: Vec<String> = (0..g.n()).map(|v| m.get(u, v).to_string()).collect();
            outln!("apsp {} {}", u, row.join(" "));
        }
    }
    Ok(())
}

fn cmd_approx_diam(
    path: &Path,
    algo: &str,
    seed: u64,
    delta: f64,
    range: Option<String>,
    human: bool,
) -> Result<(), CliError> {
    let g = load_graph(path)?.graph;
    let (lo, hi) = match &range {
        Some(arg) => parse_range(arg)?,
        None => (1, g.distance_bound()),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = AlgoStats::new();
    let start = Instant::now();
    let est: DiameterEstimate = match algo {
        "3approx" => {
            let (a, b, estimate) = three_approx_2mode(&g, 0).map_err(input_err)?;
            DiameterEstimate { a, b, estimate, witnessed_threshold: None, fallback: false }
        }
        "2approx" => binary_search_diameter(&g, lo, hi, |thr| {
            two_approx_decision(&g, thr, delta, &mut rng, &mut stats)
        })
        .map_err(input_err)?,
        "2.5approx" => binary_search_diameter(&g, lo, hi, |thr| {
            two_half_approx_decision(&g, thr, delta, BandVariant::TwoFifths, &mut rng, &mut stats)
        })
        .map_err(input_err)?,
        "3mode" => binary_search_diameter(&g, lo, hi, |thr| {
            three_mode_three_approx_decision(&g, thr)
        })
        .map_err(input_err)?,
        other => return Err(CliError::Input(format!("unknown --algo `{}`", other))),
    };
    let mut rec = ResultRecord::new(millis(start));
    rec.seed = Some(seed);
    rec.estimate = Some(est.estimate.to_string());
    rec.witness = vec![est.a, est.b];
    rec.certified = Some(certify_pair(&g, est.a, est.b, est.estimate)?);
    rec.searches = g.searches_performed();
    rec.recursion_nodes = stats.recursion_nodes;
    rec.matmul_dims = stats.matmul_dims.clone();
    rec.emit(human)
}

fn cmd_approx_radius(path: &Path, seed: u64, range: Option<String>, human: bool) -> Result<(), CliError> {
    let g = load_graph(path)?.graph;
    let (lo, hi) = match &range {
        Some(arg) => parse_range(arg)?,
        None => (1, g.distance_bound()),
    };
    let _ = seed;
    let mut stats = AlgoStats::new();
    let start = Instant::now();
    let est = binary_search_radius(&g, lo, hi, &mut stats).map_err(input_err)?;
    let mut rec = ResultRecord::new(millis(start));
    rec.seed = Some(seed);
    match est {
        RadiusEstimate::Finite { center, eccentricity, threshold } => {
            let real = g
                .kmode_distances_from(center)
                .into_iter()
                .max()
                .unwrap_or(Distance::ZERO);
            if real != eccentricity {
                return Err(CliError::Internal(format!(
                    "center {} has eccentricity {} but algorithm claimed {}",
                    center, real, eccentricity
                )));
            }
            rec.verdict = Some("finite".into());
            rec.estimate = Some(eccentricity.to_string());
            rec.witness = vec![center];
            rec.certified = Some(format!("{} (accepted threshold {})", real, threshold));
        }
        RadiusEstimate::Infinite => {
            rec.verdict = Some("infinite".into());
            rec.estimate = Some(Distance::INF.to_string());
        }
    }
    rec.searches = g.searches_performed();
    rec.recursion_nodes = stats.recursion_nodes;
    rec.emit(human)
}

fn cmd_directed(path: &Path, task: &str, mode: usize, human: bool) -> Result<(), CliError> {
    let g = load_graph(path)?.graph;
    let mut stats = AlgoStats::new();
    let start = Instant::now();
    let mut rec = ResultRecord::new(0.0);
    match task {
        "finite-diam" => {
            let verdict = finite_2mode_diameter(&g, &mut stats).map_err(input_err)?;
            rec.ms = millis(start);
            match verdict {
                FinitenessVerdict::Finite => rec.verdict = Some("finite".into()),
                FinitenessVerdict::Infinite { witness } => {
                    rec.verdict = Some("infinite".into());
                    if let Some((u, v)) = witness {
                        rec.witness = vec![u, v];
                        rec.certified = Some(certify_pair(&g, u, v, Distance::INF)?);
                    }
                }
            }
        }
        "dag-diam" => {
            let d = two_mode_dag_diameter_2approx(&g).map_err(input_err)?;
            rec.ms = millis(start);
            rec.verdict = Some(if d.is_finite() { "finite" } else { "infinite" }.into());
            rec.estimate = Some(d.to_string());
        }
        "dag-finite-ecc" => {
            let list = dag_2mode_finite_ecc(&g).map_err(input_err)?;
            rec.ms = millis(start);
            rec.estimate = Some(list.len().to_string());
            rec.witness = list;
        }
        "min-ecc" => {
            if mode >= g.k() {
                return Err(CliError::Input(format!("--mode {} out of range for k={}", mode, g.k())));
            }
            if !g.is_directed() {
                return Err(CliError::Input("min-ecc needs a directed graph".into()));
            }
            let list = finite_min_ecc(&g, mode);
            rec.ms = millis(start);
            rec.estimate = Some(list.len().to_string());
            rec.witness = list;
        }
        other => return Err(CliError::Input(format!("unknown --task `{}`", other))),
    }
    rec.searches = g.searches_performed();
    rec.recursion_nodes = stats.recursion_nodes;
    rec.matmul_dims = stats.matmul_dims.clone();
    rec.emit(human)
}

fn default_dim(n: usize) -> usize {
    (2.0 * (n.max(2) as f64).log2()).ceil() as usize
}

fn cmd_gen(
    family: &str,
    ov_file: Option<&Path>,
    random: Option<&[String]>,
    seed: u64,
    out: &Path,
    human: bool,
) -> Result<(), CliError> {
    let family = Family::from_name(family)
        .ok_or_else(|| CliError::Input(format!("unknown --family `{}`", family)))?;
    let ov = match (ov_file, random) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))?;
            parse_ov_text(&text, &path.display().to_string())?
        }
        (None, Some(args)) => {
            let n: usize = args[0]
                .parse()
                .map_err(|_| CliError::Input(format!("bad --random N `{}`", args[0])))?;
            let d: usize = match args.get(1) {
                Some(t) => t.parse().map_err(|_| CliError::Input(format!("bad --random D `{}`", t)))?,
                None => default_dim(n),
            };
            let p: f64 = match args.get(2) {
                Some(t) => t.parse().map_err(|_| CliError::Input(format!("bad --random P `{}`", t)))?,
                None => 0.3,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            OvInstance::random(n, n, d, p, &mut rng).map_err(input_err)?
        }
        _ => return Err(CliError::Input("need exactly one of --ov-file or --random".into())),
    };
    let start = Instant::now();
    let li: LabeledInstance = gen_lower_bound_instance(family, &ov).map_err(input_err)?;
    let comments = vec![
        format!("family {}", li.family.name()),
        format!("vectors na={} nb={} d={}", ov.na(), ov.nb(), ov.dim()),
        format!("answer {}", if li.answer { 1 } else { 0 }),
    ];
    let text = serialize_graph(&li.graph, &comments, &[(li.kind, li.label)]);
    std::fs::write(out, text).map_err(|e| CliError::Input(format!("{}: {}", out.display(), e)))?;
    let mut rec = ResultRecord::new(millis(start));
    rec.seed = Some(seed);
    rec.verdict = Some(if li.answer { "yes" } else { "no" }.into());
    rec.estimate = Some(format!("{} {}", li.kind.name(), li.label));
    rec.emit(human)
}

fn cmd_reduce(path: &Path, target: &str, out: &Path, human: bool) -> Result<(), CliError> {
    let g = load_graph(path)?.graph;
    let start = Instant::now();
    let reduced = match target {
        "diameter" => reduce_to_standard_diameter(&g).map_err(input_err)?,
        "radius" => reduce_to_standard_radius(&g).map_err(input_err)?,
        other => return Err(CliError::Input(format!("unknown --target `{}`", other))),
    };
    let comments = vec![
        format!("offset 2W={}", reduced.offset),
        format!("source n={} k={}", reduced.n_original, reduced.k_original),
    ];
    let text = serialize_graph(&reduced.graph, &comments, &[]);
    std::fs::write(out, text).map_err(|e| CliError::Input(format!("{}: {}", out.display(), e)))?;
    let mut rec = ResultRecord::new(millis(start));
    rec.verdict = Some("reduced".into());
    rec.estimate = Some(reduced.offset.to_string());
    rec.emit(human)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len() / 2]
}

fn bench_once(g: &MultimodeGraph, algo: &str, seed: u64) -> Result<f64, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = AlgoStats::new();
    let start = Instant::now();
    match algo {
        "exact" => {
            let _ = g.exact_parameters();
        }
        "3approx" => {
            three_approx_2mode(g, 0).map_err(input_err)?;
        }
        "2approx" => {
            binary_search_diameter(g, 1, g.distance_bound(), |thr| {
                two_approx_decision(g, thr, 0.05, &mut rng, &mut stats)
            })
            .map_err(input_err)?;
        }
        "2.5approx" => {
            binary_search_diameter(g, 1, g.distance_bound(), |thr| {
                two_half_approx_decision(g, thr, 0.05, BandVariant::TwoFifths, &mut rng, &mut stats)
            })
            .map_err(input_err)?;
        }
        "3mode" => {
            binary_search_diameter(g, 1, g.distance_bound(), |thr| {
                three_mode_three_approx_decision(g, thr)
            })
            .map_err(input_err)?;
        }
        "radius" => {
            binary_search_radius(g, 1, g.distance_bound(), &mut stats).map_err(input_err)?;
        }
        other => return Err(CliError::Input(format!("unknown --algo `{}`", other))),
    }
    Ok(millis(start))
}

fn cmd_bench(paths: &[PathBuf], algo: &str, repeat: usize, seed: u64) -> Result<(), CliError> {
    if paths.is_empty() {
        return Err(CliError::Input("bench needs at least one graph file".into()));
    }
    if repeat == 0 {
        return Err(CliError::Input("--repeat must be at least 1".into()));
    }
    outln!("path,algo,n,k,m,median_ms");
    for path in paths {
        let g = load_graph(path)?.graph;
        let mut times = Vec::with_capacity(repeat);
        for _ in 0..repeat {
            times.push(bench_once(&g, algo, seed)?);
        }
        let m: usize = (0..g.k()).map(|mode| g.edge_count(mode)).sum();
        outln!(
            "{},{},{},{},{},{:.3}",
            path.display(),
            algo,
            g.n(),
            g.k(),
            m,
            median(times.clone())
        );
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Exact { path, apsp, human } => cmd_exact(&path, apsp, human),
        Command::ApproxDiam { path, algo, seed, delta, range, human } => {
            cmd_approx_diam(&path, &algo, seed, delta, range, human)
        }
        Command::ApproxRadius { path, seed, range, human } => {
            cmd_approx_radius(&path, seed, range, human)
        }
        Command::Directed { path, task, mode, human } => cmd_directed(&path, &task, mode, human),
        Command::Gen { family, ov_file, random, seed, out, human } => cmd_gen(
            &family,
            ov_file.as_deref(),
            random.as_deref(),
            seed,
            &out,
            human,
        ),
        Command::Reduce { path, target, out, human } => cmd_reduce(&path, &target, &out, human),
        Command::Bench { paths, algo, repeat, seed } => cmd_bench(&paths, &algo, repeat, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (msg, code) = e.report();
            let _ = writeln!(std::io::stderr(), "error: {}", msg);
            ExitCode::from(code)
        }
    }
}
