//! Rainbow connectivity checking.
//!
//! A path is rainbow when its edges carry pairwise distinct colors. The
//! search runs a breadth-first exploration over states `(vertex, set of
//! colors used so far)` without tracking visited vertices. That is enough:
//! a rainbow walk of minimum length between two vertices is always a simple
//! path, because any repeated vertex could be shortcut into a shorter walk
//! whose colors are a subset of the original ones. Targets are recorded the
//! first time they are reached, so every witness is a shortest rainbow walk
//! and therefore a path; [`verify_certificate`] re-checks this independently.

mod colorset;

pub use colorset::{ColorSet, WideColorSet};

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph};

/// Sources at or above this count are verified in parallel.
const PARALLEL_THRESHOLD: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("coloring has {got} entries but the graph has {expected} edges")]
    NotTotal { expected: usize, got: usize },
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("source and target coincide ({0})")]
    SameVertex(usize),
    #[error("coloring line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Total assignment of color ids to the edges of a host graph, indexed by
/// [`EdgeId`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeColoring {
    colors: Vec<usize>,
    q: usize,
}

impl EdgeColoring {
    pub fn new(g: &Graph, colors: Vec<usize>) -> Result<Self, VerifyError> {
        if colors.len() != g.m() {
            return Err(VerifyError::NotTotal {
                expected: g.m(),
                got: colors.len(),
            });
        }
        let q = colors.iter().max().map_or(0, |&c| c + 1);
        Ok(EdgeColoring { colors, q })
    }

    /// Every edge gets color 0.
    pub fn monochromatic(g: &Graph) -> Self {
        EdgeColoring {
            colors: vec![0; g.m()],
            q: usize::from(g.m() > 0),
        }
    }

    /// One plus the largest color id, or 0 without edges.
    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn color(&self, e: EdgeId) -> usize {
        self.colors[e]
    }

    #[inline]
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Number of distinct color ids that actually occur.
    pub fn distinct(&self) -> usize {
        self.colors.iter().collect::<HashSet<_>>().len()
    }

    /// Reads `u v color` lines; every edge of `g` must appear exactly once.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, VerifyError> {
        let err = |line, message: String| VerifyError::Parse { line, message };
        let mut colors: Vec<Option<usize>> = vec![None; g.m()];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            if tokens.len() != 3 {
                return Err(err(line, format!("expected `u v color`, got {body:?}")));
            }
            let mut nums = [0usize; 3];
            for (slot, tok) in nums.iter_mut().zip(&tokens) {
                *slot = tok
                    .parse()
                    .map_err(|_| err(line, format!("invalid number {tok:?}")))?;
            }
            let [u, v, c] = nums;
            let e = g
                .edge_id(u, v)
                .ok_or_else(|| err(line, format!("{u} {v} is not an edge of the graph")))?;
            if colors[e].replace(c).is_some() {
                return Err(err(line, format!("edge {u} {v} colored twice")));
            }
        }
        if let Some(e) = colors.iter().position(Option::is_none) {
            let (u, v) = g.edge(e);
            return Err(err(0, format!("edge {u} {v} has no color")));
        }
        Self::new(g, colors.into_iter().flatten().collect())
    }

    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = String::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let _ = writeln!(out, "{u} {v} {}", self.colors[e]);
        }
        out
    }
}

/// Witness path for one unordered vertex pair `u < v`, listed from `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub u: usize,
    pub v: usize,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowCertificate {
    /// Sorted lexicographically by `(u, v)`.
    pub witnesses: Vec<Witness>,
}

#[derive(Serialize)]
struct WitnessRecord<'a> {
    u: usize,
    v: usize,
    path: &'a [usize],
    colors: Vec<usize>,
}

impl RainbowCertificate {
    /// One JSON object per line: `{"u":..,"v":..,"path":[..],"colors":[..]}`.
    pub fn to_json_lines(&self, g: &Graph, c: &EdgeColoring) -> String {
        let mut out = String::new();
        for w in &self.witnesses {
            let colors = w
                .path
                .windows(2)
                .map(|p| g.edge_id(p[0], p[1]).map_or(usize::MAX, |e| c.color(e)))
                .collect();
            let record = WitnessRecord {
                u: w.u,
                v: w.v,
                path: &w.path,
                colors,
            };
            out.push_str(&serde_json::to_string(&record).expect("plain record serializes"));
            out.push('\n');
        }
        out
    }
}

/// A vertex pair joined by no rainbow path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FailingPair {
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RainbowOutcome {
    Connected(RainbowCertificate),
    Failing(FailingPair),
}

impl RainbowOutcome {
    pub fn is_connected(&self) -> bool {
        matches!(self, RainbowOutcome::Connected(_))
    }

    pub fn failing_pair(&self) -> Option<FailingPair> {
        match self {
            RainbowOutcome::Failing(p) => Some(*p),
            RainbowOutcome::Connected(_) => None,
        }
    }
}

struct State<S> {
    vertex: usize,
    colors: S,
    parent: usize,
}

/// Breadth-first search over `(vertex, used colors)` from `source`.
/// Returns, for every target vertex, the path of the first state reaching it.
fn search<S: ColorSet>(
    g: &Graph,
    c: &EdgeColoring,
    source: usize,
    is_target: impl Fn(usize) -> bool,
) -> Vec<Option<Vec<usize>>> {
    let n = g.n();
    let mut remaining = (0..n).filter(|&v| v != source && is_target(v)).count();
    let mut reached: Vec<Option<usize>> = vec![None; n];
    let mut states = vec![State {
        vertex: source,
        colors: S::empty(c.q()),
        parent: usize::MAX,
    }];
    let mut seen: HashSet<(usize, S)> = HashSet::new();
    let mut head = 0;
    'bfs: while head < states.len() && remaining > 0 {
        let here = head;
        head += 1;
        let v = states[here].vertex;
        for &(w, e) in g.incident(v) {
            let color = c.color(e);
            if w == source || states[here].colors.contains(color) {
                continue;
            }
            let mut next = states[here].colors.clone();
            next.insert(color);
            if !seen.insert((w, next.clone())) {
                continue;
            }
            states.push(State {
                vertex: w,
                colors: next,
                parent: here,
            });
            if reached[w].is_none() && is_target(w) {
                reached[w] = Some(states.len() - 1);
                remaining -= 1;
                if remaining == 0 {
                    break 'bfs;
                }
            }
        }
    }
    reached
        .into_iter()
        .map(|slot| {
            slot.map(|mut i| {
                let mut path = Vec::new();
                while i != usize::MAX {
                    path.push(states[i].vertex);
                    i = states[i].parent;
                }
                path.reverse();
                path
            })
        })
        .collect()
}

fn search_dispatch(
    g: &Graph,
    c: &EdgeColoring,
    source: usize,
    is_target: impl Fn(usize) -> bool,
) -> Vec<Option<Vec<usize>>> {
    if c.q() <= 64 {
        search::<u64>(g, c, source, is_target)
    } else {
        search::<WideColorSet>(g, c, source, is_target)
    }
}

fn check_coloring(g: &Graph, c: &EdgeColoring) -> Result<(), VerifyError> {
    if c.colors().len() != g.m() {
        return Err(VerifyError::NotTotal {
            expected: g.m(),
            got: c.colors().len(),
        });
    }
    Ok(())
}

/// A rainbow path from `s` to `t`, if one exists.
pub fn rainbow_path(
    g: &Graph,
    c: &EdgeColoring,
    s: usize,
    t: usize,
) -> Result<Option<Vec<usize>>, VerifyError> {
    check_coloring(g, c)?;
    for vertex in [s, t] {
        if vertex >= g.n() {
            return Err(VerifyError::VertexOutOfRange { vertex, n: g.n() });
        }
    }
    if s == t {
        return Err(VerifyError::SameVertex(s));
    }
    Ok(search_dispatch(g, c, s, |v| v == t).swap_remove(t))
}

type SourceResult = Result<Vec<Witness>, FailingPair>;

fn witnesses_from(g: &Graph, c: &EdgeColoring, u: usize) -> SourceResult {
    let found = search_dispatch(g, c, u, |v| v > u);
    let mut out = Vec::with_capacity(g.n() - u - 1);
    for (v, path) in found.into_iter().enumerate().skip(u + 1) {
        match path {
            Some(path) => out.push(Witness { u, v, path }),
            None => return Err(FailingPair { u, v }),
        }
    }
    Ok(out)
}

/// Decides rainbow connectivity. On failure the lexicographically first
/// pair without a rainbow path is reported; the result does not depend on
/// whether sources were processed in parallel.
pub fn is_rainbow_connected(g: &Graph, c: &EdgeColoring) -> Result<RainbowOutcome, VerifyError> {
    check_coloring(g, c)?;
    let n = g.n();
    let per_source: Vec<SourceResult> = if n >= PARALLEL_THRESHOLD {
        (0..n)
            .into_par_iter()
            .map(|u| witnesses_from(g, c, u))
            .collect()
    } else {
        let mut acc = Vec::with_capacity(n);
        for u in 0..n {
            let r = witnesses_from(g, c, u);
            let failed = r.is_err();
            acc.push(r);
            if failed {
                break;
            }
        }
        acc
    };
    let mut witnesses = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for r in per_source {
        match r {
            Ok(ws) => witnesses.extend(ws),
            Err(pair) => return Ok(RainbowOutcome::Failing(pair)),
        }
    }
    Ok(RainbowOutcome::Connected(RainbowCertificate { witnesses }))
}

/// `true` iff every other vertex has a rainbow path from `source`. Runs on
/// the calling thread, so it suits many small checks.
pub fn reaches_all_from(g: &Graph, c: &EdgeColoring, source: usize) -> bool {
    search_dispatch(g, c, source, |_| true)
        .iter()
        .enumerate()
        .all(|(v, p)| v == source || p.is_some())
}

/// Convenience wrapper: `true` iff the coloring is rainbow connecting.
pub fn passes(g: &Graph, c: &EdgeColoring) -> bool {
    matches!(is_rainbow_connected(g, c), Ok(RainbowOutcome::Connected(_)))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateViolation {
    #[error("coloring is not total on the graph's edges")]
    ColoringMismatch,
    #[error("pair {0}-{1} has no witness")]
    MissingPair(usize, usize),
    #[error("witness for {u}-{v} does not run between its endpoints")]
    WrongEndpoints { u: usize, v: usize },
    #[error("witness for {u}-{v} uses non-edge {a}-{b}")]
    NotAnEdge {
        u: usize,
        v: usize,
        a: usize,
        b: usize,
    },
    #[error("witness for {u}-{v} revisits vertex {vertex}")]
    RepeatedVertex { u: usize, v: usize, vertex: usize },
    #[error("witness for {u}-{v} repeats color {color}")]
    RepeatedColor { u: usize, v: usize, color: usize },
}

/// Independently checks a certificate: every unordered pair covered, every
/// witness a simple path with pairwise distinct edge colors.
pub fn verify_certificate(
    g: &Graph,
    c: &EdgeColoring,
    cert: &RainbowCertificate,
) -> Result<(), CertificateViolation> {
    if c.colors().len() != g.m() {
        return Err(CertificateViolation::ColoringMismatch);
    }
    let n = g.n();
    let mut covered = vec![false; n * n];
    for w in &cert.witnesses {
        let (u, v) = (w.u, w.v);
        let ends_ok = w.path.len() >= 2
            && w.path.iter().all(|&x| x < n)
            && w.path.first() == Some(&u)
            && w.path.last() == Some(&v);
        if !ends_ok || u == v {
            return Err(CertificateViolation::WrongEndpoints { u, v });
        }
        let mut vertices = HashSet::new();
        for &x in &w.path {
            if !vertices.insert(x) {
                return Err(CertificateViolation::RepeatedVertex { u, v, vertex: x });
            }
        }
        let mut colors = HashSet::new();
        for p in w.path.windows(2) {
            let e = g
                .edge_id(p[0], p[1])
                .ok_or(CertificateViolation::NotAnEdge {
                    u,
                    v,
                    a: p[0],
                    b: p[1],
                })?;
            if !colors.insert(c.color(e)) {
                return Err(CertificateViolation::RepeatedColor {
                    u,
                    v,
                    color: c.color(e),
                });
            }
        }
        covered[u.min(v) * n + u.max(v)] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !covered[u * n + v] {
                return Err(CertificateViolation::MissingPair(u, v));
            }
        }
    }
    Ok(())
}
