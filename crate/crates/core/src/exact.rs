//! Exact rainbow connection number by iterative deepening over the number of
//! colors.
//!
//! Each level enumerates canonical (restricted-growth) colorings in fixed
//! lexicographic edge order: edge `i` may use any color already used by an
//! earlier edge or the next unused one. This visits every coloring exactly
//! once up to renaming of colors. A level `q` only enumerates colorings with
//! exactly `min(q, m)` colors: splitting a color class of a rainbow
//! connected coloring keeps it rainbow connected, so nothing is lost.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::verify::{self, EdgeColoring};

/// Caps on the total number of shortest paths tracked by geodesic pruning.
const MAX_GEODESIC_PATHS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("number of colors must be at least 1")]
    ZeroColors,
}

impl From<GraphError> for ExactError {
    fn from(_: GraphError) -> Self {
        ExactError::Disconnected
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    #[serde(with = "opt_millis")]
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

mod opt_millis {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        d.map(|d| d.as_millis() as u64).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        Ok(Option::<u64>::deserialize(d)?.map(Duration::from_millis))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactOptions {
    pub budget: Budget,
    /// Reject partial assignments in which some pair at distance `q` has
    /// every geodesic already carrying a repeated color.
    pub geodesic_pruning: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            budget: Budget::unlimited(),
            geodesic_pruning: true,
        }
    }
}

impl ExactOptions {
    pub fn with_budget(budget: Budget) -> Self {
        ExactOptions {
            budget,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Sat(EdgeColoring),
    Unsat,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactStatus {
    Exact,
    /// Budget ran out after at least one level was refuted.
    LowerBoundOnly,
    /// Budget ran out before any level above the static bound was refuted.
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Color assignments tried, summed over all levels.
    pub nodes: u64,
    /// Full assignments handed to the verifier.
    pub leaves: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub status: ExactStatus,
    /// rc(G) when exact, otherwise the best proven lower bound.
    pub value: usize,
    pub witness: Option<EdgeColoring>,
    /// Largest `q` for which the search proved no coloring exists.
    pub refuted_below: Option<usize>,
    pub stats: SearchStats,
}

/// `max(diameter, 1)`, raised to 2 for non-complete graphs. Graphs with at
/// most one vertex need no colors.
pub fn rc_lower_bound(g: &Graph) -> Result<usize, ExactError> {
    let diam = g.diameter()?;
    if g.n() <= 1 {
        return Ok(0);
    }
    let lb = diam.max(1);
    Ok(if g.is_complete() { lb } else { lb.max(2) })
}

/// Decides whether some coloring with at most `q` colors is rainbow
/// connecting.
pub fn rc_decision(g: &Graph, q: usize, opts: &ExactOptions) -> Result<Decision, ExactError> {
    let mut solver = Solver::new(g, opts)?;
    solver.decide(q)
}

/// Smallest number of colors making `g` rainbow connected.
pub fn rc_exact(g: &Graph, opts: &ExactOptions) -> Result<ExactResult, ExactError> {
    let lb = rc_lower_bound(g)?;
    let mut solver = Solver::new(g, opts)?;
    if g.n() <= 1 {
        return Ok(ExactResult {
            status: ExactStatus::Exact,
            value: 0,
            witness: Some(EdgeColoring::monochromatic(g)),
            refuted_below: None,
            stats: solver.stats(),
        });
    }
    let mut refuted_below = None;
    // m colors, all distinct, always suffice
    for q in lb..=g.m() {
        match solver.decide(q)? {
            Decision::Sat(witness) => {
                debug_assert_eq!(witness.distinct(), q);
                return Ok(ExactResult {
                    status: ExactStatus::Exact,
                    value: q,
                    witness: Some(witness),
                    refuted_below,
                    stats: solver.stats(),
                });
            }
            Decision::Unsat => refuted_below = Some(q),
            Decision::BudgetExhausted => {
                return Ok(ExactResult {
                    status: if refuted_below.is_some() {
                        ExactStatus::LowerBoundOnly
                    } else {
                        ExactStatus::BudgetExhausted
                    },
                    value: q,
                    witness: None,
                    refuted_below,
                    stats: solver.stats(),
                });
            }
        }
    }
    unreachable!("a connected graph is rainbow connected with m distinct colors")
}

enum Flow {
    Found,
    Exhausted,
    OutOfBudget,
}

/// Shortest paths (as edge lists) for every pair at distance exactly `q`.
struct Geodesics {
    /// `paths[p]` = (pair index, edge ids).
    paths: Vec<(usize, Vec<usize>)>,
    pair_total: Vec<usize>,
    /// `by_edge[e]` = paths containing edge `e`.
    by_edge: Vec<Vec<usize>>,
}

impl Geodesics {
    fn build(g: &Graph, q: usize) -> Option<Self> {
        let mut paths = Vec::new();
        let mut pair_total = Vec::new();
        for s in 0..g.n() {
            let dist: Vec<usize> = g
                .bfs_distances(s)
                .into_iter()
                .map(|d| d.unwrap_or(usize::MAX))
                .collect();
            for t in s + 1..g.n() {
                if dist[t] != q {
                    continue;
                }
                let pair = pair_total.len();
                let before = paths.len();
                // walk back from t along strictly decreasing distance
                let mut stack = vec![(t, Vec::new())];
                while let Some((v, edges)) = stack.pop() {
                    if v == s {
                        paths.push((pair, edges));
                        if paths.len() > MAX_GEODESIC_PATHS {
                            return None;
                        }
                        continue;
                    }
                    for &(w, e) in g.incident(v).iter().rev() {
                        if dist[w] + 1 == dist[v] {
                            let mut next = edges.clone();
                            next.push(e);
                            stack.push((w, next));
                        }
                    }
                }
                pair_total.push(paths.len() - before);
            }
        }
        let mut by_edge = vec![Vec::new(); g.m()];
        for (p, (_, edges)) in paths.iter().enumerate() {
            for &e in edges {
                by_edge[e].push(p);
            }
        }
        Some(Geodesics {
            paths,
            pair_total,
            by_edge,
        })
    }
}

struct Solver<'a> {
    g: &'a Graph,
    opts: ExactOptions,
    started: Instant,
    nodes: u64,
    leaves: u64,
    /// Source that refuted the previous leaf; tried first at the next one.
    last_failing: usize,
}

struct Level<'s> {
    q: usize,
    colors: Vec<usize>,
    geo: Option<&'s Geodesics>,
    path_dead: Vec<bool>,
    pair_dead: Vec<usize>,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Graph, opts: &ExactOptions) -> Result<Self, ExactError> {
        if !g.is_connected() {
            return Err(ExactError::Disconnected);
        }
        Ok(Solver {
            g,
            opts: *opts,
            started: Instant::now(),
            nodes: 0,
            leaves: 0,
            last_failing: 0,
        })
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            leaves: self.leaves,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }

    fn out_of_budget(&self) -> bool {
        let b = &self.opts.budget;
        if b.max_nodes.is_some_and(|cap| self.nodes > cap) {
            return true;
        }
        // clock reads are throttled
        self.nodes.is_multiple_of(1024)
            && b.max_time.is_some_and(|cap| self.started.elapsed() > cap)
    }

    fn decide(&mut self, q: usize) -> Result<Decision, ExactError> {
        if q == 0 {
            return Err(ExactError::ZeroColors);
        }
        let m = self.g.m();
        if m == 0 {
            return Ok(Decision::Sat(EdgeColoring::monochromatic(self.g)));
        }
        let q = q.min(m);
        let geodesics = if self.opts.geodesic_pruning {
            Geodesics::build(self.g, q)
        } else {
            None
        };
        let mut level = Level {
            q,
            colors: vec![0; m],
            path_dead: vec![false; geodesics.as_ref().map_or(0, |g| g.paths.len())],
            pair_dead: vec![0; geodesics.as_ref().map_or(0, |g| g.pair_total.len())],
            geo: geodesics.as_ref(),
        };
        Ok(match self.dfs(&mut level, 0, 0) {
            Flow::Found => {
                Decision::Sat(EdgeColoring::new(self.g, level.colors).expect("coloring is total"))
            }
            Flow::Exhausted => Decision::Unsat,
            Flow::OutOfBudget => Decision::BudgetExhausted,
        })
    }

    fn dfs(&mut self, level: &mut Level<'_>, edge: usize, used: usize) -> Flow {
        let m = self.g.m();
        if edge == m {
            self.leaves += 1;
            let c = EdgeColoring::new(self.g, level.colors.clone()).expect("coloring is total");
            let n = self.g.n();
            let hint = self.last_failing;
            let refuted = std::iter::once(hint)
                .chain((0..n).filter(|&u| u != hint))
                .find(|&u| !verify::reaches_all_from(self.g, &c, u));
            return match refuted {
                Some(u) => {
                    self.last_failing = u;
                    Flow::Exhausted
                }
                None => Flow::Found,
            };
        }
        // every remaining color must still appear
        if used + (m - edge) < level.q {
            return Flow::Exhausted;
        }
        let top = (used + 1).min(level.q);
        for color in 0..top {
            self.nodes += 1;
            if self.out_of_budget() {
                return Flow::OutOfBudget;
            }
            level.colors[edge] = color;
            let (killed, feasible) = Self::mark_dead(level, edge);
            let flow = if feasible {
                self.dfs(level, edge + 1, used.max(color + 1))
            } else {
                Flow::Exhausted
            };
            Self::unmark(level, &killed);
            match flow {
                Flow::Exhausted => {}
                other => return other,
            }
        }
        Flow::Exhausted
    }

    /// Marks geodesics through `edge` that now repeat a color. Returns the
    /// newly dead paths and whether every pair still has a live geodesic.
    fn mark_dead(level: &mut Level<'_>, edge: usize) -> (Vec<usize>, bool) {
        let Some(geo) = level.geo else {
            return (Vec::new(), true);
        };
        let mut killed = Vec::new();
        let mut feasible = true;
        let color = level.colors[edge];
        for &p in &geo.by_edge[edge] {
            if level.path_dead[p] {
                continue;
            }
            let (pair, ref edges) = geo.paths[p];
            let clash = edges
                .iter()
                .any(|&f| f != edge && f < edge && level.colors[f] == color);
            if clash {
                level.path_dead[p] = true;
                level.pair_dead[pair] += 1;
                killed.push(p);
                if level.pair_dead[pair] == geo.pair_total[pair] {
                    feasible = false;
                }
            }
        }
        (killed, feasible)
    }

    fn unmark(level: &mut Level<'_>, killed: &[usize]) {
        if let Some(geo) = level.geo {
            for &p in killed {
                level.path_dead[p] = false;
                level.pair_dead[geo.paths[p].0] -= 1;
            }
        }
    }
}
