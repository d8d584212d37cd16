//! Test corpora: named families, seeded random connected graphs, exhaustive
//! enumeration of small labeled graphs, and the degree-sum counterexample
//! family.

mod counterexample;

pub use counterexample::{
    counterexample_inequalities, gen_counterexample, ComponentSum, CounterexampleParams,
    FamilyFacts, InequalityReport, VertexRole,
};

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Consecutive disconnected samples tolerated by [`gen_random_connected`].
pub const MAX_REJECTIONS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    Precondition(String),
    #[error("no connected sample after {MAX_REJECTIONS} attempts (n={n}, p={p}); try a larger p")]
    TooManyRejections { n: usize, p: f64 },
    #[error("graph does not have the counterexample family shape: {0}")]
    Structure(String),
    #[error("generated graph violates family fact: {0}")]
    FactMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    Star,
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "complete_bipartite" | "complete-bipartite" => Family::CompleteBipartite,
            "star" => Family::Star,
            other => return Err(GenError::Precondition(format!("unknown family {other:?}"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete_bipartite",
            Family::Star => "star",
        };
        f.write_str(s)
    }
}

/// Standard graphs. `sizes` is `[n]` for every family except
/// complete bipartite, which takes `[a, b]`. A star on `n` vertices is
/// `K_{1,n-1}` with center 0.
pub fn gen_named(family: Family, sizes: &[usize]) -> Result<Graph, GenError> {
    let bad = |why: &str| Err(GenError::Precondition(format!("{family}: {why}")));
    let single = |min: usize| -> Result<usize, GenError> {
        match sizes {
            [n] if *n >= min => Ok(*n),
            [_] => Err(GenError::Precondition(format!(
                "{family}: needs at least {min} vertices"
            ))),
            _ => Err(GenError::Precondition(format!(
                "{family}: expects one size"
            ))),
        }
    };
    let g = match family {
        Family::Path => {
            let n = single(1)?;
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::Cycle => {
            let n = single(3)?;
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Complete => return Ok(Graph::complete(single(1)?)),
        Family::Star => {
            let n = single(1)?;
            Graph::from_edges(n, (1..n).map(|i| (0, i)))
        }
        Family::CompleteBipartite => {
            let [a, b] = sizes else {
                return bad("expects two part sizes");
            };
            let (a, b) = (*a, *b);
            if a == 0 || b == 0 {
                return bad("part sizes must be positive");
            }
            Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        }
    };
    Ok(g.expect("named families are simple"))
}

/// Erdős–Rényi sample conditioned on connectivity by rejection.
pub fn gen_random_connected(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::Precondition("n must be at least 1".into()));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(GenError::Precondition(format!("p = {p} not in (0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REJECTIONS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).expect("sampled edges are simple");
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GenError::TooManyRejections { n, p })
}

/// The seeded random corpus: `count` connected graphs with vertex counts
/// drawn from `n_min..=n_max`. Edge probabilities are drawn between the
/// connectivity threshold and dense, so both sparse and dense graphs appear.
pub fn random_corpus(
    count: usize,
    n_min: usize,
    n_max: usize,
    seed: u64,
) -> Result<Vec<Graph>, GenError> {
    if n_min == 0 || n_min > n_max {
        return Err(GenError::Precondition(format!(
            "vertex range {n_min}..={n_max} is empty or contains 0"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(n_min..=n_max);
            let threshold = (n as f64).ln().max(1.0) / n as f64;
            let p = (threshold * rng.gen_range(1.0..4.0)).clamp(0.05, 0.95);
            gen_random_connected(n, p, rng.gen())
        })
        .collect()
}

/// Every connected labeled graph on exactly `n` vertices, in increasing
/// order of the edge bitmask (bit `i` = `i`-th pair in lexicographic order).
pub fn connected_labeled_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "exhaustive enumeration is limited to n <= 7");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edges(n, edges).expect("subset of simple edges")
        })
        .filter(Graph::is_connected)
        .collect()
}

/// Connected labeled graphs on `1..=n_max` vertices.
pub fn connected_labeled_up_to(n_max: usize) -> Vec<Graph> {
    (1..=n_max).flat_map(connected_labeled_graphs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        let c5 = gen_named(Family::Cycle, &[5]).unwrap();
        assert_eq!((c5.n(), c5.m(), c5.min_degree()), (5, 5, 2));
        assert_eq!(
            gen_named(Family::Complete, &[4]).unwrap(),
            Graph::complete(4)
        );
        let star = gen_named(Family::Star, &[4]).unwrap();
        assert_eq!(star.edges(), &[(0, 1), (0, 2), (0, 3)]);
        let k23 = gen_named(Family::CompleteBipartite, &[2, 3]).unwrap();
        assert_eq!((k23.n(), k23.m()), (5, 6));
        assert_eq!(gen_named(Family::Path, &[4]).unwrap().diameter(), Ok(3));
    }

    #[test]
    fn named_errors() {
        assert!(gen_named(Family::Cycle, &[2]).is_err());
        assert!(gen_named(Family::Path, &[0]).is_err());
        assert!(gen_named(Family::CompleteBipartite, &[3]).is_err());
        assert!(gen_named(Family::CompleteBipartite, &[0, 2]).is_err());
        assert!("wheel".parse::<Family>().is_err());
        assert_eq!(
            "complete-bipartite".parse::<Family>(),
            Ok(Family::CompleteBipartite)
        );
    }

    #[test]
    fn random_examples() {
        assert_eq!(gen_random_connected(1, 0.3, 0).unwrap().n(), 1);
        assert_eq!(gen_random_connected(5, 1.0, 9).unwrap(), Graph::complete(5));
        let a = gen_random_connected(8, 0.4, 7).unwrap();
        let b = gen_random_connected(8, 0.4, 7).unwrap();
        assert!(a.is_connected());
        assert_eq!(a, b);
    }

    #[test]
    fn random_errors() {
        assert!(gen_random_connected(0, 0.5, 0).is_err());
        assert!(gen_random_connected(5, 0.0, 0).is_err());
        assert!(gen_random_connected(5, 1.5, 0).is_err());
        assert!(matches!(
            gen_random_connected(60, 0.001, 0),
            Err(GenError::TooManyRejections { .. })
        ));
    }

    #[test]
    fn labeled_counts() {
        // OEIS A001187: 1, 1, 4, 38, 728
        let counts: Vec<usize> = (1..=5).map(|n| connected_labeled_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = random_corpus(20, 4, 40, 3).unwrap();
        assert_eq!(a, random_corpus(20, 4, 40, 3).unwrap());
        assert!(a
            .iter()
            .all(|g| (4..=40).contains(&g.n()) && g.is_connected()));
    }
}
