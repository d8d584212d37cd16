//! The degree-sum counterexample family.
//!
//! `t` disjoint copies `H_1..H_t` of `K_{δ+4}`; for each copy two nonadjacent
//! attachment vertices `v_{i,1}, v_{i,2}`, each joined to `2t` vertices of
//! `H_i` and to every vertex of a clique `K = K_{δ-2t+1}`. Clique vertices
//! then have degree `δ`, attachment vertices `δ + 1`, copy vertices at least
//! `δ + 3`, and the minimum nonadjacent degree-sum is `2(δ + 1)`.
//!
//! Vertex layout: copy `i` occupies a block of `δ + 6` ids (its `δ + 4` copy
//! vertices, then `v_{i,1}`, then `v_{i,2}`); the clique comes last.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GenError;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleParams {
    pub delta: usize,
    pub t: usize,
    /// `None` attaches to the first `2t` copy vertices; `Some` draws the
    /// attachment sets independently per attachment vertex.
    pub seed: Option<u64>,
}

impl CounterexampleParams {
    pub fn new(delta: usize, t: usize) -> Self {
        CounterexampleParams {
            delta,
            t,
            seed: None,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let (d, t) = (self.delta, self.t);
        if d < 2 {
            return Err(GenError::Precondition(format!("δ = {d} violates δ >= 2")));
        }
        if t < 1 {
            return Err(GenError::Precondition("t = 0 violates t >= 1".into()));
        }
        if 2 * t > d {
            return Err(GenError::Precondition(format!(
                "t < (δ+1)/2 violated: t = {t}, δ = {d}"
            )));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.delta + 1 - 2 * self.t
    }

    pub fn n(&self) -> usize {
        self.t * (self.delta + 6) + self.k()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "role")]
pub enum VertexRole {
    Copy { copy: usize },
    Attachment { copy: usize, index: usize },
    Clique,
}

/// Structural facts, all recounted on the generated graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFacts {
    pub params: CounterexampleParams,
    pub n: usize,
    pub k: usize,
    pub sigma2: usize,
    /// `d_{G_i}(v_{i,1}) + d_{G_i}(v_{i,2})` inside each component of `G - K`.
    pub pair_degree_sum: usize,
    pub labels: Vec<VertexRole>,
}

impl FamilyFacts {
    pub fn clique(&self) -> Vec<usize> {
        self.with_role(|r| matches!(r, VertexRole::Clique))
    }

    pub fn attachments(&self, copy: usize) -> [usize; 2] {
        let found =
            self.with_role(|r| matches!(r, VertexRole::Attachment { copy: c, .. } if c == copy));
        [found[0], found[1]]
    }

    fn with_role(&self, pred: impl Fn(VertexRole) -> bool) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&v| pred(self.labels[v]))
            .collect()
    }
}

pub fn gen_counterexample(p: &CounterexampleParams) -> Result<(Graph, FamilyFacts), GenError> {
    p.validate()?;
    let (delta, t, k) = (p.delta, p.t, p.k());
    let copy_size = delta + 4;
    let block = copy_size + 2;
    let clique_start = t * block;
    let n = p.n();
    let mut rng = p.seed.map(ChaCha8Rng::seed_from_u64);

    let mut labels = Vec::with_capacity(n);
    let mut edges = Vec::new();
    for copy in 0..t {
        let base = copy * block;
        labels.extend((0..copy_size).map(|_| VertexRole::Copy { copy }));
        for x in base..base + copy_size {
            for y in x + 1..base + copy_size {
                edges.push((x, y));
            }
        }
        for index in 0..2 {
            let v = base + copy_size + index;
            labels.push(VertexRole::Attachment { copy, index });
            let chosen: Vec<usize> = match rng.as_mut() {
                Some(rng) => sample(rng, copy_size, 2 * t).into_vec(),
                None => (0..2 * t).collect(),
            };
            edges.extend(chosen.into_iter().map(|h| (v, base + h)));
            edges.extend((clique_start..clique_start + k).map(|c| (v, c)));
        }
    }
    labels.extend((0..k).map(|_| VertexRole::Clique));
    for x in clique_start..n {
        for y in x + 1..n {
            edges.push((x, y));
        }
    }
    let g = Graph::from_edges(n, edges).expect("family construction is simple");
    let facts = recount_facts(&g, p, labels)?;
    Ok((g, facts))
}

fn recount_facts(
    g: &Graph,
    p: &CounterexampleParams,
    labels: Vec<VertexRole>,
) -> Result<FamilyFacts, GenError> {
    let delta = p.delta;
    let mismatch = |what: String| Err(GenError::FactMismatch(what));
    if !g.is_connected() {
        return mismatch("graph is disconnected".into());
    }
    for (v, role) in labels.iter().enumerate() {
        let d = g.degree(v);
        let ok = match role {
            VertexRole::Clique => d == delta,
            VertexRole::Attachment { .. } => d == delta + 1,
            VertexRole::Copy { .. } => d >= delta + 3,
        };
        if !ok {
            return mismatch(format!("vertex {v} ({role:?}) has degree {d}"));
        }
    }
    let stats = g.degree_stats();
    if g.min_degree() != delta {
        return mismatch(format!("minimum degree {} != δ", g.min_degree()));
    }
    let sigma2 = stats.sigma2.unwrap_or(0);
    if sigma2 != 2 * (delta + 1) {
        return mismatch(format!("σ₂ = {sigma2} != 2(δ+1)"));
    }
    let k = labels.iter().filter(|r| **r == VertexRole::Clique).count();
    let facts = FamilyFacts {
        params: *p,
        n: g.n(),
        k,
        sigma2,
        pair_degree_sum: 0,
        labels,
    };
    let report = counterexample_inequalities(g, &facts)?;
    let sums: Vec<usize> = report
        .components
        .iter()
        .map(|c| c.pair_degree_sum)
        .collect();
    if sums.iter().any(|&s| s != 4 * p.t) {
        return mismatch(format!("attachment pair degree-sums {sums:?} != 4t"));
    }
    Ok(FamilyFacts {
        pair_degree_sum: 4 * p.t,
        ..facts
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSum {
    pub copy: usize,
    pub n: usize,
    /// `d_{G_i}(v_{i,1}) + d_{G_i}(v_{i,2})`.
    pub pair_degree_sum: usize,
    /// σ₂ of the component, `s_i`.
    pub sigma2: usize,
}

/// Degree-sum inequalities for the components of `G - K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub sigma2: usize,
    pub k: usize,
    pub components: Vec<ComponentSum>,
    /// `σ₂(G) - 2(k - 1)`, the claimed lower bound on every `s_i`.
    pub refuted_rhs: i64,
    /// `σ₂(G) - 2k`, the bound that does hold.
    pub corrected_rhs: i64,
    /// Some `s_i` falls below `refuted_rhs`.
    pub refuted_claim_violated: bool,
    /// Every `s_i >= corrected_rhs`.
    pub corrected_claim_holds: bool,
    /// Every `s_i == corrected_rhs`.
    pub corrected_claim_tight: bool,
}

/// Removes the clique, recomputes each component's σ₂ directly and compares
/// it with both bounds.
pub fn counterexample_inequalities(
    g: &Graph,
    facts: &FamilyFacts,
) -> Result<InequalityReport, GenError> {
    let shape = |why: String| GenError::Structure(why);
    if facts.labels.len() != g.n() {
        return Err(shape(format!(
            "{} labels for {} vertices",
            facts.labels.len(),
            g.n()
        )));
    }
    let clique = facts.clique();
    let k = clique.len();
    let sigma2 = g
        .degree_stats()
        .sigma2
        .ok_or_else(|| shape("graph is complete".into()))?;
    let (rest, back) = g
        .delete_vertices(&clique)
        .map_err(|e| shape(e.to_string()))?;
    let parts = rest.components();
    if parts.len() != facts.params.t {
        return Err(shape(format!(
            "{} components after removing K, expected {}",
            parts.len(),
            facts.params.t
        )));
    }
    let mut components = Vec::with_capacity(parts.len());
    for block in &parts.blocks {
        let vertices: Vec<usize> = block.iter().map(|&v| back[v]).collect();
        let attach: Vec<usize> = vertices
            .iter()
            .copied()
            .filter(|&v| matches!(facts.labels[v], VertexRole::Attachment { .. }))
            .collect();
        let copies: Vec<usize> = vertices
            .iter()
            .filter_map(|&v| match facts.labels[v] {
                VertexRole::Copy { copy } | VertexRole::Attachment { copy, .. } => Some(copy),
                VertexRole::Clique => None,
            })
            .collect();
        let copy = copies[0];
        if attach.len() != 2 || copies.iter().any(|&c| c != copy) {
            return Err(shape(format!(
                "component of {} does not hold exactly one copy and its attachment pair",
                vertices[0]
            )));
        }
        let sub = g.induced(&vertices);
        let local = |v: usize| vertices.binary_search(&v).expect("member of component");
        let (a, b) = (local(attach[0]), local(attach[1]));
        if sub.has_edge(a, b) {
            return Err(shape(format!("attachment pair of copy {copy} is adjacent")));
        }
        components.push(ComponentSum {
            copy,
            n: vertices.len(),
            pair_degree_sum: sub.degree(a) + sub.degree(b),
            sigma2: sub
                .degree_stats()
                .sigma2
                .ok_or_else(|| shape(format!("component of copy {copy} is complete")))?,
        });
    }
    let refuted_rhs = sigma2 as i64 - 2 * (k as i64 - 1);
    let corrected_rhs = sigma2 as i64 - 2 * k as i64;
    let s = |c: &ComponentSum| c.sigma2 as i64;
    Ok(InequalityReport {
        sigma2,
        k,
        refuted_claim_violated: components.iter().any(|c| s(c) < refuted_rhs),
        corrected_claim_holds: components.iter().all(|c| s(c) >= corrected_rhs),
        corrected_claim_tight: components.iter().all(|c| s(c) == corrected_rhs),
        components,
        refuted_rhs,
        corrected_rhs,
    })
}
