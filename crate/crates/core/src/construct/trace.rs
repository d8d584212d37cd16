//! Recorded recursion tree of the constructive coloring. Vertex ids in a
//! trace always refer to the top-level input graph; a contracted clique is
//! named by its smallest member.

use serde::{Deserialize, Serialize};

use crate::verify::FailingPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Case {
    Base,
    /// Every clique vertex sees the first component.
    A,
    /// Some component has minimum degree at least `δ - k + 2`; the clique
    /// edges get a fresh color.
    B,
    /// Every component has minimum degree exactly `δ - k + 1`; the clique
    /// edges reuse cross colors.
    C,
    /// Each component attaches to a single clique vertex; the clique is
    /// contracted.
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub vertices: Vec<usize>,
    pub n: usize,
    pub delta: usize,
    /// Clique vertices with a neighbor in this component.
    pub attachments: Vec<usize>,
    /// `n_i - δ_i`.
    pub measure: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub clique: Vec<usize>,
    pub k: usize,
    pub parent_delta: usize,
    /// Ordered so the first component has the most attachments; ties go to
    /// the component with the smallest vertex.
    pub components: Vec<ComponentRecord>,
    pub k1: usize,
    pub t: usize,
    pub case: Case,
}

/// How the edges inside the clique were colored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CliqueColoring {
    /// Single-vertex clique.
    NoEdges,
    /// All clique edges share the cross color of the first component.
    FirstCross { color: usize },
    /// All clique edges get a color of their own.
    Fresh { color: usize },
    /// Clique edges at `missing` (the clique vertex the first component does
    /// not see) take the cross color of `partner`; the rest take the first
    /// component's cross color.
    Split {
        base_color: usize,
        missing: usize,
        partner: usize,
        partner_color: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionRecord {
    pub merged_vertex: usize,
    pub contracted_n: usize,
    /// Minimum degree of the contracted graph.
    pub delta_star: usize,
    /// `n - k + 1 - δ*`.
    pub measure: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Verification {
    Pass,
    Fail { u: usize, v: usize },
    Skipped,
}

impl Verification {
    pub fn from_failing(pair: Option<FailingPair>, labels: &[usize]) -> Self {
        match pair {
            None => Verification::Pass,
            Some(p) => Verification::Fail {
                u: labels[p.u],
                v: labels[p.v],
            },
        }
    }
}

/// Per-node assertions of the induction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeChecks {
    /// `colors_used <= n - δ`.
    pub budget_ok: bool,
    /// Every child has strictly smaller `n - δ`.
    pub measure_ok: bool,
    /// Case D only: `δ* >= δ`.
    pub delta_star_ok: bool,
    /// The chosen clique is valid: min-degree vertices, pairwise adjacent,
    /// maximal, `1 <= k <= δ`.
    pub clique_ok: bool,
}

impl NodeChecks {
    pub fn all_ok(&self) -> bool {
        self.budget_ok && self.measure_ok && self.delta_star_ok && self.clique_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditTrace {
    pub vertices: Vec<usize>,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    /// `n - δ`, the color budget at this node.
    pub budget: usize,
    pub case: Case,
    pub colors_used: usize,
    /// Colors introduced at this node on top of the children's palettes.
    pub fresh_colors: usize,
    pub record: Option<DecompositionRecord>,
    pub clique_coloring: Option<CliqueColoring>,
    pub contraction: Option<ContractionRecord>,
    pub children: Vec<AuditTrace>,
    pub checks: NodeChecks,
    pub verification: Verification,
}

impl AuditTrace {
    /// Depth-first iterator over all nodes, root first.
    pub fn nodes(&self) -> Vec<&AuditTrace> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let node = out[i];
            out.extend(node.children.iter());
            i += 1;
        }
        out
    }

    /// Human-readable reasons this trace does not certify the bound, empty
    /// when every node is clean.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for node in self.nodes() {
            let at = node.vertices.first().copied().unwrap_or(0);
            let c = &node.checks;
            if !c.budget_ok {
                out.push(format!(
                    "node@{at} ({:?}): {} colors exceed budget {}",
                    node.case, node.colors_used, node.budget
                ));
            }
            if !c.measure_ok {
                out.push(format!(
                    "node@{at} ({:?}): child measure not smaller",
                    node.case
                ));
            }
            if !c.delta_star_ok {
                out.push(format!("node@{at}: contracted minimum degree below δ"));
            }
            if !c.clique_ok {
                out.push(format!("node@{at}: invalid minimum-degree clique"));
            }
            if let Verification::Fail { u, v } = node.verification {
                out.push(format!(
                    "node@{at} ({:?}): no rainbow path between {u} and {v}",
                    node.case
                ));
            }
        }
        out
    }

    pub fn count_cases(&self, case: Case) -> usize {
        self.nodes().iter().filter(|n| n.case == case).count()
    }
}
