//! Constructive coloring with at most `n - δ` colors, following the
//! induction on `n - δ`.
//!
//! At each level a maximal clique `K` of minimum-degree vertices is removed.
//! The components `G_1..G_t` of what remains are colored recursively with
//! disjoint palettes, and every component gets one fresh color for its edges
//! to `K`. Components are ordered so that `G_1` sees the most clique vertices
//! (`K_1`). Four cases decide how the clique edges are colored:
//!
//! * A, `K_1 = K`: clique edges reuse the cross color of `G_1`.
//! * B, some `δ_i >= δ - k + 2`: clique edges get one more fresh color.
//! * C, every `δ_i = δ - k + 1` with `|K_1| > 1`: clique edges reuse cross
//!   colors (see [`CaseCPolicy`]).
//! * D, `|K_1| = 1`: `K` is contracted to a single vertex instead, the
//!   contracted graph is colored recursively and the clique edges get one
//!   fresh color.
//!
//! Every node of the recursion is recorded in an [`AuditTrace`] together with
//! the checks the induction relies on, and the final coloring is handed to the
//! rainbow verifier.

mod trace;

pub use trace::{
    AuditTrace, Case, CliqueColoring, ComponentRecord, ContractionRecord, DecompositionRecord,
    NodeChecks, Verification,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{to_graph6, Graph};
use crate::verify::{self, EdgeColoring, FailingPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is complete; no decomposition is needed")]
    CompleteGraph,
    #[error("invalid minimum-degree clique: {0}")]
    InvalidClique(String),
}

/// Which used color the clique edges take in case C.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseCPolicy {
    /// Clique edges at the vertex `G_1` does not see take the cross color of
    /// a component that does see it; all other clique edges take `G_1`'s
    /// cross color.
    #[default]
    Split,
    /// Every clique edge takes `G_1`'s cross color. This leaves the vertex
    /// `G_1` does not see unreachable from `G_1` by a rainbow path and is kept
    /// to demonstrate that failure.
    FirstCross,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructOptions {
    pub case_c: CaseCPolicy,
    /// Run the verifier on every recursive subproblem, not only the root.
    pub verify_subproblems: bool,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            case_c: CaseCPolicy::Split,
            verify_subproblems: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub coloring: EdgeColoring,
    pub trace: AuditTrace,
}

impl Construction {
    pub fn colors_used(&self) -> usize {
        self.trace.colors_used
    }
}

/// Greedy maximal clique over minimum-degree vertices in ascending id order.
pub fn min_degree_clique(g: &Graph) -> Result<Vec<usize>, ConstructError> {
    if g.n() == 0 {
        return Err(ConstructError::EmptyGraph);
    }
    if g.is_complete() {
        return Err(ConstructError::CompleteGraph);
    }
    let delta = g.min_degree();
    let mut clique: Vec<usize> = Vec::new();
    for v in (0..g.n()).filter(|&v| g.degree(v) == delta) {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    Ok(clique)
}

fn check_clique(g: &Graph, clique: &[usize]) -> Result<(), String> {
    let delta = g.min_degree();
    if clique.is_empty() {
        return Err("empty".into());
    }
    if let Some(&v) = clique.iter().find(|&&v| v >= g.n()) {
        return Err(format!("vertex {v} out of range"));
    }
    let mut sorted = clique.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != clique.len() {
        return Err("repeated vertex".into());
    }
    if let Some(&v) = clique.iter().find(|&&v| g.degree(v) != delta) {
        return Err(format!(
            "vertex {v} has degree {} != δ = {delta}",
            g.degree(v)
        ));
    }
    if !g.is_clique(clique) {
        return Err("not pairwise adjacent".into());
    }
    let extendable = (0..g.n()).find(|&v| {
        g.degree(v) == delta
            && sorted.binary_search(&v).is_err()
            && clique.iter().all(|&u| g.has_edge(u, v))
    });
    if let Some(v) = extendable {
        return Err(format!("not maximal: vertex {v} extends it"));
    }
    if clique.len() > delta {
        return Err(format!("k = {} exceeds δ = {delta}", clique.len()));
    }
    Ok(())
}

/// Splits `g - K` into components and selects the case. Vertex ids in the
/// record are those of `g`.
pub fn decompose(g: &Graph, clique: &[usize]) -> Result<DecompositionRecord, ConstructError> {
    if g.n() == 0 {
        return Err(ConstructError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    if g.is_complete() {
        return Err(ConstructError::CompleteGraph);
    }
    check_clique(g, clique).map_err(ConstructError::InvalidClique)?;
    Ok(decompose_unchecked(g, clique))
}

fn decompose_unchecked(g: &Graph, clique: &[usize]) -> DecompositionRecord {
    let delta = g.min_degree();
    let k = clique.len();
    let mut clique: Vec<usize> = clique.to_vec();
    clique.sort_unstable();
    let (rest, back) = g
        .delete_vertices(&clique)
        .expect("clique vertices are in range");
    let mut components: Vec<ComponentRecord> = rest
        .components()
        .blocks
        .into_iter()
        .map(|block| {
            let vertices: Vec<usize> = block.into_iter().map(|v| back[v]).collect();
            let delta_i = g.induced(&vertices).min_degree();
            let attachments: Vec<usize> = clique
                .iter()
                .copied()
                .filter(|&u| g.neighbors(u).any(|w| vertices.binary_search(&w).is_ok()))
                .collect();
            ComponentRecord {
                n: vertices.len(),
                delta: delta_i,
                measure: vertices.len() - delta_i,
                vertices,
                attachments,
            }
        })
        .collect();
    components.sort_by(|a, b| {
        b.attachments
            .len()
            .cmp(&a.attachments.len())
            .then(a.vertices[0].cmp(&b.vertices[0]))
    });
    let k1 = components.first().map_or(0, |c| c.attachments.len());
    let case = if k1 == k {
        Case::A
    } else if k1 > 1 && components.iter().any(|c| c.delta + k >= delta + 2) {
        Case::B
    } else if k1 > 1 {
        Case::C
    } else {
        Case::D
    };
    DecompositionRecord {
        t: components.len(),
        clique,
        k,
        parent_delta: delta,
        components,
        k1,
        case,
    }
}

fn relabel_record(record: &DecompositionRecord, labels: &[usize]) -> DecompositionRecord {
    let map = |vs: &[usize]| vs.iter().map(|&v| labels[v]).collect::<Vec<_>>();
    DecompositionRecord {
        clique: map(&record.clique),
        components: record
            .components
            .iter()
            .map(|c| ComponentRecord {
                vertices: map(&c.vertices),
                attachments: map(&c.attachments),
                ..c.clone()
            })
            .collect(),
        ..record.clone()
    }
}

struct Builder {
    opts: ConstructOptions,
}

impl Builder {
    fn verify(&self, g: &Graph, colors: &[usize], labels: &[usize], root: bool) -> Verification {
        if !root && !self.opts.verify_subproblems {
            return Verification::Skipped;
        }
        let c = EdgeColoring::new(g, colors.to_vec()).expect("coloring is total");
        let outcome = verify::is_rainbow_connected(g, &c).expect("coloring matches graph");
        Verification::from_failing(outcome.failing_pair(), labels)
    }

    fn build(&self, g: &Graph, labels: &[usize], root: bool) -> (Vec<usize>, AuditTrace) {
        let n = g.n();
        let delta = g.min_degree();
        let budget = n - delta;
        let ok = NodeChecks {
            budget_ok: true,
            measure_ok: true,
            delta_star_ok: true,
            clique_ok: true,
        };
        if g.is_complete() {
            let colors = vec![0; g.m()];
            let used = usize::from(g.m() > 0);
            let trace = AuditTrace {
                vertices: labels.to_vec(),
                n,
                m: g.m(),
                delta,
                budget,
                case: Case::Base,
                colors_used: used,
                fresh_colors: used,
                record: None,
                clique_coloring: None,
                contraction: None,
                children: Vec::new(),
                checks: NodeChecks {
                    budget_ok: used <= budget,
                    ..ok
                },
                verification: self.verify(g, &colors, labels, root),
            };
            return (colors, trace);
        }

        let clique = min_degree_clique(g).expect("non-complete graph with vertices");
        let clique_ok = check_clique(g, &clique).is_ok();
        let record = decompose_unchecked(g, &clique);
        let (colors, children, clique_coloring, contraction, fresh, measure_ok, delta_star_ok) =
            if record.case == Case::D {
                self.contract_case(g, labels, &record)
            } else {
                self.component_case(g, labels, &record)
            };
        let colors_used = colors.iter().max().map_or(0, |&c| c + 1);
        let trace = AuditTrace {
            vertices: labels.to_vec(),
            n,
            m: g.m(),
            delta,
            budget,
            case: record.case,
            colors_used,
            fresh_colors: fresh,
            record: Some(relabel_record(&record, labels)),
            clique_coloring: Some(clique_coloring),
            contraction,
            children,
            checks: NodeChecks {
                budget_ok: colors_used <= budget,
                measure_ok,
                delta_star_ok,
                clique_ok,
            },
            verification: self.verify(g, &colors, labels, root),
        };
        (colors, trace)
    }

    #[allow(clippy::type_complexity)]
    fn component_case(
        &self,
        g: &Graph,
        labels: &[usize],
        record: &DecompositionRecord,
    ) -> (
        Vec<usize>,
        Vec<AuditTrace>,
        CliqueColoring,
        Option<ContractionRecord>,
        usize,
        bool,
        bool,
    ) {
        let budget = g.n() - g.min_degree();
        const IN_CLIQUE: usize = usize::MAX;
        let mut part = vec![IN_CLIQUE; g.n()];
        let mut colors = vec![0; g.m()];
        let mut children = Vec::with_capacity(record.t);
        let mut offset = 0;
        let mut measure_ok = true;

        for (i, comp) in record.components.iter().enumerate() {
            for &v in &comp.vertices {
                part[v] = i;
            }
            let sub = g.induced(&comp.vertices);
            let sub_labels: Vec<usize> = comp.vertices.iter().map(|&v| labels[v]).collect();
            let (sub_colors, sub_trace) = self.build(&sub, &sub_labels, false);
            measure_ok &= comp.measure < budget;
            for (e, &(a, b)) in sub.edges().iter().enumerate() {
                let id = g
                    .edge_id(comp.vertices[a], comp.vertices[b])
                    .expect("induced edge exists in parent");
                colors[id] = sub_colors[e] + offset;
            }
            offset += sub_trace.colors_used;
            children.push(sub_trace);
        }

        let cross = |i: usize| offset + i;
        let k_color_of_first = cross(0);
        let clique_coloring = match record.case {
            _ if record.k == 1 => CliqueColoring::NoEdges,
            Case::A => CliqueColoring::FirstCross {
                color: k_color_of_first,
            },
            Case::B => CliqueColoring::Fresh {
                color: offset + record.t,
            },
            Case::C => self.case_c_coloring(record, k_color_of_first, cross),
            Case::Base | Case::D => unreachable!("handled elsewhere"),
        };
        let fresh = record.t + usize::from(matches!(clique_coloring, CliqueColoring::Fresh { .. }));

        for (id, &(u, w)) in g.edges().iter().enumerate() {
            colors[id] = match (part[u], part[w]) {
                (IN_CLIQUE, IN_CLIQUE) => match clique_coloring {
                    CliqueColoring::NoEdges => unreachable!("k = 1 has no clique edges"),
                    CliqueColoring::FirstCross { color } | CliqueColoring::Fresh { color } => color,
                    CliqueColoring::Split {
                        base_color,
                        missing,
                        partner_color,
                        ..
                    } => {
                        if u == missing || w == missing {
                            partner_color
                        } else {
                            base_color
                        }
                    }
                },
                (IN_CLIQUE, i) | (i, IN_CLIQUE) => cross(i),
                _ => colors[id],
            };
        }

        // `missing` was kept in local ids for the edge loop above
        let clique_coloring = match clique_coloring {
            CliqueColoring::Split {
                base_color,
                missing,
                partner,
                partner_color,
            } => CliqueColoring::Split {
                base_color,
                missing: labels[missing],
                partner,
                partner_color,
            },
            other => other,
        };
        (
            colors,
            children,
            clique_coloring,
            None,
            fresh,
            measure_ok,
            true,
        )
    }

    fn case_c_coloring(
        &self,
        record: &DecompositionRecord,
        first: usize,
        cross: impl Fn(usize) -> usize,
    ) -> CliqueColoring {
        let fallback = CliqueColoring::FirstCross { color: first };
        if self.opts.case_c == CaseCPolicy::FirstCross {
            return fallback;
        }
        let seen = &record.components[0].attachments;
        let Some(&missing) = record.clique.iter().find(|v| !seen.contains(v)) else {
            return fallback;
        };
        let partner = record
            .components
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| c.attachments.contains(&missing))
            .map(|(j, _)| j);
        match partner {
            Some(partner) => CliqueColoring::Split {
                base_color: first,
                missing,
                partner,
                partner_color: cross(partner),
            },
            None => fallback,
        }
    }

    #[allow(clippy::type_complexity)]
    fn contract_case(
        &self,
        g: &Graph,
        labels: &[usize],
        record: &DecompositionRecord,
    ) -> (
        Vec<usize>,
        Vec<AuditTrace>,
        CliqueColoring,
        Option<ContractionRecord>,
        usize,
        bool,
        bool,
    ) {
        let delta = g.min_degree();
        let budget = g.n() - delta;
        let contracted = g
            .contract_set(&record.clique)
            .expect("a clique is connected");
        let star = &contracted.graph;
        let mut star_labels = vec![usize::MAX; star.n()];
        for v in 0..g.n() {
            let slot = &mut star_labels[contracted.origin_map[v]];
            if *slot == usize::MAX {
                *slot = labels[v];
            }
        }
        let (star_colors, star_trace) = self.build(star, &star_labels, false);
        let fresh = star_trace.colors_used;
        let in_clique = |v: usize| record.clique.binary_search(&v).is_ok();
        let colors: Vec<usize> = g
            .edges()
            .iter()
            .map(|&(u, w)| {
                if in_clique(u) && in_clique(w) {
                    fresh
                } else {
                    let (a, b) = (contracted.origin_map[u], contracted.origin_map[w]);
                    star_colors[star.edge_id(a, b).expect("edge survives contraction")]
                }
            })
            .collect();
        let delta_star = star.min_degree();
        let measure = star.n() - delta_star;
        let info = ContractionRecord {
            merged_vertex: star_labels[contracted.merged_vertex],
            contracted_n: star.n(),
            delta_star,
            measure,
        };
        (
            colors,
            vec![star_trace],
            CliqueColoring::Fresh { color: fresh },
            Some(info),
            1,
            measure < budget,
            delta_star >= delta,
        )
    }
}

/// Colors `g` with at most `n - δ` colors and records the recursion.
pub fn construct_coloring(g: &Graph) -> Result<Construction, ConstructError> {
    construct_coloring_with(g, &ConstructOptions::default())
}

pub fn construct_coloring_with(
    g: &Graph,
    opts: &ConstructOptions,
) -> Result<Construction, ConstructError> {
    if g.n() == 0 {
        return Err(ConstructError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    let labels: Vec<usize> = (0..g.n()).collect();
    let (colors, trace) = Builder { opts: *opts }.build(g, &labels, true);
    let coloring = EdgeColoring::new(g, colors).expect("coloring is total");
    Ok(Construction { coloring, trace })
}

/// A construction run that did not certify the bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionFinding {
    pub graph6: String,
    pub colors_used: usize,
    pub budget: usize,
    pub failing_pair: Option<FailingPair>,
    pub reasons: Vec<String>,
    pub trace: AuditTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum ConstructionAudit {
    Pass(Construction),
    Finding(Box<ConstructionFinding>),
}

impl ConstructionAudit {
    pub fn is_pass(&self) -> bool {
        matches!(self, ConstructionAudit::Pass(_))
    }
}

/// Runs the construction and turns any failed check into a finding.
pub fn audit_construction(
    g: &Graph,
    opts: &ConstructOptions,
) -> Result<ConstructionAudit, ConstructError> {
    let built = construct_coloring_with(g, opts)?;
    let reasons = built.trace.violations();
    if reasons.is_empty() {
        return Ok(ConstructionAudit::Pass(built));
    }
    let failing_pair = match built.trace.verification {
        Verification::Fail { u, v } => Some(FailingPair { u, v }),
        _ => None,
    };
    Ok(ConstructionAudit::Finding(Box::new(ConstructionFinding {
        graph6: to_graph6(g),
        colors_used: built.trace.colors_used,
        budget: built.trace.budget,
        failing_pair,
        reasons,
        trace: built.trace,
    })))
}
