//! Per-graph bound reports and corpus sweeps.
//!
//! A report puts side by side the exact rainbow connection number, the
//! constructive color count, the `n - δ` bound, the degree-sum bound
//! `n - σ₂/2` and its weakened form `n - σ₂/2 + t`. Half-integers are kept
//! as exact rationals so the sign of every slack is exact.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::construct::{self, Case, ConstructError, ConstructOptions, ConstructionAudit};
use crate::exact::{self, ExactError, ExactOptions, ExactStatus};
use crate::graph::{parse_graph6, to_graph6, Graph, ParseError};
use crate::verify;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl From<ExactError> for AuditError {
    fn from(_: ExactError) -> Self {
        AuditError::Disconnected
    }
}

impl From<ConstructError> for AuditError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::EmptyGraph => AuditError::EmptyGraph,
            _ => AuditError::Disconnected,
        }
    }
}

/// Serializes rationals as `"p/q"` (or `"p"` for integers).
mod ratio_str {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn to_string(r: &Rational) -> String {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn parse(s: &str) -> Option<Rational> {
        match s.split_once('/') {
            Some((p, q)) => {
                let (p, q): (i64, i64) = (p.parse().ok()?, q.parse().ok()?);
                (q != 0).then(|| Rational::new(p, q))
            }
            None => s.parse().ok().map(Rational::from_integer),
        }
    }

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&to_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .transpose()
    }
}

pub use ratio_str::to_string as format_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditOptions {
    pub exact: ExactOptions,
    pub construct: ConstructOptions,
    /// Worker threads for corpus sweeps; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            exact: ExactOptions::with_budget(exact::Budget::nodes(2_000_000)),
            construct: ConstructOptions::default(),
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RcSummary {
    pub status: ExactStatus,
    /// rc(G) when exact, otherwise a lower bound.
    pub value: usize,
    pub refuted_below: Option<usize>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub sigma2: Option<usize>,
    pub rc: RcSummary,
    pub construct_colors: usize,
    pub construct_verified: bool,
    pub construct_case: Case,
    /// `n - δ`.
    pub prop1_bound: usize,
    /// `n - δ - rc`, present when rc is exact.
    pub prop1_slack: Option<i64>,
    /// `n - σ₂/2`.
    #[serde(with = "ratio_str")]
    pub schiermeyer_bound: Option<Rational>,
    /// `n - σ₂/2 - rc`, present when rc is exact and σ₂ exists.
    #[serde(with = "ratio_str")]
    pub schiermeyer_slack: Option<Rational>,
    /// Number of components of `G - K` for the top-level minimum-degree
    /// clique `K` (δ-based decomposition); absent for complete graphs.
    pub t_top: Option<usize>,
    /// `n - σ₂/2 + t_top`.
    #[serde(with = "ratio_str")]
    pub weakened_bound: Option<Rational>,
    #[serde(with = "ratio_str")]
    pub weakened_slack: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingKind {
    ConstructionFailure,
    NegativeSchiermeyerSlack,
    SolverDisagreement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusFinding {
    pub kind: FindingKind,
    pub graph6: String,
    pub detail: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphAudit {
    pub report: BoundReport,
    pub findings: Vec<CorpusFinding>,
    /// Nodes of each case in the construction trace.
    pub case_nodes: BTreeMap<String, usize>,
}

fn count_cases(trace: &construct::AuditTrace) -> BTreeMap<String, usize> {
    let mut cases = BTreeMap::new();
    for node in trace.nodes() {
        *cases.entry(format!("{:?}", node.case)).or_insert(0) += 1;
    }
    cases
}

/// Full report plus any findings for one connected graph.
pub fn audit_graph_with_findings(g: &Graph, opts: &AuditOptions) -> Result<GraphAudit, AuditError> {
    if g.n() == 0 {
        return Err(AuditError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(AuditError::Disconnected);
    }
    let graph6 = to_graph6(g);
    let n = g.n();
    let stats = g.degree_stats();
    let delta = stats.delta;
    let mut findings = Vec::new();
    let mut finding = |kind, detail| {
        findings.push(CorpusFinding {
            kind,
            graph6: graph6.clone(),
            detail,
        })
    };

    let solved = exact::rc_exact(g, &opts.exact)?;
    let rc_exact = (solved.status == ExactStatus::Exact).then_some(solved.value);

    let (construct_colors, construct_verified, construct_case, t_top, case_nodes) =
        match construct::audit_construction(g, &opts.construct)? {
            ConstructionAudit::Pass(built) => {
                let t = built.trace.record.as_ref().map(|r| r.t);
                let cases = count_cases(&built.trace);
                (built.colors_used(), true, built.trace.case, t, cases)
            }
            ConstructionAudit::Finding(f) => {
                let t = f.trace.record.as_ref().map(|r| r.t);
                let out = (f.colors_used, false, f.trace.case, t, count_cases(&f.trace));
                finding(
                    FindingKind::ConstructionFailure,
                    json!({
                        "colors_used": f.colors_used,
                        "budget": f.budget,
                        "failing_pair": f.failing_pair,
                        "reasons": f.reasons,
                        "trace": f.trace,
                    }),
                );
                out
            }
        };

    let prop1_bound = n - delta;
    let prop1_slack = rc_exact.map(|rc| prop1_bound as i64 - rc as i64);
    if let Some(rc) = rc_exact {
        let witness_ok = solved
            .witness
            .as_ref()
            .is_some_and(|w| verify::passes(g, w));
        if prop1_slack.is_some_and(|s| s < 0)
            || (construct_verified && rc > construct_colors)
            || !witness_ok
        {
            finding(
                FindingKind::SolverDisagreement,
                json!({
                    "rc": rc,
                    "construct_colors": construct_colors,
                    "construct_verified": construct_verified,
                    "prop1_bound": prop1_bound,
                    "witness_verified": witness_ok,
                }),
            );
        }
    }

    let schiermeyer_bound = stats
        .sigma2
        .map(|s2| Rational::new(2 * n as i64 - s2 as i64, 2));
    let schiermeyer_slack = schiermeyer_bound
        .zip(rc_exact)
        .map(|(b, rc)| b - Rational::from_integer(rc as i64));
    // a bound below the proven lower bound is already a violation
    let proven_violation = schiermeyer_bound
        .filter(|b| *b < Rational::from_integer(solved.value as i64))
        .is_some();
    if schiermeyer_slack.is_some_and(|s| s < Rational::from_integer(0)) || proven_violation {
        finding(
            FindingKind::NegativeSchiermeyerSlack,
            json!({
                "n": n,
                "sigma2": stats.sigma2,
                "bound": schiermeyer_bound.map(|b| format_rational(&b)),
                "rc": solved.value,
                "rc_status": solved.status,
                "slack": schiermeyer_slack.map(|s| format_rational(&s)),
            }),
        );
    }

    let weakened_bound = schiermeyer_bound
        .zip(t_top)
        .map(|(b, t)| b + Rational::from_integer(t as i64));
    let weakened_slack = weakened_bound
        .zip(rc_exact)
        .map(|(b, rc)| b - Rational::from_integer(rc as i64));

    let report = BoundReport {
        graph6: graph6.clone(),
        n,
        m: g.m(),
        delta,
        sigma2: stats.sigma2,
        rc: RcSummary {
            status: solved.status,
            value: solved.value,
            refuted_below: solved.refuted_below,
            nodes: solved.stats.nodes,
        },
        construct_colors,
        construct_verified,
        construct_case,
        prop1_bound,
        prop1_slack,
        schiermeyer_bound,
        schiermeyer_slack,
        t_top,
        weakened_bound,
        weakened_slack,
    };
    Ok(GraphAudit {
        report,
        findings,
        case_nodes,
    })
}

pub fn audit_graph(g: &Graph, opts: &AuditOptions) -> Result<BoundReport, AuditError> {
    audit_graph_with_findings(g, opts).map(|a| a.report)
}

/// Re-audits a finding's reproducer and returns the findings of the same
/// kind it yields now.
pub fn replay_finding(
    finding: &CorpusFinding,
    opts: &AuditOptions,
) -> Result<Vec<CorpusFinding>, AuditError> {
    let g = parse_graph6(&finding.graph6)?;
    Ok(audit_graph_with_findings(&g, opts)?
        .findings
        .into_iter()
        .filter(|f| f.kind == finding.kind)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryError {
    pub index: usize,
    pub graph6: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Aggregate {
    pub graphs: usize,
    pub audited: usize,
    pub errors: Vec<EntryError>,
    pub complete_graphs: usize,
    pub rc_exact: usize,
    pub rc_not_exact: usize,
    pub construction_failures: usize,
    pub findings: usize,
    /// Nodes of each case across all construction traces.
    pub case_nodes: BTreeMap<String, usize>,
    pub min_prop1_slack: Option<i64>,
    #[serde(with = "ratio_str")]
    pub mean_prop1_slack: Option<Rational>,
    /// Graphs with both σ₂ and an exact rc.
    pub schiermeyer_evaluated: usize,
    #[serde(with = "ratio_str")]
    pub min_schiermeyer_slack: Option<Rational>,
    #[serde(with = "ratio_str")]
    pub mean_schiermeyer_slack: Option<Rational>,
    #[serde(with = "ratio_str")]
    pub min_weakened_slack: Option<Rational>,
    /// Largest `construct_colors - rc` over exact graphs.
    pub max_construct_gap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusReport {
    pub aggregate: Aggregate,
    /// One entry per input graph, in input order.
    pub reports: Vec<Result<BoundReport, EntryError>>,
    /// Sorted by reproducer, then kind.
    pub findings: Vec<CorpusFinding>,
}

fn min_opt<T: PartialOrd + Copy>(acc: Option<T>, x: Option<T>) -> Option<T> {
    match (acc, x) {
        (Some(a), Some(b)) => Some(if b < a { b } else { a }),
        (a, b) => a.or(b),
    }
}

/// Audits every graph and aggregates. The result does not depend on how the
/// work is scheduled.
pub fn audit_corpus(graphs: &[Graph], opts: &AuditOptions) -> CorpusReport {
    let run = || -> Vec<Result<GraphAudit, EntryError>> {
        graphs
            .par_iter()
            .enumerate()
            .map(|(index, g)| {
                audit_graph_with_findings(g, opts).map_err(|e| EntryError {
                    index,
                    graph6: to_graph6(g),
                    message: e.to_string(),
                })
            })
            .collect()
    };
    let results = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };

    let mut agg = Aggregate {
        graphs: graphs.len(),
        ..Aggregate::default()
    };
    let mut findings = Vec::new();
    let mut reports = Vec::with_capacity(graphs.len());
    let (mut prop1_sum, mut prop1_count) = (0i64, 0i64);
    let mut schiermeyer_sum = Rational::from_integer(0);
    for r in results {
        let audit = match r {
            Ok(x) => x,
            Err(e) => {
                agg.errors.push(e.clone());
                reports.push(Err(e));
                continue;
            }
        };
        let rep = &audit.report;
        agg.audited += 1;
        agg.complete_graphs += usize::from(rep.sigma2.is_none());
        if rep.rc.status == ExactStatus::Exact {
            agg.rc_exact += 1;
            let gap = rep.construct_colors.saturating_sub(rep.rc.value);
            agg.max_construct_gap = Some(agg.max_construct_gap.map_or(gap, |g| g.max(gap)));
        } else {
            agg.rc_not_exact += 1;
        }
        agg.construction_failures += usize::from(!rep.construct_verified);
        for (case, count) in audit.case_nodes {
            *agg.case_nodes.entry(case).or_insert(0) += count;
        }
        if let Some(s) = rep.prop1_slack {
            prop1_sum += s;
            prop1_count += 1;
        }
        agg.min_prop1_slack = min_opt(agg.min_prop1_slack, rep.prop1_slack);
        if let Some(s) = rep.schiermeyer_slack {
            agg.schiermeyer_evaluated += 1;
            schiermeyer_sum += s;
        }
        agg.min_schiermeyer_slack = min_opt(agg.min_schiermeyer_slack, rep.schiermeyer_slack);
        agg.min_weakened_slack = min_opt(agg.min_weakened_slack, rep.weakened_slack);
        findings.extend(audit.findings);
        reports.push(Ok(audit.report));
    }
    if prop1_count > 0 {
        agg.mean_prop1_slack = Some(Rational::new(prop1_sum, prop1_count));
    }
    if agg.schiermeyer_evaluated > 0 {
        agg.mean_schiermeyer_slack =
            Some(schiermeyer_sum / Rational::from_integer(agg.schiermeyer_evaluated as i64));
    }
    findings.sort_by(|a, b| (&a.graph6, a.kind).cmp(&(&b.graph6, b.kind)));
    agg.findings = findings.len();
    CorpusReport {
        aggregate: agg,
        reports,
        findings,
    }
}
