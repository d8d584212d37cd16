//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or overruns its time limit.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rcaudit_core::audit::{audit_corpus, format_rational, AuditOptions, CorpusReport};
use rcaudit_core::construct::{construct_coloring, AuditTrace, Case};
use rcaudit_core::exact::{rc_exact, Budget, ExactOptions, ExactStatus};
use rcaudit_core::generators::{
    connected_labeled_up_to, counterexample_inequalities, gen_counterexample, random_corpus,
    CounterexampleParams,
};
use rcaudit_core::graph::{to_graph6, Graph};
use rcaudit_core::verify::is_rainbow_connected;

/// Seed and shape of the random corpus used by criteria 2 and 5.
const RANDOM_SEED: u64 = 20_240_601;
const RANDOM_COUNT: usize = 500;
const RANDOM_N: (usize, usize) = (4, 40);
/// Exact-solver node budget per graph in the sweep of criterion 5.
const SWEEP_NODES: u64 = 20_000;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

/// Traces collected for the measure audit.
#[derive(Default)]
struct Traces(Vec<(String, AuditTrace)>);

fn exact(g: &Graph) -> rcaudit_core::exact::ExactResult {
    rc_exact(g, &ExactOptions::default()).expect("connected")
}

fn criterion1(traces: &mut Traces) -> Outcome {
    for n in 2..=10 {
        let g = Graph::complete(n);
        let rc = exact(&g);
        if rc.status != ExactStatus::Exact || rc.value != 1 {
            return fail(format!("K{n}: rc = {} ({:?})", rc.value, rc.status));
        }
        let built = construct_coloring(&g).expect("complete graphs construct");
        if built.colors_used() != 1 {
            return fail(format!(
                "K{n}: construction used {} colors",
                built.colors_used()
            ));
        }
        traces.0.push((to_graph6(&g), built.trace));
    }
    pass("K2..K10: rc = 1, construction uses 1 color")
}

/// Constructs and verifies every graph; the first failure is the reproducer.
fn construct_all(graphs: &[Graph], traces: &mut Traces) -> Result<usize, String> {
    let mut cases_cd = 0;
    for g in graphs {
        let g6 = to_graph6(g);
        let built = construct_coloring(g).map_err(|e| format!("{g6}: {e}"))?;
        let budget = g.n() - g.min_degree();
        if built.colors_used() > budget {
            return Err(format!(
                "reproducer {g6}: {} colors > n - δ = {budget}",
                built.colors_used()
            ));
        }
        let outcome = is_rainbow_connected(g, &built.coloring).expect("total coloring");
        if let Some(p) = outcome.failing_pair() {
            return Err(format!("reproducer {g6}: no rainbow path {}-{}", p.u, p.v));
        }
        cases_cd += built.trace.count_cases(Case::C) + built.trace.count_cases(Case::D);
        traces.0.push((g6, built.trace));
    }
    Ok(cases_cd)
}

fn criterion2a(small: &[Graph], traces: &mut Traces) -> Outcome {
    match construct_all(small, traces) {
        Ok(_) => pass(format!(
            "{} connected labeled graphs on n <= 5: colors <= n - δ and verified",
            small.len()
        )),
        Err(e) => fail(e),
    }
}

fn criterion2b(random: &[Graph], traces: &mut Traces) -> Outcome {
    match construct_all(random, traces) {
        Ok(cd) => pass(format!(
            "{} random graphs (seed {RANDOM_SEED}, n in {}..={}): colors <= n - δ and verified; {cd} case C/D nodes",
            random.len(),
            RANDOM_N.0,
            RANDOM_N.1
        )),
        Err(e) => fail(e),
    }
}

fn criterion3(small: &[Graph]) -> Outcome {
    let mut checked = 0;
    for g in small {
        let g6 = to_graph6(g);
        let rc = exact(g);
        if rc.status != ExactStatus::Exact {
            return fail(format!("{g6}: solver not exact"));
        }
        let reference = common::oracle_rc(g);
        if rc.value != reference {
            return fail(format!(
                "{g6}: solver {} vs reference {reference}",
                rc.value
            ));
        }
        if g.n() >= 2 {
            let diam = g.diameter().expect("connected");
            let upper = g.m().min(g.n() - g.min_degree());
            if rc.value < diam || rc.value > upper {
                return fail(format!("{g6}: rc {} outside [{diam}, {upper}]", rc.value));
            }
        }
        checked += 1;
    }
    pass(format!(
        "{checked} graphs: solver equals brute-force reference; diam <= rc <= min(m, n - δ)"
    ))
}

fn criterion4() -> Outcome {
    let mut lines = Vec::new();
    for (delta, t) in [(2, 1), (4, 2), (6, 1), (6, 3)] {
        let params = CounterexampleParams::new(delta, t);
        let (g, facts) = match gen_counterexample(&params) {
            Ok(x) => x,
            Err(e) => return fail(format!("(δ={delta}, t={t}): {e}")),
        };
        let stats = g.degree_stats();
        if stats.delta != delta || stats.sigma2 != Some(2 * (delta + 1)) {
            return fail(format!(
                "(δ={delta}, t={t}): δ {} σ₂ {:?}",
                stats.delta, stats.sigma2
            ));
        }
        let r = match counterexample_inequalities(&g, &facts) {
            Ok(r) => r,
            Err(e) => return fail(format!("(δ={delta}, t={t}): {e}")),
        };
        let four_t = 4 * t;
        let ok = r.components.len() == t
            && r.components.iter().all(|c| c.sigma2 == four_t)
            && r.refuted_rhs == four_t as i64 + 2
            && r.corrected_rhs == four_t as i64
            && r.refuted_claim_violated
            && r.corrected_claim_holds
            && r.corrected_claim_tight;
        if !ok {
            return fail(format!("(δ={delta}, t={t}): {r:?}"));
        }
        lines.push(format!("({delta},{t}) s_i={four_t}"));
    }
    pass(format!(
        "{}; σ₂-2(k-1) = 4t+2 violated, σ₂-2k = 4t tight",
        lines.join(" ")
    ))
}

fn sweep_bytes(graphs: &[Graph], opts: &AuditOptions) -> (CorpusReport, String) {
    let report = audit_corpus(graphs, opts);
    let bytes = serde_json::to_string(&serde_json::json!({
        "aggregate": report.aggregate,
        "findings": report.findings,
    }))
    .expect("json");
    (report, bytes)
}

fn criterion5(small: &[Graph], random: &[Graph]) -> Outcome {
    let corpus: Vec<Graph> = small.iter().chain(random).cloned().collect();
    let opts = AuditOptions {
        exact: ExactOptions::with_budget(Budget::nodes(SWEEP_NODES)),
        ..AuditOptions::default()
    };
    let (report, first) = sweep_bytes(&corpus, &opts);
    let (_, second) = sweep_bytes(&corpus, &opts);
    if first != second {
        return fail("two sweeps differ");
    }
    let a = &report.aggregate;
    if !a.errors.is_empty() {
        return fail(format!("{} per-graph errors", a.errors.len()));
    }
    let Some(min) = a.min_schiermeyer_slack else {
        return fail("no graph had an exact rc and a defined σ₂");
    };
    // every negative slack must be a finding that replays
    for f in &report.findings {
        match rcaudit_core::audit::replay_finding(f, &opts) {
            Ok(again) if again.contains(f) => {}
            _ => return fail(format!("finding for {} does not replay", f.graph6)),
        }
    }
    let negatives = report
        .reports
        .iter()
        .flatten()
        .filter(|r| {
            r.schiermeyer_slack
                .is_some_and(|s| s < rcaudit_core::Rational::from_integer(0))
        })
        .count();
    let negative_findings = report
        .findings
        .iter()
        .filter(|f| f.kind == rcaudit_core::audit::FindingKind::NegativeSchiermeyerSlack)
        .count();
    if negative_findings < negatives {
        return fail("a negative slack produced no finding");
    }
    pass(format!(
        "{} graphs, exact rc on {} (node budget {SWEEP_NODES}), min n-σ₂/2 slack {} over {} graphs, {} findings; two runs byte-identical",
        a.graphs,
        a.rc_exact,
        format_rational(&min),
        a.schiermeyer_evaluated,
        report.findings.len()
    ))
}

fn criterion6() -> Outcome {
    let mut cases: Vec<(String, Graph, usize)> = (2..=7)
        .map(|n| (format!("P{n}"), common::path(n), n - 1))
        .collect();
    cases.extend([
        ("C4".into(), common::cycle(4), 2),
        ("C5".into(), common::cycle(5), 3),
        ("C6".into(), common::cycle(6), 3),
    ]);
    for (name, g, expected) in &cases {
        let reference = common::oracle_rc(g);
        if reference != *expected {
            return fail(format!(
                "{name}: reference gives {reference}, expected {expected}"
            ));
        }
        let rc = exact(g);
        if rc.status != ExactStatus::Exact || rc.value != *expected {
            return fail(format!(
                "{name}: solver gives {} ({:?})",
                rc.value, rc.status
            ));
        }
    }
    pass("rc(P_n) = n-1 for n = 2..7, rc(C4) = 2, rc(C5) = rc(C6) = 3; solver and reference agree")
}

/// Recomputes every recursion step's measure from the recorded trace.
fn criterion7(traces: &Traces) -> Outcome {
    let mut steps = 0;
    for (g6, trace) in &traces.0 {
        for node in trace.nodes() {
            for child in &node.children {
                steps += 1;
                if child.budget >= node.budget || !node.checks.measure_ok {
                    return fail(format!(
                        "{g6}: child measure {} >= {}",
                        child.budget, node.budget
                    ));
                }
            }
            if let Some(c) = &node.contraction {
                steps += 1;
                if c.measure >= node.budget || c.delta_star < node.delta {
                    return fail(format!(
                        "{g6}: contraction measure {} >= {}",
                        c.measure, node.budget
                    ));
                }
            }
        }
    }
    pass(format!(
        "{steps} recursion steps over {} constructions, zero measure violations",
        traces.0.len()
    ))
}

fn run(name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = took <= limit;
    let ok = out.ok && in_time;
    let timing = format!("{:.2}s, limit {}s", took.as_secs_f64(), limit.as_secs());
    let overrun = if in_time {
        ""
    } else {
        " [time limit exceeded]"
    };
    println!(
        "{} {name}: {} ({timing}){overrun}",
        if ok { "PASS" } else { "FAIL" },
        out.detail
    );
    ok
}

fn main() -> ExitCode {
    let small = connected_labeled_up_to(5);
    let random =
        random_corpus(RANDOM_COUNT, RANDOM_N.0, RANDOM_N.1, RANDOM_SEED).expect("random corpus");
    let mut traces = Traces::default();
    let secs = Duration::from_secs;
    let results = [
        run("criterion 1", secs(1), || criterion1(&mut traces)),
        run("criterion 2a", secs(120), || {
            criterion2a(&small, &mut traces)
        }),
        run("criterion 2b", secs(600), || {
            criterion2b(&random, &mut traces)
        }),
        run("criterion 3", secs(600), || criterion3(&small)),
        run("criterion 4", secs(5), criterion4),
        run("criterion 5", secs(600), || criterion5(&small, &random)),
        run("criterion 6", secs(60), criterion6),
        run("criterion 7", secs(60), || criterion7(&traces)),
    ];
    if results.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
