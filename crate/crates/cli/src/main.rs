//! `rcaudit`: command-line front end for the rainbow connection toolkit.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failed or
//! no coloring exists, 3 budget exhausted, 4 audit finding.

mod input;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rcaudit_core::audit::{
    audit_corpus, audit_graph_with_findings, format_rational, AuditOptions, BoundReport,
    CorpusFinding,
};
use rcaudit_core::construct::{
    audit_construction, CaseCPolicy, ConstructOptions, ConstructionAudit,
};
use rcaudit_core::exact::{rc_decision, rc_exact, Budget, Decision, ExactOptions, ExactStatus};
use rcaudit_core::generators::{
    connected_labeled_graphs, counterexample_inequalities, gen_counterexample, gen_named,
    gen_random_connected, CounterexampleParams, Family,
};
use rcaudit_core::graph::{to_graph6, Graph};
use rcaudit_core::verify::{is_rainbow_connected, EdgeColoring, RainbowOutcome};

const EXIT_FAILED: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_FINDING: u8 = 4;

#[derive(Parser)]
#[command(name = "rcaudit", version, about = "Rainbow connection audit toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Search node limit for the exact solver.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Wall-clock limit for the exact solver, in milliseconds.
    #[arg(long)]
    max_time_ms: Option<u64>,
    /// Disable geodesic pruning.
    #[arg(long)]
    no_pruning: bool,
}

impl BudgetArgs {
    fn options(&self, default_nodes: Option<u64>) -> ExactOptions {
        ExactOptions {
            budget: Budget {
                max_nodes: self.max_nodes.or(default_nodes),
                max_time: self.max_time_ms.map(Duration::from_millis),
            },
            geodesic_pruning: !self.no_pruning,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CaseC {
    Split,
    FirstCross,
}

impl From<CaseC> for CaseCPolicy {
    fn from(c: CaseC) -> Self {
        match c {
            CaseC::Split => CaseCPolicy::Split,
            CaseC::FirstCross => CaseCPolicy::FirstCross,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check whether an edge coloring is rainbow connecting.
    Verify {
        /// Graph: graph6 string, graph6 file or edge-list file.
        graph: String,
        /// Coloring file with one `u v color` line per edge.
        coloring: PathBuf,
        /// Write one witness path per vertex pair as JSON lines.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Compute rc(G), or decide rc(G) <= q with --q.
    Exact {
        graph: String,
        #[arg(long)]
        q: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the optimal coloring as `u v color` lines.
        #[arg(long)]
        coloring_out: Option<PathBuf>,
    },
    /// Build a coloring with at most n - δ colors and audit it.
    Construct {
        graph: String,
        #[arg(long, value_enum, default_value_t = CaseC::Split)]
        case_c: CaseC,
        #[arg(long)]
        coloring_out: Option<PathBuf>,
        /// Write the full audit trace as JSON.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Generate graphs.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Bound report for one graph.
    Audit {
        graph: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = CaseC::Split)]
        case_c: CaseC,
    },
    /// Audit a corpus and aggregate slacks and findings.
    Sweep {
        /// graph6 files or specs: connected:N, random:COUNT:NMIN-NMAX:SEED,
        /// cex:DELTA:T[:SEED], named:FAMILY:SIZES.
        #[arg(required = true)]
        sources: Vec<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = CaseC::Split)]
        case_c: CaseC,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write each finding and its graph6 reproducer here.
        #[arg(long)]
        findings_dir: Option<PathBuf>,
        /// Write per-graph reports as JSON lines.
        #[arg(long)]
        reports: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Degree-sum counterexample family.
    Cex {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        t: usize,
        /// Draw attachment sets at random.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Random connected graph by rejection sampling.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    /// path, cycle, complete, star (one size) or complete_bipartite (two).
    Named {
        family: String,
        #[arg(required = true)]
        sizes: Vec<usize>,
    },
    /// Every connected labeled graph on n vertices.
    Connected {
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json")),
        Format::Text => print!("{}", text()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<u8> {
    let format = cli.format;
    match cli.command {
        Command::Verify {
            graph,
            coloring,
            certificate,
        } => {
            let g = input::read_graph(&graph)?;
            let text = fs::read_to_string(&coloring)
                .with_context(|| format!("reading {}", coloring.display()))?;
            let c = EdgeColoring::parse(&g, &text)?;
            let outcome = is_rainbow_connected(&g, &c)?;
            let value = json!({
                "rainbow_connected": outcome.is_connected(),
                "colors": c.distinct(),
                "failing_pair": outcome.failing_pair(),
            });
            match &outcome {
                RainbowOutcome::Connected(cert) => {
                    if let Some(path) = certificate {
                        write_file(&path, &cert.to_json_lines(&g, &c))?;
                    }
                    emit(format, &value, || {
                        format!("PASS rainbow connected with {} colors\n", c.distinct())
                    });
                    Ok(0)
                }
                RainbowOutcome::Failing(p) => {
                    emit(format, &value, || {
                        format!("FAIL no rainbow path between {} and {}\n", p.u, p.v)
                    });
                    Ok(EXIT_FAILED)
                }
            }
        }
        Command::Exact {
            graph,
            q,
            budget,
            coloring_out,
        } => {
            let g = input::read_graph(&graph)?;
            let opts = budget.options(None);
            if let Some(q) = q {
                let decision = rc_decision(&g, q, &opts)?;
                let (name, code) = match &decision {
                    Decision::Sat(_) => ("sat", 0),
                    Decision::Unsat => ("unsat", EXIT_FAILED),
                    Decision::BudgetExhausted => ("budget-exhausted", EXIT_BUDGET),
                };
                if let (Decision::Sat(c), Some(path)) = (&decision, &coloring_out) {
                    write_file(path, &c.to_text(&g))?;
                }
                emit(format, &json!({ "q": q, "decision": name }), || {
                    format!("rc <= {q}: {name}\n")
                });
                return Ok(code);
            }
            let result = rc_exact(&g, &opts)?;
            if let (Some(c), Some(path)) = (&result.witness, &coloring_out) {
                write_file(path, &c.to_text(&g))?;
            }
            emit(format, &serde_json::to_value(&result)?, || {
                match result.status {
                    ExactStatus::Exact => {
                        format!("rc = {} ({} nodes)\n", result.value, result.stats.nodes)
                    }
                    _ => format!(
                        "rc >= {} (budget exhausted after {} nodes)\n",
                        result.value, result.stats.nodes
                    ),
                }
            });
            Ok(if result.status == ExactStatus::Exact {
                0
            } else {
                EXIT_BUDGET
            })
        }
        Command::Construct {
            graph,
            case_c,
            coloring_out,
            trace_out,
        } => {
            let g = input::read_graph(&graph)?;
            let opts = ConstructOptions {
                case_c: case_c.into(),
                ..ConstructOptions::default()
            };
            match audit_construction(&g, &opts)? {
                ConstructionAudit::Pass(built) => {
                    if let Some(path) = coloring_out {
                        write_file(&path, &built.coloring.to_text(&g))?;
                    }
                    if let Some(path) = trace_out {
                        write_file(&path, &serde_json::to_string_pretty(&built.trace)?)?;
                    }
                    let value = json!({
                        "verified": true,
                        "colors_used": built.colors_used(),
                        "budget": built.trace.budget,
                        "case": built.trace.case,
                    });
                    emit(format, &value, || {
                        format!(
                            "PASS {} colors (n - δ = {}), top case {:?}\n",
                            built.colors_used(),
                            built.trace.budget,
                            built.trace.case
                        )
                    });
                    Ok(0)
                }
                ConstructionAudit::Finding(f) => {
                    if let Some(path) = trace_out {
                        write_file(&path, &serde_json::to_string_pretty(&f.trace)?)?;
                    }
                    let value = json!({
                        "verified": false,
                        "graph6": f.graph6,
                        "colors_used": f.colors_used,
                        "budget": f.budget,
                        "failing_pair": f.failing_pair,
                        "reasons": f.reasons,
                    });
                    emit(format, &value, || {
                        let mut out = format!("FINDING {}\n", f.graph6);
                        for r in &f.reasons {
                            out.push_str(&format!("  {r}\n"));
                        }
                        out
                    });
                    Ok(EXIT_FINDING)
                }
            }
        }
        Command::Gen(cmd) => run_gen(format, cmd),
        Command::Audit {
            graph,
            budget,
            case_c,
        } => {
            let g = input::read_graph(&graph)?;
            let opts = audit_options(budget, case_c, None);
            let audited = audit_graph_with_findings(&g, &opts)?;
            let value = json!({ "report": audited.report, "findings": audited.findings });
            emit(format, &value, || {
                let mut out = report_text(&audited.report);
                for f in &audited.findings {
                    out.push_str(&finding_line(f));
                }
                out
            });
            Ok(if audited.findings.is_empty() {
                0
            } else {
                EXIT_FINDING
            })
        }
        Command::Sweep {
            sources,
            budget,
            case_c,
            jobs,
            findings_dir,
            reports,
        } => {
            let mut graphs = Vec::new();
            for s in &sources {
                graphs.extend(input::corpus_source(s)?);
            }
            let opts = audit_options(budget, case_c, jobs);
            let corpus = audit_corpus(&graphs, &opts);
            if let Some(path) = reports {
                let mut out = String::new();
                for r in corpus.reports.iter().flatten() {
                    out.push_str(&serde_json::to_string(r)?);
                    out.push('\n');
                }
                write_file(&path, &out)?;
            }
            if let Some(dir) = findings_dir {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for (i, f) in corpus.findings.iter().enumerate() {
                    let kind = serde_json::to_value(f.kind)?;
                    let stem = format!("{i:04}-{}", kind.as_str().expect("kind is a string"));
                    write_file(
                        &dir.join(format!("{stem}.json")),
                        &serde_json::to_string_pretty(f)?,
                    )?;
                    write_file(&dir.join(format!("{stem}.g6")), &format!("{}\n", f.graph6))?;
                }
            }
            let value = json!({ "aggregate": corpus.aggregate, "findings": corpus.findings });
            emit(format, &value, || {
                let a = &corpus.aggregate;
                let rat = |r: Option<rcaudit_core::Rational>| {
                    r.map_or("-".to_string(), |r| format_rational(&r))
                };
                let mut out = format!(
                    "graphs {} audited {} errors {} complete {}\n\
                     rc exact {} not exact {}\n\
                     construction failures {}\n\
                     min n-δ slack {} mean {}\n\
                     min n-σ₂/2 slack {} mean {} over {} graphs\n\
                     min weakened slack {}\n\
                     case nodes {:?}\n\
                     findings {}\n",
                    a.graphs,
                    a.audited,
                    a.errors.len(),
                    a.complete_graphs,
                    a.rc_exact,
                    a.rc_not_exact,
                    a.construction_failures,
                    a.min_prop1_slack.map_or("-".to_string(), |s| s.to_string()),
                    rat(a.mean_prop1_slack),
                    rat(a.min_schiermeyer_slack),
                    rat(a.mean_schiermeyer_slack),
                    a.schiermeyer_evaluated,
                    rat(a.min_weakened_slack),
                    a.case_nodes,
                    a.findings,
                );
                for e in &a.errors {
                    out.push_str(&format!("error #{} {}: {}\n", e.index, e.graph6, e.message));
                }
                for f in &corpus.findings {
                    out.push_str(&finding_line(f));
                }
                out
            });
            Ok(if corpus.findings.is_empty() {
                0
            } else {
                EXIT_FINDING
            })
        }
    }
}

fn audit_options(budget: BudgetArgs, case_c: CaseC, jobs: Option<usize>) -> AuditOptions {
    let defaults = AuditOptions::default();
    AuditOptions {
        exact: budget.options(defaults.exact.budget.max_nodes),
        construct: ConstructOptions {
            case_c: case_c.into(),
            ..defaults.construct
        },
        jobs,
    }
}

fn finding_line(f: &CorpusFinding) -> String {
    let kind = serde_json::to_value(f.kind).expect("kind serializes");
    format!("FINDING {} {}\n", kind.as_str().unwrap_or("?"), f.graph6)
}

fn report_text(r: &BoundReport) -> String {
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    let rat = |x: Option<rcaudit_core::Rational>| opt(x.map(|r| format_rational(&r)));
    let rc = match r.rc.status {
        ExactStatus::Exact => r.rc.value.to_string(),
        _ => format!(">= {}", r.rc.value),
    };
    format!(
        "graph6        {}\n\
         n m δ σ₂      {} {} {} {}\n\
         rc            {}\n\
         construct     {} colors, {}, top case {:?}\n\
         n - δ         {} (slack {})\n\
         n - σ₂/2      {} (slack {})\n\
         + t           {} (t = {}, slack {})\n",
        r.graph6,
        r.n,
        r.m,
        r.delta,
        opt(r.sigma2.map(|s| s.to_string())),
        rc,
        r.construct_colors,
        if r.construct_verified {
            "verified"
        } else {
            "NOT verified"
        },
        r.construct_case,
        r.prop1_bound,
        opt(r.prop1_slack.map(|s| s.to_string())),
        rat(r.schiermeyer_bound),
        rat(r.schiermeyer_slack),
        rat(r.weakened_bound),
        opt(r.t_top.map(|t| t.to_string())),
        rat(r.weakened_slack),
    )
}

fn graph_lines(graphs: &[Graph]) -> String {
    graphs.iter().map(|g| to_graph6(g) + "\n").collect()
}

fn run_gen(format: Format, cmd: GenCommand) -> Result<u8> {
    let graphs = match cmd {
        GenCommand::Cex { delta, t, seed } => {
            let params = CounterexampleParams {
                seed,
                ..CounterexampleParams::new(delta, t)
            };
            let (g, facts) = gen_counterexample(&params)?;
            let report = counterexample_inequalities(&g, &facts)?;
            let value = json!({
                "graph6": to_graph6(&g),
                "facts": facts,
                "inequalities": report,
            });
            emit(format, &value, || {
                format!(
                    "{}\n# n {} k {} σ₂ {}; component σ₂ {:?}; σ₂-2(k-1) = {} violated: {}; \
                     σ₂-2k = {} holds: {} tight: {}\n",
                    to_graph6(&g),
                    facts.n,
                    facts.k,
                    facts.sigma2,
                    report
                        .components
                        .iter()
                        .map(|c| c.sigma2)
                        .collect::<Vec<_>>(),
                    report.refuted_rhs,
                    report.refuted_claim_violated,
                    report.corrected_rhs,
                    report.corrected_claim_holds,
                    report.corrected_claim_tight,
                )
            });
            return Ok(0);
        }
        GenCommand::Random { n, p, seed } => vec![gen_random_connected(n, p, seed)?],
        GenCommand::Named { family, sizes } => {
            let family: Family = family.parse()?;
            vec![gen_named(family, &sizes)?]
        }
        GenCommand::Connected { n } => {
            anyhow::ensure!(n <= 7, "connected enumeration supports n <= 7");
            connected_labeled_graphs(n)
        }
    };
    let value = Value::from(graphs.iter().map(to_graph6).collect::<Vec<_>>());
    emit(format, &value, || graph_lines(&graphs));
    Ok(0)
}
