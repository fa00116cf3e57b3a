use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dlqs_core::corpus::{self, Bounds};
use dlqs_core::cqa::{render_raw, Answer};
use dlqs_core::ground::DEFAULT_CLAUSE_BUDGET;
use dlqs_core::oracle::{dl_consistent_with_stats, DEFAULT_DL_BIT_BUDGET};
use dlqs_core::parser::{parse_kb_named, parse_query_named};
use dlqs_core::pipeline::{prepare, Config, Engine, Prepared};
use dlqs_core::tableau::{Rule, TraceEvent, DEFAULT_BRANCH_BUDGET};
use dlqs_core::translate::{sexpr, PsiQ, TranslationMode};
use dlqs_core::{pretty, KnowledgeBase, DEFAULT_CARDINALITY_CAP};

#[derive(Parser)]
#[command(
    name = "dlqs",
    version,
    about = "Consistency and conjunctive query answering for description logic knowledge bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Largest clause set the grounding may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_CLAUSE_BUDGET)]
    budget_clauses: u64,
    /// Largest number of tableau branches.
    #[arg(long, global = true, default_value_t = DEFAULT_BRANCH_BUDGET)]
    budget_branches: u64,
    /// Largest number in a cardinality restriction.
    #[arg(long, global = true, default_value_t = DEFAULT_CARDINALITY_CAP)]
    cardinality_cap: u32,
    /// Seed for the `generate` subcommand; every other run is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print one line per tableau rule application to stderr.
    #[arg(long, global = true)]
    trace: bool,
    /// Worker threads for branch-level query answering.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Translate with the formulae exactly as printed.
    #[arg(long, global = true)]
    literal: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide consistency: exit 0 when consistent, 1 when not.
    Check { kb: PathBuf },
    /// Compute the answers of a conjunctive query.
    Query {
        kb: PathBuf,
        query: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Tableau)]
        engine: EngineArg,
        /// Print level-0 variables, witnesses included.
        #[arg(long)]
        raw: bool,
    },
    /// Print the set-theoretic translation.
    Translate {
        kb: PathBuf,
        /// Print the normalized knowledge base first.
        #[arg(long)]
        dump_normal: bool,
    },
    /// Print grounding statistics.
    Stats { kb: PathBuf },
    /// Decide consistency by brute-force search over small interpretations.
    #[command(hide = true)]
    Oracle {
        kb: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DL_BIT_BUDGET)]
        bits: u32,
    },
    /// Print a random knowledge base, and a query with `--query`.
    #[command(hide = true)]
    Generate {
        #[arg(long)]
        query: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Naive,
    Tableau,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Naive => Engine::Naive,
            EngineArg::Tableau => Engine::Tableau,
            EngineArg::Both => Engine::Both,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(cli, &mut out) {
        Ok(code) => {
            if let Err(e) = io::stdout().lock().write_all(out.as_bytes()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn config(o: &Opts) -> Config {
    Config {
        mode: if o.literal { TranslationMode::Literal } else { TranslationMode::Corrected },
        cardinality_cap: o.cardinality_cap,
        clause_budget: o.budget_clauses,
        branch_budget: o.budget_branches,
        trace: o.trace,
        threads: o.threads.max(1),
        ..Config::default()
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_kb(path: &Path) -> Result<KnowledgeBase> {
    Ok(parse_kb_named(&path.display().to_string(), &read(path)?)?)
}

fn run(cli: Cli, w: &mut String) -> Result<u8> {
    let o = &cli.opts;
    let cfg = config(o);
    match cli.command {
        Command::Check { kb } => {
            let p = prepare(&load_kb(&kb)?, &cfg)?;
            let t = p.check(&cfg)?;
            print_trace(&p, &t.trace);
            let ok = t.is_satisfiable();
            if o.json {
                let out = json!({ "v": 1, "consistent": ok, "grounding": p.grounding.stats, "tableau": t.stats });
                writeln!(w, "{out}")?;
            } else {
                writeln!(w, "{}", if ok { "consistent" } else { "inconsistent" })?;
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Query { kb, query, engine, raw } => {
            let kb_ast = load_kb(&kb)?;
            let q = parse_query_named(&query.display().to_string(), &read(&query)?, &kb_ast.signature)?;
            let p = prepare(&kb_ast, &cfg)?;
            let psi = p.psi(&q)?;
            let out = p.query(&psi, engine.into(), &cfg)?;
            let answers = match (out.tableau, out.naive) {
                (Some(t), Some(n)) if t != n => {
                    bail!(
                        "engines disagree\ntableau:\n{}\nnaive:\n{}",
                        lines(&p, &psi, &t, raw).join("\n"),
                        lines(&p, &psi, &n, raw).join("\n")
                    )
                }
                (Some(a), _) | (None, Some(a)) => a,
                (None, None) => unreachable!("at least one engine runs"),
            };
            let rendered = lines(&p, &psi, &answers, raw);
            if o.json {
                writeln!(
                    w,
                    "{}",
                    json!({ "v": 1, "vars": psi.vars.iter().map(|v| v.to_string()).collect::<Vec<_>>(), "answers": rendered })
                )?;
            } else {
                for l in rendered {
                    writeln!(w, "{l}")?;
                }
            }
            Ok(0)
        }
        Command::Translate { kb, dump_normal } => {
            let p = prepare(&load_kb(&kb)?, &cfg)?;
            if dump_normal {
                write!(w, "{}", pretty::kb(&p.normalized))?;
                writeln!(w)?;
            }
            write!(w, "{}", sexpr::phi(&p.phi))?;
            Ok(0)
        }
        Command::Stats { kb } => {
            let p = prepare(&load_kb(&kb)?, &cfg)?;
            let s = &p.grounding.stats;
            if o.json {
                let out = json!({
                    "v": 1, "k": s.k, "m": s.m, "r": s.r, "l": s.l,
                    "ground": s.ground, "instances": s.instances, "clauses": s.clauses,
                });
                writeln!(w, "{out}")?;
            } else {
                writeln!(
                    w,
                    "k {}\nm {}\nr {}\nl {}\nground {}\ninstances {}\nclauses {}",
                    s.k, s.m, s.r, s.l, s.ground, s.instances, s.clauses
                )?;
            }
            Ok(0)
        }
        Command::Oracle { kb, bits } => {
            let (m, stats) = dl_consistent_with_stats(&load_kb(&kb)?, bits)?;
            if o.json {
                writeln!(
                    w,
                    "{}",
                    json!({ "v": 1, "consistent": m.is_some(), "layouts": stats.layouts, "nodes": stats.nodes })
                )?;
            } else {
                match &m {
                    Some(i) => write!(w, "consistent\n{i}"),
                    None => writeln!(w, "inconsistent"),
                }?;
            }
            Ok(if m.is_some() { 0 } else { 1 })
        }
        Command::Generate { query } => {
            let mut rng = corpus::rng(o.seed);
            let kb = corpus::random_kb(&mut rng, &Bounds::default());
            write!(w, "{}", pretty::kb(&kb))?;
            if query {
                writeln!(w, "\n{}", pretty::query(&corpus::random_query(&mut rng, &kb.signature, 2)))?;
            }
            Ok(0)
        }
    }
}

fn lines(p: &Prepared, psi: &PsiQ, answers: &BTreeSet<Answer>, raw: bool) -> Vec<String> {
    if raw {
        render_raw(answers, psi, &p.grounding.vars)
    } else {
        p.map_back(answers, psi).iter().map(|s| s.to_string()).collect()
    }
}

fn print_trace(p: &Prepared, trace: &[TraceEvent]) {
    let vars = &p.grounding.vars;
    for ev in trace {
        let rule = match ev.rule {
            Rule::E => "E",
            Rule::Pb => "PB",
        };
        eprintln!("{rule} {} {}", ev.branch, sexpr::ground_clause(vars, std::slice::from_ref(&ev.literal)));
    }
}
