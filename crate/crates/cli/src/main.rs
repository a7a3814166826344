use clap::{Args, Parser, Subcommand, ValueEnum};
use reprzeta::corpus::{self, CorpusEntry, Filter, Status};
use reprzeta::engine::{check_invariants, topological_rep_zeta, EngineConfig, EngineError};
use reprzeta::euler::OracleMode;
use reprzeta::lie::{parse_expression, NilpotentLieAlgebra};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

/// `println!` that stops quietly when stdout is closed.
macro_rules! outln {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "reprzeta", version, about = "Topological representation zeta functions of nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Off,
    Crosscheck,
    Only,
}

impl From<Oracle> for OracleMode {
    fn from(o: Oracle) -> Self {
        match o {
            Oracle::Off => OracleMode::Off,
            Oracle::Crosscheck => OracleMode::Crosscheck,
            Oracle::Only => OracleMode::Only,
        }
    }
}

#[derive(Args)]
struct Source {
    /// Algebra file (JSON with name, dim, brackets).
    #[arg(long, conflicts_with = "preset")]
    input: Option<PathBuf>,
    /// Catalog name or expression, e.g. `L_{4,3}`, `abelian:5`, `L_{3,2} + L_{3,2}`.
    #[arg(long)]
    preset: Option<String>,
    /// Apply the dual-number extension; repeatable.
    #[arg(long, action = clap::ArgAction::Count)]
    eps: u8,
}

#[derive(Args)]
struct Engine {
    #[arg(long, default_value_t = 16)]
    depth: usize,
    #[arg(long, value_enum, default_value = "off")]
    oracle: Oracle,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

impl Engine {
    fn config(&self, trace: bool) -> EngineConfig {
        EngineConfig { depth_bound: self.depth, oracle: self.oracle.into(), jobs: self.jobs, trace, ..Default::default() }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the zeta function of one algebra.
    Compute {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        engine: Engine,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        /// Write engine events as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run the regression corpus and compare exactly.
    Corpus {
        /// Corpus file; the built-in corpus by default.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Only entries whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        weight: Option<usize>,
        /// `table1` or `eps`.
        #[arg(long)]
        group: Option<String>,
        /// Include entries marked slow.
        #[arg(long)]
        slow: bool,
        /// Print canonical JSON of all results instead of the table.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        engine: Engine,
    },
    /// Compute and verify the structural invariants of the result.
    Check {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        engine: Engine,
    },
}

fn load_algebra(src: &Source) -> Result<NilpotentLieAlgebra, String> {
    let mut l = match (&src.input, &src.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            reprzeta::io::parse_algebra_text(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        (None, Some(p)) => parse_expression(p).map_err(|e| e.to_string())?,
        (None, None) => return Err("one of --input or --preset is required".into()),
    };
    for _ in 0..src.eps {
        let name = l.name.clone().map(|n| format!("{n}[ε]"));
        l = l.dual_number_extension();
        l.name = name;
    }
    Ok(l)
}

fn engine_failure(e: EngineError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        EngineError::Reduction { .. } => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn compute(source: Source, engine: Engine, format: Format, trace: Option<PathBuf>) -> ExitCode {
    let l = match load_algebra(&source) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let t = Instant::now();
    let r = match topological_rep_zeta(&l, &engine.config(trace.is_some())) {
        Ok(r) => r,
        Err(e) => return engine_failure(e),
    };
    let elapsed = t.elapsed();
    if let (Some(path), Some(events)) = (&trace, &r.trace) {
        let mut text = String::new();
        for e in events {
            text.push_str(&serde_json::to_string(e).expect("serializable"));
            text.push('\n');
        }
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    match format {
        Format::Plain => {
            outln!("{}", r.zeta);
            outln!("omega {}", reprzeta::exact::format_rational(&r.omega));
            outln!("weight {}", r.weight);
            outln!("time {:.3}s", elapsed.as_secs_f64());
        }
        Format::Latex => {
            outln!("{}", reprzeta::format::latex(&r.zeta));
            eprintln!("omega {} weight {} time {:.3}s", reprzeta::exact::format_rational(&r.omega), r.weight, elapsed.as_secs_f64());
        }
        Format::Json => {
            outln!("{}", reprzeta::format::json(&r.zeta, &r.omega, r.weight));
            eprintln!("time {:.3}s", elapsed.as_secs_f64());
        }
    }
    ExitCode::SUCCESS
}

fn run_corpus(file: Option<PathBuf>, filter: Filter, json: bool, engine: Engine) -> ExitCode {
    let entries: Vec<CorpusEntry> = match file {
        Some(path) => match std::fs::read_to_string(&path).map_err(|e| e.to_string()).and_then(|t| corpus::load(&t).map_err(|e| e.to_string())) {
            Ok(e) => e,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
        None => corpus::builtin(),
    };
    let selected: Vec<CorpusEntry> = entries.into_iter().filter(|e| filter.accepts(e)).collect();
    let t = Instant::now();
    let reports = corpus::run(&selected, &engine.config(false), engine.jobs);
    let total = t.elapsed();
    if json {
        outln!("{}", corpus::canonical_json(&reports));
    } else {
        outln!("{:<22} {:>3} {:>6} {:>9}  result", "entry", "dim", "weight", "time");
        for r in &reports {
            let weight = match (&r.result, r.expected_weight) {
                (Some(z), Some(w)) if z.weight != w => format!("{}({w})", z.weight),
                (Some(z), _) => z.weight.to_string(),
                _ => "-".into(),
            };
            let status = match &r.status {
                Status::Match => "ok".to_string(),
                Status::Mismatch { expected } => {
                    format!("MISMATCH\n    got      {}\n    expected {expected}", r.result.as_ref().expect("result").zeta)
                }
                Status::Failed(m) => format!("ERROR {m}"),
                Status::ReductionFailed(m) => format!("REDUCTION FAILED {m}"),
            };
            outln!("{:<22} {:>3} {:>6} {:>8.2}s  {status}", r.name, r.dim, weight, r.elapsed.as_secs_f64());
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    eprintln!("{passed}/{} exact matches in {:.2}s", reports.len(), total.as_secs_f64());
    if passed == reports.len() {
        ExitCode::SUCCESS
    } else if reports.iter().any(|r| matches!(r.status, Status::ReductionFailed(_))) {
        ExitCode::from(2)
    } else {
        ExitCode::from(1)
    }
}

fn check(source: Source, engine: Engine) -> ExitCode {
    let l = match load_algebra(&source) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let r = match topological_rep_zeta(&l, &engine.config(false)) {
        Ok(r) => r,
        Err(e) => return engine_failure(e),
    };
    let report = check_invariants(&r.zeta, l.derived_basis().len());
    outln!("{}", r.zeta);
    for c in &report.hard {
        outln!("{:<24} {}  {}", c.name, if c.ok { "pass" } else { "FAIL" }, c.detail);
    }
    for c in &report.soft {
        outln!("{:<24} {}  {}", c.name, if c.ok { "holds" } else { "does not hold" }, c.detail);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Compute { source, engine, format, trace } => compute(source, engine, format, trace),
        Cmd::Corpus { file, filter, dim, weight, group, slow, json, engine } => {
            let f = Filter { name: filter, dim, weight, group, include_slow: slow };
            run_corpus(file, f, json, engine)
        }
        Cmd::Check { source, engine } => check(source, engine),
    }
}
