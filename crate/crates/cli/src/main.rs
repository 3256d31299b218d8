//! `graphcx`: Betti tables, verification runs and exports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.

mod cache;
mod export;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphcx::bigraded::ComplexId;
use graphcx::diagrams::Config;
use graphcx::sseq::{self, BettiRow, BettiTable, Claim, Session, VerificationReport, MAX_POINTS_CHECKED};

use cache::Cache;

const BETTI_SCHEMA: &str = include_str!("../schema/betti-table.schema.json");
const EXPORT_SCHEMA: &str = include_str!("../schema/export.schema.json");

#[derive(Parser)]
#[command(
    name = "graphcx",
    version,
    about = "Exact homology of graph complexes and their algebraic models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Betti table of a complex.
    Betti {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        target: Target,
    },
    /// Run verification claims; exit 1 if any cell fails.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Run every claim.
        #[arg(long)]
        all: bool,
        /// A claim to run (repeatable).
        #[arg(long = "claim", value_name = "NAME")]
        claims: Vec<String>,
    },
    /// Write bases, matrices, Betti table and cycle representatives.
    Export {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        target: Target,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-parse an exported diagram basis and check its canonical forms.
    Import { file: PathBuf },
    /// Print a JSON schema for the exported files.
    Schema {
        #[arg(value_enum, default_value_t = SchemaKind::Betti)]
        kind: SchemaKind,
    },
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Ambient dimension; repeat for a parity sweep.
    #[arg(long = "d", value_name = "D", required = true)]
    d: Vec<u32>,
    #[arg(long, default_value_t = 3)]
    max_complexity: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, env = "GRAPHCX_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Target {
    /// totA, totA-indec, totD, totP, totL, Dn or Pn.
    #[arg(long)]
    complex: String,
    /// Number of points for Dn / Pn.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemaKind {
    Betti,
    Export,
}

/// A usage, configuration or I/O error (exit code 2).
struct Failure(String);

fn usage(message: impl ToString) -> Failure {
    Failure(message.to_string())
}

type Outcome = Result<bool, Failure>;

impl Target {
    fn id(&self) -> Result<ComplexId, Failure> {
        let lower = self.complex.to_ascii_lowercase();
        match (lower.as_str(), self.n) {
            ("dn", Some(n)) => Ok(ComplexId::Dn(n)),
            ("pn", Some(n)) => Ok(ComplexId::Pn(n)),
            ("dn" | "pn", None) => Err(usage(format!("--complex {} needs --n", self.complex))),
            _ => self.complex.parse().map_err(usage),
        }
    }
}

impl RunArgs {
    fn configs(&self) -> Result<Vec<Config>, Failure> {
        if self.max_complexity == 0 {
            return Err(usage("--max-complexity must be at least 1"));
        }
        self.d
            .iter()
            .map(|&d| Config::new(d, self.max_complexity).map_err(usage))
            .collect()
    }

    fn cache(&self) -> Result<Option<Cache>, Failure> {
        self.cache_dir
            .as_deref()
            .map(|dir| Cache::open(dir).map_err(|e| usage(format!("{}: {e}", dir.display()))))
            .transpose()
    }
}

/// A session whose complexes come from the cache when possible, and are
/// written back to it otherwise.
fn session(cfg: Config, cache: Option<&Cache>, ids: &[ComplexId]) -> Result<Session, Failure> {
    let s = Session::new(cfg);
    for &id in ids {
        match cache.and_then(|c| c.load(id, &cfg)) {
            Some(c) => s.insert(c),
            None => {
                let c = s.complex(id).map_err(usage)?;
                if let Some(cache) = cache {
                    cache.store(&c).map_err(|e| usage(format!("cache write: {e}")))?;
                }
            }
        }
    }
    Ok(s)
}

fn all_ids(cfg: &Config) -> Vec<ComplexId> {
    let mut ids = vec![
        ComplexId::TotA,
        ComplexId::TotAIndecomposable,
        ComplexId::TotD,
        ComplexId::TotP,
        ComplexId::TotL,
    ];
    for n in 1..=MAX_POINTS_CHECKED.min(cfg.max_points) {
        ids.push(ComplexId::Dn(n));
        ids.push(ComplexId::Pn(n));
    }
    ids
}

fn emit(text: &str) -> Result<(), Failure> {
    io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| usage(format!("stdout: {e}")))
}

fn csv_string<T: serde::Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(usage)?;
    }
    String::from_utf8(w.into_inner().map_err(usage)?).map_err(usage)
}

fn json_string<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(usage)?;
    s.push('\n');
    Ok(s)
}

fn betti_text(t: &BettiTable) -> String {
    let mut s = format!("# {} d={}\n#  i  level  degree      p      q  dim\n", t.complex, t.d);
    for c in &t.cells {
        let (p, q) = c.pq();
        s.push_str(&format!(
            "{:>4} {:>6} {:>7} {:>6} {:>6} {:>4}\n",
            c.i, c.level, c.degree, p, q, c.dim
        ));
    }
    s
}

fn cmd_betti(run: &RunArgs, target: &Target) -> Outcome {
    let id = target.id()?;
    let cache = run.cache()?;
    let mut tables = Vec::new();
    for cfg in run.configs()? {
        let s = session(cfg, cache.as_ref(), &[id])?;
        tables.push(s.betti(id).map_err(usage)?);
    }
    let rows: Vec<BettiRow> = tables.iter().flat_map(BettiTable::rows).collect();
    emit(&match run.format {
        Format::Json => json_string(&rows)?,
        Format::Csv => csv_string(&rows)?,
        Format::Text => tables.iter().map(betti_text).collect::<Vec<_>>().join("\n"),
    })?;
    Ok(true)
}

#[derive(serde::Serialize)]
struct VerdictRow<'a> {
    claim: &'a str,
    d: u32,
    label: &'a str,
    i: Option<usize>,
    degree: Option<i64>,
    expected: i64,
    actual: i64,
    pass: bool,
}

fn report_text(r: &VerificationReport) -> String {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let mut s = format!(
        "[{status}] d={} i<={} {} ({} cells)\n",
        r.d,
        r.max_complexity,
        r.claim,
        r.cells.len()
    );
    for v in r.failures() {
        s.push_str(&format!(
            "    {} i={:?} degree={:?}: expected {}, got {}\n",
            v.label, v.i, v.degree, v.expected, v.actual
        ));
    }
    for rep in &r.representatives {
        let terms: Vec<String> = rep.terms.iter().map(|(b, c)| format!("({c}) [{b}]")).collect();
        s.push_str(&format!(
            "    class i={} degree={} certified={}: {}\n",
            rep.i,
            rep.degree,
            rep.certified,
            terms.join(" + ")
        ));
    }
    s
}

fn cmd_verify(run: &RunArgs, all: bool, names: &[String]) -> Outcome {
    let claims: Vec<Claim> = if all || names.is_empty() {
        Claim::ALL.to_vec()
    } else {
        names
            .iter()
            .map(|n| n.parse().map_err(usage))
            .collect::<Result<_, _>>()?
    };
    let cache = run.cache()?;
    let mut reports = Vec::new();
    for cfg in run.configs()? {
        let s = session(cfg, cache.as_ref(), &all_ids(&cfg))?;
        for &c in &claims {
            reports.push(sseq::verify(c, &s).map_err(usage)?);
        }
    }
    emit(&match run.format {
        Format::Json => json_string(&reports)?,
        Format::Csv => {
            let rows: Vec<VerdictRow> = reports
                .iter()
                .flat_map(|r| {
                    r.cells.iter().map(move |v| VerdictRow {
                        claim: r.claim.name(),
                        d: r.d,
                        label: &v.label,
                        i: v.i,
                        degree: v.degree,
                        expected: v.expected,
                        actual: v.actual,
                        pass: v.pass,
                    })
                })
                .collect();
            csv_string(&rows)?
        }
        Format::Text => reports.iter().map(report_text).collect(),
    })?;
    Ok(reports.iter().all(VerificationReport::passed))
}

fn cmd_export(run: &RunArgs, target: &Target, out: &std::path::Path) -> Outcome {
    let id = target.id()?;
    let cache = run.cache()?;
    for cfg in run.configs()? {
        let s = session(cfg, cache.as_ref(), &[id])?;
        let c = s.complex(id).map_err(usage)?;
        for path in export::export(&c, out).map_err(usage)? {
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(true)
}

fn cmd_import(file: &std::path::Path) -> Outcome {
    let (n, mismatches) = export::import(file).map_err(usage)?;
    for m in &mismatches {
        eprintln!("not canonical: {m}");
    }
    emit(&format!("{} records, {} mismatches\n", n, mismatches.len()))?;
    Ok(mismatches.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Betti { run, target } => cmd_betti(run, target),
        Command::Verify { run, all, claims } => cmd_verify(run, *all, claims),
        Command::Export { run, target, out } => cmd_export(run, target, out),
        Command::Import { file } => cmd_import(file),
        Command::Schema { kind } => emit(match kind {
            SchemaKind::Betti => BETTI_SCHEMA,
            SchemaKind::Export => EXPORT_SCHEMA,
        })
        .map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(message)) => {
            eprintln!("graphcx: {message}");
            ExitCode::from(2)
        }
    }
}
