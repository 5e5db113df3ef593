//! `bimanin`: dimension tables, explicit bases, verification suites, the
//! diagonal section and cusp-graph queries from the command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bimanin_core::action::{Parity, PolyVec};
use bimanin_core::algebra::Ideal;
use bimanin_core::checks::{run_suite, Check, Suite, SuiteOptions};
use bimanin_core::linalg::SubspaceBasis;
use bimanin_core::modular::{cusp_distance, cusp_height, cusp_path, Cusp};
use bimanin_core::spaces::{basis_report, reference_row, table_csv, BasisCache, Engine, TableRow, REFERENCE_TABLE};
use bimanin_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

/// Largest weight computed without `--allow-heavy`.
const LIGHT_WEIGHT: usize = 24;

#[derive(Parser)]
#[command(name = "bimanin", version, about = "Exact relation spaces for pairs of period polynomials")]
struct Cli {
    /// Output format; defaults to csv for `table` and text elsewhere.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for table rows (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print cache and kernel counters to stderr when done.
    #[arg(long, global = true)]
    stats: bool,
    /// Directory for cached bases; BIMANIN_CACHE takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of W and E on even and odd parts.
    Table(TableArgs),
    /// Canonical basis of one of the spaces.
    Basis(BasisArgs),
    /// Run verification suites; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Antecedent in V[I_D] of a period-relation polynomial.
    Section(SectionArgs),
    /// Paths, distances and heights in the Farey graph.
    Cusp(CuspArgs),
}

#[derive(Args)]
struct TableArgs {
    /// Rows of the reference table with both weights at most N.
    #[arg(long, value_name = "N")]
    w_max: Option<usize>,
    /// Explicit pairs such as `10,10 22,22`.
    #[arg(long, num_args = 1.., value_name = "W1,W2")]
    pairs: Vec<String>,
    /// Every even pair 2 <= w1 <= w2 <= N instead of the reference rows.
    #[arg(long, requires = "w_max")]
    all_pairs: bool,
    /// Permit weights above 24; these rows take minutes each.
    #[arg(long)]
    allow_heavy: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    /// W_{w1} in one variable.
    W1,
    /// W_{w1,w2}.
    W2,
    #[value(name = "ID")]
    Id,
    #[value(name = "IH")]
    Ih,
    #[value(name = "IV")]
    Iv,
    E,
    #[value(name = "Wminus")]
    Wminus,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long, value_enum, ignore_case = true)]
    space: Space,
    #[arg(long)]
    w1: usize,
    #[arg(long, default_value_t = 0)]
    w2: usize,
    /// even, odd or both.
    #[arg(long, default_value = "both")]
    parity: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// identities, theta2, triangles36, properties or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Corrupt one input so the suite fails.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct SectionArgs {
    #[arg(long)]
    w1: usize,
    #[arg(long)]
    w2: usize,
    /// Polynomial in Z (or X) of weight w1 + w2.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CuspArgs {
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    path: Option<Vec<String>>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    distance: Option<Vec<String>>,
    #[arg(long, value_name = "A", allow_hyphen_values = true)]
    height: Option<String>,
}

/// Failure with its exit status: 1 for failed verification, 2 for bad input.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn verification(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Verification(_) | Error::Cache(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Command output, plus a verification failure that should still print it.
struct Report {
    body: String,
    failed: Option<String>,
}

impl From<String> for Report {
    fn from(body: String) -> Self {
        Report { body, failed: None }
    }
}

type CmdResult = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(format!("--threads: {e}")))?;
    }
    let cache = BasisCache::from_env_or(cli.cache_dir.as_deref())?;
    let engine = Engine::with_cache(cache);
    let outcome = match &cli.command {
        Command::Table(a) => table(a, cli.format.unwrap_or(Format::Csv), &engine),
        Command::Basis(a) => basis(a, cli.format.unwrap_or(Format::Text), &engine),
        Command::Verify(a) => verify(a, cli.format.unwrap_or(Format::Text), &engine),
        Command::Section(a) => section(a, cli.format.unwrap_or(Format::Text), &engine),
        Command::Cusp(a) => cusp(a, cli.format.unwrap_or(Format::Text)),
    };
    let result = outcome.and_then(|r| {
        emit(cli.out.as_ref(), &r.body)?;
        r.failed.map_or(Ok(()), |m| Err(Failure::verification(m)))
    });
    if cli.stats {
        eprintln!("{}", serde_json::to_string(&engine.stats()).unwrap());
    }
    result
}

fn emit(out: Option<&PathBuf>, body: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| Failure { code: 1, message: e.to_string() })
        }
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::usage(format!("invalid pair {s:?}; expected W1,W2"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn table(a: &TableArgs, format: Format, engine: &Engine) -> CmdResult {
    let mut pairs = vec![];
    for p in &a.pairs {
        for item in p.split([';', ' ']).filter(|s| !s.is_empty()) {
            pairs.push(parse_pair(item)?);
        }
    }
    if pairs.is_empty() {
        let n = a.w_max.unwrap_or(LIGHT_WEIGHT);
        if n < 2 || n % 2 == 1 {
            return Err(Failure::usage(format!("--w-max must be even and at least 2, got {n}")));
        }
        pairs = if a.all_pairs {
            (2..=n).step_by(2).flat_map(|w1| (w1..=n).step_by(2).map(move |w2| (w1, w2))).collect()
        } else {
            REFERENCE_TABLE.iter().filter(|r| r.w1.max(r.w2) <= n).map(|r| (r.w1, r.w2)).collect()
        };
    }
    for &(w1, w2) in &pairs {
        if w1 < 2 || w2 < 2 || w1 % 2 == 1 || w2 % 2 == 1 {
            return Err(Failure::usage(format!("weights must be even and at least 2, got ({w1},{w2})")));
        }
        if w1.max(w2) > LIGHT_WEIGHT && !a.allow_heavy {
            return Err(Failure::usage(format!("({w1},{w2}) exceeds weight {LIGHT_WEIGHT}; pass --allow-heavy")));
        }
    }
    let rows: Vec<TableRow> = pairs
        .par_iter()
        .map(|&(w1, w2)| engine.table_row(w1, w2))
        .collect::<Result<_, _>>()?;
    let mismatches: Vec<String> = rows
        .iter()
        .filter(|r| reference_row(r.w1, r.w2).is_some_and(|e| e != **r))
        .map(|r| format!("({},{})", r.w1, r.w2))
        .collect();
    let body = match format {
        Format::Csv => table_csv(&rows),
        Format::Json => serde_json::to_string_pretty(&rows).unwrap() + "\n",
        Format::Text => {
            let mut s = format!(
                "{:>3} {:>3} | {:>6} {:>6} {:>4} | {:>6} {:>6} {:>4} | reference\n",
                "w1", "w2", "W+", "E+", "gap", "W-", "E-", "gap"
            );
            for r in &rows {
                let status = match reference_row(r.w1, r.w2) {
                    Some(e) if e == *r => "match",
                    Some(_) => "MISMATCH",
                    None => "-",
                };
                s += &format!(
                    "{:>3} {:>3} | {:>6} {:>6} {:>4} | {:>6} {:>6} {:>4} | {status}\n",
                    r.w1, r.w2, r.dim_w_pair, r.dim_e_pair, r.gap_pair, r.dim_w_imp, r.dim_e_imp, r.gap_imp
                );
            }
            s
        }
    };
    let failed = (!mismatches.is_empty())
        .then(|| format!("rows differ from the reference table: {}", mismatches.join(" ")));
    Ok(Report { body, failed })
}

fn basis(a: &BasisArgs, format: Format, engine: &Engine) -> CmdResult {
    let parity: Parity = a.parity.parse()?;
    let (w1, w2) = (a.w1, a.w2);
    let (label, b, w2): (&str, SubspaceBasis, usize) = match a.space {
        Space::W1 => ("W1", engine.w_single(w1, parity)?, 0),
        Space::W2 => ("I2", engine.w_pair(w1, w2, parity)?, w2),
        Space::Id => ("ID", engine.v_ideal(w1, w2, Ideal::ID, parity)?, w2),
        Space::Ih => ("IH", engine.v_ideal(w1, w2, Ideal::IH, parity)?, w2),
        Space::Iv => ("IV", engine.v_ideal(w1, w2, Ideal::IV, parity)?, w2),
        Space::E => ("E", engine.e_space(w1, w2, parity)?, w2),
        Space::Wminus => {
            if parity != Parity::Both {
                return Err(Failure::usage("Wminus is computed without a parity split"));
            }
            ("I2minus", engine.w_minus(w1, w2)?, w2)
        }
    };
    Ok(Report::from(match format {
        Format::Json => {
            serde_json::to_string_pretty(&basis_report(&b, w1, w2, label, parity.name())).unwrap() + "\n"
        }
        Format::Csv => {
            let mut s = String::from("vector,m1,m2,num,den\n");
            for (i, v) in basis_report(&b, w1, w2, label, parity.name()).basis.iter().enumerate() {
                for c in v {
                    s += &format!("{i},{},{},{},{}\n", c.m1, c.m2, c.num, c.den);
                }
            }
            s
        }
        Format::Text => {
            let mut s = format!("# {label} w1={w1} w2={w2} parity={} dim={}\n", parity.name(), b.dim());
            for r in b.rows() {
                s += &format!("{}\n", PolyVec::from_coeffs(w1, w2, r.clone())?);
            }
            s
        }
    }))
}

fn verify(a: &VerifyArgs, format: Format, engine: &Engine) -> CmdResult {
    let suite: Suite = a.suite.parse()?;
    let opts = SuiteOptions { inject_fault: a.inject_fault, seed: a.seed, samples: a.samples };
    let checks = run_suite(suite, &opts, engine)?;
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
    let body = match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({ "suite": a.suite, "passed": failed.is_empty(), "checks": checks }))
                .unwrap()
                + "\n"
        }
        Format::Csv => {
            let mut s = String::from("check,status,witness\n");
            for c in &checks {
                s += &format!("\"{}\",{},\"{}\"\n", c.check.replace('"', "\"\""), if c.passed() { "pass" } else { "fail" }, c.witness.replace('"', "\"\""));
            }
            s
        }
        Format::Text => {
            let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
            s += &format!("{} of {} checks passed\n", checks.len() - failed.len(), checks.len());
            s
        }
    };
    Ok(Report { body, failed: failed.first().map(|c| format!("{}: {}", c.check, c.witness)) })
}

fn section(a: &SectionArgs, format: Format, engine: &Engine) -> CmdResult {
    for w in [a.w1, a.w2] {
        if w % 2 == 1 {
            return Err(Failure::usage(format!("weights must be even, got {w}")));
        }
    }
    let p = PolyVec::parse(&a.poly, a.w1 + a.w2, 0)?;
    let q = engine.section_id(&p, a.w1, a.w2).map_err(|e| match e {
        Error::Verification(m) => Failure::verification(m),
        other => other.into(),
    })?;
    Ok(Report::from(match format {
        Format::Json => {
            let coeffs: Vec<_> = q
                .terms()
                .map(|((m1, m2), c)| json!({"m1": m1, "m2": m2, "num": c.numer().to_string(), "den": c.denom().to_string()}))
                .collect();
            serde_json::to_string_pretty(&json!({
                "w1": a.w1, "w2": a.w2, "input": p.to_string(), "section": q.to_string(), "coefficients": coeffs
            }))
            .unwrap()
                + "\n"
        }
        _ => format!("{q}\n"),
    }))
}

fn parse_cusp(s: &str) -> Result<Cusp, Failure> {
    s.parse::<Cusp>().map_err(|e| Failure::usage(e.to_string()))
}

fn cusp(a: &CuspArgs, format: Format) -> CmdResult {
    let json_out = format == Format::Json;
    if let Some(v) = &a.path {
        let (x, y) = (parse_cusp(&v[0])?, parse_cusp(&v[1])?);
        let chain = cusp_path(&x, &y)?;
        if json_out {
            let steps: Vec<_> = chain
                .iter()
                .map(|g| json!({"matrix": format!("{g:?}"), "word": g.word(), "from": g.at_infinity().to_string(), "to": g.at_zero().to_string()}))
                .collect();
            return Ok(Report::from(serde_json::to_string_pretty(&json!({"from": x.to_string(), "to": y.to_string(), "length": chain.len(), "steps": steps})).unwrap() + "\n"));
        }
        let mut s = String::new();
        for g in &chain {
            s += &format!("{g:?}  {} -> {}\n", g.at_infinity(), g.at_zero());
        }
        return Ok(s.into());
    }
    if let Some(v) = &a.distance {
        let d = cusp_distance(&parse_cusp(&v[0])?, &parse_cusp(&v[1])?);
        return Ok(if json_out { format!("{}\n", json!({"distance": d})) } else { format!("{d}\n") }.into());
    }
    let h = cusp_height(&parse_cusp(a.height.as_deref().expect("clap enforces one option"))?);
    Ok(if json_out { format!("{}\n", json!({"height": h})) } else { format!("{h}\n") }.into())
}
