//! `immanants` — batch verification runs for block-immanant moments of
//! Haar-random matrices.
//!
//! Subcommands:
//!
//! * `verify` — closed forms vs raw Weingarten-sum oracles (props 1-5)
//! * `conjecture` — exact multi-point certificate for the zonal/orthogonal
//!   dimension identity
//! * `mc` — Monte Carlo estimate vs exact value, with z-score
//! * `table` — exact value tables over (γ, N) grids
//!
//! Exit codes: 0 success/verified, 1 mathematical mismatch, 2 usage error.
//! Exact rationals are always serialized as `p/q`; pole points inside a
//! requested `N` range are skipped with a notice on stderr.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use immanants::conjecture::{certificate_window, check_conjecture, ConjectureReport};
use immanants::moments::{
    coe_imm_sq, oracle_coe, oracle_orth, oracle_prop1, oracle_prop2, oracle_prop5, orth_imm_sq,
    perm_poly_quad, unitary_imm_sq, unitary_per_4, Ensemble,
};
use immanants::montecarlo::mc_moment;
use immanants::partitions::{partitions_of, Partition};
use immanants::rational::{format_rat, rat, to_f64, Rat};

/// Inclusive integer range, parsed from `a..b` or a single `a`.
#[derive(Clone, Copy, Debug)]
struct IntRange {
    lo: i64,
    hi: i64,
}

impl IntRange {
    fn iter(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    fn len(self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }
}

impl std::str::FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad integer {t:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IntRange { lo, hi })
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Formula {
    Prop1,
    Prop2,
    Coe,
    Orth,
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Formula::Prop1 => "prop1",
            Formula::Prop2 => "prop2",
            Formula::Coe => "coe",
            Formula::Orth => "orth",
        })
    }
}

#[derive(Parser)]
#[command(
    name = "immanants",
    version,
    about = "Exact and Monte Carlo moments of immanants of Haar-random matrix blocks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compare a proposition's closed form against its raw oracle.
    Verify {
        /// Proposition number (1-5)
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        prop: u8,
        /// Block size n
        #[arg(long)]
        n: usize,
        /// Matrix size N, or inclusive range a..b
        #[arg(long = "N", value_name = "A..B")]
        big_n: IntRange,
    },
    /// Certify the zonal/orthogonal identity for every γ ⊢ n.
    Conjecture {
        /// Partition size n (≤ 6 without --force)
        #[arg(long)]
        n: usize,
        /// N range; defaults to the pole-free certificate window
        #[arg(long = "N", value_name = "A..B")]
        big_n: Option<IntRange>,
        /// Allow n beyond the tested bound of 6 (up to 8)
        #[arg(long)]
        force: bool,
    },
    /// Monte Carlo estimate vs the exact moment.
    Mc {
        #[arg(long)]
        ensemble: String,
        /// Immanant label, e.g. 2,1
        #[arg(long, value_parser = parse_partition)]
        gamma: Partition,
        #[arg(long = "N")]
        big_n: i64,
        /// Moment power: 2, or 4 (unitary permanent only)
        #[arg(long, default_value_t = 2)]
        power: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact value tables over (γ, N) grids.
    Table {
        #[arg(long, value_enum)]
        formula: Formula,
        /// Single immanant label
        #[arg(long, value_parser = parse_partition)]
        gamma: Option<Partition>,
        /// All γ ⊢ n (requires --n)
        #[arg(long)]
        gamma_all: bool,
        /// Block size n, or range for --formula prop2
        #[arg(long)]
        n: Option<IntRange>,
        #[arg(long = "N", value_name = "A..B")]
        big_n: IntRange,
    },
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyRecord {
    command: &'static str,
    prop: u8,
    ensemble: Option<String>,
    gamma: Option<String>,
    n: usize,
    #[serde(rename = "N")]
    big_n: i64,
    /// Coefficient index for proposition 5, empty otherwise.
    m: Option<usize>,
    exact: String,
    oracle: String,
    equal: bool,
}

#[derive(Serialize)]
struct ConjRecord {
    command: &'static str,
    n: usize,
    gamma: String,
    #[serde(rename = "tested_N")]
    tested_n: Vec<i64>,
    skipped_poles: Vec<i64>,
    verified: bool,
    first_failure: Option<immanants::conjecture::ConjectureFailure>,
}

/// Flat conjecture row for CSV output.
#[derive(Serialize)]
struct ConjCsvRecord {
    command: &'static str,
    n: usize,
    gamma: String,
    #[serde(rename = "first_N")]
    first_n: Option<i64>,
    #[serde(rename = "last_N")]
    last_n: Option<i64>,
    points_tested: usize,
    skipped_poles: String,
    verified: bool,
    #[serde(rename = "failure_N")]
    failure_n: Option<i64>,
    failure_lhs: Option<String>,
    failure_rhs: Option<String>,
}

#[derive(Serialize)]
struct McRecord {
    command: &'static str,
    ensemble: String,
    gamma: String,
    n: usize,
    #[serde(rename = "N")]
    big_n: i64,
    power: u32,
    samples: usize,
    seed: u64,
    exact: String,
    mean: f64,
    stderr: f64,
    z: f64,
}

#[derive(Serialize)]
struct TableRecord {
    command: &'static str,
    formula: String,
    gamma: Option<String>,
    n: usize,
    #[serde(rename = "N")]
    big_n: i64,
    exact: String,
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

fn open_sink(out: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn emit<T: Serialize>(
    records: &[T],
    format: Format,
    out: &Option<PathBuf>,
    text_line: impl Fn(&T) -> String,
) -> anyhow::Result<()> {
    let mut sink = open_sink(out)?;
    match format {
        Format::Text => {
            for r in records {
                writeln!(sink, "{}", text_line(r))?;
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut sink, records)?;
            writeln!(sink)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn skip_notice(what: &str, big_n: i64) {
    eprintln!("notice: {what} has a pole at N = {big_n}; point skipped");
}

// ---------------------------------------------------------------------------
// Runners
// ---------------------------------------------------------------------------

fn run_verify(prop: u8, n: usize, big_n: IntRange, format: Format, out: &Option<PathBuf>) -> anyhow::Result<u8> {
    let max_n = match prop {
        1 => 4,
        2 => 2,
        3 => 3,
        4 => 4,
        5 => 3,
        _ => unreachable!("clap range"),
    };
    if n == 0 || n > max_n {
        bail!("--n for proposition {prop} must be in 1..={max_n} (oracle bound)");
    }

    let mut records: Vec<VerifyRecord> = Vec::new();
    let record = |gamma: Option<&Partition>,
                  ensemble: Option<Ensemble>,
                  big_n: i64,
                  m: Option<usize>,
                  exact: &Rat,
                  oracle: &Rat,
                  equal: bool| VerifyRecord {
        command: "verify",
        prop,
        ensemble: ensemble.map(|e| e.to_string()),
        gamma: gamma.map(|g| g.to_string()),
        n,
        big_n,
        m,
        exact: format_rat(exact),
        oracle: format_rat(oracle),
        equal,
    };

    for nn in big_n.iter() {
        match prop {
            1 => {
                for gamma in partitions_of(n) {
                    let (exact, oracle) = match (unitary_imm_sq(&gamma, nn), oracle_prop1(&gamma, nn)) {
                        (Ok(a), Ok(b)) => (a, b),
                        _ => {
                            skip_notice("proposition 1", nn);
                            continue;
                        }
                    };
                    let equal = exact == oracle;
                    records.push(record(Some(&gamma), Some(Ensemble::Unitary), nn, None, &exact, &oracle, equal));
                }
            }
            2 => {
                let (exact, oracle) = match (unitary_per_4(n, nn), oracle_prop2(n, nn)) {
                    (Ok(a), Ok(b)) => (a, b),
                    _ => {
                        skip_notice("proposition 2", nn);
                        continue;
                    }
                };
                let equal = exact == oracle;
                records.push(record(None, Some(Ensemble::Unitary), nn, None, &exact, &oracle, equal));
            }
            3 => {
                for gamma in partitions_of(n) {
                    let (exact, oracle) = match (coe_imm_sq(&gamma, nn), oracle_coe(&gamma, nn)) {
                        (Ok(a), Ok(b)) => (a, b),
                        _ => {
                            skip_notice("proposition 3", nn);
                            continue;
                        }
                    };
                    let equal = exact == oracle;
                    records.push(record(Some(&gamma), Some(Ensemble::Coe), nn, None, &exact, &oracle, equal));
                }
            }
            4 => {
                for gamma in partitions_of(n) {
                    let (exact, oracle) = match (orth_imm_sq(&gamma, nn), oracle_orth(&gamma, nn)) {
                        (Ok(a), Ok(b)) => (a, b),
                        _ => {
                            skip_notice("proposition 4", nn);
                            continue;
                        }
                    };
                    let equal = exact == oracle;
                    records.push(record(Some(&gamma), Some(Ensemble::Orthogonal), nn, None, &exact, &oracle, equal));
                }
            }
            5 => {
                for ensemble in [Ensemble::Unitary, Ensemble::Orthogonal] {
                    let (closed, oracle) = match (perm_poly_quad(n, nn, ensemble), oracle_prop5(n, nn, ensemble)) {
                        (Ok(a), Ok(b)) => (a, b),
                        _ => {
                            skip_notice("proposition 5", nn);
                            continue;
                        }
                    };
                    let zero = rat(0);
                    for m in 0..=n {
                        let e = n - m; // exponent of (z₁z₂)
                        let diag_ok = oracle[e][e] == closed[m];
                        let row_ok = (0..=n).all(|e2| e2 == e || oracle[e][e2] == zero);
                        records.push(record(
                            None,
                            Some(ensemble),
                            nn,
                            Some(m),
                            &closed[m],
                            &oracle[e][e],
                            diag_ok && row_ok,
                        ));
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    let all_equal = records.iter().all(|r| r.equal);
    emit(&records, format, out, |r| {
        let mut line = format!("verify prop {} ", r.prop);
        if let Some(g) = &r.gamma {
            let _ = write!(line, "gamma={g} ");
        }
        if let Some(e) = &r.ensemble {
            let _ = write!(line, "ensemble={e} ");
        }
        if let Some(m) = r.m {
            let _ = write!(line, "m={m} ");
        }
        let _ = write!(
            line,
            "n={} N={}: exact {} oracle {} equal={}",
            r.n, r.big_n, r.exact, r.oracle, r.equal
        );
        line
    })?;
    Ok(if all_equal { 0 } else { 1 })
}

fn run_conjecture(
    n: usize,
    big_n: Option<IntRange>,
    force: bool,
    format: Format,
    out: &Option<PathBuf>,
) -> anyhow::Result<u8> {
    if n == 0 {
        bail!("--n must be positive");
    }
    if n > 6 && !force {
        bail!("--n {n} exceeds the verified bound of 6; pass --force to run anyway");
    }
    if n > 8 {
        bail!("--n {n} is out of reach of the zonal-function tables (hard cap 8)");
    }
    if n > 6 {
        eprintln!(
            "warning: n = {n} is untested territory; the identity was verified exhaustively only for n <= 6"
        );
    }
    let (lo, hi) = match big_n {
        Some(r) => (r.lo, r.hi),
        None => certificate_window(n),
    };
    let reports = check_conjecture(n, lo, hi);
    let all_verified = reports.iter().all(|r| r.verified);

    match format {
        Format::Csv => {
            let rows: Vec<ConjCsvRecord> = reports.iter().map(conj_csv_row).collect();
            emit(&rows, format, out, |_| unreachable!("csv only"))?;
        }
        _ => {
            let rows: Vec<ConjRecord> = reports
                .into_iter()
                .map(|r| ConjRecord {
                    command: "conjecture",
                    n: r.n,
                    gamma: r.gamma.to_string(),
                    tested_n: r.tested_n,
                    skipped_poles: r.skipped_poles,
                    verified: r.verified,
                    first_failure: r.first_failure,
                })
                .collect();
            emit(&rows, format, out, |r| {
                let mut line = format!(
                    "conjecture n={} gamma={}: tested {} points in [{lo}..{hi}]",
                    r.n,
                    r.gamma,
                    r.tested_n.len()
                );
                if !r.skipped_poles.is_empty() {
                    let _ = write!(line, " ({} poles skipped)", r.skipped_poles.len());
                }
                let _ = write!(line, " verified={}", r.verified);
                if let Some(f) = &r.first_failure {
                    let _ = write!(line, " FIRST FAILURE at N={}: lhs {} rhs {}", f.big_n, f.lhs, f.rhs);
                }
                line
            })?;
        }
    }
    Ok(if all_verified { 0 } else { 1 })
}

fn conj_csv_row(r: &ConjectureReport) -> ConjCsvRecord {
    ConjCsvRecord {
        command: "conjecture",
        n: r.n,
        gamma: r.gamma.to_string(),
        first_n: r.tested_n.first().copied(),
        last_n: r.tested_n.last().copied(),
        points_tested: r.tested_n.len(),
        skipped_poles: r
            .skipped_poles
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(";"),
        verified: r.verified,
        failure_n: r.first_failure.as_ref().map(|f| f.big_n),
        failure_lhs: r.first_failure.as_ref().map(|f| f.lhs.clone()),
        failure_rhs: r.first_failure.as_ref().map(|f| f.rhs.clone()),
    }
}

fn run_mc(
    ensemble: &str,
    gamma: Partition,
    big_n: i64,
    power: u32,
    samples: usize,
    seed: u64,
    format: Format,
    out: &Option<PathBuf>,
) -> anyhow::Result<u8> {
    let ensemble: Ensemble = ensemble
        .parse()
        .map_err(|e: String| anyhow::anyhow!("{e} (expected unitary, orthogonal or coe)"))?;
    if ensemble != Ensemble::Unitary && gamma.n() > 8 {
        bail!("|gamma| > 8 is out of reach of the zonal tables for {ensemble}");
    }
    let exact = match (ensemble, power) {
        (Ensemble::Unitary, 2) => unitary_imm_sq(&gamma, big_n),
        (Ensemble::Unitary, 4) => unitary_per_4(gamma.n(), big_n),
        (Ensemble::Orthogonal, 2) => orth_imm_sq(&gamma, big_n),
        (Ensemble::Coe, 2) => coe_imm_sq(&gamma, big_n),
        _ => bail!("power {power} is not available for ensemble {ensemble}"),
    }
    .map_err(|e| anyhow::anyhow!("{e}"))?;
    let est = mc_moment(ensemble, &gamma, big_n, power, samples, seed)
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let z = if est.stderr == 0.0 {
        if est.mean == to_f64(&exact) {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (est.mean - to_f64(&exact)) / est.stderr
    };
    let record = McRecord {
        command: "mc",
        ensemble: ensemble.to_string(),
        gamma: gamma.to_string(),
        n: gamma.n(),
        big_n,
        power,
        samples: est.samples,
        seed: est.seed,
        exact: format_rat(&exact),
        mean: est.mean,
        stderr: est.stderr,
        z,
    };
    emit(&[record], format, out, |r| {
        format!(
            "mc {} gamma={} N={} power={} samples={} seed={}: mean {} stderr {} exact {} z={:.3}",
            r.ensemble, r.gamma, r.big_n, r.power, r.samples, r.seed, r.mean, r.stderr, r.exact, r.z
        )
    })?;
    Ok(if z.abs() <= 4.0 { 0 } else { 1 })
}

fn run_table(
    formula: Formula,
    gamma: Option<Partition>,
    gamma_all: bool,
    n: Option<IntRange>,
    big_n: IntRange,
    format: Format,
    out: &Option<PathBuf>,
) -> anyhow::Result<u8> {
    if big_n.len() == 0 {
        bail!("empty N range");
    }
    let mut records: Vec<TableRecord> = Vec::new();
    let push = |records: &mut Vec<TableRecord>, gamma: Option<&Partition>, n: usize, nn: i64, v: &Rat| {
        records.push(TableRecord {
            command: "table",
            formula: formula.to_string(),
            gamma: gamma.map(|g| g.to_string()),
            n,
            big_n: nn,
            exact: format_rat(v),
        });
    };

    match formula {
        Formula::Prop2 => {
            if gamma.is_some() || gamma_all {
                bail!("--formula prop2 is indexed by n, not gamma");
            }
            let n_range = n.context("--formula prop2 requires --n (value or range)")?;
            if n_range.lo < 1 || n_range.hi > 12 {
                bail!("n must be in 1..=12");
            }
            for nv in n_range.iter() {
                for nn in big_n.iter() {
                    match unitary_per_4(nv as usize, nn) {
                        Ok(v) => push(&mut records, None, nv as usize, nn, &v),
                        Err(_) => skip_notice("prop2", nn),
                    }
                }
            }
        }
        Formula::Prop1 | Formula::Coe | Formula::Orth => {
            let gammas: Vec<Partition> = match (&gamma, gamma_all) {
                (Some(_), true) => bail!("--gamma and --gamma-all are mutually exclusive"),
                (Some(g), false) => {
                    if let Some(r) = n {
                        if r.lo != r.hi || r.lo != g.n() as i64 {
                            bail!("--n {} does not match |gamma| = {}", r.lo, g.n());
                        }
                    }
                    vec![g.clone()]
                }
                (None, true) => {
                    let n_range = n.context("--gamma-all requires --n")?;
                    if n_range.lo != n_range.hi || n_range.lo < 1 || n_range.lo > 12 {
                        bail!("--gamma-all requires a single --n in 1..=12");
                    }
                    partitions_of(n_range.lo as usize)
                }
                (None, false) => bail!("need --gamma or --gamma-all"),
            };
            let eval = |g: &Partition, nn: i64| match formula {
                Formula::Prop1 => unitary_imm_sq(g, nn),
                Formula::Coe => coe_imm_sq(g, nn),
                Formula::Orth => orth_imm_sq(g, nn),
                Formula::Prop2 => unreachable!(),
            };
            for g in &gammas {
                for nn in big_n.iter() {
                    match eval(g, nn) {
                        Ok(v) => push(&mut records, Some(g), g.n(), nn, &v),
                        Err(_) => skip_notice(&formula.to_string(), nn),
                    }
                }
            }
        }
    }

    if records.is_empty() {
        bail!("grid produced no values (all points were poles?)");
    }
    emit(&records, format, out, |r| {
        let mut line = format!("table {} ", r.formula);
        if let Some(g) = &r.gamma {
            let _ = write!(line, "gamma={g} ");
        }
        let _ = write!(line, "n={} N={}: {}", r.n, r.big_n, r.exact);
        line
    })?;
    Ok(0)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let (format, out) = (cli.format, cli.out);
    match cli.command {
        Command::Verify { prop, n, big_n } => run_verify(prop, n, big_n, format, &out),
        Command::Conjecture { n, big_n, force } => run_conjecture(n, big_n, force, format, &out),
        Command::Mc {
            ensemble,
            gamma,
            big_n,
            power,
            samples,
            seed,
        } => run_mc(&ensemble, gamma, big_n, power, samples, seed, format, &out),
        Command::Table {
            formula,
            gamma,
            gamma_all,
            n,
            big_n,
        } => run_table(formula, gamma, gamma_all, n, big_n, format, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            // a reader closing the pipe early is not our error
            if let Some(io) = err.downcast_ref::<std::io::Error>() {
                if io.kind() == std::io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
            }
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
