//! `fatpoint`: Hilbert functions, resolutions, certificates and surveys for
//! fat point ideals in the plane.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 engine
//! precondition error, 4 stop-rule or verification failure.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use fatpoint_core::criteria::{
    discharge, head_tail_criterion, leading_pair_criterion, ninefold_simple_tail, odd_square_head_tail,
    square_thresholds, uniform_criterion, Certificate,
};
use fatpoint_core::divisor::{conjectural_h0, DivisorClass};
use fatpoint_core::oracle::{dump_degree, generic_betti, generic_hilbert, random_points, OracleSettings};
use fatpoint_core::pell::{
    default_seed_pair, fundamental_pell, odd_solution_family, pell_to_witness, q_zero_check, QZeroWitness,
};
use fatpoint_core::survey::{survey, SurveyRow, SURVEY_COLUMNS};
use fatpoint_core::{
    expected_alpha, expected_hilbert, predicted_resolution, Error, Execution, MultiplicityVector,
};

#[derive(Parser)]
#[command(name = "fatpoint", version, about = "Fat point ideals in the projective plane")]
struct Cli {
    /// Prime field characteristic for oracle computations.
    #[arg(long, global = true, default_value_t = fatpoint_core::oracle::DEFAULT_PRIME)]
    prime: u64,
    /// First random seed; retries use the following seeds.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of seeds per oracle measurement.
    #[arg(long, global = true, default_value_t = 3)]
    retries: u32,
    /// Run oracle work on the current thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct VectorArgs {
    /// N points of multiplicity M.
    #[arg(long, num_args = 2, value_names = ["N", "M"], conflicts_with = "mults")]
    uniform: Option<Vec<u32>>,
    /// Explicit multiplicities, comma separated.
    #[arg(long, value_delimiter = ',')]
    mults: Option<Vec<u32>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Expected,
    Conjectural,
    Actual,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function over a range of degrees.
    Hilbert {
        #[command(flatten)]
        vector: VectorArgs,
        #[arg(long, value_enum, default_value = "expected")]
        engine: Engine,
        /// Inclusive range `A..B`; defaults to `0..alpha+3`.
        #[arg(long, value_parser = parse_range::<u32>)]
        degrees: Option<RangeInclusive<u32>>,
        /// Write conditions matrices and kernels here (actual engine).
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
    /// Predicted resolution shape against the measured Betti table.
    Resolution {
        #[command(flatten)]
        vector: VectorArgs,
        /// Exit with code 4 when the measured table differs from the shape.
        #[arg(long)]
        require_match: bool,
    },
    /// Rank-minimality certificates.
    Certify {
        #[command(flatten)]
        vector: VectorArgs,
        /// Check every hypothesis with the oracle.
        #[arg(long)]
        discharge: bool,
        /// `(m^9, 1^(n-9))` window for `--m` and `--t`.
        #[arg(long, alias = "prop63")]
        ninefold: bool,
        /// `m` on `--r` points followed by `--tail`.
        #[arg(long)]
        head_tail: bool,
        /// `m` on `--r`^2 points (`r` odd) followed by `--tail`.
        #[arg(long)]
        odd_square_tail: bool,
        /// Degree thresholds for `--r`^2 points of multiplicity `--m`.
        #[arg(long)]
        thresholds: bool,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        tail: Vec<u32>,
    },
    /// Pell solutions and q = 0 witnesses for uniform vectors on N points.
    Pell {
        n: u64,
        /// Number of family members.
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// Odd seed pair (f, g); defaults to the least odd f with f^2 > n, g = 1.
        #[arg(long)]
        f: Option<u64>,
        #[arg(long, requires = "f")]
        g: Option<u64>,
        /// Scan multiplicities `A..B` directly instead of listing the family.
        #[arg(long, value_parser = parse_range::<u64>)]
        scan: Option<RangeInclusive<u64>>,
    },
    /// Oracle-versus-prediction rows for uniform (n, m).
    Survey {
        #[arg(long, value_parser = parse_range::<usize>)]
        n: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range::<u32>)]
        m: RangeInclusive<u32>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// `A..B` or `A..=B`, both inclusive.
fn parse_range<T: std::str::FromStr>(s: &str) -> Result<RangeInclusive<T>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let parse = |x: &str| x.trim().parse::<T>().map_err(|_| format!("`{x}` is not a valid bound"));
    Ok(parse(a)?..=parse(b)?)
}

enum Failure {
    Engine(Error),
    Verification(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

fn usage(kind: ErrorKind, msg: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, msg).exit()
}

impl VectorArgs {
    fn resolve(&self) -> Result<Option<MultiplicityVector>, Error> {
        match (&self.uniform, &self.mults) {
            (Some(u), _) => MultiplicityVector::uniform(u[0] as usize, u[1]).map(Some),
            (None, Some(m)) => MultiplicityVector::new(m.clone()).map(Some),
            (None, None) => Ok(None),
        }
    }

    fn require(&self) -> Result<MultiplicityVector, Error> {
        match self.resolve()? {
            Some(v) => Ok(v),
            None => usage(ErrorKind::MissingRequiredArgument, "one of --uniform N M or --mults is required"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = OracleSettings {
        prime: cli.prime,
        seed: cli.seed,
        retries: cli.retries,
        exec: if cli.sequential { Execution::Sequential } else { Execution::default() },
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Hilbert { vector, engine, degrees, dump_dir } => {
            cmd_hilbert(&mut out, vector, *engine, degrees.clone(), dump_dir.as_deref(), &settings)
        }
        Command::Resolution { vector, require_match } => cmd_resolution(&mut out, vector, *require_match, &settings),
        Command::Certify { .. } => cmd_certify(&mut out, &cli.command, &settings),
        Command::Pell { n, count, f, g, scan } => cmd_pell(&mut out, *n, *count, *f, *g, scan.clone()),
        Command::Survey { n, m, format, output } => {
            cmd_survey(&mut out, n.clone(), m.clone(), *format, output.as_deref(), &settings)
        }
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            let verification = matches!(
                e,
                Error::StopRuleFailed { .. }
                    | Error::NegativeGeneratorCount { .. }
                    | Error::NegativeSyzygyCount { .. }
                    | Error::InconsistentReduction(_)
            );
            ExitCode::from(if verification { 4 } else { 3 })
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(4)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn cmd_hilbert(
    out: &mut impl Write,
    vector: &VectorArgs,
    engine: Engine,
    degrees: Option<RangeInclusive<u32>>,
    dump_dir: Option<&Path>,
    settings: &OracleSettings,
) -> Result<(), Failure> {
    let v = vector.require()?;
    let degrees = degrees.unwrap_or_else(|| 0..=expected_alpha(&v) + 3);
    let (label, values, note): (&str, BTreeMap<u32, u64>, Option<String>) = match engine {
        Engine::Expected => ("expected", degrees.map(|t| (t, expected_hilbert(&v, t))).collect(), None),
        Engine::Conjectural => (
            "conjectural",
            degrees.map(|t| (t, conjectural_h0(&DivisorClass::from_mults(t, &v)))).collect(),
            None,
        ),
        Engine::Actual => {
            if let Some(dir) = dump_dir {
                fs::create_dir_all(dir)?;
                let cfg = random_points(v.len(), settings.prime, settings.seed)?;
                for t in degrees.clone() {
                    dump_degree(&cfg, &v, t, dir)?;
                }
            }
            let g = generic_hilbert(&v, degrees, settings)?;
            let seeds: Vec<String> = g.seeds_used.iter().map(ToString::to_string).collect();
            let note = format!(
                "prime {} seeds {}{}",
                settings.prime,
                seeds.join(" "),
                if g.disagreement { " (seeds disagree)" } else { "" }
            );
            ("actual", g.table.values, Some(note))
        }
    };
    writeln!(out, "vector {v}")?;
    writeln!(out, "engine {label}")?;
    if let Some(note) = note {
        writeln!(out, "{note}")?;
    }
    writeln!(out, "t\tdim")?;
    for (t, d) in values {
        writeln!(out, "{t}\t{d}")?;
    }
    Ok(())
}

/// `R[-5]^5 + R[-6]^1`, with `R` for a single generator in degree 0 and
/// `0` for the zero module.
fn free_module(gens: &BTreeMap<u32, u64>) -> String {
    if gens.is_empty() {
        return "0".to_string();
    }
    let terms: Vec<String> = gens
        .iter()
        .map(|(&t, &k)| match (t, k) {
            (0, 1) => "R".to_string(),
            (0, k) => format!("R^{k}"),
            (t, k) => format!("R[-{t}]^{k}"),
        })
        .collect();
    terms.join(" + ")
}

fn cmd_resolution(
    out: &mut impl Write,
    vector: &VectorArgs,
    require_match: bool,
    settings: &OracleSettings,
) -> Result<(), Failure> {
    let v = vector.require()?;
    let shape = predicted_resolution(&v);
    let b = generic_betti(&v, settings)?;
    let matches = b.table.matches(&shape);
    writeln!(out, "vector {v}")?;
    writeln!(out, "predicted a={} h={} b={} c={}", shape.a, shape.h, shape.b, shape.c)?;
    writeln!(out, "predicted F0 = {}", free_module(&shape.f0()))?;
    writeln!(out, "predicted F1 = {}", free_module(&shape.f1()))?;
    writeln!(out, "measured  F0 = {}", free_module(&b.table.f0))?;
    writeln!(out, "measured  F1 = {}", free_module(&b.table.f1))?;
    let hilbert: Vec<String> = b.table.hilbert.values.iter().map(|(t, h)| format!("{t}:{h}")).collect();
    writeln!(out, "measured hilbert {}", hilbert.join(" "))?;
    let seeds: Vec<String> = b.seeds_used.iter().map(ToString::to_string).collect();
    writeln!(out, "prime {} seed {} (tried {})", settings.prime, b.seed, seeds.join(" "))?;
    writeln!(out, "match={matches}")?;
    if require_match && !matches {
        return Err(Failure::Verification(format!("measured {} differs from the predicted shape", b.table)));
    }
    Ok(())
}

fn print_certificate(
    out: &mut impl Write,
    cert: &Certificate,
    discharge_it: bool,
    settings: &OracleSettings,
) -> Result<(), Failure> {
    writeln!(out, "{cert}")?;
    if discharge_it && cert.is_rank_minimal() {
        for (a, d) in discharge(cert, settings)? {
            let measured: Vec<String> = d.measured.iter().map(|(t, h)| format!("{t}:{h}")).collect();
            let seeds: Vec<String> = d.seeds_used.iter().map(ToString::to_string).collect();
            writeln!(
                out,
                "  {a}: {} [measured {}; seeds {}]",
                if d.holds { "holds" } else { "FAILS" },
                measured.join(" "),
                seeds.join(" ")
            )?;
        }
    }
    Ok(())
}

fn need<T: Copy>(value: Option<T>, flag: &str, mode: &str) -> T {
    value.unwrap_or_else(|| usage(ErrorKind::MissingRequiredArgument, format!("{mode} needs --{flag}")))
}

fn cmd_certify(out: &mut impl Write, command: &Command, settings: &OracleSettings) -> Result<(), Failure> {
    let Command::Certify { vector, discharge, ninefold, head_tail, odd_square_tail, thresholds, m, t, r, tail } =
        command
    else {
        unreachable!()
    };
    let discharge = *discharge;
    if *ninefold {
        let win = ninefold_simple_tail(need(*m, "m", "--ninefold"), need(*t, "t", "--ninefold"))?;
        writeln!(out, "center {}", win.center)?;
        if win.range.is_empty() {
            writeln!(out, "n-range empty")?;
        } else {
            writeln!(out, "n-range {}..{}", win.range.start(), win.range.end())?;
        }
        for c in &win.certificates {
            print_certificate(out, c, discharge, settings)?;
        }
        return Ok(());
    }
    if *head_tail {
        let r = need(*r, "r", "--head-tail") as usize;
        let c = head_tail_criterion(need(*m, "m", "--head-tail"), r, tail)?;
        return print_certificate(out, &c, discharge, settings);
    }
    if *odd_square_tail {
        let c = odd_square_head_tail(need(*r, "r", "--odd-square-tail"), need(*m, "m", "--odd-square-tail"), tail)?;
        return print_certificate(out, &c, discharge, settings);
    }
    if *thresholds {
        let m = need(*m, "m", "--thresholds");
        let s = square_thresholds(need(*r, "r", "--thresholds"), u64::from(m))?;
        writeln!(out, "r={} m={} parity={}", s.r, s.m, if s.even { "even" } else { "odd" })?;
        writeln!(out, "vanishing from t >= {}", s.vanishing_from)?;
        writeln!(out, "sign {} ({})", s.sign, if s.sign_nonpositive() { "<= 0" } else { "> 0" })?;
        writeln!(out, "m bound met: {}", s.m_bound_met)?;
        return Ok(());
    }
    let v = vector.require()?;
    let mut certs = Vec::new();
    if v.len() > 9 && v.is_uniform() {
        certs.push(uniform_criterion(v.len(), v.first().unwrap_or(0))?);
    }
    certs.push(leading_pair_criterion(&v));
    let fired: Vec<&Certificate> = certs.iter().filter(|c| c.is_rank_minimal()).collect();
    if fired.is_empty() {
        writeln!(out, "no criterion fired")?;
        for c in &certs {
            print_certificate(out, c, false, settings)?;
        }
    }
    for c in fired {
        print_certificate(out, c, discharge, settings)?;
    }
    Ok(())
}

fn print_witness(out: &mut impl Write, w: &QZeroWitness) -> io::Result<()> {
    writeln!(out, "  m={} x={} slack={}", w.m, w.x, w.slack)
}

fn cmd_pell(
    out: &mut impl Write,
    n: u64,
    count: usize,
    f: Option<u64>,
    g: Option<u64>,
    scan: Option<RangeInclusive<u64>>,
) -> Result<(), Failure> {
    let (c, d) = fundamental_pell(n)?;
    writeln!(out, "fundamental ({c}, {d})")?;
    if let Some(range) = scan {
        writeln!(out, "scan {}..{}", range.start(), range.end())?;
        for m in range {
            if let Some(w) = q_zero_check(n, m) {
                print_witness(out, &w)?;
            }
        }
        return Ok(());
    }
    let (f, g) = match f {
        Some(f) => (f, g.unwrap_or(1)),
        None => default_seed_pair(n),
    };
    let family = odd_solution_family(n, f, g, count)?;
    let norm = family.first().map(|s| s.norm.to_string()).unwrap_or_default();
    writeln!(out, "seed pair ({f}, {g}) norm {norm}")?;
    writeln!(out, "family")?;
    for s in &family {
        writeln!(out, "  ({}, {})", s.u, s.v)?;
    }
    writeln!(out, "witnesses")?;
    for s in &family {
        match pell_to_witness(s) {
            Ok(Some(w)) => print_witness(out, &w)?,
            Ok(None) | Err(Error::DegenerateSolution) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

fn write_rows(w: impl Write, rows: &[SurveyRow], format: Format) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
            wtr.write_record(SURVEY_COLUMNS)?;
            for row in rows {
                wtr.serialize(row)?;
            }
            wtr.flush()?;
        }
        Format::Json => {
            let mut w = w;
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_survey(
    out: &mut impl Write,
    ns: RangeInclusive<usize>,
    ms: RangeInclusive<u32>,
    format: Format,
    output: Option<&Path>,
    settings: &OracleSettings,
) -> Result<(), Failure> {
    let rows = survey(ns, ms, settings)?;
    match output {
        None => write_rows(&mut *out, &rows, format)?,
        Some(path) => {
            let written = fs::File::create(path).map_err(Failure::from).and_then(|file| {
                let mut buf = io::BufWriter::new(file);
                write_rows(&mut buf, &rows, format)?;
                buf.flush()?;
                Ok(())
            });
            if let Err(e) = written {
                let _ = fs::remove_file(path);
                return Err(e);
            }
        }
    }
    let matched = rows.iter().filter(|r| r.matches).count();
    eprintln!("{} rows, {} match, {} differ", rows.len(), matched, rows.len() - matched);
    Ok(())
}
