//! Command-line front end. [`run`] takes the argument list and output
//! streams so it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arrays::{TraceStep, TwoRowedArray};
use crate::formulas::{g_poly, h_poly, LineQuery, PairQuery};
use crate::oracle::{at_least, oracle_g, oracle_h, sweep_verify_line, sweep_verify_pairs, SweepReport};
use crate::pair_arrays::{ArrayPair, PairTraceStep};
use crate::paths::{parse_path, LatticePath, Point};
use crate::verify::{self, SuiteReport};
use crate::QTPoly;

/// Environment variable holding the worker thread count for sweeps.
pub const THREADS_VAR: &str = "LATCROSS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "latcross", version, about = "Descents, major index and crossings of lattice paths")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// G^{>=r, ell}_{a,b}(t,q): paths with a U and b D steps crossing y = ell at least r times.
    Gpoly(GpolyArgs),
    /// H^{>=r}(t,q) for pairs P: a1 -> bp, Q: a2 -> bq.
    Hpoly(HpolyArgs),
    /// Descents, major index, peaks and crossings of one path.
    Stats(StatsArgs),
    /// The two-rowed array of a path.
    Encode(EncodeArgs),
    /// Applies one bijection to an array or pair read from a JSON file.
    Biject(BijectArgs),
    /// Runs a verification suite; exits 1 on any failure.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args, Debug)]
struct GpolyArgs {
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
    #[arg(long, allow_hyphen_values = true)]
    ell: i64,
    #[arg(long, default_value_t = 0)]
    r: u32,
    /// Enumerate paths instead of evaluating the closed form.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct HpolyArgs {
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    a1: Point,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    a2: Point,
    /// End point of the path from a1.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    bp: Point,
    /// End point of the path from a2.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    bq: Point,
    #[arg(long, default_value_t = 0)]
    r: u32,
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct PathArgs {
    /// Step word (N/E, or U/D with --ud) or a JSON path literal.
    #[arg(long)]
    path: String,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    start: Option<Point>,
    /// The word uses U and D.
    #[arg(long)]
    ud: bool,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[command(flatten)]
    path: PathArgs,
    /// Count crossings of y = L (walk read from height 0) instead of y = x.
    #[arg(long, allow_hyphen_values = true)]
    line: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[command(flatten)]
    path: PathArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MapName {
    Alpha,
    Beta,
    Nu,
    Gamma,
    Delta,
    Sigma,
    Gamma0,
}

#[derive(Args, Debug)]
struct BijectArgs {
    #[arg(long, value_enum)]
    map: MapName,
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Array or pair in the JSON schema.
    #[arg(long)]
    input: PathBuf,
    /// Apply the map at crossings r, r-1, ..., 1 in turn, choosing alpha or
    /// beta (gamma or delta) by the kind of each crossing.
    #[arg(long)]
    chain: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    Line,
    Pairs,
    Lemmas,
    Bijections,
    Detectors,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 7)]
    max_a: u32,
    #[arg(long, default_value_t = 7)]
    max_b: u32,
    #[arg(long, default_value_t = 2)]
    ell_margin: u32,
    /// Largest r for the line sweep (capped at a + b).
    #[arg(long, default_value_t = 14)]
    line_r_cap: u32,
    /// Coordinates of the pair sweep lie in [0, window]^2.
    #[arg(long, default_value_t = 5)]
    window: i64,
    #[arg(long, default_value_t = 8)]
    pair_r_cap: u32,
    /// Bound window for exhaustive single-array checks.
    #[arg(long, default_value_t = 8)]
    array_window: i64,
    /// End-point window for exhaustive pair-of-arrays checks.
    #[arg(long, default_value_t = 5)]
    pair_window: i64,
    /// Random instances per bijection suite.
    #[arg(long, default_value_t = 100_000)]
    random: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Print every sweep report as a JSON line.
    #[arg(long)]
    jsonl: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

fn usage(msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(msg.to_string())
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected X,Y, got {s:?}"))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad coordinate {t:?}: {e}"));
    Ok(Point::new(p(x)?, p(y)?))
}

fn read_path(args: &PathArgs) -> Result<LatticePath, CliError> {
    let text = args.path.trim();
    let path = if text.starts_with('{') {
        if args.start.is_some() {
            return Err(usage("--start conflicts with a JSON path literal"));
        }
        serde_json::from_str::<LatticePath>(text).map_err(usage)?
    } else {
        parse_path(text, args.start.unwrap_or(Point::new(0, 0))).map_err(usage)?
    };
    if args.ud && !path.is_empty() && !path.is_ud() {
        return Err(usage("--ud expects a word in U and D"));
    }
    if !args.ud && path.is_ud() {
        return Err(usage("U/D words need --ud"));
    }
    Ok(path)
}

fn no_latex(f: Format) -> Result<(), CliError> {
    if f == Format::Latex {
        return Err(usage("latex output is only available for gpoly and hpoly"));
    }
    Ok(())
}

fn print_poly(out: &mut dyn Write, p: &QTPoly, format: Format, query: Value, source: &str) -> Result<(), CliError> {
    match format {
        Format::Text => writeln!(out, "{p}")?,
        Format::Latex => writeln!(out, "{}", p.to_latex())?,
        Format::Json => {
            let v = json!({"query": query, "source": source, "text": p.to_string(), "poly": p});
            writeln!(out, "{v}")?
        }
    }
    Ok(())
}

fn gpoly(a: GpolyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let q = LineQuery { a: a.a, b: a.b, ell: a.ell, r: a.r };
    let (p, source) = if a.oracle {
        (at_least(&oracle_g(q.a, q.b, q.ell), q.r), "oracle")
    } else {
        (g_poly(&q), "formula")
    };
    print_poly(out, &p, a.format, serde_json::to_value(q).expect("plain struct"), source)?;
    Ok(0)
}

fn hpoly(a: HpolyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let q = PairQuery { a1: a.a1, a2: a.a2, bp: a.bp, bq: a.bq, r: a.r };
    // validate the configuration even when enumerating
    let formula: QTPoly = h_poly(&q).map_err(usage)?;
    let (p, source) = if a.oracle {
        (at_least(&oracle_h(q.a1, q.a2, q.bp, q.bq), q.r), "oracle")
    } else {
        (formula, "formula")
    };
    print_poly(out, &p, a.format, serde_json::to_value(q).expect("plain struct"), source)?;
    Ok(0)
}

fn stats(a: StatsArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    no_latex(a.format)?;
    let path = read_path(&a.path)?;
    let st = path.stats();
    let crossings = match a.line {
        Some(ell) => path.line_crossings(ell),
        None => path.diagonal_crossings(),
    };
    if a.format == Format::Json {
        let v = json!({
            "path": path,
            "des": st.des,
            "maj": st.maj,
            "peaks": st.peaks,
            "line": a.line,
            "crossings": crossings,
        });
        writeln!(out, "{v}")?;
        return Ok(0);
    }
    writeln!(out, "des={} maj={} peaks={} crossings={}", st.des, st.maj, st.peaks, crossings.len())?;
    for c in &crossings {
        writeln!(out, "{}: {} at {}", c.position, c.kind, c.vertex)?;
    }
    Ok(0)
}

fn encode(a: EncodeArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    no_latex(a.format)?;
    let path = read_path(&a.path)?;
    let arr = TwoRowedArray::encode_path(&path);
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&arr).expect("arrays serialize"))?,
        _ => writeln!(out, "{}", arr.render())?,
    }
    Ok(0)
}

fn array_step(a: &TwoRowedArray, map: &str, r: usize) -> Option<TraceStep> {
    let c = *a.crossings().get(r.checked_sub(1)?)?;
    Some(TraceStep { map: map.into(), r, kind: c.kind, entry: c.entry_name(), value: c.value })
}

fn pair_step(p: &ArrayPair, map: &str, r: usize) -> Option<PairTraceStep> {
    let c = *p.crossings().get(r.checked_sub(1)?)?;
    Some(PairTraceStep { map: map.into(), r, kind: c.kind, entry: c.entry_name(), vertex: c.vertex })
}

fn biject(a: BijectArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    no_latex(a.format)?;
    let raw = std::fs::read_to_string(&a.input)
        .map_err(|e| usage(format!("cannot read {}: {e}", a.input.display())))?;
    let value: Value = serde_json::from_str(&raw).map_err(usage)?;
    let is_pair = value.get("first").is_some();
    let (image, trace): (Value, Vec<String>) = if is_pair {
        let p: ArrayPair = serde_json::from_value(value).map_err(usage)?;
        let (img, trace) = match a.map {
            MapName::Gamma | MapName::Delta if a.chain => {
                let (img, steps) = p.unwind(a.r).map_err(usage)?;
                (img, steps.iter().map(|s| s.to_string()).collect())
            }
            MapName::Gamma => (p.gamma(a.r).map_err(usage)?, vec![pair_step(&p, "gamma", a.r)]
                .into_iter()
                .flatten()
                .map(|s| s.to_string())
                .collect()),
            MapName::Delta => (p.delta(a.r).map_err(usage)?, vec![pair_step(&p, "delta", a.r)]
                .into_iter()
                .flatten()
                .map(|s| s.to_string())
                .collect()),
            MapName::Sigma => (p.sigma(), vec!["sigma exchanges the two arrays".into()]),
            MapName::Nu => (p.nu(), vec!["nu reflects both arrays".into()]),
            MapName::Gamma0 => {
                let img = p.gamma0().map_err(usage)?;
                let at = p.zigzag_difference().expect("gamma0 succeeded");
                (img, vec![format!("gamma0 acts at the first difference {at}")])
            }
            MapName::Alpha | MapName::Beta => {
                return Err(usage("alpha and beta act on single arrays; use gamma or delta for pairs"))
            }
        };
        if a.format == Format::Text {
            writeln!(out, "{}", img.render())?;
            for t in &trace {
                writeln!(out, "{t}")?;
            }
            return Ok(0);
        }
        (serde_json::to_value(&img).expect("pairs serialize"), trace)
    } else {
        let arr: TwoRowedArray = serde_json::from_value(value).map_err(usage)?;
        let (img, trace) = match a.map {
            MapName::Alpha | MapName::Beta if a.chain => {
                let (img, steps) = arr.unwind(a.r).map_err(usage)?;
                (img, steps.iter().map(|s| s.to_string()).collect())
            }
            MapName::Alpha => {
                (arr.alpha(a.r).map_err(usage)?, array_step(&arr, "alpha", a.r).into_iter().map(|s| s.to_string()).collect())
            }
            MapName::Beta => {
                (arr.beta(a.r).map_err(usage)?, array_step(&arr, "beta", a.r).into_iter().map(|s| s.to_string()).collect())
            }
            MapName::Nu => (arr.nu().map_err(usage)?, vec!["nu negates, reverses and exchanges the rows".into()]),
            _ => return Err(usage("gamma, delta, sigma and gamma0 act on pairs of arrays")),
        };
        if a.format == Format::Text {
            writeln!(out, "{}", img.render())?;
            for t in &trace {
                writeln!(out, "{t}")?;
            }
            return Ok(0);
        }
        (serde_json::to_value(&img).expect("arrays serialize"), trace)
    };
    writeln!(out, "{}", json!({"image": image, "trace": trace}))?;
    Ok(0)
}

fn sweep_summary(out: &mut dyn Write, name: &str, reports: &[SweepReport], jsonl: bool, secs: f64) -> Result<bool, CliError> {
    if jsonl {
        for r in reports {
            writeln!(out, "{}", r.to_json_line())?;
        }
    }
    let bad: Vec<&SweepReport> = reports.iter().filter(|r| !r.equal).collect();
    let ok = bad.is_empty() && !reports.is_empty();
    let status = if ok { "PASS" } else { "FAIL" };
    writeln!(out, "{status} {name}: {} queries, {} mismatches ({secs:.1}s)", reports.len(), bad.len())?;
    for r in bad.iter().take(5) {
        writeln!(out, "  {}", r.to_json_line())?;
    }
    Ok(ok)
}

fn suites(out: &mut dyn Write, reps: Vec<SuiteReport>) -> Result<bool, CliError> {
    let mut ok = true;
    for r in reps {
        writeln!(out, "{r}")?;
        ok &= r.passed();
    }
    Ok(ok)
}

fn run_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let all = a.suite == Suite::All;
    let mut ok = true;
    if all || a.suite == Suite::Line {
        let t = Instant::now();
        let reps = sweep_verify_line(a.max_a, a.max_b, a.ell_margin, a.line_r_cap);
        ok &= sweep_summary(out, "line sweep", &reps, a.jsonl, t.elapsed().as_secs_f64())?;
    }
    if all || a.suite == Suite::Pairs {
        let t = Instant::now();
        let reps = sweep_verify_pairs(a.window, a.pair_r_cap);
        ok &= sweep_summary(out, "pair sweep", &reps, a.jsonl, t.elapsed().as_secs_f64())?;
    }
    if all || a.suite == Suite::Lemmas {
        ok &= suites(
            out,
            vec![
                verify::lemma_qbin2_suite(8),
                verify::lemma_sum_suite(a.array_window),
                verify::lemma_sum_pairs_suite(a.pair_window),
                verify::parity_suite(a.array_window, a.pair_window),
            ],
        )?;
    }
    if all || a.suite == Suite::Bijections {
        ok &= suites(
            out,
            vec![
                verify::array_bijection_suite(a.array_window, a.random, a.seed),
                verify::pair_bijection_suite(a.pair_window, a.random, a.seed),
            ],
        )?;
    }
    if all || a.suite == Suite::Detectors {
        ok &= suites(out, vec![verify::detector_suite(a.array_window, a.pair_window)])?;
    }
    Ok(if ok { 0 } else { 1 })
}

fn configure_threads(err: &mut dyn Write) {
    let Ok(raw) = std::env::var(THREADS_VAR) else { return };
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            // A pool built earlier in this process wins; that is fine.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => {
            let _ = writeln!(err, "ignoring {THREADS_VAR}={raw:?}: expected a positive integer");
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit status: 0 on success, 1 on a verification failure, 2 on bad input.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    0
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    2
                }
            };
        }
    };
    configure_threads(err);
    let result = match cli.cmd {
        Command::Gpoly(a) => gpoly(a, out),
        Command::Hpoly(a) => hpoly(a, out),
        Command::Stats(a) => stats(a, out),
        Command::Encode(a) => encode(a, out),
        Command::Biject(a) => biject(a, out),
        Command::Verify(a) => run_verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
