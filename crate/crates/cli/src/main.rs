//! `rocmem`: exact ROC/mROC curves, posterior recall probabilities, cue
//! estimation, simulation, and self-verification for a one-trace binary
//! associative memory.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a mismatch, 2 on
//! usage or input errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rocmem_core::{
    estimate_roc, exhaustive_probability, fit_curve, mroc_curve, overall_probabilities,
    recall_probability, roc_curve, theta_domain, Consensus, CurveKind, DecoderKind,
    EmpiricalPoint, FitReport, QBracket, SignumVariant,
};

#[derive(Parser)]
#[command(
    name = "rocmem",
    version,
    about = "Exact ROC and mROC analysis of a one-trace binary associative memory",
    after_help = "Curve output is plot-ready CSV (or JSON) with probabilities rendered both \
                  as exact fractions and as rounded decimals."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the ROC curve for one noise count: theta, false alarm, hit.
    Roc(CurveArgs),
    /// Print the modified ROC curve: adds the posterior correct-recall
    /// probability at every operating point.
    Mroc(CurveArgs),
    /// Print the sweep-averaged posterior probabilities.
    Overall(OverallArgs),
    /// Bracket empirical points between the model's cue-index curves.
    Fit(FitArgs),
    /// Estimate a ROC curve by seeded simulation.
    Simulate(SimulateArgs),
    /// Check the closed forms against the enumeration oracle and, with
    /// trials > 0, against seeded simulation.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum VariantArg {
    /// Ties at the threshold output -1 (success means Q > theta).
    #[default]
    Minus,
    /// Ties at the threshold output +1 (success means Q >= theta).
    Plus,
}

impl From<VariantArg> for SignumVariant {
    fn from(value: VariantArg) -> Self {
        match value {
            VariantArg::Minus => SignumVariant::MinusAtThreshold,
            VariantArg::Plus => SignumVariant::PlusAtThreshold,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum FormatArg {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum ModeArg {
    #[default]
    Roc,
    Mroc,
}

impl From<ModeArg> for CurveKind {
    fn from(value: ModeArg) -> Self {
        match value {
            ModeArg::Roc => CurveKind::Roc,
            ModeArg::Mroc => CurveKind::Mroc,
        }
    }
}

#[derive(clap::Args)]
struct CurveArgs {
    /// Pattern dimension.
    #[arg(long, default_value_t = 9)]
    n: u32,
    /// Number of noise positions in the cue (0..=n).
    #[arg(long)]
    m: u32,
    /// Tie rule of the signum response at the threshold.
    #[arg(long, value_enum, default_value_t)]
    variant: VariantArg,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
    /// Fractional digits of the decimal columns.
    #[arg(long, default_value_t = 10)]
    precision: usize,
}

#[derive(clap::Args)]
struct OverallArgs {
    #[arg(long, default_value_t = 9)]
    n: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, value_enum, default_value_t)]
    variant: VariantArg,
    #[arg(long, default_value_t = 10)]
    precision: usize,
}

#[derive(clap::Args)]
struct FitArgs {
    /// CSV file of empirical points: header `f,p[,label]`, decimals.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 9)]
    n: u32,
    #[arg(long, value_enum, default_value_t)]
    variant: VariantArg,
    /// Compare against conditional (roc) or posterior (mroc) curves.
    #[arg(long, value_enum, default_value_t)]
    mode: ModeArg,
    /// Absolute tolerance for declaring a point on a grid curve.
    #[arg(long, default_value_t = rocmem_core::DEFAULT_ON_CURVE_TOLERANCE)]
    tolerance: f64,
}

#[derive(clap::Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 9)]
    n: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, value_enum, default_value_t)]
    variant: VariantArg,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
    #[arg(long, default_value_t = 6)]
    precision: usize,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Largest dimension for the enumeration gate.
    #[arg(long = "n-max", default_value_t = 8)]
    n_max: u32,
    /// Simulation trials per curve; 0 skips the stochastic checks.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

enum CliError {
    /// Usage or input problem: exit 2.
    Usage(String),
    /// Verification mismatch: exit 1.
    Verification(String),
}

impl From<rocmem_core::Error> for CliError {
    fn from(err: rocmem_core::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe (head, less) closes early.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Roc(args) => run_roc(args),
        Command::Mroc(args) => run_mroc(args),
        Command::Overall(args) => run_overall(args),
        Command::Fit(args) => run_fit(args),
        Command::Simulate(args) => run_simulate(args),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Verification(message)) => {
            eprintln!("verify FAILED: {message}");
            ExitCode::from(1)
        }
    }
}

fn check_noise_count(n: u32, m: u32) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if m > n {
        return Err(CliError::Usage(format!("--m {m} exceeds --n {n}")));
    }
    Ok(())
}

fn variant_name(variant: SignumVariant) -> &'static str {
    variant.name()
}

fn run_roc(args: CurveArgs) -> Result<(), CliError> {
    check_noise_count(args.n, args.m)?;
    let variant = args.variant.into();
    let curve = roc_curve(args.n, args.m, variant)?;
    match args.format {
        FormatArg::Csv => {
            println!("theta,f_frac,p_frac,f,p");
            for point in &curve.points {
                println!(
                    "{},{},{},{},{}",
                    point.theta,
                    point.false_alarm.fraction_string(),
                    point.hit.fraction_string(),
                    point.false_alarm.decimal_string(args.precision),
                    point.hit.decimal_string(args.precision)
                );
            }
        }
        FormatArg::Json => {
            let points: Vec<_> = curve
                .points
                .iter()
                .map(|point| {
                    json!({
                        "theta": point.theta,
                        "f_frac": point.false_alarm.fraction_string(),
                        "p_frac": point.hit.fraction_string(),
                        "f": point.false_alarm.decimal_string(args.precision),
                        "p": point.hit.decimal_string(args.precision),
                    })
                })
                .collect();
            let doc = json!({
                "n": curve.n,
                "m": curve.m,
                "variant": variant_name(variant),
                "points": points,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(())
}

fn run_mroc(args: CurveArgs) -> Result<(), CliError> {
    check_noise_count(args.n, args.m)?;
    let variant = args.variant.into();
    let curve = mroc_curve(args.n, args.m, variant)?;
    if curve.pure_trace {
        eprintln!(
            "warning: m = 0 is the pure-trace special case; the posterior curve is constant 1"
        );
    }
    match args.format {
        FormatArg::Csv => {
            println!("theta,f_frac,p_frac,f,p,pcr_frac,pcr");
            for point in &curve.points {
                println!(
                    "{},{},{},{},{},{},{}",
                    point.theta,
                    point.false_alarm.fraction_string(),
                    point.hit.fraction_string(),
                    point.false_alarm.decimal_string(args.precision),
                    point.hit.decimal_string(args.precision),
                    point.posterior.p_cr.fraction_string(),
                    point.posterior.p_cr.decimal_string(args.precision)
                );
            }
        }
        FormatArg::Json => {
            let points: Vec<_> = curve
                .points
                .iter()
                .map(|point| {
                    json!({
                        "theta": point.theta,
                        "f_frac": point.false_alarm.fraction_string(),
                        "p_frac": point.hit.fraction_string(),
                        "f": point.false_alarm.decimal_string(args.precision),
                        "p": point.hit.decimal_string(args.precision),
                        "pcr_frac": point.posterior.p_cr.fraction_string(),
                        "pcr": point.posterior.p_cr.decimal_string(args.precision),
                    })
                })
                .collect();
            let doc = json!({
                "n": curve.n,
                "m": curve.m,
                "variant": variant_name(variant),
                "pure_trace": curve.pure_trace,
                "points": points,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(())
}

fn run_overall(args: OverallArgs) -> Result<(), CliError> {
    check_noise_count(args.n, args.m)?;
    let overall = overall_probabilities(args.n, args.m, args.variant.into())?;
    println!(
        "p_fr {} {}",
        overall.p_fr.fraction_string(),
        overall.p_fr.decimal_string(args.precision)
    );
    println!(
        "p_cr {} {}",
        overall.p_cr.fraction_string(),
        overall.p_cr.decimal_string(args.precision)
    );
    Ok(())
}

struct ParsedPoints {
    points: Vec<EmpiricalPoint>,
    lines: Vec<u64>,
}

fn read_points(path: &PathBuf) -> Result<ParsedPoints, CliError> {
    let file = std::fs::File::open(path)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| CliError::Usage(format!("cannot read header: {e}")))?;
    let named: Vec<String> = headers.iter().map(|h| h.to_ascii_lowercase()).collect();
    if named.len() < 2 || named[0] != "f" || named[1] != "p" {
        return Err(CliError::Usage(
            "input header must be `f,p` with an optional `label` column".into(),
        ));
    }

    let mut points = Vec::new();
    let mut lines = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Usage(format!("malformed CSV: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|field| field.is_empty()) {
            continue;
        }
        let parse = |index: usize, name: &str| -> Result<f64, CliError> {
            record
                .get(index)
                .filter(|field| !field.is_empty())
                .ok_or_else(|| CliError::Usage(format!("line {line}: missing column `{name}`")))?
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("line {line}: bad `{name}` value: {e}")))
        };
        let f = parse(0, "f")?;
        let p = parse(1, "p")?;
        let label = record
            .get(2)
            .filter(|field| !field.is_empty())
            .map(str::to_owned);
        let point = EmpiricalPoint::new(f, p, label)
            .map_err(|e| CliError::Usage(format!("line {line}: {e}")))?;
        points.push(point);
        lines.push(line);
    }
    if points.is_empty() {
        return Err(CliError::Usage("input contains no data rows".into()));
    }
    Ok(ParsedPoints { points, lines })
}

fn bracket_json(bracket: &QBracket) -> serde_json::Value {
    match bracket {
        QBracket::BelowGrid => json!({ "kind": "below_grid", "display": bracket.to_string() }),
        QBracket::AboveGrid => json!({ "kind": "above_grid", "display": bracket.to_string() }),
        QBracket::Range { .. } => {
            let (lo_num, den, lo_inclusive) = bracket.lower_bound().expect("range bracket");
            let (hi_num, _, hi_inclusive) = bracket.upper_bound().expect("range bracket");
            json!({
                "kind": "range",
                "lower": format!("{lo_num}/{den}"),
                "lower_inclusive": lo_inclusive,
                "upper": format!("{hi_num}/{den}"),
                "upper_inclusive": hi_inclusive,
                "display": bracket.to_string(),
            })
        }
    }
}

fn fit_json(report: &FitReport, parsed: &ParsedPoints) -> serde_json::Value {
    let points: Vec<_> = parsed
        .points
        .iter()
        .zip(&parsed.lines)
        .zip(&report.brackets)
        .map(|((point, line), bracket)| {
            json!({
                "line": line,
                "f": point.f,
                "p": point.p,
                "label": point.label,
                "bracket": bracket_json(bracket),
            })
        })
        .collect();
    let consensus = match &report.consensus {
        Consensus::Agreed(bracket) => json!({
            "status": "consistent",
            "bracket": bracket_json(bracket),
        }),
        Consensus::Split {
            prefix_len,
            prefix,
            suffix,
        } => json!({
            "status": "inconsistent",
            "prefix_points": prefix_len,
            "prefix": bracket_json(prefix),
            "suffix": suffix.as_ref().map(bracket_json),
        }),
    };
    json!({
        "n": report.n,
        "variant": variant_name(report.variant),
        "mode": report.mode.name(),
        "tolerance": report.tolerance,
        "points": points,
        "consensus": consensus,
    })
}

fn run_fit(args: FitArgs) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let parsed = read_points(&args.input)?;
    let report = fit_curve(
        &parsed.points,
        args.n,
        args.variant.into(),
        args.mode.into(),
        args.tolerance,
    )
    .map_err(|e| match e {
        rocmem_core::Error::PointRejected { index, reason } => {
            CliError::Usage(format!("line {}: {reason}", parsed.lines[index]))
        }
        other => CliError::Usage(other.to_string()),
    })?;
    let doc = fit_json(&report, &parsed);
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    Ok(())
}

fn run_simulate(args: SimulateArgs) -> Result<(), CliError> {
    check_noise_count(args.n, args.m)?;
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let variant = args.variant.into();
    let estimates = estimate_roc(args.n, args.m, variant, args.trials, args.seed)?;
    match args.format {
        FormatArg::Csv => {
            println!("theta,f_hat,p_hat");
            for est in &estimates {
                println!(
                    "{},{:.prec$},{:.prec$}",
                    est.theta,
                    est.f_hat,
                    est.p_hat,
                    prec = args.precision
                );
            }
        }
        FormatArg::Json => {
            let points: Vec<_> = estimates
                .iter()
                .map(|est| json!({ "theta": est.theta, "f_hat": est.f_hat, "p_hat": est.p_hat }))
                .collect();
            let doc = json!({
                "n": args.n,
                "m": args.m,
                "variant": variant_name(variant),
                "trials": args.trials,
                "seed": args.seed,
                "points": points,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<(), CliError> {
    if args.n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    let variants = [SignumVariant::MinusAtThreshold, SignumVariant::PlusAtThreshold];
    let mut oracle_cases = 0u64;

    println!("n m variant thetas status");
    for n in 1..=args.n_max {
        for variant in variants {
            let domain = theta_domain(n, variant);
            for m in 0..=n {
                let mut checked = 0u64;
                for theta in domain.min..=domain.max {
                    let exact = recall_probability(m, n, theta, variant)?;
                    for decoder in [DecoderKind::Convolution, DecoderKind::Hamming] {
                        let enumerated = exhaustive_probability(n, m, theta, variant, decoder)?;
                        if exact != enumerated {
                            return Err(CliError::Verification(format!(
                                "closed form {} != {:?} enumeration {} at n={n} m={m} theta={theta} variant={}",
                                exact.fraction_string(),
                                decoder,
                                enumerated.fraction_string(),
                                variant_name(variant)
                            )));
                        }
                    }
                    if theta >= 0 {
                        let network =
                            exhaustive_probability(n, m, theta, variant, DecoderKind::Network)?;
                        if exact != network {
                            return Err(CliError::Verification(format!(
                                "closed form {} != network enumeration {} at n={n} m={m} theta={theta} variant={}",
                                exact.fraction_string(),
                                network.fraction_string(),
                                variant_name(variant)
                            )));
                        }
                    }
                    checked += 1;
                }
                oracle_cases += checked;
                println!("{n} {m} {} {checked} ok", variant_name(variant));
            }
        }
    }

    let mut mc_cases = 0u64;
    if args.trials > 0 {
        let mut grid: Vec<u32> = [8u32, 9]
            .into_iter()
            .filter(|&n| n <= args.n_max)
            .collect();
        if grid.is_empty() {
            grid.push(args.n_max);
        }
        println!("mc: n m trials max_dev status");
        for &n in &grid {
            for m in 0..=n {
                let exact = roc_curve(n, m, SignumVariant::MinusAtThreshold)?;
                let estimates =
                    estimate_roc(n, m, SignumVariant::MinusAtThreshold, args.trials, args.seed)?;
                let mut max_dev = 0.0f64;
                for (est, point) in estimates.iter().zip(&exact.points) {
                    let target = point.hit.to_f64();
                    // Use the wider of the estimated and exact-rate standard
                    // errors so certain events stay checkable.
                    let stderr_hat = (est.p_hat * (1.0 - est.p_hat) / args.trials as f64).sqrt();
                    let stderr_exact = (target * (1.0 - target) / args.trials as f64).sqrt();
                    let stderr = stderr_hat.max(stderr_exact);
                    let deviation = (est.p_hat - target).abs();
                    if deviation > 5.0 * stderr {
                        return Err(CliError::Verification(format!(
                            "simulation p_hat={} deviates from exact {} beyond 5 standard errors at n={n} m={m} theta={}",
                            est.p_hat,
                            point.hit.fraction_string(),
                            est.theta
                        )));
                    }
                    if stderr > 0.0 {
                        max_dev = max_dev.max(deviation / stderr);
                    }
                    mc_cases += 1;
                }
                println!("mc: {n} {m} {} {max_dev:.2} ok", args.trials);
            }
        }
    }

    let mut summary = format!("verify passed: {oracle_cases} enumeration cases");
    if args.trials > 0 {
        write!(summary, ", {mc_cases} simulation cases").expect("write to string");
    } else {
        summary.push_str(", simulation skipped (trials = 0)");
    }
    println!("{summary}");
    Ok(())
}
