use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hhfrac::bounds::{TheoremId, TheoremParams, Variant};
use hhfrac::expr::{FuncSpec, FuncSpecError};
use hhfrac::fracint::{j_minus, j_plus, lemma1_rhs, signed_gap, FracParams};
use hhfrac::hypotheses::{
    check_convex, check_range_unit, check_slog_first, check_slog_second, GridSpec, HypothesisReport,
};
use hhfrac::quad::QuadConfig;
use hhfrac_cli::config::{load_config, OutputFormat};
use hhfrac_cli::report::write_report;
use hhfrac_cli::sweep::{contradiction_rows, run_sweep};
use hhfrac_cli::verify::{verify_theorem, VerifyError};

const EXIT_USAGE: u8 = 1;
const EXIT_EVAL: u8 = 2;
const EXIT_CONTRADICTION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hhfrac",
    version,
    about = "Verify Hermite-Hadamard type inequalities over Riemann-Liouville fractional integrals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Jplus,
    Jminus,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Convex,
    Slog1,
    Slog2,
    Unit,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    T2,
    T5,
    T6,
    T7,
    Remark1,
}

impl TheoremArg {
    fn id(self) -> TheoremId {
        match self {
            TheoremArg::T2 => TheoremId::T2,
            TheoremArg::T5 => TheoremId::T5,
            TheoremArg::T6 => TheoremId::T6,
            TheoremArg::T7 => TheoremId::T7,
            TheoremArg::Remark1 => TheoremId::Remark1,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Printed,
    Corrected,
}

impl VariantArg {
    fn variant(self) -> Variant {
        match self {
            VariantArg::Printed => Variant::Printed,
            VariantArg::Corrected => Variant::Corrected,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl FormatArg {
    fn format(self) -> OutputFormat {
        match self {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one fractional integral J_{a+}^alpha f(x) or J_{b-}^alpha f(x)
    Eval {
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long)]
        x: f64,
    },
    /// Print the signed gap identity residual: LHS, RHS and LHS - RHS
    Identity {
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        alpha: f64,
    },
    /// Run one hypothesis check against the function itself
    Classify {
        #[arg(long)]
        f: String,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        /// Convexity order for slog1/slog2
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Verify one bound and print the full record
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
    },
    /// Run a configuration-driven sweep and write the report
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
}

/// Failure carrying its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn eval(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_EVAL,
            message: message.into(),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Params(m) => Failure::usage(m),
            VerifyError::Computation(m) => Failure::eval(m),
        }
    }
}

fn fmt_real(v: f64) -> String {
    format!("{:.16e}", v)
}

fn parse_func(text: &str, lo: f64, hi: f64) -> Result<FuncSpec, Failure> {
    FuncSpec::new(text, lo, hi).map_err(|e| match e {
        FuncSpecError::Parse(_) | FuncSpecError::InvalidDomain { .. } => {
            Failure::usage(e.to_string())
        }
        FuncSpecError::Eval { .. } | FuncSpecError::NonFinite { .. } => {
            Failure::eval(e.to_string())
        }
    })
}

fn parse_params(a: f64, b: f64, alpha: f64) -> Result<FracParams, Failure> {
    FracParams::new(a, b, alpha).map_err(|e| Failure::usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout (exit 0) and real usage
            // errors on stderr (exit 1).
            let is_usage_error = e.use_stderr();
            let _ = e.print();
            return if is_usage_error {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Eval {
            f,
            a,
            b,
            alpha,
            op,
            x,
        } => cmd_eval(&f, a, b, alpha, op, x),
        Command::Identity { f, a, b, alpha } => cmd_identity(&f, a, b, alpha),
        Command::Classify { f, lo, hi, s, kind } => cmd_classify(&f, lo, hi, s, kind),
        Command::Verify {
            theorem,
            variant,
            f,
            a,
            b,
            alpha,
            s,
            mu,
            p,
            q,
        } => cmd_verify(theorem, variant, &f, a, b, alpha, s, mu, p, q),
        Command::Sweep {
            config,
            out,
            format,
        } => cmd_sweep(&config, out, format),
    }
}

fn cmd_eval(f: &str, a: f64, b: f64, alpha: f64, op: OpArg, x: f64) -> Result<u8, Failure> {
    let func = parse_func(f, a, b)?;
    let params = parse_params(a, b, alpha)?;
    let cfg = QuadConfig::default();
    let result = match op {
        OpArg::Jplus => j_plus(&func, &params, x, &cfg),
        OpArg::Jminus => j_minus(&func, &params, x, &cfg),
    }
    .map_err(|e| match e {
        hhfrac::fracint::FracError::PointOutOfRange { .. }
        | hhfrac::fracint::FracError::InvalidParams { .. } => Failure::usage(e.to_string()),
        other => Failure::eval(other.to_string()),
    })?;
    println!("value = {}", fmt_real(result.value));
    println!("error_estimate = {:.3e}", result.error_estimate);
    println!("converged = {}", result.converged);
    if !result.converged {
        eprintln!("warning: quadrature did not reach the requested tolerance");
    }
    Ok(0)
}

fn cmd_identity(f: &str, a: f64, b: f64, alpha: f64) -> Result<u8, Failure> {
    let func = parse_func(f, a, b)?;
    let params = parse_params(a, b, alpha)?;
    let cfg = QuadConfig::default();
    let lhs = signed_gap(&func, &params, &cfg).map_err(|e| Failure::eval(e.to_string()))?;
    let rhs = lemma1_rhs(&func, &params, &cfg).map_err(|e| Failure::eval(e.to_string()))?;
    println!("lhs = {}", fmt_real(lhs.value));
    println!("rhs = {}", fmt_real(rhs.value));
    println!("residual = {}", fmt_real(lhs.value - rhs.value));
    println!("converged = {}", lhs.converged && rhs.converged);
    Ok(0)
}

fn cmd_classify(f: &str, lo: f64, hi: f64, s: Option<f64>, kind: KindArg) -> Result<u8, Failure> {
    let func = parse_func(f, lo, hi)?;
    let grid = GridSpec::default();
    let g = |x: f64| func.eval(x).unwrap_or(f64::NAN);
    let need_s = || s.ok_or_else(|| Failure::usage("--s is required for slog1/slog2".to_owned()));
    let report: HypothesisReport = match kind {
        KindArg::Convex => check_convex(g, (lo, hi), &grid),
        KindArg::Slog1 => check_slog_first(g, need_s()?, (lo, hi), &grid),
        KindArg::Slog2 => check_slog_second(g, need_s()?, (lo, hi), &grid),
        KindArg::Unit => check_range_unit(g, (lo, hi), &grid),
    }
    .map_err(|e| match e {
        hhfrac::hypotheses::HypothesisError::InvalidInput { .. } => Failure::usage(e.to_string()),
        other => Failure::eval(other.to_string()),
    })?;
    println!("property = {}", report.property);
    println!(
        "holds = {}",
        if report.holds {
            "no violation found"
        } else {
            "violated"
        }
    );
    println!("worst_violation = {}", fmt_real(report.worst_violation));
    println!("tolerance = {:.3e}", report.tolerance);
    match report.witness {
        Some(w) => println!("witness = (x={}, y={}, t={})", w.x, w.y, w.t),
        None => println!("witness = none"),
    }
    println!("samples_checked = {}", report.samples_checked);
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    theorem: TheoremArg,
    variant: VariantArg,
    f: &str,
    a: f64,
    b: f64,
    alpha: f64,
    s: Option<f64>,
    mu: Option<f64>,
    p: Option<f64>,
    q: Option<f64>,
) -> Result<u8, Failure> {
    let theorem = theorem.id();
    let func = parse_func(f, a, b)?;
    let params = parse_params(a, b, alpha)?;

    let needs_s_mu = theorem != TheoremId::T2;
    if needs_s_mu && s.is_none() {
        return Err(Failure::usage(format!(
            "--s is required for theorem {}",
            theorem.label()
        )));
    }
    let needs_mu = matches!(theorem, TheoremId::T5 | TheoremId::T7 | TheoremId::Remark1);
    if needs_mu && mu.is_none() {
        return Err(Failure::usage(format!(
            "--mu is required for theorem {}",
            theorem.label()
        )));
    }
    let mut tp = TheoremParams::new(s.unwrap_or(1.0), mu.unwrap_or(0.5), variant.variant())
        .map_err(|e| Failure::usage(e.to_string()))?;
    match theorem {
        TheoremId::T6 => {
            let p = p.ok_or_else(|| Failure::usage("--p is required for theorem t6".to_owned()))?;
            tp = tp.with_p(p).map_err(|e| Failure::usage(e.to_string()))?;
            if let Some(q) = q {
                tp.q = Some(q);
                tp.validate().map_err(|e| Failure::usage(e.to_string()))?;
            }
        }
        TheoremId::T7 => {
            let q = q.ok_or_else(|| Failure::usage("--q is required for theorem t7".to_owned()))?;
            tp = tp.with_q(q).map_err(|e| Failure::usage(e.to_string()))?;
        }
        _ => {}
    }

    let record = verify_theorem(
        &func,
        &params,
        &tp,
        theorem,
        &GridSpec::default(),
        &QuadConfig::default(),
    )?;
    println!("theorem = {}", record.theorem.label());
    if theorem != TheoremId::T2 {
        println!("variant = {}", record.variant.label());
    }
    println!("lhs = {}", fmt_real(record.lhs));
    println!("rhs = {}", fmt_real(record.rhs));
    println!("margin = {}", fmt_real(record.margin));
    println!("convex_fprime = {}", record.convex);
    println!("slog_second = {}", record.slog_second);
    println!("unit_range = {}", record.unit_range);
    println!("psi_le_one = {}", record.psi_le_one);
    println!("quad_converged = {}", record.quad_converged);
    Ok(0)
}

fn cmd_sweep(
    config_path: &PathBuf,
    out: Option<PathBuf>,
    format: Option<FormatArg>,
) -> Result<u8, Failure> {
    let text = fs::read_to_string(config_path)
        .map_err(|e| Failure::usage(format!("cannot read '{}': {}", config_path.display(), e)))?;
    let config = load_config(&text).map_err(|e| Failure::usage(e.to_string()))?;
    config
        .validate()
        .map_err(|e| Failure::usage(e.to_string()))?;

    let rows = run_sweep(&config).map_err(|e| Failure::usage(e.to_string()))?;
    let out_path = out
        .or_else(|| config.output_path.clone())
        .unwrap_or_else(|| PathBuf::from("report.csv"));
    let out_format = format
        .map(FormatArg::format)
        .or(config.output_format)
        .unwrap_or(OutputFormat::Csv);
    write_report(&rows, out_format, &out_path).map_err(|e| Failure::usage(e.to_string()))?;

    let failed = rows.iter().filter(|r| r.status != "ok").count();
    println!(
        "wrote {} rows to {} ({}); {} failed rows",
        rows.len(),
        out_path.display(),
        out_format.label(),
        failed
    );

    let contradictions = contradiction_rows(&rows);
    if !contradictions.is_empty() {
        eprintln!(
            "warning: {} hypothesis-true rows have corrected-variant margin below -{:e}",
            contradictions.len(),
            hhfrac_cli::MARGIN_SLACK
        );
        return Ok(EXIT_CONTRADICTION);
    }
    Ok(0)
}
