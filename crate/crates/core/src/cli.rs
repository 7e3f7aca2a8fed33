//! Command-line front end.
//!
//! [`run`] takes the full argv and returns the exit code with the captured
//! stdout/stderr text, so the binary is a thin shell around it.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::caputo::Scheme;
use crate::error::Error;
use crate::harness::{self, Correction, Coupling, Ladder, RelaxationFamily, ReportFormat, SubdiffusionFamily};
use crate::relaxation::{self, choose_m};
use crate::specfun::{mittag_leffler, SeriesPolicy};
use crate::subdiffusion::{self, InitialProfile, SubdiffusionProblem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "fracrelax",
    version,
    about = "L1 / modified-L1 solvers for fractional relaxation and subdiffusion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the Mittag-Leffler function E_{alpha,beta}(x)
    Ml(MlArgs),
    /// Solve one relaxation problem and print the time series
    Relax(RelaxArgs),
    /// Solve one subdiffusion problem and print the profile at the final time
    Subdiff(SubdiffArgs),
    /// Run a convergence study over a halving ladder of steps
    Converge(ConvergeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    L1,
    Ml1,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::L1 => Scheme::L1,
            SchemeArg::Ml1 => Scheme::ModifiedL1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
    Jsonl,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Markdown => ReportFormat::Markdown,
            FormatArg::Jsonl => ReportFormat::JsonLines,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RelaxProblemId {
    /// y^(alpha) + B y = 0, y(0) = 1
    RelaxMlexact,
    /// manufactured problem with exact solution x^2 (alpha = 0.5, B = 1)
    R11,
    /// manufactured problem with exact solution x^1.25 (alpha = 0.5, B = 1)
    R12,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemId {
    RelaxMlexact,
    R11,
    R12,
    /// subdiffusion, u(x,0) = sin x, alpha = 0.5
    S2,
    /// subdiffusion, u(x,0) = sin x, alpha = 0.3
    S03,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if a > 0.0 && a < 1.0 {
        Ok(a)
    } else {
        Err(format!("alpha must lie in (0, 1), got {a}"))
    }
}

fn parse_ml_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if a > 0.0 && a <= 1.0 {
        Ok(a)
    } else {
        Err(format!("alpha must lie in (0, 1], got {a}"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {v}"))
    }
}

#[derive(Debug, Args)]
struct MlArgs {
    /// Order alpha in (0, 1]
    #[arg(long, value_parser = parse_ml_alpha)]
    alpha: f64,
    /// Second parameter beta > 0
    #[arg(long, default_value_t = 1.0, value_parser = parse_positive)]
    beta: f64,
    /// Argument, |x| <= 50
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
}

#[derive(Debug, Args)]
struct RelaxArgs {
    #[arg(long, value_enum, default_value_t = RelaxProblemId::RelaxMlexact)]
    problem: RelaxProblemId,
    /// Order alpha in (0, 1)
    #[arg(long, value_parser = parse_alpha, default_value_t = 0.5)]
    alpha: f64,
    /// Relaxation rate B > 0
    #[arg(long = "B", value_parser = parse_positive, default_value_t = 1.0)]
    b: f64,
    #[arg(long, value_enum, default_value_t = SchemeArg::L1)]
    scheme: SchemeArg,
    /// Step size; T / h must be an integer
    #[arg(long, value_parser = parse_positive, default_value_t = 0.1)]
    h: f64,
    /// Interval end
    #[arg(long = "T", value_parser = parse_positive, default_value_t = 1.0)]
    t: f64,
    /// Apply the fractional Taylor correction with M terms (least M with M*alpha >= 2 if omitted)
    #[arg(long, num_args = 0..=1, value_name = "M")]
    correct: Option<Option<usize>>,
    /// Write the series to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SubdiffArgs {
    /// Order alpha in (0, 1)
    #[arg(long, value_parser = parse_alpha, default_value_t = 0.5)]
    alpha: f64,
    /// Time step; T / tau must be an integer
    #[arg(long, value_parser = parse_positive, default_value_t = 0.05)]
    tau: f64,
    /// Space intervals on [0, pi] (default: 3 T / tau, i.e. h = pi tau / 3)
    #[arg(long = "N")]
    n: Option<usize>,
    /// Final time
    #[arg(long = "T", value_parser = parse_positive, default_value_t = 1.0)]
    t: f64,
    #[arg(long, value_enum, default_value_t = SchemeArg::L1)]
    scheme: SchemeArg,
    /// Apply the fractional Taylor correction with M terms (least M with M*alpha >= 2 if omitted)
    #[arg(long, num_args = 0..=1, value_name = "M")]
    correct: Option<Option<usize>>,
    /// Write the final-time profile to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    #[arg(long, value_enum)]
    problem: ProblemId,
    /// Order alpha in (0, 1); fixed by r11, r12, s2 and s03
    #[arg(long, value_parser = parse_alpha)]
    alpha: Option<f64>,
    /// Relaxation rate B > 0 (relax-mlexact only)
    #[arg(long = "B", value_parser = parse_positive)]
    b: Option<f64>,
    #[arg(long, value_enum, default_value_t = SchemeArg::L1)]
    scheme: SchemeArg,
    /// Largest step of the ladder
    #[arg(long, value_parser = parse_positive, default_value_t = 0.05)]
    h0: f64,
    /// Number of ladder levels (each halves the step)
    #[arg(long, default_value_t = 5)]
    levels: usize,
    /// Apply the fractional Taylor correction with M terms (least M with M*alpha >= 2 if omitted)
    #[arg(long, num_args = 0..=1, value_name = "M")]
    correct: Option<Option<usize>>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

fn correction(flag: Option<Option<usize>>) -> Correction {
    match flag {
        None => Correction::Off,
        Some(None) => Correction::Auto,
        Some(Some(m)) => Correction::Terms(m),
    }
}

/// 17 significant digits, enough to round-trip binary64.
fn full(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<String, Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| Failure::Numerical(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn fixed_alpha(given: Option<f64>, fixed: f64, id: &str) -> Result<f64, Failure> {
    match given {
        Some(a) if a != fixed => Err(Failure::Usage(format!(
            "problem {id} has alpha = {fixed}; --alpha {a} conflicts"
        ))),
        _ => Ok(fixed),
    }
}

fn cmd_ml(args: MlArgs) -> Result<String, Failure> {
    let v = mittag_leffler(args.alpha, args.beta, args.x, &SeriesPolicy::default())?;
    Ok(format!("{v}\n"))
}

fn cmd_relax(args: RelaxArgs) -> Result<String, Failure> {
    let family = match args.problem {
        RelaxProblemId::RelaxMlexact => RelaxationFamily::MlExact {
            alpha: args.alpha,
            b: args.b,
        },
        RelaxProblemId::R11 => RelaxationFamily::R11,
        RelaxProblemId::R12 => RelaxationFamily::R12,
    };
    let scheme = Scheme::from(args.scheme);
    let series = match correction(args.correct) {
        Correction::Off => relaxation::solve(&family.problem(args.t, args.h)?, scheme)?,
        c => {
            let RelaxationFamily::MlExact { alpha, b } = family else {
                return Err(Failure::Usage(
                    "--correct applies only to --problem relax-mlexact".into(),
                ));
            };
            let m = match c {
                Correction::Terms(m) => m,
                _ => choose_m(alpha)?,
            };
            relaxation::solve_corrected(alpha, b, m, args.t, args.h, scheme)?
        }
    };
    let mut text = String::from("x,value,exact,error\n");
    for (n, v) in series.values.iter().enumerate() {
        let x = series.x(n);
        let exact = family.exact(x)?;
        let _ = writeln!(text, "{},{},{},{}", full(x), full(*v), full(exact), full(v - exact));
    }
    emit(text, &args.out)
}

fn cmd_subdiff(args: SubdiffArgs) -> Result<String, Failure> {
    let m_time = relaxation::step_count(args.t, args.tau)?;
    let n_space = match args.n {
        Some(n) => n,
        None => {
            let n = 3.0 * args.t / args.tau;
            if (n - n.round()).abs() > 1e-9 * n {
                return Err(Failure::Usage(format!(
                    "3 T / tau = {n} is not an integer; pass --N explicitly"
                )));
            }
            n.round() as usize
        }
    };
    let scheme = Scheme::from(args.scheme);
    let sol = match correction(args.correct) {
        Correction::Off => {
            let p = SubdiffusionProblem::new(
                args.alpha,
                n_space,
                m_time,
                args.t,
                InitialProfile::SineMode { k: 1 },
                None,
            )?;
            subdiffusion::solve(&p, scheme)?
        }
        Correction::Auto => {
            subdiffusion::solve_corrected(args.alpha, choose_m(args.alpha)?, args.t, n_space, m_time, scheme)?
        }
        Correction::Terms(m) => subdiffusion::solve_corrected(args.alpha, m, args.t, n_space, m_time, scheme)?,
    };
    let mut text = String::from("x,value,exact,error\n");
    let t = m_time as f64 * sol.tau;
    for (n, v) in sol.last_row().iter().enumerate() {
        let x = (n as f64 * sol.h).min(std::f64::consts::PI);
        let exact = subdiffusion::exact_single_mode(args.alpha, 1, x, t)?;
        let _ = writeln!(text, "{},{},{},{}", full(x), full(*v), full(exact), full(v - exact));
    }
    emit(text, &args.out)
}

fn cmd_converge(args: ConvergeArgs) -> Result<String, Failure> {
    let scheme = Scheme::from(args.scheme);
    let corr = correction(args.correct);
    let relax_only = |b: Option<f64>, id: &str| match b {
        Some(_) => Err(Failure::Usage(format!("--B does not apply to problem {id}"))),
        None => Ok(()),
    };
    let report = match args.problem {
        ProblemId::RelaxMlexact | ProblemId::R11 | ProblemId::R12 => {
            let family = match args.problem {
                ProblemId::R11 => {
                    fixed_alpha(args.alpha, 0.5, "r11")?;
                    relax_only(args.b, "r11")?;
                    RelaxationFamily::R11
                }
                ProblemId::R12 => {
                    fixed_alpha(args.alpha, 0.5, "r12")?;
                    relax_only(args.b, "r12")?;
                    RelaxationFamily::R12
                }
                _ => RelaxationFamily::MlExact {
                    alpha: args.alpha.unwrap_or(0.5),
                    b: args.b.unwrap_or(1.0),
                },
            };
            let ladder = Ladder::new(args.h0, args.levels, Coupling::None)?;
            harness::run_relaxation_study(family, scheme, &ladder, corr)?
        }
        ProblemId::S2 | ProblemId::S03 => {
            let (fixed, id) = if args.problem == ProblemId::S2 {
                (0.5, "s2")
            } else {
                (0.3, "s03")
            };
            let alpha = fixed_alpha(args.alpha, fixed, id)?;
            relax_only(args.b, id)?;
            let ladder = Ladder::new(args.h0, args.levels, Coupling::SpaceFromTime)?;
            harness::run_subdiffusion_study(SubdiffusionFamily::SineMode { alpha }, scheme, &ladder, corr)?
        }
    };
    emit(harness::render_report(&report, args.format.into()), &args.out)
}

/// Parse `argv` (including the program name) and run the command.
pub fn run<I, T>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match cli.command {
        Command::Ml(a) => cmd_ml(a),
        Command::Relax(a) => cmd_relax(a),
        Command::Subdiff(a) => cmd_subdiff(a),
        Command::Converge(a) => cmd_converge(a),
    };
    match result {
        Ok(stdout) => CliOutcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => CliOutcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Numerical(msg)) => CliOutcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}
