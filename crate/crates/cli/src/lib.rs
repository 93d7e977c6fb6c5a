//! Command-line front end for the su11 engine.
//!
//! [`run`] parses arguments, dispatches to the engine and renders the result;
//! the binary only prints what comes back and exits with its status.

mod report;

use std::ffi::OsString;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use su11_core::analysis::{algebra_suite, classify, jantzen_crossing, verify_conjecture};
use su11_core::exact::quadrature_integral;
use su11_core::filtrations::{filtration_table, induced_hodge_shift, quotient_vector};
use su11_core::forms::{continued_integral, convergence_range, form_diagonal, gr_form_diagonal};
use su11_core::{
    basis_window, constituents, rat, ConstituentPart, Error as CoreError, ModuleSpec, Orbit,
    Parity, PrincipalSeries, Rational,
};

pub use report::{
    DescribeReport, FormRow, FormTable, OracleReport, OracleRow, Payload, ShiftRow, VerifyReport,
    CSV_COLUMNS, ORACLE_RTOL,
};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Usage = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// What a run produced: the rendered document and where it goes.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    /// Rendered output (empty on usage errors).
    pub stdout: String,
    /// Diagnostics for the user.
    pub stderr: String,
    /// When set, `stdout` belongs in this file instead of the terminal.
    pub out_path: Option<std::path::PathBuf>,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            status: Status::Usage,
            stdout: String::new(),
            stderr: msg.into(),
            out_path: None,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "su11",
    version,
    about = "Hodge filtrations and invariant forms on SU(1,1) Harish-Chandra modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reducibility, constituents, convergence range and filtrations of a module.
    Describe(Common),
    /// Per-vector Hodge level and signs of both invariant forms.
    FormTable(Common),
    /// Check the Hodge sign law and the algebraic identities on a window.
    Verify(Common),
    /// Compare form signs just below and above a reduction point.
    Jantzen(Common),
    /// Unitarity of every constituent of a principal series.
    Classify(Common),
    /// Exact continuation against numerical quadrature.
    Oracle(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Infinitesimal character as "p/q" or an integer.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    lambda: Option<Rational>,
    #[arg(long, value_enum, default_value_t = ParityArg::Even)]
    parity: ParityArg,
    /// Select the point module with this m instead of a principal series.
    #[arg(long)]
    point_m: Option<u32>,
    /// Orbit of the point module: 0 or inf.
    #[arg(long, value_parser = parse_orbit, default_value = "0")]
    orbit: Orbit,
    /// Restrict to a constituent of a reducible principal series.
    #[arg(long, value_enum)]
    part: Option<PartArg>,
    /// Window half-width: |n| ≤ bound, or k ≤ bound for point modules.
    #[arg(long, default_value_t = 8)]
    bound: u32,
    /// Offset for the Jantzen comparison, as "p/q".
    #[arg(long, value_parser = parse_rational, default_value = "1/4")]
    epsilon: Rational,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Write the rendered output here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PartArg {
    W1,
    Zero,
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s).map_err(|e| e.to_string())
}

fn parse_orbit(s: &str) -> Result<Orbit, String> {
    match s {
        "0" | "zero" => Ok(Orbit::AtZero),
        "inf" | "infinity" => Ok(Orbit::AtInfinity),
        other => Err(format!("unknown orbit '{other}' (expected 0 or inf)")),
    }
}

/// Everything that turns into exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl From<CoreError> for UsageError {
    fn from(e: CoreError) -> Self {
        UsageError(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

impl Common {
    fn series(&self) -> Result<PrincipalSeries, UsageError> {
        let lambda = self
            .lambda
            .clone()
            .ok_or_else(|| usage("--lambda is required"))?;
        Ok(PrincipalSeries::new(lambda, self.parity.into())?)
    }

    fn module(&self) -> Result<ModuleSpec, UsageError> {
        if let Some(m) = self.point_m {
            if self.lambda.is_some() || self.part.is_some() {
                return Err(usage(
                    "--point-m cannot be combined with --lambda or --part",
                ));
            }
            return Ok(ModuleSpec::point(m, self.orbit));
        }
        let ps = self.series()?;
        Ok(match self.part {
            None => ModuleSpec::PrincipalSeries(ps),
            Some(part) => {
                let part = match part {
                    PartArg::W1 => ConstituentPart::W1Sub,
                    PartArg::Zero => ConstituentPart::PointPart(Orbit::AtZero),
                    PartArg::Infinity => ConstituentPart::PointPart(Orbit::AtInfinity),
                };
                ModuleSpec::constituent(ps, part)?
            }
        })
    }

    fn irreducible_module(&self) -> Result<ModuleSpec, UsageError> {
        let spec = self.module()?;
        if !spec.is_irreducible() {
            return Err(usage(format!(
                "{spec} is reducible; pick a constituent with --part w1|zero|infinity"
            )));
        }
        Ok(spec)
    }
}

/// Parse `args` (including the program name) and execute the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() {
                Status::Usage
            } else {
                Status::Pass
            };
            let text = e.render().to_string();
            return match status {
                Status::Pass => Outcome {
                    status,
                    stdout: text,
                    stderr: String::new(),
                    out_path: None,
                },
                _ => Outcome::usage(text),
            };
        }
    };
    let (common, result) = match &cli.command {
        Command::Describe(c) => (c, describe(c)),
        Command::FormTable(c) => (c, form_table(c)),
        Command::Verify(c) => (c, verify(c)),
        Command::Jantzen(c) => (c, jantzen(c)),
        Command::Classify(c) => (c, classify_cmd(c)),
        Command::Oracle(c) => (c, oracle(c)),
    };
    let (payload, status) = match result {
        Ok(r) => r,
        Err(UsageError(msg)) => return Outcome::usage(format!("error: {msg}\n")),
    };
    let rendered = match report::render(&payload, common.output) {
        Ok(text) => text,
        Err(msg) => return Outcome::usage(format!("error: {msg}\n")),
    };
    let stderr = match status {
        Status::Fail => "one or more checks failed\n".to_string(),
        _ => String::new(),
    };
    Outcome {
        status,
        stdout: rendered,
        stderr,
        out_path: common.out.clone(),
    }
}

type CommandResult = Result<(Payload, Status), UsageError>;

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn describe(c: &Common) -> CommandResult {
    let spec = c.module()?;
    let (reducible, parts, range, shifts) = match &spec {
        ModuleSpec::PrincipalSeries(ps) => {
            let shifts = if ps.is_reducible() && ps.lambda().is_positive() {
                let mut rows = Vec::new();
                for orbit in [Orbit::AtZero, Orbit::AtInfinity] {
                    for k in 0..=c.bound {
                        rows.push(ShiftRow {
                            orbit,
                            k,
                            vector: quotient_vector(ps.lambda(), ps.parity(), orbit, k)?,
                            shift: induced_hodge_shift(ps.lambda(), ps.parity(), orbit, k)?,
                        });
                    }
                }
                rows
            } else {
                Vec::new()
            };
            (
                ps.is_reducible(),
                constituents(ps),
                Some(convergence_range(ps)),
                shifts,
            )
        }
        _ => (false, vec![spec.clone()], None, Vec::new()),
    };
    let report = DescribeReport {
        codimension: spec.codimension(),
        filtration: filtration_table(&spec, c.bound),
        spec,
        bound: c.bound,
        reducible,
        constituents: parts,
        convergence_range: range,
        induced_shifts: shifts,
    };
    Ok((Payload::Describe(report), Status::Pass))
}

fn form_table(c: &Common) -> CommandResult {
    let spec = c.irreducible_module()?;
    let mut rows = Vec::new();
    for v in basis_window(&spec, c.bound) {
        let u = form_diagonal(&v, &spec)?;
        let g = gr_form_diagonal(&v, &spec)?;
        rows.push(FormRow {
            index_twice: v.index_twice(),
            hodge_level: su11_core::filtrations::hodge_level(&v, &spec)?,
            u_sign: u.sign,
            ratio: u.ratio_to_reference,
            magnitude: u.magnitude,
            g_sign: g.sign,
            w1: su11_core::filtrations::in_w1(&v, &spec)?,
            vector: v,
        });
    }
    Ok((
        Payload::FormTable(FormTable {
            spec,
            bound: c.bound,
            rows,
        }),
        Status::Pass,
    ))
}

fn verify(c: &Common) -> CommandResult {
    let spec = c.irreducible_module()?;
    let conjecture = verify_conjecture(&spec, c.bound)?;
    let algebra = algebra_suite(&spec, c.bound)?;
    let status = pass_if(conjecture.verdict.passed() && algebra.holds());
    Ok((
        Payload::Verify(VerifyReport {
            conjecture,
            algebra,
        }),
        status,
    ))
}

fn jantzen(c: &Common) -> CommandResult {
    if c.point_m.is_some() || c.part.is_some() {
        return Err(usage(
            "jantzen takes a reduction point via --lambda and --parity only",
        ));
    }
    let lambda = c
        .lambda
        .clone()
        .ok_or_else(|| usage("--lambda is required"))?;
    let report = jantzen_crossing(&lambda, c.parity.into(), &c.epsilon, c.bound)?;
    let status = pass_if(report.verdict.passed());
    Ok((Payload::Jantzen(report), status))
}

fn classify_cmd(c: &Common) -> CommandResult {
    if c.point_m.is_some() || c.part.is_some() {
        return Err(usage(
            "classify takes a principal series via --lambda and --parity only",
        ));
    }
    let ps = c.series()?;
    Ok((
        Payload::Classify(classify(ps.lambda(), ps.parity())?),
        Status::Pass,
    ))
}

/// Default grid: `t` from 1 to 15/2 and `s` at fixed fractions of `t`, so
/// most points sit away from the anchor and exercise the exact shift.
fn default_grid() -> Vec<(Rational, Rational)> {
    let ts = [rat(1, 1), rat(5, 2), rat(4, 1), rat(11, 2), rat(15, 2)];
    let fs = [rat(1, 9), rat(2, 7), rat(1, 2), rat(3, 4), rat(11, 12)];
    ts.iter()
        .flat_map(|t| fs.iter().map(move |f| (t * f, t.clone())))
        .collect()
}

/// With `--lambda`, the grid is the convergent part of that series:
/// `s = n + (λ+1)/2`, `t = λ+1` for `|n| ≤ bound`.
fn series_grid(c: &Common) -> Result<Vec<(Rational, Rational)>, UsageError> {
    let ps = c.series()?;
    let t = ps.lambda() + &Rational::one();
    let half_t = &t * &rat(1, 2);
    let spec = ModuleSpec::PrincipalSeries(ps.clone());
    let inside = convergence_range(&ps);
    Ok(basis_window(&spec, c.bound)
        .into_iter()
        .filter_map(|v| match v {
            su11_core::BasisVector::Series(n) if inside.contains(&n) => {
                Some((n.to_rational() + half_t.clone(), t.clone()))
            }
            _ => None,
        })
        .collect())
}

fn oracle(c: &Common) -> CommandResult {
    if c.point_m.is_some() || c.part.is_some() {
        return Err(usage("oracle takes at most --lambda and --parity"));
    }
    let grid = match c.lambda {
        Some(_) => series_grid(c)?,
        None => default_grid(),
    };
    let mut rows = Vec::new();
    for (s, t) in grid {
        let continued = continued_integral(&s, &t)?;
        let exact = continued.value();
        let quadrature = quadrature_integral(&s, &t).value();
        let rel_err = match (exact, quadrature) {
            (Some(a), Some(b)) => Some(((a - b) / b).abs()),
            _ => None,
        };
        rows.push(OracleRow {
            ok: rel_err.is_some_and(|e| e <= ORACLE_RTOL),
            anchor_s: continued.anchor_s.clone(),
            s,
            t,
            continued: exact,
            quadrature,
            rel_err,
        });
    }
    let ok = rows.iter().all(|r| r.ok);
    Ok((
        Payload::Oracle(OracleReport {
            tolerance: ORACLE_RTOL,
            rows,
        }),
        pass_if(ok),
    ))
}
