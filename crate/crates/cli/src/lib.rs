//! Command implementations behind the `reciprocity` binary.
//!
//! Every command returns an [`Output`] holding the rendered text and the exit
//! code, so the binary only has to print and exit.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use reciprocity_core::determinant::DETERMINANT_P_BOUND;
use reciprocity_core::field::{find_primitive_pth_root, ExtField};
use reciprocity_core::gauss::{gauss_witness, render_listing};
use reciprocity_core::legendre::{legendre, reciprocity_derivation, Derivation, Method, Step};
use reciprocity_core::prime_field::{is_odd_prime, ReciprocityInstance};
use reciprocity_core::report::{
    verify_instance, Status, SweepConfig, SweepSummary, VerificationReport,
};
use reciprocity_core::worked_example::{run_worked_example, Comparison, ExampleReport};
use reciprocity_core::{Error, Sign};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "reciprocity",
    version,
    about = "Finite-field verification of quadratic reciprocity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the Legendre symbol (a/p).
    Legendre {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run every check for one pair of distinct odd primes.
    Verify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run the checks over all distinct odd prime pairs in range.
    Sweep {
        #[arg(long)]
        max_p: u32,
        #[arg(long)]
        max_q: u32,
        /// Determinant checks run only for p up to this bound.
        #[arg(long, default_value_t = 31)]
        det_bound: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Reproduce the p = 13, q = 5 example and compare it with the stored values.
    Example {
        #[command(flatten)]
        format: FormatArg,
    },
    /// Show the field, modulus and root of unity chosen for a pair.
    FieldInfo {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Euler,
    Gauss,
    Reciprocity,
    Oracle,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Euler => vec![Method::Euler],
            MethodArg::Gauss => vec![Method::Gauss],
            MethodArg::Reciprocity => vec![Method::Reciprocity],
            MethodArg::Oracle => vec![Method::Oracle],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// What a command prints and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn new(status: Status, stdout: String) -> Self {
        let code = if status.is_pass() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        };
        Output {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(err: &Error) -> Self {
        Output {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }

    fn internal(err: &Error) -> Self {
        Output {
            code: EXIT_FAIL,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn render_set(values: &[i32]) -> String {
    format!("{{{}}}", render_listing(values))
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn run(cli: Cli) -> Output {
    match cli.command {
        Command::Legendre {
            a,
            p,
            method,
            format,
        } => cmd_legendre(a, p, method, format.format),
        Command::Verify { p, q, format } => cmd_verify(p, q, format.format),
        Command::Sweep {
            max_p,
            max_q,
            det_bound,
            format,
        } => cmd_sweep(
            SweepConfig {
                max_p,
                max_q,
                det_bound,
            },
            format.format,
        ),
        Command::Example { format } => cmd_example(format.format),
        Command::FieldInfo { p, q, format } => cmd_field_info(p, q, format.format),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: Method,
    pub value: Option<Sign>,
    /// Set when the method does not apply to these arguments.
    pub unsupported: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendreReport {
    pub a: u64,
    pub p: u64,
    pub value: Sign,
    pub results: Vec<MethodResult>,
    pub mu: Option<usize>,
    #[serde(rename = "S")]
    pub s: Option<Vec<i32>>,
    pub derivation: Option<Derivation>,
    pub supplementary_laws: bool,
    /// Whether every method that ran gave the same value.
    pub agreement: bool,
    pub status: Status,
}

fn supplementary_laws(a: u64, p: u64, derivation: Option<&Derivation>) -> bool {
    match derivation {
        Some(d) => d.uses_supplementary_laws(),
        None => a % p == 2 || a % p == p - 1,
    }
}

pub fn legendre_report(a: u64, p: u64, method: MethodArg) -> Result<LegendreReport, Error> {
    let mut results = Vec::new();
    for m in method.methods() {
        match legendre(a, p, m) {
            Ok(v) => results.push(MethodResult {
                method: m,
                value: Some(v),
                unsupported: None,
            }),
            Err(Error::UnsupportedMethod { reason, .. }) if method == MethodArg::All => results
                .push(MethodResult {
                    method: m,
                    value: None,
                    unsupported: Some(reason),
                }),
            Err(e) => return Err(e),
        }
    }
    let values: Vec<Sign> = results.iter().filter_map(|r| r.value).collect();
    let value = values[0];
    let agreement = values.iter().all(|&v| v == value);

    let ran = |m: Method| results.iter().any(|r| r.method == m && r.value.is_some());
    let (mu, s) = if ran(Method::Gauss) {
        let w = gauss_witness(p as u32, (a % p) as u32)?;
        (Some(w.mu), Some(w.s.into_iter().collect()))
    } else {
        (None, None)
    };
    let derivation = if ran(Method::Reciprocity) && is_odd_prime(a) {
        Some(reciprocity_derivation(a, p)?)
    } else {
        None
    };
    let supplementary = ran(Method::Reciprocity) && supplementary_laws(a, p, derivation.as_ref());
    Ok(LegendreReport {
        a,
        p,
        value,
        results,
        mu,
        s,
        derivation,
        supplementary_laws: supplementary,
        agreement,
        status: Status::from_bool(agreement),
    })
}

fn render_step(step: &Step) -> String {
    match step {
        Step::Reduce { a, p, residue } => format!("({a}/{p}) = ({residue}/{p})"),
        Step::MinusOne { p, value } => format!("(-1/{p}) = {value}"),
        Step::Two { p, count, value } => format!("(2/{p})^{count} = {value}"),
        Step::Flip { r, p, sign } => format!("({r}/{p}) = {sign} * ({p}/{r})"),
        Step::Ground { p } => format!("(1/{p}) = +1"),
    }
}

fn render_legendre(r: &LegendreReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "({}/{}) = {}", r.a, r.p, r.value);
    if r.results.len() > 1 {
        for m in &r.results {
            match (&m.value, &m.unsupported) {
                (Some(v), _) => {
                    let _ = writeln!(out, "  {:<12} {v}", m.method.name());
                }
                (None, reason) => {
                    let reason = reason.as_deref().unwrap_or("");
                    let _ = writeln!(out, "  {:<12} unsupported: {reason}", m.method.name());
                }
            }
        }
        let ran = r.results.iter().filter(|m| m.value.is_some()).count();
        let verdict = if r.agreement { "agree" } else { "DISAGREE" };
        let _ = writeln!(out, "{ran} methods {verdict}");
    }
    if let (Some(mu), Some(s)) = (r.mu, &r.s) {
        let _ = writeln!(out, "mu = {mu}");
        let _ = writeln!(out, "S = {}", render_set(s));
    }
    if let Some(d) = &r.derivation {
        let _ = writeln!(out, "derivation:");
        for step in &d.steps {
            let _ = writeln!(out, "  {}", render_step(step));
        }
    }
    if r.supplementary_laws {
        let _ = writeln!(out, "uses supplementary laws");
    }
    out
}

pub fn cmd_legendre(a: u64, p: u64, method: MethodArg, format: Format) -> Output {
    match legendre_report(a, p, method) {
        Ok(r) => {
            let text = match format {
                Format::Text => render_legendre(&r),
                Format::Json => to_json(&r),
            };
            Output::new(r.status, text)
        }
        Err(e) => Output::invalid(&e),
    }
}

fn render_verify(r: &VerificationReport) -> String {
    let mut out = String::new();
    let i = &r.instance;
    let _ = writeln!(
        out,
        "p = {}, q = {}, e = {}, p* = {}",
        i.p, i.q, i.e, i.p_star
    );
    let w = &r.witnesses;
    for (name, value) in [
        ("modulus", &w.modulus),
        ("theta", &w.theta),
        ("delta", &w.delta),
    ] {
        if let Some(v) = value {
            let _ = writeln!(out, "{name:<13} {v}");
        }
    }
    let _ = writeln!(out, "{:<13} {}", "(q/p)", w.symbol);
    let _ = writeln!(out, "{:<13} {}", "mu", w.mu);
    let _ = writeln!(out, "{:<13} {}", "S", render_set(&w.s));
    let _ = writeln!(out, "{:<13} {}", "rho", w.rho);
    let _ = writeln!(out, "{:<13} {}", "pi", w.pi);
    let pairs: Vec<String> = w.interchanges.iter().map(|t| t.to_string()).collect();
    let _ = writeln!(out, "{:<13} {}", "interchanges", pairs.join(" "));
    let _ = writeln!(out, "checks:");
    for (name, ok) in r.checks.entries() {
        let _ = writeln!(out, "  {name:<24} {}", pass_fail(ok));
    }
    for (name, d) in &w.diagnostics {
        let _ = writeln!(out, "  {name}: {d}");
    }
    let _ = writeln!(out, "status: {}", pass_fail(r.status.is_pass()));
    out
}

pub fn cmd_verify(p: u32, q: u32, format: Format) -> Output {
    match verify_instance(p, q, true) {
        Ok(r) => {
            let text = match format {
                Format::Text => render_verify(&r),
                Format::Json => to_json(&r),
            };
            Output::new(r.status, text)
        }
        Err(e) => Output::invalid(&e),
    }
}

/// Runs the sweep with pairs spread over the rayon pool, merged in `(p, q)` order.
pub fn parallel_sweep(config: SweepConfig) -> Result<SweepSummary, Error> {
    config.validate()?;
    let reports = config
        .pairs()
        .into_par_iter()
        .map(|pair| config.verify(pair))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepSummary::from_reports(config, &reports))
}

fn render_sweep(s: &SweepSummary) -> String {
    let mut out = String::new();
    let c = &s.config;
    let _ = writeln!(
        out,
        "max p = {}, max q = {}, determinant bound = {}",
        c.max_p, c.max_q, c.det_bound
    );
    let _ = writeln!(
        out,
        "pairs: {} ({} with determinant checks)",
        s.pairs, s.determinant_pairs
    );
    let _ = writeln!(out, "passed: {}, failed: {}", s.passed, s.failed);
    for (name, n) in &s.check_passes {
        let _ = writeln!(out, "  {name:<24} {n}");
    }
    if let Some(f) = &s.first_failure {
        let _ = writeln!(
            out,
            "first failure: p = {}, q = {}: {}",
            f.p,
            f.q,
            f.failing.join(", ")
        );
        for (name, d) in &f.diagnostics {
            let _ = writeln!(out, "  {name}: {d}");
        }
    }
    let _ = writeln!(out, "status: {}", pass_fail(s.status.is_pass()));
    out
}

pub fn cmd_sweep(config: SweepConfig, format: Format) -> Output {
    if let Err(e) = config.validate() {
        return Output::invalid(&e);
    }
    match parallel_sweep(config) {
        Ok(s) => {
            let text = match format {
                Format::Text => render_sweep(&s),
                Format::Json => to_json(&s),
            };
            Output::new(s.status, text)
        }
        Err(e) => Output::internal(&e),
    }
}

fn example_line<T>(out: &mut String, name: &str, c: &Comparison<T>, show: impl Fn(&T) -> String) {
    let _ = write!(out, "{name:<13} {}", show(&c.computed));
    if c.matches {
        out.push('\n');
    } else {
        let _ = writeln!(out, "   MISMATCH, expected {}", show(&c.expected));
    }
}

fn render_example(r: &ExampleReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p = {}, q = {}", r.p, r.q);
    let list = |v: &Vec<i32>| render_listing(v);
    example_line(&mut out, "classes", &r.classes, list);
    example_line(&mut out, &format!("rho_{}", r.q), &r.rho, list);
    example_line(&mut out, "mu", &r.mu, |m| m.to_string());
    example_line(&mut out, "S", &r.s, |s| render_set(s));
    example_line(&mut out, "pi", &r.pi, list);
    example_line(&mut out, "interchanges", &r.interchanges, |ts| {
        ts.iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    });
    example_line(&mut out, &format!("({}/{})", r.q, r.p), &r.symbol, |s| {
        s.to_string()
    });
    let _ = writeln!(out, "status: {}", pass_fail(r.status.is_pass()));
    out
}

pub fn cmd_example(format: Format) -> Output {
    let r = run_worked_example();
    let text = match format {
        Format::Text => render_example(&r),
        Format::Json => to_json(&r),
    };
    Output::new(r.status, text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u32,
    pub q: u32,
    pub e: u32,
    pub modulus: String,
    pub theta: String,
}

pub fn field_info(p: u32, q: u32) -> Result<FieldInfo, Error> {
    let instance = ReciprocityInstance::new(p, q)?;
    if p > DETERMINANT_P_BOUND {
        return Err(Error::OutOfBounds(format!(
            "field construction needs p <= {DETERMINANT_P_BOUND}, got {p}"
        )));
    }
    let field = ExtField::new(q, instance.e as usize)?;
    let root = find_primitive_pth_root(&field, p)?;
    Ok(FieldInfo {
        p,
        q,
        e: instance.e,
        modulus: field.render_modulus(),
        theta: root.theta().render(),
    })
}

pub fn cmd_field_info(p: u32, q: u32, format: Format) -> Output {
    match field_info(p, q) {
        Ok(info) => {
            let text = match format {
                Format::Text => format!(
                    "q = {}\ne = {}\nmodulus = {}\ntheta = {}\n",
                    info.q, info.e, info.modulus, info.theta
                ),
                Format::Json => to_json(&info),
            };
            Output::new(Status::Pass, text)
        }
        Err(e) => Output::invalid(&e),
    }
}
