//! Command-line front end: parse a link, evaluate the requested invariant
//! and optionally compare it with the matrix oracle.
//!
//! Exit codes: 0 success, 2 parse error, 3 evaluation error, 4 oracle
//! disagreement.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::howe::{rt_eval, rt_reduced, SuperDim};
use crate::scalar::Scalar;
use crate::skein::Framing;
use crate::spider::{colored_eval, framing_factor, reduced_eval};
use crate::tangle::{close, parse_text, DiagramJson, TangleDiagram};

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_EVAL: u8 = 3;
pub const EXIT_DISAGREE: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "spiderq", version, about = "Colored HOMFLY-PT and gl(m|n) invariants of framed links")]
struct Args {
    /// Braid or PD description, e.g. `braid n=2 w=[1,1,1] colors=[1,1]`.
    input: Vec<String>,
    /// Read a JSON slice diagram from a file (`-` for stdin) instead.
    #[arg(long, value_name = "FILE", conflicts_with = "input")]
    slices: Option<String>,
    /// Take the trace closure of the input.
    #[arg(long)]
    close: bool,
    #[arg(long, value_enum, default_value_t = InvariantArg::Framed)]
    invariant: InvariantArg,
    /// Shorthand for `--invariant reduced`.
    #[arg(long)]
    reduced: bool,
    /// Component cut open for the reduced invariant.
    #[arg(long)]
    component: Option<usize>,
    /// Report the generic value (the default when nothing else is asked).
    #[arg(long)]
    generic: bool,
    /// Specialize `β` to an integer, as `d=N`; repeatable.
    #[arg(long, value_name = "d=N")]
    at: Vec<String>,
    /// Compare with the gl(m|n) matrix evaluation, as `m=M n=N`; repeatable.
    #[arg(long, num_args = 2, value_names = ["m=M", "n=N"], action = clap::ArgAction::Append)]
    check: Vec<String>,
    /// Emit a JSON report.
    #[arg(long)]
    json: bool,
    /// Report wall-clock time.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InvariantArg {
    Framed,
    Normalized,
    Reduced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Text(String),
    Slices(DiagramJson),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Invariant {
    Framed,
    Normalized,
    /// Normalized reduced invariant with `component` cut open.
    Reduced { component: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub input: Input,
    pub close: bool,
    pub invariant: Invariant,
    pub generic: bool,
    pub at: Vec<i64>,
    pub checks: Vec<SuperDim>,
    pub format: Format,
    pub timing: bool,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Eval(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Eval(_) => EXIT_EVAL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub index: usize,
    pub color: u32,
    pub writhe: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Specialization {
    pub d: i64,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub m: usize,
    pub n: usize,
    pub spider: Scalar,
    pub oracle: Scalar,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub invariant: Invariant,
    pub components: Vec<ComponentReport>,
    /// Generic value, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Scalar>,
    pub specializations: Vec<Specialization>,
    pub checks: Vec<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn all_agree(&self) -> bool {
        self.checks.iter().all(|c| c.agree)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let inv = match self.invariant {
            Invariant::Framed => "framed".to_string(),
            Invariant::Normalized => "normalized".to_string(),
            Invariant::Reduced { component } => format!("reduced (component {component})"),
        };
        writeln!(s, "invariant: {inv}").unwrap();
        for c in &self.components {
            writeln!(s, "component {}: color {}, writhe {}", c.index, c.color, c.writhe).unwrap();
        }
        if let Some(v) = &self.value {
            writeln!(s, "value: {v}").unwrap();
        }
        for sp in &self.specializations {
            writeln!(s, "at d={}: {}", sp.d, sp.value).unwrap();
        }
        for c in &self.checks {
            if c.agree {
                writeln!(s, "check gl({}|{}): agree, value {}", c.m, c.n, c.oracle).unwrap();
            } else {
                writeln!(s, "check gl({}|{}): DISAGREE: spider {}, oracle {}", c.m, c.n, c.spider, c.oracle).unwrap();
            }
        }
        if let Some(ms) = self.timing_ms {
            writeln!(s, "time: {ms:.1} ms").unwrap();
        }
        s
    }
}

fn key_value(s: &str, key: &str) -> Result<i64, CliError> {
    let v = s.strip_prefix(key).and_then(|r| r.strip_prefix('=')).unwrap_or(s);
    v.parse().map_err(|_| CliError::Parse(format!("expected {key}=<integer>, got `{s}`")))
}

fn parse_check(pair: &[String]) -> Result<SuperDim, CliError> {
    let (mut m, mut n) = (None, None);
    for p in pair {
        match p.split_once('=') {
            Some(("m", v)) => m = v.parse::<usize>().ok(),
            Some(("n", v)) => n = v.parse::<usize>().ok(),
            _ => return Err(CliError::Parse(format!("expected m=M n=N, got `{}`", pair.join(" ")))),
        }
    }
    match (m, n) {
        (Some(m), Some(n)) => Ok(SuperDim::new(m, n)),
        _ => Err(CliError::Parse(format!("expected m=M n=N, got `{}`", pair.join(" ")))),
    }
}

fn read_source(path: &str) -> Result<String, CliError> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn job_from_args(a: Args) -> Result<JobSpec, CliError> {
    let input = match (&a.slices, a.input.is_empty()) {
        (Some(path), _) => {
            let d: DiagramJson = serde_json::from_str(&read_source(path)?)
                .map_err(|e| CliError::Parse(format!("slice JSON: {e}")))?;
            Input::Slices(d)
        }
        (None, false) => Input::Text(a.input.join(" ")),
        (None, true) => return Err(CliError::Parse("no input: give a braid or pd description, or --slices FILE".into())),
    };
    let reduced = a.reduced || a.invariant == InvariantArg::Reduced;
    if a.reduced && a.invariant != InvariantArg::Framed && a.invariant != InvariantArg::Reduced {
        return Err(CliError::Parse("--reduced conflicts with the requested --invariant".into()));
    }
    if a.component.is_some() && !reduced {
        return Err(CliError::Parse("--component only applies to the reduced invariant".into()));
    }
    let invariant = match (reduced, a.invariant) {
        (true, _) => Invariant::Reduced { component: a.component.unwrap_or(0) },
        (false, InvariantArg::Normalized) => Invariant::Normalized,
        _ => Invariant::Framed,
    };
    let at = a.at.iter().map(|s| key_value(s, "d")).collect::<Result<Vec<_>, _>>()?;
    let checks = a.check.chunks(2).map(parse_check).collect::<Result<Vec<_>, _>>()?;
    Ok(JobSpec {
        input,
        close: a.close,
        invariant,
        generic: a.generic || (at.is_empty() && checks.is_empty()),
        at,
        checks,
        format: if a.json { Format::Json } else { Format::Text },
        timing: a.timing,
    })
}

fn diagram(job: &JobSpec) -> Result<TangleDiagram, CliError> {
    let t = match &job.input {
        Input::Text(s) => parse_text(s),
        Input::Slices(d) => TangleDiagram::from_json(d),
    }
    .map_err(|e| CliError::Parse(e.to_string()))?;
    if job.close && !t.is_closed() {
        return close(&t).map_err(|e| CliError::Parse(e.to_string()));
    }
    if !t.is_closed() {
        return Err(CliError::Eval("diagram is not closed; pass --close for the trace closure".into()));
    }
    Ok(t)
}

/// Evaluate a job. Oracle disagreement is reported, not an error.
pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    let start = Instant::now();
    let t = diagram(job)?;
    let eval = |e: String| CliError::Eval(e);
    let framing = match job.invariant {
        Invariant::Framed => Framing::Framed,
        _ => Framing::Normalized,
    };
    let value = match job.invariant {
        Invariant::Reduced { component } => reduced_eval(&t, component, framing),
        _ => colored_eval(&t, framing),
    }
    .map_err(|e| eval(e.to_string()))?;
    let factor = framing_factor(&t, framing);
    let mut checks = Vec::new();
    for &sd in &job.checks {
        let raw = match job.invariant {
            Invariant::Reduced { component } => rt_reduced(sd, &t, component),
            _ => rt_eval(sd, &t),
        }
        .map_err(|e| eval(e.to_string()))?;
        let oracle = raw * factor.specialize(sd.d());
        let spider = value.specialize(sd.d());
        checks.push(OracleCheck { m: sd.m, n: sd.n, agree: spider == oracle, spider, oracle });
    }
    let components = t
        .components()
        .iter()
        .enumerate()
        .map(|(index, c)| ComponentReport { index, color: c.color, writhe: c.writhe })
        .collect();
    let specializations = job.at.iter().map(|&d| Specialization { d, value: value.specialize(d) }).collect();
    let timing_ms = job.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let value = job.generic.then_some(value);
    Ok(Report { invariant: job.invariant, components, value, specializations, checks, timing_ms })
}

/// What a process run produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn configure_threads() {
    if let Some(n) = std::env::var("SPIDERQ_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second configuration attempt in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parse arguments, run the job and render the report.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let fail = |e: CliError| Outcome { code: e.code(), stdout: String::new(), stderr: format!("error: {e}\n") };
    let parsed = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_PARSE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let job = match job_from_args(parsed) {
        Ok(j) => j,
        Err(e) => return fail(e),
    };
    configure_threads();
    let report = match run(&job) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let stdout = match job.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Text => report.render_text(),
    };
    let code = if report.all_agree() { 0 } else { EXIT_DISAGREE };
    let stderr = if code == 0 { String::new() } else { "error: oracle disagreement\n".into() };
    Outcome { code, stdout, stderr }
}

/// Process entry point.
pub fn main() -> ExitCode {
    let out = execute(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QExponent;

    fn exec(args: &str) -> Outcome {
        execute(std::iter::once("spiderq").chain(args.split_whitespace()))
    }

    #[test]
    fn trefoil_normalized_generic() {
        let out = exec("braid n=2 w=[1,1,1] colors=[1,1] --close --invariant normalized --generic");
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("invariant: normalized\ncomponent 0: color 1, writhe 3\nvalue: "));
    }

    #[test]
    fn homfly_matches_oracle_checks() {
        let out = exec("braid n=2 w=[1,1,1] --close --invariant normalized --check m=2 n=0 --check m=3 n=0 --check m=4 n=0");
        assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
        assert_eq!(out.stdout.matches(": agree").count(), 3);
    }

    #[test]
    fn alexander_at_zero() {
        let out = exec("braid n=2 w=[1,1,1] --close --reduced --at d=0 --check m=1 n=1 --json");
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        let at0 = Scalar::from_json(&v["specializations"][0]["value"]).unwrap();
        // q^{-2} − 1 + q^2
        assert_eq!(at0, Scalar::q_pow(-2) - Scalar::one() + Scalar::q_pow(2));
        assert_eq!(v["invariant"]["kind"], "reduced");
        assert!(v.get("timing_ms").is_none());
    }

    #[test]
    fn dependence_on_difference_only() {
        let out = exec("braid n=3 w=[1,-2,1,-2] --close --check m=2 n=1 --check m=1 n=0 --json");
        assert_eq!(out.code, 0);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["checks"][0]["oracle"], v["checks"][1]["oracle"]);
    }

    #[test]
    fn colored_unknot_value() {
        let out = exec("braid n=1 w=[] colors=[2] --close --json");
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(Scalar::from_json(&v["value"]).unwrap(), Scalar::qbinom(QExponent::BETA, 2));
    }

    #[test]
    fn deterministic_output() {
        let a = exec("braid n=3 w=[1,1,-2,1] colors=[1,1,1] --close --at d=2 --json");
        let b = exec("braid n=3 w=[1,1,-2,1] colors=[1,1,1] --close --at d=2 --json");
        assert_eq!(a, b);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exec("braid n=2 w=[1,x] --close").code, EXIT_PARSE);
        assert_eq!(exec("--close").code, EXIT_PARSE);
        assert_eq!(exec("braid n=2 w=[1] --close --check m=2").code, EXIT_PARSE);
        assert_eq!(exec("braid n=2 w=[1] --bogus").code, EXIT_PARSE);
        assert_eq!(exec("braid n=2 w=[1,1,1]").code, EXIT_EVAL);
        assert_eq!(exec("braid n=2 w=[1,1,1] --close --reduced --component 5").code, EXIT_EVAL);
        assert_eq!(exec("--help").code, 0);
    }

    #[test]
    fn slice_json_input() {
        let t = close(&crate::tangle::parse_braid(&[1, 1], &[1, 1]).unwrap()).unwrap();
        let path = std::env::temp_dir().join(format!("spiderq-hopf-{}.json", std::process::id()));
        std::fs::write(&path, serde_json::to_string(&t.to_json()).unwrap()).unwrap();
        let from_file = exec(&format!("--slices {} --check m=2 n=1", path.display()));
        let from_text = exec("braid n=2 w=[1,1] --close --check m=2 n=1");
        std::fs::remove_file(&path).unwrap();
        assert_eq!(from_file.code, 0, "{}", from_file.stderr);
        assert_eq!(from_file.stdout, from_text.stdout);
    }

    #[test]
    fn disagreement_report() {
        let mut r = run(&JobSpec {
            input: Input::Text("braid n=1 w=[] close=trace".into()),
            close: false,
            invariant: Invariant::Framed,
            generic: true,
            at: vec![],
            checks: vec![SuperDim::new(2, 0)],
            format: Format::Text,
            timing: false,
        })
        .unwrap();
        assert!(r.all_agree());
        r.checks[0].agree = false;
        assert!(!r.all_agree());
        assert!(r.render_text().contains("DISAGREE"));
    }
}
