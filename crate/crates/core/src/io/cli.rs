//! The `folia` command line.
//!
//! [`run`] takes its streams as arguments so the whole surface can be driven
//! in-process; the binary is a thin wrapper around it.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::parse::{
    parse_form, parse_line, parse_matrix, parse_param, parse_rational, strip_comments, Params,
};
use super::transcript::{
    parse_transcript, replay_transcript, singular_locus_json, step_json, to_json_string,
    transcript_json,
};
use crate::birational::{pullback_linear, pullback_quadratic, BuiltinMap, LinearFrame, QuadraticMap};
use crate::error::{Error, ErrorKind, Result};
use crate::foliation::FoliationForm;
use crate::reducer::{lemma_step_with, reduce_partial, LemmaStep, ReducerConfig, ReductionTranscript};
use crate::singular::{darboux_check, singular_records, SingularRecord};
use crate::worked_example::verify_example;

#[derive(Parser, Debug)]
#[command(
    name = "folia",
    version,
    about = "Singular points, Milnor numbers and birational reduction of foliations of the projective plane"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Substitute a rational value for a parameter name, e.g. lambda=2.
    #[arg(long = "param", value_name = "NAME=VALUE", global = true)]
    params: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// File holding the form; `-` reads standard input.
    #[arg(value_name = "INPUT", required_unless_present = "form")]
    path: Option<String>,

    /// The form itself, e.g. "y dx - x dy".
    #[arg(long, conflicts_with = "path")]
    form: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MapChoice {
    #[value(name = "phi")]
    Phi,
    #[value(name = "I1")]
    I1,
    #[value(name = "I2")]
    I2,
    #[value(name = "matrix")]
    Matrix,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List singular points with Milnor numbers and the Darboux sum.
    Sing(Input),
    /// Restrict the form to a line.
    Restrict {
        /// The line, as an equation (`x + y`) or coefficients (`1,1,0`).
        #[arg(long)]
        line: String,
        #[command(flatten)]
        input: Input,
    },
    /// Pull the form back along a quadratic involution or a linear map.
    Pullback {
        #[arg(long, value_enum)]
        map: MapChoice,
        /// Rows of the matrix for `--map matrix`, e.g. "1,0,0; 0,0,1; 0,1,0".
        #[arg(long, required_if_eq("map", "matrix"))]
        matrix: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Collapse the singular points on one line into a single point.
    LemmaStep {
        #[arg(long)]
        line: String,
        #[command(flatten)]
        input: Input,
    },
    /// Reduce to at most one singular point.
    Reduce(Input),
    /// Replay the diagonal family through I1 and I2 and check every stage.
    VerifyExample {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Re-apply a JSON transcript and check every recorded result.
    Replay {
        /// Transcript file; `-` reads standard input.
        #[arg(value_name = "TRANSCRIPT")]
        path: String,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

/// Runs one command line and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            let text = e.render().to_string();
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let mut io = Io { stdin, out: stdout };
    match execute(&cli, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Invariant(format!("I/O failure: {e}"))
}

fn read_source(path: &str, io: &mut Io) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io.stdin.read_to_string(&mut s).map_err(io_error)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Precondition(format!("cannot read {path}: {e}")))
    }
}

fn load_form(cli: &Cli, input: &Input, io: &mut Io) -> Result<FoliationForm> {
    let mut params = Params::new();
    for p in &cli.params {
        let (k, v) = parse_param(p)?;
        params.insert(k, v);
    }
    let text = match (&input.form, &input.path) {
        (Some(f), _) => f.clone(),
        (None, Some(p)) => read_source(p, io)?,
        (None, None) => return Err(Error::Precondition("no input form".into())),
    };
    parse_form(&strip_comments(&text), &params)
}

fn emit(io: &mut Io, text: &str) -> Result<()> {
    io.out.write_all(text.as_bytes()).map_err(io_error)
}

fn execute(cli: &Cli, io: &mut Io) -> Result<i32> {
    match &cli.command {
        Command::Sing(input) => {
            let form = load_form(cli, input, io)?;
            let records = singular_records(&form)?;
            if cli.json {
                emit(io, &to_json_string(&singular_locus_json(&form, &records)))?;
            } else {
                emit(io, &sing_text(&form, &records))?;
            }
            Ok(0)
        }
        Command::Restrict { line, input } => {
            let form = load_form(cli, input, io)?;
            let line = parse_line(line)?;
            let r = form.restrict_to_line(&line)?;
            let invariant = form.is_line_invariant(&line)?;
            if cli.json {
                let doc = serde_json::json!({
                    "line": line.to_string(),
                    "invariant": invariant,
                    "tangential": r.tangential_text(),
                    "normal": r.normal_text(),
                });
                emit(io, &to_json_string(&doc))?;
            } else {
                emit(
                    io,
                    &format!(
                        "line {line}\ninvariant {}\ntangential {}\nnormal {}\n",
                        if invariant { "yes" } else { "no" },
                        r.tangential_text(),
                        r.normal_text()
                    ),
                )?;
            }
            Ok(0)
        }
        Command::Pullback { map, matrix, input } => {
            let form = load_form(cli, input, io)?;
            let (label, out, factor) = match map {
                MapChoice::Matrix => {
                    let text = matrix.as_deref().unwrap_or_default();
                    let frame = LinearFrame::new(parse_matrix(text)?)?;
                    let out = pullback_linear(&form, &frame)?;
                    ("matrix".to_string(), out, crate::algebra::MultiPoly::one(3))
                }
                other => {
                    let which = match other {
                        MapChoice::Phi => BuiltinMap::Phi,
                        MapChoice::I1 => BuiltinMap::I1,
                        _ => BuiltinMap::I2,
                    };
                    let (out, factor) = pullback_quadratic(&form, &QuadraticMap::builtin(which))?;
                    (which.name().to_string(), out, factor)
                }
            };
            if cli.json {
                let doc = serde_json::json!({
                    "map": label,
                    "form": out.to_string(),
                    "degree": out.degree(),
                    "extractedFactor": factor.to_string(),
                });
                emit(io, &to_json_string(&doc))?;
            } else {
                emit(
                    io,
                    &format!("{out}\ndegree {}\nextracted factor {factor}\n", out.degree()),
                )?;
            }
            Ok(0)
        }
        Command::LemmaStep { line, input } => {
            let form = load_form(cli, input, io)?;
            let line = parse_line(line)?;
            let records = singular_records(&form)?;
            let step = lemma_step_with(&form, &records, &line, &ReducerConfig::from_env()?)?;
            if cli.json {
                emit(io, &to_json_string(&step_json(&step)))?;
            } else {
                emit(io, &step_text(1, &step))?;
            }
            Ok(0)
        }
        Command::Reduce(input) => {
            let form = load_form(cli, input, io)?;
            let config = ReducerConfig::from_env()?;
            let (t, err) = reduce_partial(&form, &config);
            if let (Some(e), true) = (&err, t.initial_records.is_empty()) {
                // nothing to report: the input's own locus failed
                return Err(e.clone());
            }
            if cli.json {
                emit(io, &to_json_string(&transcript_json(&t)))?;
            } else {
                emit(io, &transcript_text(&t))?;
            }
            match err {
                Some(e) => Err(e),
                None => Ok(0),
            }
        }
        Command::VerifyExample { lambda } => {
            let lambda = parse_rational(lambda)?;
            let report = verify_example(&lambda)?;
            if cli.json {
                let doc = serde_json::json!({
                    "lambda": lambda.to_string(),
                    "stages": report.stages.iter().map(|s| serde_json::json!({
                        "label": s.label,
                        "form": s.form.to_string(),
                        "extractedFactor": s.factor.to_string(),
                        "singular": super::transcript::singular_json(&s.records),
                    })).collect::<Vec<_>>(),
                    "restriction": report.restriction.normal_text(),
                    "checks": report.checks.iter().map(|c| serde_json::json!({
                        "name": c.name,
                        "ok": c.ok,
                    })).collect::<Vec<_>>(),
                    "ok": report.ok(),
                });
                emit(io, &to_json_string(&doc))?;
            } else {
                let mut s = format!("lambda = {lambda}\n");
                for st in &report.stages {
                    s.push_str(&format!("{}: {}\n", st.label, st.form));
                }
                s.push_str(&format!("restriction to x = 0: {}\n", report.restriction.normal_text()));
                for c in &report.checks {
                    s.push_str(&format!("{} {}\n", if c.ok { "PASS" } else { "FAIL" }, c.name));
                }
                emit(io, &s)?;
            }
            // a parameter for which the example does not hold is a validation failure
            Ok(if report.ok() { 0 } else { ErrorKind::Validation.exit_code() })
        }
        Command::Replay { path } => {
            let text = read_source(path, io)?;
            let doc = parse_transcript(&text)?;
            let last = replay_transcript(&doc)?;
            if cli.json {
                let doc = serde_json::json!({
                    "steps": doc.steps.len(),
                    "final": last.to_string(),
                    "ok": true,
                });
                emit(io, &to_json_string(&doc))?;
            } else {
                emit(io, &format!("replayed {} step(s)\nfinal {last}\n", doc.steps.len()))?;
            }
            Ok(0)
        }
    }
}

fn records_text(records: &[SingularRecord]) -> String {
    records
        .iter()
        .map(|r| format!("{} mu={}\n", r.location, r.mu))
        .collect()
}

fn sing_text(form: &FoliationForm, records: &[SingularRecord]) -> String {
    let d = darboux_check(form.degree(), records);
    format!(
        "degree {}\n{}darboux {} = {} {}\n",
        form.degree(),
        records_text(records),
        d.sum,
        d.target,
        if d.ok() { "ok" } else { "MISMATCH" }
    )
}

fn step_text(index: usize, s: &LemmaStep) -> String {
    format!(
        "step {index}: line {} ({}), base point {}, frame [{}], factor {}\n  result degree {}: {}\n{}  darboux {} = {}\n",
        s.line,
        if s.line_invariant { "invariant" } else { "not invariant" },
        s.base_point,
        s.frame,
        s.extracted_factor(),
        s.form.degree(),
        s.form,
        records_text(&s.records)
            .lines()
            .map(|l| format!("  {l}\n"))
            .collect::<String>(),
        s.darboux.sum,
        s.darboux.target
    )
}

fn transcript_text(t: &ReductionTranscript) -> String {
    let mut s = format!("input degree {}: {}\n", t.initial.degree(), t.initial);
    for l in records_text(&t.initial_records).lines() {
        s.push_str(&format!("  {l}\n"));
    }
    for (i, step) in t.steps.iter().enumerate() {
        s.push_str(&step_text(i + 1, step));
    }
    s.push_str(&format!(
        "final: degree {}, {} singular point(s)\n",
        t.final_form().degree(),
        t.final_count()
    ));
    s
}
