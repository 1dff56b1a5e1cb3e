//! Command-line front end for `satmat-core`: file input, command dispatch,
//! text and JSON reports, and the verification suite.

pub mod args;
pub mod commands;
pub mod input;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format};
use commands::{EXIT_INPUT, EXIT_OK};
use report::{Report, Status};
use verify::VerifyOptions;

/// Result of one invocation.
pub struct Outcome {
    pub code: i32,
    /// Rendered report, or clap's usage text.
    pub output: String,
    /// Set when the report goes to a file rather than stdout.
    pub out_file: Option<std::path::PathBuf>,
    /// Diagnostic for stderr.
    pub error: Option<String>,
}

/// Caps the global worker pool at `SATMAT_THREADS` when set.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("SATMAT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("SATMAT_THREADS must be a positive integer, got {raw:?}"))?;
    // a second call in the same process keeps the existing pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return Outcome {
                code,
                output: if code == EXIT_OK { text.clone() } else { String::new() },
                out_file: None,
                error: (code != EXIT_OK).then_some(text),
            };
        }
    };
    let started = Instant::now();
    let mut report = Report::new(cli.command.name());
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Verify { scope, budget_seconds, seed } => {
            if budget_seconds.is_nan() || *budget_seconds <= 0.0 {
                bail!("--budget-seconds must be positive");
            }
            let opts = VerifyOptions {
                witness_seconds: *budget_seconds,
                seed: *seed,
            };
            report.input("scope", format!("{scope:?}").to_lowercase());
            report.input("seed", *seed);
            report.input("witness_budget_seconds", *budget_seconds);
            Ok(run_verify(&mut report, *scope, &opts))
        }
        other => commands::execute(other, &mut report),
    });
    let (code, error) = match result {
        Ok(code) => (code, None),
        Err(e) => {
            let msg = format!("{e:#}");
            report.result("error", msg.clone());
            (EXIT_INPUT, Some(msg))
        }
    };
    report
        .timing
        .insert("seconds".into(), json!(started.elapsed().as_secs_f64()));
    let output = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("serializable report");
            s.push('\n');
            s
        }
        Format::Text => report.to_text(),
    };
    Outcome {
        code,
        output,
        out_file: cli.out,
        error,
    }
}

fn run_verify(report: &mut Report, scope: args::Scope, opts: &VerifyOptions) -> i32 {
    let mut criteria = Vec::new();
    let mut timing = serde_json::Map::new();
    let mut all_passed = true;
    for id in verify::scope_criteria(scope) {
        let r = verify::run_criterion(id, opts);
        all_passed &= r.passed;
        let detail = if r.passed {
            format!("{} cases", r.cases)
        } else {
            format!("{} cases; {}", r.cases, r.failures.join("; "))
        };
        report
            .checks
            .push(report::Check::new(format!("{} {}", r.id, r.title), Status::from_bool(r.passed), detail));
        timing.insert(r.id.to_string(), json!(r.seconds));
        criteria.push(json!({
            "id": r.id,
            "title": r.title,
            "passed": r.passed,
            "cases": r.cases,
            "failures": r.failures,
            "notes": r.notes,
        }));
    }
    report.result("criteria", Value::Array(criteria));
    report.result("passed", all_passed);
    report.timing.insert("criteria".into(), Value::Object(timing));
    if all_passed {
        EXIT_OK
    } else {
        EXIT_INPUT
    }
}
