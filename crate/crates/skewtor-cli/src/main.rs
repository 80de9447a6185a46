use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};

use skewtor::{ModelName, Scalar};
use skewtor_cli::report::{summary, CheckResult};
use skewtor_cli::scenario::{run_frame_scenario, run_scenario, CheckSelection, ScenarioError};

/// Verifies torsion-geometry identities on the built-in model spaces and
/// on user-supplied Lie frames. All comparisons are exact.
#[derive(Parser, Debug)]
#[command(name = "verify", version, group = ArgGroup::new("input").required(true).args(["model", "frame_file"]))]
struct Cli {
    /// Built-in model: nil6 | s6_nk | s7_np | s5_sasaki
    #[arg(long)]
    model: Option<String>,

    /// Model parameter, e.g. `t=1` or `lambda=3/2`; may repeat
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,

    /// Comma-separated check ids or group names, or `all`
    #[arg(long, default_value = "all")]
    check: String,

    /// Output format
    #[arg(long, value_parser = ["json", "text"], default_value = "text")]
    format: String,

    /// Lie-frame description file to validate instead of a built-in model
    #[arg(long, value_name = "PATH")]
    frame_file: Option<String>,
}

fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        Some(skewtor::rat(p, q))
    } else {
        text.parse::<i64>().ok().map(skewtor::int)
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(results: &[CheckResult], format: &str) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    // a closed pipe on the consumer side is not an error worth reporting
    let mut write = |line: String| {
        let _ = writeln!(out, "{line}");
    };
    match format {
        "json" => {
            for r in results {
                write(r.json_line());
            }
            eprintln!("{}", summary(results));
        }
        _ => {
            for r in results {
                write(r.text_line());
            }
            write(summary(results));
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let selection = CheckSelection::parse(&cli.check);

    let results = if let Some(path) = &cli.frame_file {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return usage_error(&format!("cannot read {path}: {e}")),
        };
        let frame = match skewtor_cli::parse_frame(&text) {
            Ok(f) => f,
            Err(e) => return usage_error(&format!("{path}: {e}")),
        };
        match run_frame_scenario(&frame, &selection) {
            Ok(r) => r,
            Err(ScenarioError::UnknownCheck(c)) => {
                return usage_error(&format!("unknown check selector `{c}`"))
            }
            Err(e) => return usage_error(&format!("{e}")),
        }
    } else {
        let raw = cli.model.as_deref().expect("clap guarantees one input");
        let Some(name) = ModelName::parse(raw) else {
            return usage_error(&format!(
                "unknown model `{raw}` (expected nil6, s6_nk, s7_np or s5_sasaki)"
            ));
        };
        let mut params: BTreeMap<String, Scalar> = BTreeMap::new();
        for p in &cli.params {
            let Some((k, v)) = p.split_once('=') else {
                return usage_error(&format!("malformed --param `{p}` (expected k=v)"));
            };
            let Some(value) = parse_scalar(v) else {
                return usage_error(&format!("malformed rational `{v}` in --param"));
            };
            let key = k.trim().to_string();
            let known = match name {
                ModelName::S6NearlyKaehler => key == "t",
                ModelName::S7NearlyParallel => key == "lambda",
                _ => false,
            };
            if !known {
                return usage_error(&format!(
                    "model {} takes no parameter `{key}`",
                    name.as_str()
                ));
            }
            params.insert(key, value);
        }
        let model = match skewtor::build(name, &params) {
            Ok(m) => m,
            Err(e) => return usage_error(&format!("cannot build model: {e}")),
        };
        match run_scenario(&model, &selection) {
            Ok(r) => r,
            Err(ScenarioError::UnknownCheck(c)) => {
                return usage_error(&format!("unknown check selector `{c}`"))
            }
            Err(e) => return usage_error(&format!("{e}")),
        }
    };

    emit(&results, &cli.format);
    if results.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
