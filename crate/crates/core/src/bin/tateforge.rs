use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use tateforge::harness::{commands, exit_code, run_suite, ScenarioReport, SuiteConfig};
use tateforge::io::canonical;
use tateforge::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    Wdiv,
    Wprep,
    Newton,
    Lambda,
    Nullcheck,
    Suite,
}

/// Exact nonarchimedean computer algebra: Weierstrass division and
/// preparation, Newton polygons, λ_t norms and verification suites.
#[derive(Debug, Parser)]
#[command(name = "tateforge", version)]
struct Args {
    command: Command,
    /// Input document (JSON). Required except for `suite`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Suite configuration (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Treat INDETERMINATE results as errors (exit 2).
    #[arg(long)]
    strict: bool,
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn run(args: &Args) -> Result<Vec<ScenarioReport>, Error> {
    let mut config = match &args.config {
        Some(path) => SuiteConfig::from_json(&read(path)?)?,
        None => SuiteConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Command::Suite = args.command {
        return run_suite(&config);
    }
    let path = args.input.as_ref().ok_or_else(|| Error::Parse {
        path: "--input".into(),
        message: "required for this command".into(),
    })?;
    let text = read(path)?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: format!("{} line {} column {}", path.display(), e.line(), e.column()),
        message: e.to_string(),
    })?;
    Ok(match args.command {
        Command::Wdiv => vec![commands::wdiv(&doc)?],
        Command::Wprep => vec![commands::wprep(&doc)?],
        Command::Newton => vec![commands::newton(&doc)?],
        Command::Lambda => vec![commands::lambda(&doc, &config)?],
        Command::Nullcheck => commands::nullcheck(&doc)?,
        Command::Suite => unreachable!("handled above"),
    })
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&args) {
        Ok(reports) => {
            let code = exit_code(&reports, args.strict);
            // a closed pipe is not an error worth a panic
            let mut out = std::io::stdout().lock();
            if args.json {
                let worst = reports.iter().map(ScenarioReport::verdict).max();
                let doc = json!({
                    "verdict": worst.map_or("INDETERMINATE".to_string(), |v| v.to_string()),
                    "reports": reports.iter().map(ScenarioReport::to_json).collect::<Vec<_>>(),
                });
                let _ = writeln!(out, "{}", canonical(&doc));
            } else {
                for r in &reports {
                    let _ = writeln!(out, "{}", r.to_text());
                }
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("tateforge: {e}");
            ExitCode::from(2)
        }
    }
}
