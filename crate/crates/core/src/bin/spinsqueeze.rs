use clap::Parser;
use spinsqueeze::cli_io::{resolve_config, run_scenario, Overrides};
use spinsqueeze::SqueezeError;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("SPINSQUEEZE_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: SPINSQUEEZE_THREADS must be a positive integer, got '{v}'");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Overrides::parse();
    let result = resolve_config(cli).and_then(|cfg| run_scenario(&cfg));
    match result {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", outcome.summary);
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e @ SqueezeError::Usage(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
