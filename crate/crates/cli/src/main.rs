use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use kbsim_cli::{run, Cli, CliConfig, ExitStatus};

fn exit(status: ExitStatus) -> ExitCode {
    ExitCode::from(status.code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return exit(ExitStatus::Usage);
        }
    };
    let config = match CliConfig::from_cli(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return exit(ExitStatus::Usage);
        }
    };
    let contents = match std::fs::read_to_string(&config.input) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", config.input.display());
            return exit(ExitStatus::Usage);
        }
    };

    let outcome = run(&config, &contents);
    eprint!("{}", outcome.stderr);
    let written = match &config.output {
        Some(path) if outcome.status == ExitStatus::Success => std::fs::write(path, &outcome.stdout)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        _ => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.stdout.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| e.to_string())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return exit(ExitStatus::Usage);
    }
    exit(outcome.status)
}
