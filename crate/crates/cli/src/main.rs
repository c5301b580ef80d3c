use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pextremal_cli::{run, Cli, Command, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    let to_stdout = match &cli.command {
        Command::Eval(a) => a.output.out.is_none(),
        Command::Mass(a) => a.output.out.is_none(),
        Command::Density(a) => a.output.out.is_none(),
        Command::Converge(a) => a.output.out.is_none(),
        Command::Verify(a) => a.output.out.is_none(),
    };
    match run(&cli) {
        Ok(outcome) => {
            if to_stdout {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(outcome.artifact.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                    return ExitCode::from(EXIT_USAGE);
                }
            }
            ExitCode::from(if outcome.passed { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
