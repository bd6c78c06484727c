use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use noon_cli::{emit, run, Args, CliError, ConfigFile, ScanRequest};

fn execute() -> Result<(), CliError> {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return Ok(());
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            return Err(CliError::InvalidRequest(first.trim_start_matches("error: ").to_string()));
        }
    };
    let config = match &args.config {
        Some(path) => ConfigFile::parse(&std::fs::read_to_string(path)?)?,
        None => ConfigFile::default(),
    };
    let req = ScanRequest::resolve(args, config)?;
    let bytes = emit(&run(&req)?, req.format);
    match &req.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(e.exit_code())
        }
    }
}
