use std::io::Write;
use std::process::ExitCode;

use altfree::cli::{run, Cli, Exit};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut out, mut log) = (String::new(), String::new());
    let result = run(cli, &mut out, &mut log);
    std::io::stdout().write_all(out.as_bytes()).ok();
    std::io::stderr().write_all(log.as_bytes()).ok();
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            Exit::Usage
        }
    };
    ExitCode::from(code as u8)
}
