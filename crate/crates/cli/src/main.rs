use std::io::Write;

use clap::Parser;
use mortonlab_cli::{execute, exit_code, Cli};

fn main() {
    let cli = Cli::parse();
    let level = match cli.run.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = execute(&cli, &mut out);
    let _ = out.flush();
    std::process::exit(exit_code(&result, &mut std::io::stderr()));
}
