mod args;
mod commands;
mod input;
mod lemmas;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::Cli;
use input::CliError;

/// Bumped whenever the report layout changes.
const SCHEMA_VERSION: u32 = 1;

fn emit(cli: &Cli, body: serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&body).expect("JSON values serialize") + "\n";
    match &cli.global.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let header = json!({
        "tool": "mcgf",
        "version": env!("CARGO_PKG_VERSION"),
        "schema": SCHEMA_VERSION,
        "seed": cli.global.seed,
        "config": &cli,
    });
    let outcome = commands::run(&cli.command, &cli.global);
    let (mut body, code) = match outcome {
        Ok(o) => (json!({"ok": true, "holds": o.holds, "result": o.result}), if o.holds { 0 } else { 1 }),
        Err(e) => {
            eprintln!("mcgf: {e}");
            (json!({"ok": false, "error": e.to_string()}), e.exit_code())
        }
    };
    for (k, v) in header.as_object().expect("object") {
        body[k] = v.clone();
    }
    if let Err(e) = emit(&cli, body) {
        eprintln!("mcgf: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
