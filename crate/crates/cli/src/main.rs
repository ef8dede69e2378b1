use std::fs;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hypersingular_cli::config::{keys_help, parse_override, Command};
use hypersingular_cli::run::error_kind;
use hypersingular_cli::{exit_code, parse_config, run};

const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;

/// Solves hypersingular integral equations and writes the result as CSV.
#[derive(Parser, Debug)]
#[command(name = "hsie", version, after_help = keys_help())]
struct Args {
    /// Problem to solve.
    #[arg(value_enum)]
    command: Command,
    /// Configuration file of key=value lines.
    #[arg(long)]
    config: PathBuf,
    /// Override a configuration key; may be repeated, later wins.
    #[arg(long = "set", value_name = "KEY=VALUE", value_parser = parse_override)]
    set: Vec<(String, String)>,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

fn fail(code: u8, kind: &str, message: &str) -> ExitCode {
    eprintln!("error kind={kind} code={code} message=\"{}\"", message.replace('"', "'"));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_IO, "io", &format!("{}: {e}", args.config.display())),
    };
    let cfg = match parse_config(args.command, &text, &args.set) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_CONFIG, "config", &e.to_string()),
    };
    let table = match run(&cfg) {
        Ok(t) => t,
        Err(e) => return fail(exit_code(&e) as u8, error_kind(&e), &e.to_string()),
    };
    let written = fs::File::create(&args.out).and_then(|f| {
        let mut w = BufWriter::new(f);
        table.write_csv(&mut w)?;
        w.flush()
    });
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_IO, "io", &format!("{}: {e}", args.out.display())),
    }
}
