//! Prints a markdown timing table.
//!
//! Usage: report [ITERATIONS] [OUT_FILE]

use std::process::ExitCode;

use rns_barrett::report::{generate, to_markdown};
use rns_barrett_bench::SIZES;

fn main() -> ExitCode {
    let mut args = std::env::args().skip(1);
    let iterations = match args.next().map(|s| s.parse::<u32>()) {
        None => 2_000,
        Some(Ok(n)) if n > 0 => n,
        Some(_) => {
            eprintln!("usage: report [ITERATIONS] [OUT_FILE]");
            return ExitCode::from(1);
        }
    };
    let table = match generate(&SIZES, 32, iterations) {
        Ok(rows) => to_markdown(&rows),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match args.next() {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &table) {
                eprintln!("error: {path}: {e}");
                return ExitCode::from(1);
            }
        }
        None => print!("{table}"),
    }
    ExitCode::SUCCESS
}
