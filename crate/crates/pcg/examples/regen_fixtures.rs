//! Rewrites the fixture networks and reference values under
//! `crates/pcg/fixtures`, refusing when committed values have drifted.

use std::path::PathBuf;
use std::process::ExitCode;

fn main() -> ExitCode {
    let dir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    match pcg::goldens::regenerate(&dir) {
        Ok(values) => {
            println!("{} reference values written to {}", values.len(), dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
