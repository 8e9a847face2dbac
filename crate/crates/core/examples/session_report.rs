//! Load a checked-in config and run the full pipeline, as `qtwist report` does.

use std::path::PathBuf;

use quantum_twist::cli::{render_json, render_text, run, Command, Options};
use quantum_twist::config::Session;

fn main() -> quantum_twist::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "e3".into());
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(format!("{name}.json"));
    let session = Session::load(&path)?;
    let options = Options { parallel: true, ..Options::default() };
    let out = run(&session, &Command::Report, &options)?;
    print!("{}", render_text(&Command::Report, Some(session.name()), &out));
    let json = render_json(&Command::Report, Some(session.name()), &out);
    println!("json report: {} bytes, exit code {}", json.len(), out.exit_code());
    Ok(())
}
