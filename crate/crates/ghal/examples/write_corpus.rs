//! Regenerates the bundled corpus: `cargo run -p ghal --example write_corpus [dir]`.

use std::path::PathBuf;

fn main() {
    let root = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(ghal::corpus::Corpus::default_root);
    if let Err(e) = ghal::corpus::write_bundled(&root) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
