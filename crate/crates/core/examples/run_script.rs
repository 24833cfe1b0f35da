//! Runs `data/coin.script` against `data/coin.desir` and prints the report,
//! the same way `desir run -d data/coin.desir data/coin.script` does.

use std::path::Path;

use desirability::document::parse_document;
use desirability::runner::run_script;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let doc_text = std::fs::read_to_string(dir.join("coin.desir")).expect("document");
    let script = std::fs::read_to_string(dir.join("coin.script")).expect("script");
    let doc = parse_document(&doc_text).unwrap_or_else(|e| panic!("{e}"));
    assert_eq!(doc.emit(), doc_text, "the data file is in canonical form");
    let report = run_script(&doc, &script);
    print!("{}", report.text);
    std::process::exit(report.code);
}
