//! Mine a corpus directory into a per-domain keyword count table.
//!
//!     cargo run --example count_table -- crates/core/tests/fixtures/corpus

use std::collections::BTreeMap;
use std::path::PathBuf;

use patent_interactions::cli::commands::mine_counts;
use patent_interactions::corpus::{section_corpus, CompiledRules, Stopwords};
use patent_interactions::keywords::default_registry;
use patent_interactions::textmine::write_count_table;

fn main() -> patent_interactions::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus"));
    let patents = section_corpus(&dir, &CompiledRules::default())?;
    let stopwords = Stopwords::default();
    println!("{} patents, stopword list {}", patents.len(), stopwords.version);

    let (rows, warnings) = mine_counts(&patents, &default_registry(), &stopwords, &BTreeMap::new());
    for w in warnings {
        eprintln!("warning: {w}");
    }
    write_count_table(&rows, std::io::stdout().lock())?;
    Ok(())
}
