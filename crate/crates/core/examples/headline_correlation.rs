//! Improvement rate against inverse keyword intensity over the bundled
//! domains, with and without the genome-sequencing outlier.
//!
//!     cargo run --example headline_correlation

use patent_interactions::cli::{correlate, Predictor};
use patent_interactions::reference::{KwMode, ReferenceDataset};
use patent_interactions::textmine::default_exclusions;

fn main() -> patent_interactions::Result<()> {
    let ds = ReferenceDataset::bundled();
    for (label, mode, excl) in [
        ("published KW, genome excluded", KwMode::Published, default_exclusions()),
        ("full-precision KW, genome excluded", KwMode::FullPrecision, default_exclusions()),
        ("published KW, all 28 domains", KwMode::Published, Vec::new()),
    ] {
        let recs = ds.records(mode, &excl)?;
        let c = correlate(&recs, Predictor::InvKw)?;
        println!("{label:<36} n = {:>2}  r = {:.4}  p = {:.5}", c.n, c.r, c.p);
    }
    Ok(())
}
