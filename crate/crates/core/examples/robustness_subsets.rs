//! Correlation over random 14-domain subsets, for a few seeds.
//!
//!     cargo run --example robustness_subsets

use patent_interactions::reference::{KwMode, ReferenceDataset};
use patent_interactions::stats::robustness;
use patent_interactions::textmine::default_exclusions;

fn main() -> patent_interactions::Result<()> {
    let recs = ReferenceDataset::bundled().records(KwMode::Published, &default_exclusions())?;
    for seed in [1, 2, 3] {
        let res = robustness(&recs, 14, 20, seed)?;
        println!(
            "seed {seed}: mean r {:.3}, sd {:.3}, range {:.3} to {:.3}",
            res.mean, res.sd, res.min, res.max
        );
    }
    Ok(())
}
