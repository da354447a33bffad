//! Bundled reference data: the 28-domain keyword count table with improvement
//! rates, keyword relevancy annotations, the stopword list and section rules.
//!
//! | file                   | contents                                                   |
//! |------------------------|------------------------------------------------------------|
//! | `domain_counts.csv`    | per-domain patents, six keyword counts, totals, KW, K%     |
//! | `rates.csv`            | `domain,k_percent` improvement rates                       |
//! | `keyword_registry.csv` | keyword registry with per-domain relevancy (`/` = no data) |
//! | `stopwords.txt`        | stopword list, one per line, versioned in its header       |
//! | `section_rules.toml`   | section header search terms                                |

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{SectionRules, Stopwords};
use crate::error::{Error, Result};
use crate::keywords::{default_registry, Registry};
use crate::stats::DomainRecord;
use crate::textmine::{read_count_table, read_rates, CountRow};

pub const DOMAIN_COUNTS_CSV: &str = include_str!("../data/domain_counts.csv");
pub const RATES_CSV: &str = include_str!("../data/rates.csv");

/// Which keyword intensity a record uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum KwMode {
    /// The integer column as published.
    #[default]
    Published,
    /// Recomputed from keyword and word totals.
    FullPrecision,
}

#[derive(Debug, Clone)]
pub struct ReferenceDataset {
    pub rows: Vec<CountRow>,
    pub rates: BTreeMap<String, f64>,
    pub registry: Registry,
    pub stopwords: Stopwords,
    pub rules: SectionRules,
}

impl ReferenceDataset {
    pub fn bundled() -> Self {
        let rows = read_count_table(DOMAIN_COUNTS_CSV).expect("bundled count table parses");
        let ds = ReferenceDataset {
            rows,
            rates: read_rates(RATES_CSV).expect("bundled rates parse"),
            registry: default_registry(),
            stopwords: Stopwords::default(),
            rules: SectionRules::default(),
        };
        ds.check().expect("bundled data is self-consistent");
        ds
    }

    /// Row sums and normalized counts (within ±1 of the displayed value).
    pub fn check(&self) -> Result<()> {
        check_rows(&self.rows)
    }

    pub fn records(&self, mode: KwMode, exclusions: &[String]) -> Result<Vec<DomainRecord>> {
        records_from_rows(&self.rows, &self.rates, mode, exclusions)
    }
}

pub fn check_rows(rows: &[CountRow]) -> Result<()> {
    for r in rows {
        let bad = |message: String| Error::BadTable {
            name: "count table".into(),
            message,
        };
        let sum: u64 = r.counts.keyword_totals.iter().map(|(_, c)| c).sum();
        if sum != r.counts.kw_total {
            return Err(bad(format!("{}: keyword sum {sum}", r.counts.domain_id)));
        }
        if (r.counts.kw_display() - r.kw_display).abs() > 1 {
            return Err(bad(format!(
                "{}: normalized {} vs displayed {}",
                r.counts.domain_id, r.counts.kw_normalized, r.kw_display
            )));
        }
    }
    Ok(())
}

/// Builds records from count rows. Rates come from the row's own K% column,
/// falling back to `rates`.
pub fn records_from_rows(
    rows: &[CountRow],
    rates: &BTreeMap<String, f64>,
    mode: KwMode,
    exclusions: &[String],
) -> Result<Vec<DomainRecord>> {
    rows.iter()
        .filter(|r| !exclusions.contains(&r.counts.domain_id))
        .map(|r| {
            let id = &r.counts.domain_id;
            let k = r
                .k_percent
                .or_else(|| rates.get(id).copied())
                .ok_or_else(|| Error::MissingRate(id.clone()))?;
            let kw = match mode {
                KwMode::Published => r.kw_display as f64,
                KwMode::FullPrecision => r.counts.kw_normalized,
            };
            DomainRecord::from_percent(id.clone(), k, kw)
        })
        .collect()
}
