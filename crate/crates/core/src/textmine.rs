//! Keyword counting and domain-level normalization.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::corpus::CleanedText;
use crate::error::{Error, Result};
use crate::keywords::Registry;
use crate::stats::DomainRecord;

/// Normalized counts are expressed per this many words.
pub const WORDS_BASE: f64 = 1e5;

/// Domains left out of every analysis by default. Their patents are dense
/// with chemical formulas, which inflate the word total without carrying
/// keywords.
pub const DEFAULT_EXCLUSIONS: &[&str] = &["Genome sequencing"];

pub fn default_exclusions() -> Vec<String> {
    DEFAULT_EXCLUSIONS.iter().map(|s| s.to_string()).collect()
}

/// Number of tokens that start with `root`.
pub fn count_keyword<S: AsRef<str>>(tokens: &[S], root: &str) -> u64 {
    tokens.iter().filter(|t| t.as_ref().starts_with(root)).count() as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatentCounts {
    pub patent_id: String,
    pub domain_id: String,
    /// One entry per active keyword, in registry order.
    pub per_keyword: Vec<(String, u64)>,
    pub word_count: u64,
}

pub fn count_patent(ct: &CleanedText, registry: &Registry) -> PatentCounts {
    PatentCounts {
        patent_id: ct.patent_id.clone(),
        domain_id: ct.domain_id.clone(),
        per_keyword: registry
            .active()
            .map(|k| (k.label.clone(), count_keyword(&ct.tokens, &k.root)))
            .collect(),
        word_count: ct.word_count,
    }
}

/// Keyword and word totals for one domain's patent set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainCounts {
    pub domain_id: String,
    pub n_patents: u32,
    pub keyword_totals: Vec<(String, u64)>,
    pub kw_total: u64,
    pub word_total: u64,
    /// `kw_total / word_total * 1e5`, full precision.
    pub kw_normalized: f64,
}

impl DomainCounts {
    pub fn new(
        domain_id: impl Into<String>,
        n_patents: u32,
        keyword_totals: Vec<(String, u64)>,
        word_total: u64,
    ) -> Result<Self> {
        let domain_id = domain_id.into();
        if n_patents == 0 {
            return Err(Error::EmptyDomain);
        }
        if word_total == 0 {
            return Err(Error::ZeroWords(domain_id));
        }
        let kw_total = keyword_totals.iter().map(|(_, c)| c).sum();
        Ok(DomainCounts {
            kw_normalized: normalized(kw_total, word_total),
            domain_id,
            n_patents,
            keyword_totals,
            kw_total,
            word_total,
        })
    }

    /// Normalized count rounded half away from zero, as displayed in tables.
    pub fn kw_display(&self) -> i64 {
        self.kw_normalized.round() as i64
    }

    /// Combines two partial tallies of the same domain.
    pub fn merge(&self, other: &DomainCounts) -> Result<DomainCounts> {
        if self.domain_id != other.domain_id {
            return Err(Error::MixedDomains(
                self.domain_id.clone(),
                other.domain_id.clone(),
            ));
        }
        let totals = merge_keyword_counts(&self.keyword_totals, &other.keyword_totals)?;
        DomainCounts::new(
            self.domain_id.clone(),
            self.n_patents + other.n_patents,
            totals,
            self.word_total + other.word_total,
        )
    }
}

pub fn normalized(kw_total: u64, word_total: u64) -> f64 {
    kw_total as f64 / word_total as f64 * WORDS_BASE
}

fn merge_keyword_counts(a: &[(String, u64)], b: &[(String, u64)]) -> Result<Vec<(String, u64)>> {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.0 != y.0) {
        return Err(Error::BadRegistry(
            "patent counts use different keyword sets".into(),
        ));
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x.0.clone(), x.1 + y.1)).collect())
}

/// Sums one domain's patent counts.
pub fn aggregate_domain(counts: &[PatentCounts]) -> Result<DomainCounts> {
    let first = counts.first().ok_or(Error::EmptyDomain)?;
    let mut totals: Vec<(String, u64)> = first
        .per_keyword
        .iter()
        .map(|(k, _)| (k.clone(), 0))
        .collect();
    let mut words = 0;
    for pc in counts {
        if pc.domain_id != first.domain_id {
            return Err(Error::MixedDomains(
                first.domain_id.clone(),
                pc.domain_id.clone(),
            ));
        }
        totals = merge_keyword_counts(&totals, &pc.per_keyword)?;
        words += pc.word_count;
    }
    DomainCounts::new(first.domain_id.clone(), counts.len() as u32, totals, words)
}

/// Pairs domain counts with improvement rates (percent per year), dropping
/// excluded domains. Domain names match exactly.
pub fn build_domain_records(
    counts: &[DomainCounts],
    rates_percent: &BTreeMap<String, f64>,
    exclusions: &[String],
) -> Result<Vec<DomainRecord>> {
    counts
        .iter()
        .filter(|dc| !exclusions.contains(&dc.domain_id))
        .map(|dc| {
            let k = rates_percent
                .get(&dc.domain_id)
                .ok_or_else(|| Error::MissingRate(dc.domain_id.clone()))?;
            DomainRecord::from_percent(&dc.domain_id, *k, dc.kw_normalized)
        })
        .collect()
}

/// One row of a Table-S2-shaped report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub number: String,
    pub counts: DomainCounts,
    /// Normalized count as displayed; equals `counts.kw_display()` for mined
    /// data.
    pub kw_display: i64,
    pub k_percent: Option<f64>,
}

/// Writes the per-domain count table: number, name, patents, one column per
/// keyword, keyword total, word total, normalized count, K%.
pub fn write_count_table<W: Write>(rows: &[CountRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let labels: Vec<String> = rows
        .first()
        .map(|r| r.counts.keyword_totals.iter().map(|(k, _)| k.clone()).collect())
        .unwrap_or_default();
    let mut header = vec!["domain_number".to_string(), "domain".into(), "n_patents".into()];
    header.extend(labels.iter().cloned());
    header.extend(["kw_total", "word_total", "kw_per_100k", "k_percent"].map(String::from));
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.number.clone(),
            r.counts.domain_id.clone(),
            r.counts.n_patents.to_string(),
        ];
        rec.extend(r.counts.keyword_totals.iter().map(|(_, c)| c.to_string()));
        rec.push(r.counts.kw_total.to_string());
        rec.push(r.counts.word_total.to_string());
        rec.push(r.kw_display.to_string());
        rec.push(r.k_percent.map(|k| k.to_string()).unwrap_or_default());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a count table written by [`write_count_table`].
pub fn read_count_table(text: &str) -> Result<Vec<CountRow>> {
    let bad = |message: String| Error::BadTable {
        name: "count table".into(),
        message,
    };
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    let n = headers.len();
    if n < 8 || &headers[0] != "domain_number" || &headers[n - 1] != "k_percent" {
        return Err(bad(format!("unexpected header {headers:?}")));
    }
    let labels: Vec<String> = headers.iter().skip(3).take(n - 7).map(String::from).collect();
    let int = |s: &str| -> Result<u64> { s.trim().parse().map_err(|_| bad(format!("bad integer {s:?}"))) };
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let totals: Vec<(String, u64)> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| Ok((l.clone(), int(&rec[3 + i])?)))
            .collect::<Result<_>>()?;
        let counts = DomainCounts::new(&rec[1], int(&rec[2])? as u32, totals, int(&rec[n - 3])?)?;
        if counts.kw_total != int(&rec[n - 4])? {
            return Err(bad(format!(
                "{}: keyword columns sum to {}, total column says {}",
                counts.domain_id,
                counts.kw_total,
                &rec[n - 4]
            )));
        }
        let kw_display: i64 = rec[n - 2]
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad normalized count {:?}", &rec[n - 2])))?;
        let k_percent = match rec[n - 1].trim() {
            "" => None,
            s => Some(s.parse().map_err(|_| bad(format!("bad K% {s:?}")))?),
        };
        rows.push(CountRow {
            number: rec[0].to_string(),
            counts,
            kw_display,
            k_percent,
        });
    }
    Ok(rows)
}

/// Parses a `domain,k_percent` rates file.
pub fn read_rates(text: &str) -> Result<BTreeMap<String, f64>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec?;
        let k: f64 = rec[1].trim().parse().map_err(|_| Error::BadTable {
            name: "rates".into(),
            message: format!("bad K% {:?}", &rec[1]),
        })?;
        out.insert(rec[0].to_string(), k);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keywords::default_registry;
    use proptest::prelude::*;

    fn toks(words: &[&str]) -> Vec<String> {
        words.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn prefix_counting() {
        assert_eq!(
            count_keyword(&toks(&["prevents", "prevention", "prevented", "prevalent"]), "prevent"),
            3
        );
        assert_eq!(
            count_keyword(&toks(&["failure", "fails", "failed", "failsafe"]), "fail"),
            4
        );
        assert_eq!(count_keyword::<String>(&[], "fail"), 0);
    }

    #[test]
    fn patent_counts() {
        let ct = CleanedText {
            patent_id: "US1".into(),
            domain_id: "d".into(),
            tokens: toks(&["prevent", "leakage", "undesirable", "prevent"]),
            word_count: 4,
        };
        let pc = count_patent(&ct, &default_registry());
        assert_eq!(pc.word_count, 4);
        let get = |k: &str| pc.per_keyword.iter().find(|(l, _)| l == k).unwrap().1;
        assert_eq!(get("prevent"), 2);
        assert_eq!(get("undesirable"), 1);
        assert_eq!(pc.per_keyword.iter().map(|(_, c)| c).sum::<u64>(), 3);
        assert_eq!(pc.per_keyword.len(), 6);

        let empty = CleanedText {
            tokens: vec![],
            word_count: 0,
            ..ct
        };
        assert!(count_patent(&empty, &default_registry())
            .per_keyword
            .iter()
            .all(|(_, c)| *c == 0));
    }

    fn labels() -> Vec<String> {
        default_registry().active_labels()
    }

    fn with_totals(vals: [u64; 6]) -> Vec<(String, u64)> {
        labels().into_iter().zip(vals).collect()
    }

    #[test]
    fn aggregate_3d_printing_row() {
        let dc = DomainCounts::new("3DPrinting", 100, with_totals([47, 14, 31, 11, 45, 14]), 172952)
            .unwrap();
        assert_eq!(dc.kw_total, 162);
        assert!((dc.kw_normalized - 93.6676).abs() < 1e-3);
        assert_eq!(dc.kw_display(), 94);
    }

    #[test]
    fn aggregate_aircraft_row() {
        let dc = DomainCounts::new("Aircraft", 100, with_totals([88, 14, 81, 99, 48, 24]), 131060)
            .unwrap();
        assert_eq!(dc.kw_total, 354);
        assert!((dc.kw_normalized - 270.105).abs() < 1e-3);
        assert_eq!(dc.kw_display(), 270);
    }

    #[test]
    fn aggregate_zero_hits() {
        let pc = PatentCounts {
            patent_id: "US1".into(),
            domain_id: "d".into(),
            per_keyword: with_totals([0; 6]),
            word_count: 1000,
        };
        let dc = aggregate_domain(&[pc]).unwrap();
        assert_eq!(dc.kw_normalized, 0.0);
        assert_eq!(dc.n_patents, 1);
    }

    #[test]
    fn aggregate_errors() {
        assert!(matches!(aggregate_domain(&[]), Err(Error::EmptyDomain)));
        let pc = PatentCounts {
            patent_id: "US1".into(),
            domain_id: "d".into(),
            per_keyword: with_totals([0; 6]),
            word_count: 0,
        };
        assert!(matches!(aggregate_domain(std::slice::from_ref(&pc)), Err(Error::ZeroWords(_))));
        let other = PatentCounts {
            domain_id: "e".into(),
            word_count: 5,
            ..pc.clone()
        };
        assert!(matches!(
            aggregate_domain(&[PatentCounts { word_count: 5, ..pc }, other]),
            Err(Error::MixedDomains(..))
        ));
    }

    #[test]
    fn records_drop_exclusions_and_need_rates() {
        let a = DomainCounts::new("Optical Telcom", 99, with_totals([40, 7, 31, 6, 23, 22]), 106801)
            .unwrap();
        let g = DomainCounts::new("Genome sequencing", 99, with_totals([42, 2, 16, 7, 21, 13]), 191484)
            .unwrap();
        let rates: BTreeMap<String, f64> =
            [("Optical Telcom".to_string(), 65.0), ("Genome sequencing".to_string(), 29.0)].into();
        let recs = build_domain_records(&[a.clone(), g.clone()], &rates, &default_exclusions()).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].domain_id, "Optical Telcom");
        assert!((recs[0].rate - 0.65).abs() < 1e-15);
        assert!((recs[0].inv_kw - 1.0 / 120.785386).abs() < 1e-9);
        assert_eq!(build_domain_records(&[a.clone(), g], &rates, &[]).unwrap().len(), 2);
        assert!(matches!(
            build_domain_records(&[a], &BTreeMap::new(), &[]),
            Err(Error::MissingRate(_))
        ));
    }

    #[test]
    fn zero_kw_record_rejected() {
        let z = DomainCounts::new("Z", 1, with_totals([0; 6]), 10).unwrap();
        let rates: BTreeMap<String, f64> = [("Z".to_string(), 5.0)].into();
        assert!(matches!(build_domain_records(&[z], &rates, &[]), Err(Error::ZeroKw(_))));
    }

    fn patent_strategy() -> impl Strategy<Value = PatentCounts> {
        (prop::array::uniform6(0u64..50), 1u64..5000).prop_map(|(kw, words)| PatentCounts {
            patent_id: "p".into(),
            domain_id: "D".into(),
            per_keyword: with_totals(kw),
            word_count: words,
        })
    }

    proptest! {
        #[test]
        fn aggregation_is_order_and_partition_independent(
            patents in prop::collection::vec(patent_strategy(), 2..20),
            split in any::<prop::sample::Index>(),
            seed in any::<u64>(),
        ) {
            let whole = aggregate_domain(&patents).unwrap();
            let cut = 1 + split.index(patents.len() - 1);
            let left = aggregate_domain(&patents[..cut]).unwrap();
            let right = aggregate_domain(&patents[cut..]).unwrap();
            prop_assert_eq!(&right.merge(&left).unwrap(), &whole);
            prop_assert_eq!(&left.merge(&right).unwrap(), &whole);

            let mut shuffled = patents.clone();
            let n = shuffled.len();
            shuffled.rotate_left((seed as usize) % n);
            shuffled.reverse();
            prop_assert_eq!(&aggregate_domain(&shuffled).unwrap(), &whole);
        }

        #[test]
        fn counting_is_additive(
            a in prop::collection::vec("[a-z]{1,12}", 0..30),
            b in prop::collection::vec("[a-z]{1,12}", 0..30),
            root in "[a-z]{1,3}",
        ) {
            let joined: Vec<String> = a.iter().chain(&b).cloned().collect();
            prop_assert_eq!(
                count_keyword(&joined, &root),
                count_keyword(&a, &root) + count_keyword(&b, &root)
            );
        }
    }
}
