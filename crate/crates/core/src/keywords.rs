//! Keyword registry: interaction-signalling keywords, their match roots,
//! annotated relevancy, and the three culling criteria (occurrence,
//! cross-domain usage, relevancy).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_REGISTRY_CSV: &str = include_str!("../data/keyword_registry.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CullReason {
    LowOccurrence,
    LowCrossDomainUsage,
    LowRelevancy,
}

impl CullReason {
    pub fn as_str(self) -> &'static str {
        match self {
            CullReason::LowOccurrence => "low-occurrence",
            CullReason::LowCrossDomainUsage => "low-cross-domain-usage",
            CullReason::LowRelevancy => "low-relevancy",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [
            CullReason::LowOccurrence,
            CullReason::LowCrossDomainUsage,
            CullReason::LowRelevancy,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
    }
}

impl fmt::Display for CullReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KeywordStatus {
    Active,
    Culled(CullReason),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeywordSpec {
    pub label: String,
    /// Lowercase prefix; a token matches when it starts with the root.
    pub root: String,
    pub status: KeywordStatus,
    /// Per-domain relevancy in registry column order; `None` where the
    /// keyword did not occur in the annotated text.
    pub relevancy: Vec<Option<f64>>,
    /// Mean as published alongside the per-domain values, if any.
    pub published_mean: Option<f64>,
}

impl KeywordSpec {
    pub fn is_active(&self) -> bool {
        self.status == KeywordStatus::Active
    }

    /// Arithmetic mean over domains with a value.
    pub fn mean_relevancy(&self) -> Option<f64> {
        let present: Vec<f64> = self.relevancy.iter().flatten().copied().collect();
        if present.is_empty() {
            None
        } else {
            Some(present.iter().sum::<f64>() / present.len() as f64)
        }
    }
}

/// Keywords plus the names of the annotated domains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Registry {
    pub domains: Vec<String>,
    pub keywords: Vec<KeywordSpec>,
}

/// The eight-keyword registry with six active keywords.
pub fn default_registry() -> Registry {
    Registry::from_csv(DEFAULT_REGISTRY_CSV).expect("bundled registry parses")
}

fn valid_root(root: &str) -> bool {
    !root.is_empty() && root.chars().all(|c| c.is_alphabetic() && c.is_lowercase())
}

impl Registry {
    pub fn new(domains: Vec<String>, keywords: Vec<KeywordSpec>) -> Result<Self> {
        let reg = Registry { domains, keywords };
        reg.validate()?;
        Ok(reg)
    }

    pub fn validate(&self) -> Result<()> {
        let mut labels = BTreeSet::new();
        for k in &self.keywords {
            if !valid_root(&k.root) {
                return Err(Error::BadRegistry(format!(
                    "root {:?} of {} must be lowercase alphabetic",
                    k.root, k.label
                )));
            }
            if !labels.insert(k.label.as_str()) {
                return Err(Error::BadRegistry(format!("duplicate label {}", k.label)));
            }
            if k.relevancy.len() != self.domains.len() {
                return Err(Error::BadRegistry(format!(
                    "{} has {} relevancy values for {} domains",
                    k.label,
                    k.relevancy.len(),
                    self.domains.len()
                )));
            }
            if k.relevancy
                .iter()
                .flatten()
                .chain(k.published_mean.iter())
                .any(|v| !(0.0..=1.0).contains(v))
            {
                return Err(Error::BadRegistry(format!("{} relevancy outside [0, 1]", k.label)));
            }
        }
        Ok(())
    }

    pub fn get(&self, label: &str) -> Option<&KeywordSpec> {
        self.keywords.iter().find(|k| k.label == label)
    }

    pub fn active(&self) -> impl Iterator<Item = &KeywordSpec> {
        self.keywords.iter().filter(|k| k.is_active())
    }

    pub fn active_labels(&self) -> Vec<String> {
        self.active().map(|k| k.label.clone()).collect()
    }

    /// True when some active root is a prefix of another, so that one token
    /// could count towards two keywords.
    pub fn has_overlapping_roots(&self) -> bool {
        let roots: Vec<&str> = self.active().map(|k| k.root.as_str()).collect();
        roots.iter().enumerate().any(|(i, a)| {
            roots
                .iter()
                .enumerate()
                .any(|(j, b)| i != j && b.starts_with(a))
        })
    }

    /// Re-derives every keyword's status from scratch: occurrence, then
    /// cross-domain usage, then relevancy. The first failing criterion is
    /// recorded. Keywords missing from a count map are not judged by it.
    pub fn apply_culls(
        &self,
        totals: &BTreeMap<String, u64>,
        per_domain: &BTreeMap<String, BTreeMap<String, u64>>,
        thresholds: &CullThresholds,
    ) -> Registry {
        let low_count = cull_by_occurrence(totals, thresholds.min_count);
        let narrow = cull_by_cross_domain(per_domain, thresholds.min_domains);
        let irrelevant = cull_by_relevancy(self, thresholds.min_relevancy);
        let mut out = self.clone();
        for k in &mut out.keywords {
            k.status = if low_count.contains(&k.label) {
                KeywordStatus::Culled(CullReason::LowOccurrence)
            } else if narrow.contains(&k.label) {
                KeywordStatus::Culled(CullReason::LowCrossDomainUsage)
            } else if irrelevant.contains(&k.label) {
                KeywordStatus::Culled(CullReason::LowRelevancy)
            } else {
                KeywordStatus::Active
            };
        }
        out
    }

    /// Parses the tabular registry format:
    /// `label,root,status,reason,mean,<domain>...` with `/` for no value.
    pub fn from_csv(text: &str) -> Result<Self> {
        let bad = |m: String| Error::BadRegistry(m);
        let mut rdr = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let headers = rdr.headers()?.clone();
        let fixed = ["label", "root", "status", "reason", "mean"];
        if headers.len() < fixed.len() || fixed.iter().zip(headers.iter()).any(|(a, b)| *a != b) {
            return Err(bad(format!("unexpected header {headers:?}")));
        }
        let domains: Vec<String> = headers.iter().skip(fixed.len()).map(String::from).collect();
        let cell = |s: &str| -> Result<Option<f64>> {
            match s.trim() {
                "/" | "" => Ok(None),
                v => v
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|_| Error::BadRegistry(format!("bad number {v:?}"))),
            }
        };
        let mut keywords = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let status = match (&rec[2], &rec[3]) {
                ("active", _) => KeywordStatus::Active,
                ("culled", r) => KeywordStatus::Culled(
                    CullReason::parse(r).ok_or_else(|| bad(format!("unknown reason {r:?}")))?,
                ),
                (s, _) => return Err(bad(format!("unknown status {s:?}"))),
            };
            keywords.push(KeywordSpec {
                label: rec[0].to_string(),
                root: rec[1].to_string(),
                status,
                published_mean: cell(&rec[4])?,
                relevancy: rec
                    .iter()
                    .skip(fixed.len())
                    .map(cell)
                    .collect::<Result<_>>()?,
            });
        }
        Registry::new(domains, keywords)
    }

    pub fn to_csv(&self) -> String {
        let fmt = |v: Option<f64>| v.map_or_else(|| "/".to_string(), |x| x.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["label", "root", "status", "reason", "mean"];
        header.extend(self.domains.iter().map(String::as_str));
        w.write_record(&header).expect("in-memory write");
        for k in &self.keywords {
            let (status, reason) = match k.status {
                KeywordStatus::Active => ("active", String::new()),
                KeywordStatus::Culled(r) => ("culled", r.to_string()),
            };
            let mut row = vec![
                k.label.clone(),
                k.root.clone(),
                status.to_string(),
                reason,
                fmt(k.published_mean),
            ];
            row.extend(k.relevancy.iter().map(|v| fmt(*v)));
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::FileUnreadable {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_csv(&text)
    }
}

/// Hand-annotated usage counts of one keyword in one domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelevancyAnnotation {
    pub label: String,
    pub domain: String,
    pub true_positive_count: u64,
    pub total_count: u64,
}

/// Fraction of a keyword's occurrences that signal an interaction.
pub fn compute_relevancy(ann: &RelevancyAnnotation) -> Result<f64> {
    if ann.total_count == 0 {
        return Err(Error::ZeroTotal(ann.label.clone()));
    }
    if ann.true_positive_count > ann.total_count {
        return Err(Error::BadRegistry(format!(
            "{}: {} true positives out of {}",
            ann.label, ann.true_positive_count, ann.total_count
        )));
    }
    Ok(ann.true_positive_count as f64 / ann.total_count as f64)
}

/// Keywords whose total count is below `min_count`.
pub fn cull_by_occurrence(counts: &BTreeMap<String, u64>, min_count: u64) -> BTreeSet<String> {
    counts
        .iter()
        .filter(|(_, &c)| c < min_count)
        .map(|(k, _)| k.clone())
        .collect()
}

/// Keywords used (count ≥ 1) in fewer than `min_domains` domains.
pub fn cull_by_cross_domain(
    per_domain: &BTreeMap<String, BTreeMap<String, u64>>,
    min_domains: usize,
) -> BTreeSet<String> {
    per_domain
        .iter()
        .filter(|(_, by_domain)| by_domain.values().filter(|&&c| c >= 1).count() < min_domains)
        .map(|(k, _)| k.clone())
        .collect()
}

/// Keywords whose mean relevancy is below `min_relevancy`. A keyword with
/// no relevancy data at all is culled.
pub fn cull_by_relevancy(registry: &Registry, min_relevancy: f64) -> BTreeSet<String> {
    registry
        .keywords
        .iter()
        .filter(|k| k.mean_relevancy().is_none_or(|m| m < min_relevancy))
        .map(|k| k.label.clone())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CullThresholds {
    pub min_count: u64,
    pub min_domains: usize,
    pub min_relevancy: f64,
}

impl Default for CullThresholds {
    fn default() -> Self {
        CullThresholds {
            min_count: 100,
            min_domains: 22,
            min_relevancy: 0.70,
        }
    }
}
