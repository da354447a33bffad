//! Correlation, significance, subset robustness and rate fitting.

pub mod correlation;
pub mod rate;
pub mod robustness;
pub mod tdist;

use serde::{Deserialize, Serialize};

pub use correlation::{
    correlate_records, linear_trend, p_value_two_tailed, pearson, t_statistic, CorrelationResult,
};
pub use rate::{fit_improvement_rate, PerformanceSeries};
pub use robustness::{robustness, GroupResult, RobustnessResult};

use crate::error::{Error, Result};

/// One domain's improvement rate paired with its keyword intensity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainRecord {
    pub domain_id: String,
    /// Improvement rate as a fraction per year (0.65 for 65 %/yr).
    pub rate: f64,
    /// Keywords per 100,000 words.
    pub kw: f64,
    pub inv_kw: f64,
}

impl DomainRecord {
    pub fn from_percent(domain_id: impl Into<String>, rate_percent: f64, kw: f64) -> Result<Self> {
        let domain_id = domain_id.into();
        if !(kw > 0.0) {
            return Err(Error::ZeroKw(domain_id));
        }
        Ok(DomainRecord {
            domain_id,
            rate: rate_percent / 100.0,
            kw,
            inv_kw: 1.0 / kw,
        })
    }

    pub fn rate_percent(&self) -> f64 {
        self.rate * 100.0
    }
}
