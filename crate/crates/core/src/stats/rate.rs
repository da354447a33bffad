use serde::{Deserialize, Serialize};

use super::correlation::linear_trend;
use crate::error::{Error, Result};

/// Yearly observations of a domain's performance metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerformanceSeries {
    pub domain_id: String,
    pub observations: Vec<(f64, f64)>,
}

impl PerformanceSeries {
    pub fn new(domain_id: impl Into<String>, observations: Vec<(f64, f64)>) -> Self {
        PerformanceSeries {
            domain_id: domain_id.into(),
            observations,
        }
    }
}

/// Exponential improvement rate (fraction per year): the OLS slope of
/// `ln Q` against year.
pub fn fit_improvement_rate(series: &PerformanceSeries) -> Result<f64> {
    let obs = &series.observations;
    if obs.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: obs.len(),
        });
    }
    if obs.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::UnorderedYears);
    }
    if obs.iter().any(|&(_, q)| !(q > 0.0) || !q.is_finite()) {
        return Err(Error::NonPositivePerformance);
    }
    let years: Vec<f64> = obs.iter().map(|o| o.0).collect();
    let logs: Vec<f64> = obs.iter().map(|o| o.1.ln()).collect();
    Ok(linear_trend(&years, &logs)?.0)
}
