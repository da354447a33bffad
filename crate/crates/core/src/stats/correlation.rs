use serde::{Deserialize, Serialize};

use super::tdist::t_two_tailed;
use super::DomainRecord;
use crate::error::{Error, Result};

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Sample Pearson correlation coefficient.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: x.len(),
        });
    }
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// t statistic of a correlation coefficient, `r·sqrt((n−2)/(1−r²))`.
pub fn t_statistic(r: f64, n: usize) -> Result<f64> {
    if r.abs() >= 1.0 {
        return Err(Error::DegenerateR);
    }
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    Ok(r * ((n as f64 - 2.0) / (1.0 - r * r)).sqrt())
}

/// Two-tailed p-value of `r` under the null of zero correlation, from
/// Student's t with `n − 2` degrees of freedom. `|r| = 1` is reported as
/// [`Error::DegenerateR`]; callers that want a value use 0.
pub fn p_value_two_tailed(r: f64, n: usize) -> Result<f64> {
    let t = t_statistic(r, n)?;
    Ok(t_two_tailed(t, n as f64 - 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub r: f64,
    pub n: usize,
    pub p: f64,
}

/// Correlates each record's improvement rate with its inverse keyword
/// intensity, after dropping excluded domains.
pub fn correlate_records(records: &[DomainRecord], exclusions: &[String]) -> Result<CorrelationResult> {
    let kept: Vec<&DomainRecord> = records
        .iter()
        .filter(|r| !exclusions.contains(&r.domain_id))
        .collect();
    if kept.len() < 3 {
        return Err(Error::TooFewRecords(kept.len()));
    }
    let x: Vec<f64> = kept.iter().map(|r| r.inv_kw).collect();
    let y: Vec<f64> = kept.iter().map(|r| r.rate).collect();
    let r = pearson(&x, &y)?;
    let p = match p_value_two_tailed(r, kept.len()) {
        Err(Error::DegenerateR) => 0.0,
        other => other?,
    };
    Ok(CorrelationResult {
        r,
        n: kept.len(),
        p,
    })
}

/// Ordinary least squares line `y = slope·x + intercept`.
pub fn linear_trend(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: x.len(),
        });
    }
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}
