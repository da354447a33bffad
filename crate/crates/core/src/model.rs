//! Complexity model of cost improvement.
//!
//! Normalized unit cost `C` falls with the number of design attempts `m` as
//! `dC/dm = -B·C^(d+1)`, `C(0) = 1`, where `d` is the interaction parameter
//! (components touched by a change, counting the changed one). The closed
//! form is `C(m) = (1 + d·B·m)^(-1/d)`, so late costs decay like `m^(-1/d)`.
//!
//! The stochastic search reproduces that exponent from a microscopic rule:
//! components sit on a ring; an attempt picks one component uniformly and
//! redraws its cost and those of its `d − 1` successors; the redraw is kept
//! only if the artifact's total cost strictly drops.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::linear_trend;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostModelParams {
    /// Interaction parameter, ≥ 1.
    pub d: f64,
    /// Rate constant, > 0.
    pub b: f64,
}

impl CostModelParams {
    pub fn new(d: f64, b: f64) -> Result<Self> {
        if !(d >= 1.0) || !d.is_finite() {
            return Err(Error::BadParams(format!("d = {d} must be ≥ 1")));
        }
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::BadParams(format!("B = {b} must be positive")));
        }
        Ok(CostModelParams { d, b })
    }

    /// Right-hand side of the cost equation.
    pub fn rate_of_change(&self, c: f64) -> f64 {
        -self.b * c.powf(self.d + 1.0)
    }
}

/// Sampled cost curve as `(m, C)` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostTrajectory {
    pub samples: Vec<(f64, f64)>,
}

impl CostTrajectory {
    pub fn is_non_increasing(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].1 <= w[0].1)
    }

    pub fn last(&self) -> Option<(f64, f64)> {
        self.samples.last().copied()
    }
}

pub fn analytic_cost(m: f64, params: &CostModelParams) -> f64 {
    (1.0 + params.d * params.b * m).powf(-1.0 / params.d)
}

/// Classical fourth-order Runge–Kutta from `C(0) = 1` to `m_max`. The last
/// step is shortened to land on `m_max` exactly.
pub fn integrate_cost_ode(params: &CostModelParams, m_max: f64, step: f64) -> Result<CostTrajectory> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::BadStep(step));
    }
    if !(m_max > 0.0) || !m_max.is_finite() {
        return Err(Error::BadRange(m_max));
    }
    let f = |c: f64| params.rate_of_change(c);
    let full_steps = (m_max / step).floor() as usize;
    let mut samples = Vec::with_capacity(full_steps + 2);
    let mut c = 1.0;
    samples.push((0.0, c));
    let mut i = 0usize;
    loop {
        let m = i as f64 * step;
        let h = (m_max - m).min(step);
        if h <= step * 1e-9 {
            break;
        }
        let k1 = f(c);
        let k2 = f(c + 0.5 * h * k1);
        let k3 = f(c + 0.5 * h * k2);
        let k4 = f(c + h * k3);
        c += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        i += 1;
        let m_next = if h < step { m_max } else { i as f64 * step };
        samples.push((m_next, c));
        if h < step {
            break;
        }
    }
    Ok(CostTrajectory { samples })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CostDistribution {
    Uniform { low: f64, high: f64 },
}

impl Default for CostDistribution {
    fn default() -> Self {
        CostDistribution::Uniform { low: 0.0, high: 1.0 }
    }
}

impl CostDistribution {
    fn validate(&self) -> Result<()> {
        match *self {
            CostDistribution::Uniform { low, high } if low >= 0.0 && high > low => Ok(()),
            CostDistribution::Uniform { low, high } => Err(Error::BadParams(format!(
                "uniform cost range [{low}, {high}) must satisfy 0 ≤ low < high"
            ))),
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match *self {
            CostDistribution::Uniform { low, high } => rng.random_range(low..high),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignSearch {
    pub n_components: usize,
    pub d: usize,
    pub attempts: usize,
    pub cost_distribution: CostDistribution,
}

impl DesignSearch {
    pub fn new(n_components: usize, d: usize, attempts: usize) -> Result<Self> {
        let s = DesignSearch {
            n_components,
            d,
            attempts,
            cost_distribution: CostDistribution::default(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.d > self.n_components {
            return Err(Error::BadD {
                d: self.d,
                n_components: self.n_components,
            });
        }
        if self.attempts == 0 {
            return Err(Error::BadParams("attempts must be ≥ 1".into()));
        }
        self.cost_distribution.validate()
    }

    /// Total cost normalized by its initial value after each attempt
    /// `m = 1..=attempts`.
    pub fn run_with(&self, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
        self.validate()?;
        let n = self.n_components;
        let dist = self.cost_distribution;
        let mut costs: Vec<f64> = (0..n).map(|_| dist.sample(rng)).collect();
        let initial: f64 = costs.iter().sum();
        if initial <= 0.0 {
            return Err(Error::BadParams("initial total cost is zero".into()));
        }
        let mut total = initial;
        let mut fresh = vec![0.0; self.d];
        let mut out = Vec::with_capacity(self.attempts);
        for _ in 0..self.attempts {
            let i = rng.random_range(0..n);
            let mut old = 0.0;
            let mut new = 0.0;
            for (k, slot) in fresh.iter_mut().enumerate() {
                old += costs[(i + k) % n];
                *slot = dist.sample(rng);
                new += *slot;
            }
            if new < old {
                for (k, &v) in fresh.iter().enumerate() {
                    costs[(i + k) % n] = v;
                }
                total += new - old;
            }
            out.push(total / initial);
        }
        Ok(out)
    }
}

/// RNG for replica `replica` of a run seeded with `seed`: one ChaCha8 key,
/// one stream per replica.
pub fn replica_rng(seed: u64, replica: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replica);
    rng
}

/// One seeded stochastic trajectory.
pub fn simulate_design_search(search: &DesignSearch, seed: u64) -> Result<CostTrajectory> {
    let costs = search.run_with(&mut replica_rng(seed, 0))?;
    Ok(CostTrajectory {
        samples: costs
            .into_iter()
            .enumerate()
            .map(|(m, c)| ((m + 1) as f64, c))
            .collect(),
    })
}

/// Mean trajectory over `replicas` independent streams of `seed`. Replicas
/// run in parallel; the average is summed in replica order.
pub fn ensemble_mean(search: &DesignSearch, replicas: usize, seed: u64) -> Result<CostTrajectory> {
    if replicas == 0 {
        return Err(Error::BadParams("replicas must be ≥ 1".into()));
    }
    let runs: Vec<Vec<f64>> = (0..replicas as u64)
        .into_par_iter()
        .map(|r| search.run_with(&mut replica_rng(seed, r)))
        .collect::<Result<_>>()?;
    let mut mean = vec![0.0; search.attempts];
    for run in &runs {
        for (acc, c) in mean.iter_mut().zip(run) {
            *acc += c;
        }
    }
    let k = replicas as f64;
    Ok(CostTrajectory {
        samples: mean
            .into_iter()
            .enumerate()
            .map(|(m, c)| ((m + 1) as f64, c / k))
            .collect(),
    })
}

/// Slope of `ln C` against `ln m` over samples with `m ≥ m_from`.
pub fn tail_exponent(traj: &CostTrajectory, m_from: f64) -> Result<f64> {
    let (x, y): (Vec<f64>, Vec<f64>) = traj
        .samples
        .iter()
        .filter(|(m, c)| *m >= m_from && *m > 0.0 && *c > 0.0)
        .map(|(m, c)| (m.ln(), c.ln()))
        .unzip();
    Ok(linear_trend(&x, &y)?.0)
}

/// Predicted improvement rate `A·K/d`. Only ratios between domains carry
/// meaning, since `A` and `K` are not identifiable. The input may be the
/// interaction parameter itself or its keyword-count proxy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePrediction {
    pub interactions: f64,
    pub scaling: f64,
    pub idea_rate: f64,
    pub predicted: f64,
}

pub fn predict_rate(interactions: f64, scaling: f64, idea_rate: f64) -> Result<RatePrediction> {
    if !(interactions > 0.0) {
        return Err(Error::NonPositive(interactions));
    }
    Ok(RatePrediction {
        interactions,
        scaling,
        idea_rate,
        predicted: (scaling * idea_rate / interactions).abs(),
    })
}
