//! Correlation on random subsets of domains.
//!
//! Each group is a uniform random subset (no repeats within a group) drawn
//! from a ChaCha8 stream seeded with the user's seed. Groups are drawn
//! independently, so the same subset may occur twice. All subsets are drawn
//! up front and correlations are then computed in parallel, which keeps the
//! result independent of thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::correlation::pearson;
use super::DomainRecord;
use crate::error::{Error, Result};

pub const DEFAULT_GROUP_SIZE: usize = 14;
pub const DEFAULT_GROUPS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupResult {
    /// Domain ids in the group, in input order.
    pub members: Vec<String>,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessResult {
    pub group_size: usize,
    pub n_groups: usize,
    pub seed: u64,
    pub groups: Vec<GroupResult>,
    pub mean: f64,
    /// Sample standard deviation (n − 1); 0 for a single group.
    pub sd: f64,
    pub min: f64,
    pub max: f64,
}

impl RobustnessResult {
    pub fn rs(&self) -> Vec<f64> {
        self.groups.iter().map(|g| g.r).collect()
    }
}

/// Draws `n_groups` index subsets of size `group_size` from `0..n`, each
/// sorted ascending.
pub fn draw_groups(n: usize, group_size: usize, n_groups: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_groups)
        .map(|_| {
            let mut idx = rand::seq::index::sample(&mut rng, n, group_size).into_vec();
            idx.sort_unstable();
            idx
        })
        .collect()
}

pub fn robustness(
    records: &[DomainRecord],
    group_size: usize,
    n_groups: usize,
    seed: u64,
) -> Result<RobustnessResult> {
    if group_size < 3 || group_size > records.len() || n_groups == 0 {
        return Err(Error::BadGroupSize {
            group_size,
            records: records.len(),
        });
    }
    let groups = draw_groups(records.len(), group_size, n_groups, seed);
    let groups: Vec<GroupResult> = groups
        .par_iter()
        .map(|idx| {
            let x: Vec<f64> = idx.iter().map(|&i| records[i].inv_kw).collect();
            let y: Vec<f64> = idx.iter().map(|&i| records[i].rate).collect();
            Ok(GroupResult {
                members: idx.iter().map(|&i| records[i].domain_id.clone()).collect(),
                r: pearson(&x, &y)?,
            })
        })
        .collect::<Result<_>>()?;

    let rs: Vec<f64> = groups.iter().map(|g| g.r).collect();
    let k = rs.len() as f64;
    let mean = rs.iter().sum::<f64>() / k;
    let sd = if rs.len() > 1 {
        (rs.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
    } else {
        0.0
    };
    Ok(RobustnessResult {
        group_size,
        n_groups,
        seed,
        mean,
        sd,
        min: rs.iter().copied().fold(f64::INFINITY, f64::min),
        max: rs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        groups,
    })
}
