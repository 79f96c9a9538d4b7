//! The dispersion objective: per-point nearest-neighbor sums and their
//! subset-wide minimum.
//!
//! For a point `p` in a subset `S`, the cost is the sum of the `c` smallest
//! distances from `p` to the other members of `S`. Ties among equidistant
//! points cannot change the result because the sum runs over distance
//! values, not point identities. The subset cost is the minimum per-point
//! cost over `S`.

use crate::error::{Error, Result};
use crate::metric::MetricInstance;

/// Per-point costs of a subset, with the minimizing point.
#[derive(Debug, Clone, PartialEq)]
pub struct CostProfile {
    /// The evaluated subset, sorted ascending.
    pub subset: Vec<usize>,
    /// Neighbor count the costs were computed with.
    pub c: usize,
    /// `(p, cost_c(p, S))` for every `p` in the subset, in subset order.
    pub per_point: Vec<(usize, f64)>,
    /// Point attaining the minimum cost; lowest index on exact ties.
    pub min_point: usize,
    /// The subset's cost: the minimum per-point value.
    pub min_value: f64,
}

/// A selected subset together with its evaluated cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Selected point indices, sorted ascending.
    pub subset: Vec<usize>,
    /// The subset's cost (equals `profile.min_value`).
    pub cost: f64,
    pub profile: CostProfile,
}

impl Solution {
    pub(crate) fn from_profile(profile: CostProfile) -> Self {
        Self {
            subset: profile.subset.clone(),
            cost: profile.min_value,
            profile,
        }
    }

    /// Subset size.
    pub fn k(&self) -> usize {
        self.subset.len()
    }
}

/// Sum of the `c` smallest values in `dists`, summed in ascending order.
///
/// This is the single evaluation path shared by every solver, so that
/// independently computed costs agree bit for bit. `dists` is scratch space
/// and comes back reordered.
pub(crate) fn nearest_c_sum(dists: &mut [f64], c: usize) -> f64 {
    debug_assert!(dists.len() >= c && c >= 1);
    if dists.len() > c {
        dists.select_nth_unstable_by(c - 1, f64::total_cmp);
    }
    let head = &mut dists[..c];
    head.sort_unstable_by(f64::total_cmp);
    head.iter().sum()
}

/// Like [`nearest_c_sum`] but also hands back the sorted c smallest values.
/// Must stay in lockstep with `nearest_c_sum`; the incremental solver state
/// depends on both producing the same bits.
pub(crate) fn nearest_c_head(dists: &mut [f64], c: usize) -> (Vec<f64>, f64) {
    debug_assert!(dists.len() >= c && c >= 1);
    if dists.len() > c {
        dists.select_nth_unstable_by(c - 1, f64::total_cmp);
    }
    let head = &mut dists[..c];
    head.sort_unstable_by(f64::total_cmp);
    (head.to_vec(), head.iter().sum())
}

pub(crate) fn check_subset(
    instance: &MetricInstance,
    subset: &[usize],
    c: usize,
) -> Result<Vec<usize>> {
    if c < 1 {
        return Err(Error::InvalidParams("c must be at least 1".into()));
    }
    if subset.len() < c + 1 {
        return Err(Error::SubsetTooSmall {
            size: subset.len(),
            need: c + 1,
        });
    }
    for &i in subset {
        if i >= instance.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: instance.len(),
            });
        }
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateIndex { index: w[0] });
        }
    }
    Ok(sorted)
}

/// `cost_c(p, S)`: the sum of distances from `p` to its `c` nearest
/// neighbors within `S`.
pub fn cost_point(instance: &MetricInstance, p: usize, subset: &[usize], c: usize) -> Result<f64> {
    let sorted = check_subset(instance, subset, c)?;
    if !sorted.contains(&p) {
        return Err(Error::PointNotInSubset { point: p });
    }
    let mut dists: Vec<f64> = sorted
        .iter()
        .filter(|&&q| q != p)
        .map(|&q| instance.distance(p, q))
        .collect();
    Ok(nearest_c_sum(&mut dists, c))
}

/// `cost_c(S)`: evaluates every member and returns the full profile.
pub fn cost_set(instance: &MetricInstance, subset: &[usize], c: usize) -> Result<CostProfile> {
    let sorted = check_subset(instance, subset, c)?;
    let mut per_point = Vec::with_capacity(sorted.len());
    let mut scratch = Vec::with_capacity(sorted.len() - 1);
    let mut min_value = f64::INFINITY;
    let mut min_point = sorted[0];
    for &p in &sorted {
        scratch.clear();
        scratch.extend(sorted.iter().filter(|&&q| q != p).map(|&q| instance.distance(p, q)));
        let cost = nearest_c_sum(&mut scratch, c);
        if cost < min_value {
            min_value = cost;
            min_point = p;
        }
        per_point.push((p, cost));
    }
    Ok(CostProfile {
        subset: sorted,
        c,
        per_point,
        min_point,
        min_value,
    })
}
