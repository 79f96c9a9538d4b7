//! Exhaustive k-subset search shared by the seed step, the exact solver,
//! and the threshold decision.
//!
//! Subsets are visited in lexicographic order and scored with the common
//! cost path. Scoring a candidate abandons early once its running per-point
//! minimum falls strictly below a floor it would have to reach; the floor is
//! the incumbent best in a max search, or the target bound in a threshold
//! search. Abandonment never changes which subset wins, only how much work
//! loses.
//!
//! Parallel scans split the enumeration into chunks by smallest element.
//! Each chunk is scanned sequentially and chunk results are merged with a
//! total order (cost, then lexicographic subset), so the result is identical
//! for any worker count.

use rayon::prelude::*;

use crate::combin::{binomial, for_each_k_subset, for_each_k_subset_with_first};
use crate::cost::nearest_c_sum;
use crate::error::{Error, Result};
use crate::metric::MetricInstance;

/// Scores `subset`, abandoning once the running minimum drops below `floor`.
/// Returns the exact subset cost when it is at least `floor`.
fn score_with_floor(
    instance: &MetricInstance,
    subset: &[usize],
    c: usize,
    floor: f64,
    scratch: &mut Vec<f64>,
) -> Option<f64> {
    let mut running = f64::INFINITY;
    for &p in subset {
        scratch.clear();
        scratch.extend(
            subset
                .iter()
                .filter(|&&q| q != p)
                .map(|&q| instance.distance(p, q)),
        );
        let cost = nearest_c_sum(scratch, c);
        if cost < running {
            running = cost;
            if running < floor {
                return None;
            }
        }
    }
    Some(running)
}

/// True when `(cost_a, a)` beats `(cost_b, b)` under the deterministic
/// merge order: higher cost first, lexicographically smaller subset on ties.
fn beats(cost_a: f64, a: &[usize], cost_b: f64, b: &[usize]) -> bool {
    cost_a > cost_b || (cost_a == cost_b && a < b)
}

fn check_budget(n: usize, k: usize, budget: u64) -> Result<u128> {
    let required = binomial(n, k);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(required)
}

fn build_pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot build thread pool: {e}")))
}

/// Finds the k-subset maximizing the subset cost. Ties go to the
/// lexicographically smallest subset. Also reports how many subsets were
/// scored, which equals C(n, k) on success.
///
/// Callers must have established `1 <= c`, `c + 1 <= k <= n`.
pub(crate) fn best_subset(
    instance: &MetricInstance,
    k: usize,
    c: usize,
    budget: u64,
    threads: usize,
) -> Result<(Vec<usize>, f64, u64)> {
    let n = instance.len();
    debug_assert!(c >= 1 && k >= c + 1 && k <= n);
    check_budget(n, k, budget)?;

    if threads <= 1 {
        let mut best: Option<(Vec<usize>, f64)> = None;
        let mut scratch = Vec::with_capacity(k);
        let mut scored: u64 = 0;
        for_each_k_subset(n, k, |subset| {
            scored += 1;
            let floor = best.as_ref().map_or(f64::NEG_INFINITY, |(_, c)| *c);
            if let Some(cost) = score_with_floor(instance, subset, c, floor, &mut scratch) {
                match &best {
                    Some((b, bc)) if !beats(cost, subset, *bc, b) => {}
                    _ => best = Some((subset.to_vec(), cost)),
                }
            }
            true
        });
        let (subset, cost) = best.expect("at least one subset exists");
        Ok((subset, cost, scored))
    } else {
        let pool = build_pool(threads)?;
        let chunk_results: Vec<(Option<(Vec<usize>, f64)>, u64)> = pool.install(|| {
            (0..=n - k)
                .into_par_iter()
                .map(|first| {
                    let mut best: Option<(Vec<usize>, f64)> = None;
                    let mut scratch = Vec::with_capacity(k);
                    let mut scored: u64 = 0;
                    for_each_k_subset_with_first(n, k, first, |subset| {
                        scored += 1;
                        let floor = best.as_ref().map_or(f64::NEG_INFINITY, |(_, c)| *c);
                        if let Some(cost) =
                            score_with_floor(instance, subset, c, floor, &mut scratch)
                        {
                            match &best {
                                Some((b, bc)) if !beats(cost, subset, *bc, b) => {}
                                _ => best = Some((subset.to_vec(), cost)),
                            }
                        }
                        true
                    });
                    (best, scored)
                })
                .collect()
        });
        let mut best: Option<(Vec<usize>, f64)> = None;
        let mut scored = 0u64;
        for (chunk_best, chunk_scored) in chunk_results {
            scored += chunk_scored;
            if let Some((subset, cost)) = chunk_best {
                match &best {
                    Some((b, bc)) if !beats(cost, &subset, *bc, b) => {}
                    _ => best = Some((subset, cost)),
                }
            }
        }
        let (subset, cost) = best.expect("at least one subset exists");
        Ok((subset, cost, scored))
    }
}

/// Finds the lexicographically first k-subset whose cost reaches `bound`,
/// stopping as soon as one is found.
///
/// Callers must have established `1 <= c`, `c + 1 <= k <= n`.
pub(crate) fn first_subset_reaching(
    instance: &MetricInstance,
    k: usize,
    c: usize,
    bound: f64,
    budget: u64,
    threads: usize,
) -> Result<Option<Vec<usize>>> {
    let n = instance.len();
    debug_assert!(c >= 1 && k >= c + 1 && k <= n);
    check_budget(n, k, budget)?;

    let scan_chunk = |first: Option<usize>| -> Option<Vec<usize>> {
        let mut hit = None;
        let mut scratch = Vec::with_capacity(k);
        let visit = |subset: &[usize]| -> bool {
            if score_with_floor(instance, subset, c, bound, &mut scratch).is_some() {
                hit = Some(subset.to_vec());
                false
            } else {
                true
            }
        };
        match first {
            Some(first) => for_each_k_subset_with_first(n, k, first, visit),
            None => for_each_k_subset(n, k, visit),
        };
        hit
    };

    if threads <= 1 {
        Ok(scan_chunk(None))
    } else {
        let pool = build_pool(threads)?;
        Ok(pool.install(|| {
            (0..=n - k)
                .into_par_iter()
                .find_map_first(|first| scan_chunk(Some(first)))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::cost_set;

    fn line_instance() -> MetricInstance {
        MetricInstance::from_points(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0), (7.0, 0.0)]).unwrap()
    }

    #[test]
    fn best_pair_on_line() {
        let inst = line_instance();
        let (subset, cost, scored) = best_subset(&inst, 2, 1, 1_000, 1).unwrap();
        assert_eq!(subset, vec![0, 3]);
        assert_eq!(cost, 7.0);
        assert_eq!(scored, 6); // C(4, 2)
    }

    #[test]
    fn best_triple_on_line() {
        let inst = line_instance();
        let (subset, cost, _) = best_subset(&inst, 3, 1, 1_000, 1).unwrap();
        assert_eq!(subset, vec![0, 2, 3]);
        assert_eq!(cost, 3.0);
    }

    #[test]
    fn parallel_matches_sequential() {
        let inst = MetricInstance::from_points(&[
            (0.3, 0.9),
            (2.0, 0.1),
            (1.1, 1.7),
            (0.0, 2.4),
            (3.3, 2.2),
            (1.9, 3.0),
            (2.7, 0.8),
        ])
        .unwrap();
        for k in 2..=5 {
            let seq = best_subset(&inst, k, 1, 1_000_000, 1).unwrap();
            let par = best_subset(&inst, k, 1, 1_000_000, 4).unwrap();
            assert_eq!(seq.0, par.0);
            assert_eq!(seq.1.to_bits(), par.1.to_bits());
            assert_eq!(seq.2, par.2);
        }
    }

    #[test]
    fn pruning_matches_full_scoring() {
        let inst = MetricInstance::from_points(&[
            (0.0, 0.0),
            (0.5, 0.2),
            (1.9, 1.1),
            (0.4, 2.0),
            (2.8, 0.3),
            (1.2, 2.7),
        ])
        .unwrap();
        for c in 1..=2usize {
            for k in c + 1..=5 {
                let (subset, cost, _) = best_subset(&inst, k, c, 1_000_000, 1).unwrap();
                // independent full scan through the public cost path
                let mut best: Option<(Vec<usize>, f64)> = None;
                crate::combin::for_each_k_subset(inst.len(), k, |s| {
                    let v = cost_set(&inst, s, c).unwrap().min_value;
                    match &best {
                        Some((_, bc)) if v <= *bc => {}
                        _ => best = Some((s.to_vec(), v)),
                    }
                    true
                });
                let (naive_subset, naive_cost) = best.unwrap();
                assert_eq!(subset, naive_subset);
                assert_eq!(cost.to_bits(), naive_cost.to_bits());
            }
        }
    }

    #[test]
    fn budget_rejected() {
        let inst = line_instance();
        let err = best_subset(&inst, 2, 1, 5, 1).unwrap_err();
        match err {
            Error::BudgetExceeded { required, budget } => {
                assert_eq!(required, 6);
                assert_eq!(budget, 5);
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn threshold_search_finds_lex_first() {
        let inst = line_instance();
        // pairs at distance >= 3: {0,2} {0,3} {1,3} {2,3}; lex first is {0,2}
        let hit = first_subset_reaching(&inst, 2, 1, 3.0, 1_000, 1).unwrap();
        assert_eq!(hit, Some(vec![0, 2]));
        let miss = first_subset_reaching(&inst, 2, 1, 100.0, 1_000, 1).unwrap();
        assert_eq!(miss, None);
        let par = first_subset_reaching(&inst, 2, 1, 3.0, 1_000, 3).unwrap();
        assert_eq!(par, Some(vec![0, 2]));
    }
}
