//! Exact optimum by full enumeration, and the ball containment check that a
//! true optimum must pass.
//!
//! The enumeration is the trustworthy reference the approximate solver is
//! measured against, so it stays brute force on purpose. A budget caps the
//! subset count before any work starts.

use crate::cost::{cost_set, Solution};
use crate::error::Result;
use crate::greedy::SolveParams;
use crate::metric::MetricInstance;
use crate::search::best_subset;

/// Cap on C(n, k) subset evaluations before refusing to run.
pub const DEFAULT_EXACT_BUDGET: u64 = 50_000_000;

/// Counters from an exhaustive solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationStats {
    /// Subsets scored; equals C(n, k) after a completed scan.
    pub scored: u64,
}

/// Finds the k-subset with maximum cost by scoring all C(n, k) candidates.
/// Ties go to the lexicographically smallest subset.
pub fn exact_solve(
    instance: &MetricInstance,
    params: SolveParams,
    budget: u64,
) -> Result<Solution> {
    exact_solve_with_stats(instance, params, budget, 1).map(|(s, _)| s)
}

/// [`exact_solve`] with enumeration counters and a worker count. The result
/// is identical for any worker count.
pub fn exact_solve_with_stats(
    instance: &MetricInstance,
    params: SolveParams,
    budget: u64,
    threads: usize,
) -> Result<(Solution, EnumerationStats)> {
    params.validate_for(instance)?;
    let (subset, cost, scored) = best_subset(instance, params.k, params.c, budget, threads)?;
    let profile = cost_set(instance, &subset, params.c)?;
    assert_eq!(
        profile.min_value.to_bits(),
        cost.to_bits(),
        "search cost drifted from recomputation"
    );
    Ok((Solution::from_profile(profile), EnumerationStats { scored }))
}

/// Ball membership predicate: strict is the asserted form, weak is kept for
/// exploration only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    /// d < radius
    Proper,
    /// d <= radius
    Weak,
}

/// Containment counts around a candidate solution, at radius
/// cost / (2c). A point never counts itself.
///
/// For a candidate that is truly optimal, every count is at most c, so
/// `violations` is empty. Suboptimal candidates can exceed the bound (only
/// for c >= 2; at c = 1 the triangle inequality already forbids it).
#[derive(Debug, Clone, PartialEq)]
pub struct BallReport {
    pub radius: f64,
    /// For each point p of the instance: how many selected q (q != p) lie
    /// within the radius of p.
    pub contains_counts: Vec<usize>,
    /// For each point s of the instance: how many selected centers' balls
    /// hold s. Equal to `contains_counts` since the distance is symmetric;
    /// kept separate because reports print both views.
    pub covered_counts: Vec<usize>,
    /// Points whose count exceeds c.
    pub violations: Vec<usize>,
}

/// Counts, for every point of the instance, the selected points lying
/// strictly within radius `candidate.cost / (2c)`.
pub fn ball_check(instance: &MetricInstance, candidate: &Solution, c: usize) -> BallReport {
    ball_check_with(instance, candidate, c, Containment::Proper)
}

/// [`ball_check`] with a configurable membership predicate.
pub fn ball_check_with(
    instance: &MetricInstance,
    candidate: &Solution,
    c: usize,
    containment: Containment,
) -> BallReport {
    assert!(c >= 1, "c must be at least 1");
    assert!(
        candidate.subset.len() >= c + 1,
        "candidate smaller than c+1"
    );
    let n = instance.len();
    let radius = candidate.cost / ((2 * c) as f64);
    let mut counts = vec![0usize; n];
    for (p, slot) in counts.iter_mut().enumerate() {
        *slot = candidate
            .subset
            .iter()
            .filter(|&&q| q != p)
            .filter(|&&q| {
                let d = instance.distance(p, q);
                match containment {
                    Containment::Proper => d < radius,
                    Containment::Weak => d <= radius,
                }
            })
            .count();
    }
    let violations = (0..n).filter(|&p| counts[p] > c).collect();
    BallReport {
        radius,
        contains_counts: counts.clone(),
        covered_counts: counts,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binomial;
    use crate::error::Error;
    use crate::greedy::greedy_solve;

    fn line_instance() -> MetricInstance {
        MetricInstance::from_points(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0), (7.0, 0.0)]).unwrap()
    }

    fn k3_image() -> MetricInstance {
        MetricInstance::from_matrix(&[
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap()
    }

    fn pseudo_random_points(n: usize, salt: f64) -> MetricInstance {
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let a = i as f64 + salt;
                ((a * 1.37 + a * a * 0.21) % 4.1, (a * 2.23) % 3.3)
            })
            .collect();
        MetricInstance::from_points(&pts).unwrap()
    }

    #[test]
    fn exact_on_line_k3() {
        let sol = exact_solve(&line_instance(), SolveParams::new(1, 3), 1_000).unwrap();
        assert_eq!(sol.subset, vec![0, 2, 3]);
        assert_eq!(sol.cost, 3.0);
    }

    #[test]
    fn exact_full_set() {
        let inst = line_instance();
        let sol = exact_solve(&inst, SolveParams::new(1, 4), 1_000).unwrap();
        assert_eq!(sol.subset, vec![0, 1, 2, 3]);
        let expect = cost_set(&inst, &[0, 1, 2, 3], 1).unwrap().min_value;
        assert_eq!(sol.cost.to_bits(), expect.to_bits());
    }

    #[test]
    fn exact_on_complete_graph_image() {
        let sol = exact_solve(&k3_image(), SolveParams::new(1, 2), 1_000).unwrap();
        assert_eq!(sol.cost, 1.0);
        assert_eq!(sol.subset, vec![0, 1]);
    }

    #[test]
    fn budget_surfaces() {
        let err = exact_solve(&line_instance(), SolveParams::new(1, 2), 2).unwrap_err();
        match err {
            Error::BudgetExceeded { required, budget } => {
                assert_eq!(required, 6);
                assert_eq!(budget, 2);
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn enumeration_is_complete() {
        let inst = pseudo_random_points(9, 0.5);
        for k in 2..=5usize {
            let (_, stats) =
                exact_solve_with_stats(&inst, SolveParams::new(1, k), 1_000_000, 1).unwrap();
            assert_eq!(stats.scored as u128, binomial(9, k));
            let (_, par) =
                exact_solve_with_stats(&inst, SolveParams::new(1, k), 1_000_000, 3).unwrap();
            assert_eq!(par.scored, stats.scored);
        }
    }

    #[test]
    fn exact_dominates_greedy_within_factor() {
        for salt in [0.1, 0.7, 1.9, 2.6] {
            let inst = pseudo_random_points(10, salt);
            for (c, k) in [(1usize, 4usize), (2, 5), (3, 6)] {
                let params = SolveParams::new(c, k);
                let exact = exact_solve(&inst, params, 1_000_000).unwrap();
                let (greedy, _) = greedy_solve(&inst, params).unwrap();
                assert!(exact.cost >= greedy.cost);
                assert!(exact.cost <= (2 * c) as f64 * greedy.cost + 1e-9);
            }
        }
    }

    #[test]
    fn ball_report_clean_on_exact_optima() {
        for salt in [0.3, 1.1, 2.4] {
            let inst = pseudo_random_points(9, salt);
            for (c, k) in [(1usize, 4usize), (2, 5), (3, 6)] {
                let sol = exact_solve(&inst, SolveParams::new(c, k), 1_000_000).unwrap();
                let report = ball_check(&inst, &sol, c);
                assert!(report.violations.is_empty(), "violations at c={c} k={k}");
                assert_eq!(report.contains_counts, report.covered_counts);
            }
        }
    }

    #[test]
    fn two_point_report_all_zero() {
        let inst = MetricInstance::from_points(&[(0.0, 0.0), (3.0, 4.0)]).unwrap();
        let sol = exact_solve(&inst, SolveParams::new(1, 2), 10).unwrap();
        let report = ball_check(&inst, &sol, 1);
        assert_eq!(report.radius, 2.5);
        assert_eq!(report.contains_counts, vec![0, 0]);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn weak_containment_counts_dominate_strict() {
        let inst = pseudo_random_points(8, 1.4);
        let sol = exact_solve(&inst, SolveParams::new(2, 5), 1_000_000).unwrap();
        let strict = ball_check(&inst, &sol, 2);
        let weak = ball_check_with(&inst, &sol, 2, Containment::Weak);
        for (s, w) in strict.contains_counts.iter().zip(&weak.contains_counts) {
            assert!(w >= s);
        }
    }

    #[test]
    fn suboptimal_candidate_report_is_consistent() {
        // negative control: the worst subset's report must still be
        // internally consistent; emptiness of violations is not expected
        let inst = pseudo_random_points(9, 0.9);
        let c = 2;
        let mut worst: Option<(Vec<usize>, f64)> = None;
        crate::combin::for_each_k_subset(inst.len(), 5, |s| {
            let v = cost_set(&inst, s, c).unwrap().min_value;
            match &worst {
                Some((_, wc)) if v >= *wc => {}
                _ => worst = Some((s.to_vec(), v)),
            }
            true
        });
        let (subset, _) = worst.unwrap();
        let profile = cost_set(&inst, &subset, c).unwrap();
        let candidate = Solution::from_profile(profile);
        let report = ball_check(&inst, &candidate, c);
        for &p in &report.violations {
            assert!(report.contains_counts[p] > c);
        }
        for (p, &count) in report.contains_counts.iter().enumerate() {
            assert_eq!(count > c, report.violations.contains(&p));
        }
    }
}
