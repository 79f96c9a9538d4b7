//! Ratio suite: runs both solvers over seeded instances and ledgers the
//! exact/greedy cost ratios, which must never exceed 2c.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::exact_solve;
use crate::generate::GeneratorSpec;
use crate::greedy::{greedy_solve, SolveParams};

/// One suite item: an instance recipe with solver parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteEntry {
    pub spec: GeneratorSpec,
    pub c: usize,
    pub k: usize,
}

/// Outcome of the exact side of one record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExactOutcome {
    Solved { cost: f64, ratio: f64, ms: f64 },
    BudgetExceeded { required: u128 },
}

/// One measured comparison of the two solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRecord {
    pub spec: GeneratorSpec,
    pub n: usize,
    pub c: usize,
    pub k: usize,
    pub greedy_cost: f64,
    pub greedy_ms: f64,
    pub exact: ExactOutcome,
}

/// The fixed 200-entry suite: c cycles through {1, 2, 3}, n sweeps
/// [c+2, 12], k sweeps [c+1, min(6, n)], kinds alternate between uniform
/// planar points and closed random metrics, and every entry gets its own
/// seed. Every c value hits k = c+1 within the first few entries.
pub fn default_suite() -> Vec<SuiteEntry> {
    (0..200usize)
        .map(|i| {
            let c = 1 + i % 3;
            let n_lo = c + 2;
            let n = n_lo + (i / 3) % (12 - n_lo + 1);
            let k_hi = n.min(6);
            let k = (c + 1) + (i / 7) % (k_hi - c);
            let seed = 1000 + i as u64;
            let spec = if i % 2 == 0 {
                GeneratorSpec::euclidean_unit(n, seed)
            } else {
                GeneratorSpec::random_metric(n, seed)
            };
            SuiteEntry { spec, c, k }
        })
        .collect()
}

fn run_entry(entry: &SuiteEntry, budget: u64) -> Result<RatioRecord> {
    let inst = entry.spec.build()?;
    let params = SolveParams::new(entry.c, entry.k);

    let t0 = Instant::now();
    let (greedy_sol, _) = greedy_solve(&inst, params)?;
    let greedy_ms = t0.elapsed().as_secs_f64() * 1e3;

    let t1 = Instant::now();
    let exact = match exact_solve(&inst, params, budget) {
        Ok(sol) => {
            let ms = t1.elapsed().as_secs_f64() * 1e3;
            let ratio = if greedy_sol.cost > 0.0 {
                sol.cost / greedy_sol.cost
            } else if sol.cost == 0.0 {
                1.0
            } else {
                f64::INFINITY
            };
            let bound = (2 * entry.c) as f64 + 1e-9;
            if ratio > bound {
                return Err(Error::ApproximationBoundViolated {
                    generator: entry.spec.to_string(),
                    c: entry.c,
                    k: entry.k,
                    ratio,
                    bound,
                });
            }
            ExactOutcome::Solved {
                cost: sol.cost,
                ratio,
                ms,
            }
        }
        Err(Error::BudgetExceeded { required, .. }) => ExactOutcome::BudgetExceeded { required },
        Err(e) => return Err(e),
    };

    Ok(RatioRecord {
        spec: entry.spec,
        n: inst.len(),
        c: entry.c,
        k: entry.k,
        greedy_cost: greedy_sol.cost,
        greedy_ms,
        exact,
    })
}

/// Runs every entry and returns records in input order, regardless of
/// worker count. An exact-side budget overflow is recorded in the entry's
/// record; a ratio above 2c + 1e-9 aborts the whole run with an error.
pub fn run_suite(entries: &[SuiteEntry], budget: u64, threads: usize) -> Result<Vec<RatioRecord>> {
    if threads <= 1 {
        entries.iter().map(|e| run_entry(e, budget)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParams(format!("cannot build thread pool: {e}")))?;
        pool.install(|| {
            entries
                .par_iter()
                .map(|e| run_entry(e, budget))
                .collect::<Result<Vec<_>>>()
        })
    }
}

/// Cross product runner: every spec against every (c, k) pair, skipping
/// infeasible combinations (k outside [c+1, n]).
pub fn run_ratio_suite(
    specs: &[GeneratorSpec],
    c_list: &[usize],
    k_list: &[usize],
    budget: u64,
    threads: usize,
) -> Result<Vec<RatioRecord>> {
    let mut entries = Vec::new();
    for &spec in specs {
        for &c in c_list {
            for &k in k_list {
                if c >= 1 && k >= c + 1 && k <= spec.n {
                    entries.push(SuiteEntry { spec, c, k });
                }
            }
        }
    }
    run_suite(&entries, budget, threads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binomial;

    #[test]
    fn suite_shape() {
        let suite = default_suite();
        assert_eq!(suite.len(), 200);
        let mut anchor_cs = [false; 4];
        let mut kinds = (false, false);
        for e in &suite {
            assert!((1..=3).contains(&e.c));
            assert!(e.spec.n >= e.c + 2 && e.spec.n <= 12);
            assert!(e.k >= e.c + 1 && e.k <= e.spec.n.min(6));
            if e.k == e.c + 1 {
                anchor_cs[e.c] = true;
            }
            match e.spec.kind {
                crate::generate::GeneratorKind::EuclideanUniform { .. } => kinds.0 = true,
                crate::generate::GeneratorKind::RandomMetric => kinds.1 = true,
                _ => panic!("unexpected kind in default suite"),
            }
        }
        assert!(anchor_cs[1] && anchor_cs[2] && anchor_cs[3]);
        assert!(kinds.0 && kinds.1);
        assert_eq!(default_suite(), suite);
    }

    #[test]
    fn records_ordered_and_bounded() {
        let suite = default_suite();
        let records = run_suite(&suite[..9], 1_000_000, 1).unwrap();
        assert_eq!(records.len(), 9);
        for (r, e) in records.iter().zip(&suite[..9]) {
            assert_eq!(r.c, e.c);
            assert_eq!(r.k, e.k);
            assert_eq!(r.n, e.spec.n);
            match r.exact {
                ExactOutcome::Solved { cost, ratio, .. } => {
                    assert!(cost >= r.greedy_cost);
                    assert!(ratio >= 1.0);
                    assert!(ratio <= (2 * r.c) as f64 + 1e-9);
                    if r.k == r.c + 1 {
                        assert_eq!(cost.to_bits(), r.greedy_cost.to_bits());
                    }
                }
                ExactOutcome::BudgetExceeded { .. } => panic!("budget ample here"),
            }
        }
    }

    #[test]
    fn parallel_records_match_sequential() {
        let suite = default_suite();
        let seq = run_suite(&suite[..6], 1_000_000, 1).unwrap();
        let par = run_suite(&suite[..6], 1_000_000, 4).unwrap();
        assert_eq!(seq.len(), par.len());
        for (a, b) in seq.iter().zip(&par) {
            assert_eq!(a.greedy_cost.to_bits(), b.greedy_cost.to_bits());
            match (&a.exact, &b.exact) {
                (
                    ExactOutcome::Solved { cost: ca, ratio: ra, .. },
                    ExactOutcome::Solved { cost: cb, ratio: rb, .. },
                ) => {
                    assert_eq!(ca.to_bits(), cb.to_bits());
                    assert_eq!(ra.to_bits(), rb.to_bits());
                }
                _ => panic!("outcome kinds diverged"),
            }
        }
    }

    #[test]
    fn complete_graph_ratio_is_one() {
        let entry = SuiteEntry {
            spec: GeneratorSpec::graph_reduction(3, 1, 1.0),
            c: 1,
            k: 2,
        };
        let records = run_suite(&[entry], 1_000, 1).unwrap();
        match records[0].exact {
            ExactOutcome::Solved { ratio, .. } => assert_eq!(ratio, 1.0),
            _ => panic!("expected solve"),
        }
    }

    #[test]
    fn budget_overflow_recorded_not_fatal() {
        let entries = [
            SuiteEntry {
                spec: GeneratorSpec::euclidean_unit(12, 3),
                c: 1,
                k: 6,
            },
            SuiteEntry {
                spec: GeneratorSpec::euclidean_unit(5, 4),
                c: 1,
                k: 2,
            },
        ];
        let records = run_suite(&entries, 100, 1).unwrap();
        match records[0].exact {
            ExactOutcome::BudgetExceeded { required } => {
                assert_eq!(required, binomial(12, 6));
            }
            _ => panic!("expected overflow"),
        }
        assert!(matches!(records[1].exact, ExactOutcome::Solved { .. }));
    }

    #[test]
    fn cross_product_skips_infeasible() {
        let specs = [
            GeneratorSpec::euclidean_unit(4, 1),
            GeneratorSpec::euclidean_unit(6, 2),
        ];
        let records = run_ratio_suite(&specs, &[1, 2], &[2, 3, 5], 1_000_000, 1).unwrap();
        // n=4: (1,2) (1,3) (2,3); n=6: (1,2) (1,3) (1,5) (2,3) (2,5)
        assert_eq!(records.len(), 8);
    }
}
