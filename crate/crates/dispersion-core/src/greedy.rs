//! Greedy solver: exhaustive best (c+1)-element seed, then one point at a
//! time, each chosen to maximize the resulting subset cost.
//!
//! The extension loop keeps, for every selected point, its c smallest
//! distances within the current selection (sorted ascending, with their
//! ascending sum). Scoring a candidate then costs O(c) per selected point
//! instead of a fresh full evaluation. The merged sums are accumulated in
//! the same ascending order as the shared cost path, so the incremental
//! values are bit-identical to recomputation; the final cost is re-checked
//! against a fresh evaluation and the solver panics on any drift.

use std::time::{Duration, Instant};

use crate::cost::{check_subset, cost_set, nearest_c_head, nearest_c_sum, Solution};
use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::search::best_subset;

/// Cap on C(n, c+1) seed evaluations before refusing to run.
pub const DEFAULT_SEED_BUDGET: u64 = 1_000_000_000;

/// Tie handling among equally good candidates. Only one rule exists today;
/// the field is kept so solver parameters can grow without breaking callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieRule {
    /// Prefer the lowest point index (lexicographically smallest subset).
    #[default]
    LowestIndex,
}

/// Solver parameters: neighbor count `c` and target size `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveParams {
    pub c: usize,
    pub k: usize,
    pub tie_rule: TieRule,
}

impl SolveParams {
    pub fn new(c: usize, k: usize) -> Self {
        Self {
            c,
            k,
            tie_rule: TieRule::LowestIndex,
        }
    }

    /// Checks `1 <= c` and `c+1 <= k <= n` against a concrete instance.
    pub fn validate_for(&self, instance: &MetricInstance) -> Result<()> {
        if self.c < 1 {
            return Err(Error::InvalidParams("c must be at least 1".into()));
        }
        if self.k < self.c + 1 {
            return Err(Error::InvalidParams(format!(
                "k must be at least c+1 (k={}, c={})",
                self.k, self.c
            )));
        }
        if self.k > instance.len() {
            return Err(Error::InvalidParams(format!(
                "k={} exceeds instance size n={}",
                self.k,
                instance.len()
            )));
        }
        Ok(())
    }
}

/// One extension step: the point added and the subset cost after adding it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreedyStep {
    pub added: usize,
    pub cost: f64,
}

/// The solver's trajectory: seed, then one step per added point.
/// Step costs never increase (adding points cannot raise the minimum).
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyTrace {
    pub seed: Vec<usize>,
    pub seed_cost: f64,
    pub steps: Vec<GreedyStep>,
}

/// Wall-clock split between the two solver phases.
#[derive(Debug, Clone, Copy)]
pub struct GreedyTiming {
    pub seed: Duration,
    pub extensions: Duration,
}

/// Exhaustively scores every (c+1)-subset and returns the best, ties to the
/// lexicographically smallest. This step is exact for k = c+1.
pub fn seed_enumeration(instance: &MetricInstance, c: usize) -> Result<(Vec<usize>, f64)> {
    seed_enumeration_with(instance, c, DEFAULT_SEED_BUDGET, 1)
}

/// [`seed_enumeration`] with an explicit evaluation budget and worker count.
/// The result is identical for any worker count.
pub fn seed_enumeration_with(
    instance: &MetricInstance,
    c: usize,
    budget: u64,
    threads: usize,
) -> Result<(Vec<usize>, f64)> {
    if c < 1 {
        return Err(Error::InvalidParams("c must be at least 1".into()));
    }
    let n = instance.len();
    if n < c + 1 {
        return Err(Error::InstanceTooSmall { n, need: c + 1 });
    }
    let (subset, cost, _) = best_subset(instance, c + 1, c, budget, threads)?;
    Ok((subset, cost))
}

/// Per-selection solver state enabling O(c) candidate scoring.
struct IncrementalState<'a> {
    instance: &'a MetricInstance,
    c: usize,
    members: Vec<usize>,
    in_set: Vec<bool>,
    /// For each selected point: its c smallest distances within the
    /// selection, ascending, and their ascending sum. None outside the set.
    heads: Vec<Option<(Vec<f64>, f64)>>,
    scratch: Vec<f64>,
}

impl<'a> IncrementalState<'a> {
    /// `seed` must be sorted, distinct, of size >= c+1.
    fn new(instance: &'a MetricInstance, seed: &[usize], c: usize) -> Self {
        let n = instance.len();
        let mut in_set = vec![false; n];
        let mut heads = vec![None; n];
        for &p in seed {
            in_set[p] = true;
        }
        let mut scratch = Vec::with_capacity(n);
        for &p in seed {
            scratch.clear();
            scratch.extend(
                seed.iter()
                    .filter(|&&q| q != p)
                    .map(|&q| instance.distance(p, q)),
            );
            heads[p] = Some(nearest_c_head(&mut scratch, c));
        }
        Self {
            instance,
            c,
            members: seed.to_vec(),
            in_set,
            heads,
            scratch,
        }
    }

    /// Current subset cost: minimum of the members' head sums.
    fn current_cost(&self) -> f64 {
        let mut min = f64::INFINITY;
        for &p in &self.members {
            let sum = self.heads[p].as_ref().unwrap().1;
            if sum < min {
                min = sum;
            }
        }
        min
    }

    /// Sum of the c smallest of `head ∪ {d}`, accumulated ascending.
    /// `head` is ascending of length c; only called when `d < head[c-1]`.
    fn merged_sum(&self, head: &[f64], d: f64) -> f64 {
        let c = self.c;
        let mut acc = 0.0;
        let mut taken = 0;
        let mut d_pending = true;
        for &h in head {
            if taken == c {
                break;
            }
            if d_pending && d < h {
                acc += d;
                d_pending = false;
                taken += 1;
                if taken == c {
                    break;
                }
            }
            acc += h;
            taken += 1;
        }
        if taken < c {
            debug_assert!(d_pending && taken + 1 == c);
            acc += d;
        }
        acc
    }

    /// Cost of the selection extended by candidate `q`.
    fn candidate_cost(&mut self, q: usize) -> f64 {
        self.scratch.clear();
        for &p in &self.members {
            self.scratch.push(self.instance.distance(q, p));
        }
        let own = nearest_c_sum(&mut self.scratch, self.c);
        let mut min = own;
        for &p in &self.members {
            let (head, sum) = self.heads[p].as_ref().unwrap();
            let d = self.instance.distance(p, q);
            let updated = if d < head[self.c - 1] {
                self.merged_sum(head, d)
            } else {
                *sum
            };
            if updated < min {
                min = updated;
            }
        }
        min
    }

    /// Scores every point outside the selection; returns the maximizer and
    /// its cost, lowest index on exact ties.
    fn best_candidate(&mut self) -> Result<(usize, f64)> {
        let n = self.instance.len();
        if self.members.len() == n {
            return Err(Error::NothingToAdd);
        }
        let mut best: Option<(usize, f64)> = None;
        for q in 0..n {
            if self.in_set[q] {
                continue;
            }
            let cost = self.candidate_cost(q);
            match best {
                Some((_, bc)) if cost <= bc => {}
                _ => best = Some((q, cost)),
            }
        }
        Ok(best.unwrap())
    }

    /// Commits candidate `q` into the selection.
    fn add(&mut self, q: usize) {
        debug_assert!(!self.in_set[q]);
        let c = self.c;
        for &p in &self.members {
            let d = self.instance.distance(p, q);
            let (head, sum) = self.heads[p].as_mut().unwrap();
            if d < head[c - 1] {
                let pos = head.partition_point(|&h| h < d);
                head.insert(pos, d);
                head.truncate(c);
                *sum = head.iter().sum();
            }
        }
        self.scratch.clear();
        for &p in &self.members {
            self.scratch.push(self.instance.distance(q, p));
        }
        let own = nearest_c_head(&mut self.scratch, c);
        self.heads[q] = Some(own);
        self.in_set[q] = true;
        let pos = self.members.partition_point(|&p| p < q);
        self.members.insert(pos, q);
    }
}

/// Scores `cost(S ∪ {p})` for every point `p` outside `s` and returns the
/// maximizing point with the new cost; lowest index on exact ties.
pub fn best_extension(instance: &MetricInstance, s: &[usize], c: usize) -> Result<(usize, f64)> {
    let sorted = check_subset(instance, s, c)?;
    if sorted.len() == instance.len() {
        return Err(Error::NothingToAdd);
    }
    let mut state = IncrementalState::new(instance, &sorted, c);
    state.best_candidate()
}

/// Runs the full solver: seed, then k−(c+1) extensions.
pub fn greedy_solve(instance: &MetricInstance, params: SolveParams) -> Result<(Solution, GreedyTrace)> {
    let (solution, trace, _) =
        greedy_solve_timed(instance, params, DEFAULT_SEED_BUDGET, 1)?;
    Ok((solution, trace))
}

/// [`greedy_solve`] with an explicit seed budget and worker count. Workers
/// only affect the seed scan; the result is identical for any count.
pub fn greedy_solve_with(
    instance: &MetricInstance,
    params: SolveParams,
    budget: u64,
    threads: usize,
) -> Result<(Solution, GreedyTrace)> {
    let (solution, trace, _) = greedy_solve_timed(instance, params, budget, threads)?;
    Ok((solution, trace))
}

/// [`greedy_solve_with`], also reporting the wall-clock split between the
/// seed scan and the extension loop.
pub fn greedy_solve_timed(
    instance: &MetricInstance,
    params: SolveParams,
    budget: u64,
    threads: usize,
) -> Result<(Solution, GreedyTrace, GreedyTiming)> {
    params.validate_for(instance)?;
    let SolveParams { c, k, .. } = params;

    let seed_start = Instant::now();
    let (seed, seed_cost) = seed_enumeration_with(instance, c, budget, threads)?;
    let seed_elapsed = seed_start.elapsed();

    let ext_start = Instant::now();
    let mut state = IncrementalState::new(instance, &seed, c);
    debug_assert_eq!(state.current_cost().to_bits(), seed_cost.to_bits());
    let mut steps = Vec::with_capacity(k - (c + 1));
    let mut last_cost = seed_cost;
    for _ in c + 1..k {
        let (q, cost) = state.best_candidate()?;
        state.add(q);
        steps.push(GreedyStep { added: q, cost });
        last_cost = cost;
    }
    let ext_elapsed = ext_start.elapsed();

    let profile = cost_set(instance, &state.members, c)?;
    assert_eq!(
        profile.min_value.to_bits(),
        last_cost.to_bits(),
        "incremental cost drifted from recomputation"
    );
    let trace = GreedyTrace {
        seed,
        seed_cost,
        steps,
    };
    Ok((
        Solution::from_profile(profile),
        trace,
        GreedyTiming {
            seed: seed_elapsed,
            extensions: ext_elapsed,
        },
    ))
}
