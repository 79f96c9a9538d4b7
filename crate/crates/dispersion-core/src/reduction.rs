//! Graphs, the graph-to-instance embedding, and the machinery to verify it:
//! a brute-force independent-set oracle on one side, a dispersion decision
//! on the other, and the extraction mapping between their witnesses.
//!
//! The embedding sends vertices to points at distance 1 (adjacent) or 2
//! (non-adjacent). On such instances every per-point cost is a sum of c
//! values from {1, 2}, so all costs are small integers and 2c is the
//! largest value possible. The decision "does a k-subset with cost exactly
//! 2c exist" is therefore a threshold search, and equality tests on costs
//! are exact.

use std::collections::BTreeSet;

use crate::combin::{binomial, for_each_k_subset};
use crate::cost::{cost_set, Solution};
use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::rng::SplitMix64;
use crate::search::first_subset_reaching;

/// Simple undirected graph. Edges are stored as ordered pairs (u, v) with
/// u < v; duplicates collapse silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n_vertices < 1 {
            return Err(Error::InvalidParams(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            for w in [u, v] {
                if w >= n_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        n: n_vertices,
                    });
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self {
            n: n_vertices,
            edges: set,
        })
    }

    pub fn empty(n_vertices: usize) -> Self {
        Self::new(n_vertices, &[]).unwrap()
    }

    pub fn complete(n_vertices: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n_vertices {
            for v in u + 1..n_vertices {
                edges.push((u, v));
            }
        }
        Self::new(n_vertices, &edges).unwrap()
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n_vertices: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n_vertices).map(|v| (v - 1, v)).collect();
        Self::new(n_vertices, &edges).unwrap()
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Edges in ascending order, each as (u, v) with u < v.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// True when no two of the given vertices are adjacent.
    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

/// Embeds a graph as a matrix instance: adjacent vertices at distance 1,
/// non-adjacent at distance 2. The image always satisfies the triangle
/// inequality exactly.
pub fn graph_to_instance(g: &Graph) -> Result<MetricInstance> {
    let n = g.n_vertices();
    if n < 2 {
        return Err(Error::GraphTooSmall { n });
    }
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0.0
                    } else if g.has_edge(i, j) {
                        1.0
                    } else {
                        2.0
                    }
                })
                .collect()
        })
        .collect();
    MetricInstance::from_matrix(&rows)
}

/// Exhaustively looks for an independent set of size k; returns the
/// lexicographically smallest witness, or None.
pub fn independent_set_bruteforce(
    g: &Graph,
    k: usize,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    let n = g.n_vertices();
    if k < 1 || k > n {
        return Err(Error::InvalidParams(format!(
            "independent-set size k={k} must be in [1, {n}]"
        )));
    }
    let required = binomial(n, k);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget,
        });
    }
    let mut witness = None;
    for_each_k_subset(n, k, |s| {
        if g.is_independent(s) {
            witness = Some(s.to_vec());
            false
        } else {
            true
        }
    });
    Ok(witness)
}

/// Verifies every off-diagonal distance is exactly 1 or 2.
pub fn check_reduction_image(instance: &MetricInstance) -> Result<()> {
    let n = instance.len();
    for i in 0..n {
        for j in i + 1..n {
            let d = instance.distance(i, j);
            if d != 1.0 && d != 2.0 {
                return Err(Error::NotReductionImage {
                    row: i,
                    col: j,
                    value: d,
                });
            }
        }
    }
    Ok(())
}

/// Decides whether some k-subset of a graph-image instance reaches cost
/// exactly 2c. Equality with the exact optimum is implied: 2c is the
/// maximum cost any subset can attain when all distances are at most 2.
pub fn dispersion_decision(
    instance: &MetricInstance,
    c: usize,
    k: usize,
    budget: u64,
) -> Result<bool> {
    dispersion_witness(instance, c, k, budget).map(|w| w.is_some())
}

/// Like [`dispersion_decision`] but hands back the lexicographically first
/// subset attaining cost 2c, fully evaluated.
pub fn dispersion_witness(
    instance: &MetricInstance,
    c: usize,
    k: usize,
    budget: u64,
) -> Result<Option<Solution>> {
    check_reduction_image(instance)?;
    crate::greedy::SolveParams::new(c, k).validate_for(instance)?;
    let target = (2 * c) as f64;
    let hit = first_subset_reaching(instance, k, c, target, budget, 1)?;
    match hit {
        None => Ok(None),
        Some(subset) => {
            let profile = cost_set(instance, &subset, c)?;
            assert_eq!(profile.min_value, target, "threshold hit below target");
            Ok(Some(Solution::from_profile(profile)))
        }
    }
}

/// General threshold probe: lexicographically first k-subset with cost at
/// least `bound`, on any instance. Plumbing only; nothing beyond the search
/// itself is claimed about the result.
pub fn find_reaching(
    instance: &MetricInstance,
    c: usize,
    k: usize,
    bound: f64,
    budget: u64,
    threads: usize,
) -> Result<Option<Solution>> {
    crate::greedy::SolveParams::new(c, k).validate_for(instance)?;
    let hit = first_subset_reaching(instance, k, c, bound, budget, threads)?;
    match hit {
        None => Ok(None),
        Some(subset) => {
            let profile = cost_set(instance, &subset, c)?;
            Ok(Some(Solution::from_profile(profile)))
        }
    }
}

/// Reads a vertex set off a cost-2c solution of a graph image. The mapping
/// is index-preserving; independence of the result follows from the cost
/// being exactly 2c (all pairwise distances must be 2).
pub fn solution_to_independent_set(sol: &Solution) -> Result<Vec<usize>> {
    let expected = (2 * sol.profile.c) as f64;
    if sol.cost != expected {
        return Err(Error::CostNot2c {
            cost: sol.cost,
            expected,
        });
    }
    Ok(sol.subset.clone())
}

/// Every graph on `n` vertices, one per subset of the C(n,2) possible
/// edges. Pair count grows as 2^C(n,2); intended for n <= 5.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    let m = pairs.len();
    assert!(m < 64, "edge mask does not fit in u64");
    (0u64..(1u64 << m))
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
        .collect()
}

/// Seeded random graph: each pair (u, v), u < v in ascending order, becomes
/// an edge with probability `edge_prob`.
pub fn random_graph(n: usize, edge_prob: f64, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < edge_prob {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_construction_and_validation() {
        let g = Graph::new(4, &[(0, 1), (1, 0), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert!(matches!(
            Graph::new(3, &[(1, 1)]),
            Err(Error::SelfLoop { vertex: 1 })
        ));
        assert!(matches!(
            Graph::new(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn path_image_distances() {
        let inst = graph_to_instance(&Graph::path(3)).unwrap();
        assert_eq!(inst.distance(0, 1), 1.0);
        assert_eq!(inst.distance(1, 2), 1.0);
        assert_eq!(inst.distance(0, 2), 2.0);
        assert!(inst.validate_metric(0.0).is_metric());
    }

    #[test]
    fn complete_and_empty_images() {
        let k3 = graph_to_instance(&Graph::complete(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 0.0 } else { 1.0 };
                assert_eq!(k3.distance(i, j), want);
            }
        }
        let e3 = graph_to_instance(&Graph::empty(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 0.0 } else { 2.0 };
                assert_eq!(e3.distance(i, j), want);
            }
        }
    }

    #[test]
    fn tiny_graph_rejected() {
        assert!(matches!(
            graph_to_instance(&Graph::empty(1)),
            Err(Error::GraphTooSmall { n: 1 })
        ));
    }

    #[test]
    fn independent_set_oracle() {
        assert_eq!(
            independent_set_bruteforce(&Graph::complete(3), 2, 1_000).unwrap(),
            None
        );
        assert_eq!(
            independent_set_bruteforce(&Graph::path(3), 2, 1_000).unwrap(),
            Some(vec![0, 2])
        );
        assert_eq!(
            independent_set_bruteforce(&Graph::empty(5), 5, 1_000).unwrap(),
            Some(vec![0, 1, 2, 3, 4])
        );
    }

    #[test]
    fn decision_examples() {
        let k3 = graph_to_instance(&Graph::complete(3)).unwrap();
        assert!(!dispersion_decision(&k3, 1, 2, 1_000).unwrap());
        let p3 = graph_to_instance(&Graph::path(3)).unwrap();
        assert!(dispersion_decision(&p3, 1, 2, 1_000).unwrap());
        let e3 = graph_to_instance(&Graph::empty(3)).unwrap();
        assert!(dispersion_decision(&e3, 2, 3, 1_000).unwrap());
    }

    #[test]
    fn non_image_rejected() {
        let line =
            MetricInstance::from_points(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]).unwrap();
        assert!(matches!(
            dispersion_decision(&line, 1, 2, 1_000),
            Err(Error::NotReductionImage { .. })
        ));
    }

    #[test]
    fn witness_round_trip() {
        let p3 = graph_to_instance(&Graph::path(3)).unwrap();
        let sol = dispersion_witness(&p3, 1, 2, 1_000).unwrap().unwrap();
        assert_eq!(sol.cost, 2.0);
        let vs = solution_to_independent_set(&sol).unwrap();
        assert_eq!(vs, vec![0, 2]);
        assert!(Graph::path(3).is_independent(&vs));
    }

    #[test]
    fn extraction_requires_exact_cost() {
        let k3 = graphs_to_exact_solution(&Graph::complete(3));
        match solution_to_independent_set(&k3).unwrap_err() {
            Error::CostNot2c { cost, expected } => {
                assert_eq!(cost, 1.0);
                assert_eq!(expected, 2.0);
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    fn graphs_to_exact_solution(g: &Graph) -> Solution {
        let inst = graph_to_instance(g).unwrap();
        crate::exact::exact_solve(&inst, crate::greedy::SolveParams::new(1, 2), 1_000).unwrap()
    }

    #[test]
    fn witness_costs_all_exactly_2c() {
        for seed in 0..20u64 {
            let g = random_graph(6, 0.5, seed);
            let inst = graph_to_instance(&g).unwrap();
            for c in 1..=2usize {
                for k in c + 1..=6 {
                    if let Some(sol) = dispersion_witness(&inst, c, k, 1_000_000).unwrap() {
                        let target = (2 * c) as f64;
                        for &(_, v) in &sol.profile.per_point {
                            assert_eq!(v, target);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn round_trip_all_three_vertex_graphs() {
        for g in all_graphs(3) {
            let inst = graph_to_instance(&g).unwrap();
            for k in 2..=3usize {
                let is = independent_set_bruteforce(&g, k, 1_000).unwrap().is_some();
                let disp = dispersion_decision(&inst, 1, k, 1_000).unwrap();
                assert_eq!(is, disp, "graph {:?} k={k}", g.edges().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn graph_family_counts() {
        assert_eq!(all_graphs(2).len(), 2);
        assert_eq!(all_graphs(3).len(), 8);
        assert_eq!(all_graphs(4).len(), 64);
    }

    #[test]
    fn random_graph_determinism_and_extremes() {
        let a = random_graph(7, 0.5, 99);
        let b = random_graph(7, 0.5, 99);
        assert_eq!(a, b);
        assert_eq!(random_graph(6, 0.0, 5).edge_count(), 0);
        assert_eq!(random_graph(6, 1.0, 5).edge_count(), 15);
    }
}
