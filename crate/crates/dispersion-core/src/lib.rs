//! Solvers and verification tools for the metric c-dispersion problem:
//! choose k of n points maximizing the minimum, over chosen points, of the
//! sum of distances to the c nearest chosen neighbors.
//!
//! The toolkit has four legs:
//!
//! * a greedy solver (exhaustive best (c+1)-seed, then greedy extensions)
//!   whose cost is never worse than the optimum divided by 2c,
//! * a brute-force exact solver small instances are checked against,
//!   with a ball containment report any true optimum must pass,
//! * a graph embedding tying the problem to independent sets, with
//!   decision procedures on both sides and witness extraction between them,
//! * seeded generators, a ratio-measuring harness, and text formats that
//!   round-trip every float bit for bit.
//!
//! Costs computed anywhere in the crate flow through one evaluation path,
//! so equal inputs give bit-equal outputs across solvers, worker counts,
//! and incremental versus fresh evaluation.

pub mod combin;
pub mod cost;
pub mod error;
pub mod exact;
pub mod generate;
pub mod greedy;
pub mod harness;
pub mod io;
pub mod metric;
pub mod reduction;
pub mod rng;
mod search;

pub use cost::{cost_point, cost_set, CostProfile, Solution};
pub use error::{Error, Result};
pub use exact::{
    ball_check, ball_check_with, exact_solve, exact_solve_with_stats, BallReport, Containment,
    EnumerationStats, DEFAULT_EXACT_BUDGET,
};
pub use generate::{
    gen_euclidean, gen_graph_reduction, gen_random_metric, BoundingBox, GeneratorKind,
    GeneratorSpec,
};
pub use greedy::{
    best_extension, greedy_solve, greedy_solve_timed, greedy_solve_with, seed_enumeration,
    seed_enumeration_with, GreedyStep, GreedyTiming, GreedyTrace, SolveParams, TieRule,
    DEFAULT_SEED_BUDGET,
};
pub use harness::{default_suite, run_ratio_suite, run_suite, ExactOutcome, RatioRecord, SuiteEntry};
pub use metric::{InstanceKind, MetricInstance, MetricValidationReport, TriangleViolation};
pub use reduction::{
    all_graphs, check_reduction_image, dispersion_decision, dispersion_witness, find_reaching,
    graph_to_instance, independent_set_bruteforce, random_graph, solution_to_independent_set,
    Graph,
};
pub use rng::SplitMix64;
