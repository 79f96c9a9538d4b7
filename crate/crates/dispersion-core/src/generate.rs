//! Seeded instance generators. Every generator draws from the fixed
//! splitmix64 recipe in a documented order, so a spec (kind, n, seed,
//! knobs) pins the instance down to the bit.

use std::fmt;

use crate::error::{Error, Result};
use crate::metric::MetricInstance;
use crate::reduction::{graph_to_instance, random_graph};
use crate::rng::SplitMix64;

/// Axis-aligned rectangle for planar generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl BoundingBox {
    pub fn unit() -> Self {
        Self {
            x_min: 0.0,
            y_min: 0.0,
            x_max: 1.0,
            y_max: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let coords = [self.x_min, self.y_min, self.x_max, self.y_max];
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("bounding box must be finite".into()));
        }
        if self.x_max < self.x_min || self.y_max < self.y_min {
            return Err(Error::InvalidParams("bounding box is inverted".into()));
        }
        Ok(())
    }
}

/// Uniform points in a box. Per point, x is drawn before y.
pub fn gen_euclidean(n: usize, seed: u64, bounds: BoundingBox) -> Result<MetricInstance> {
    bounds.validate()?;
    if n < 2 {
        return Err(Error::TooFewPoints { got: n });
    }
    let mut rng = SplitMix64::new(seed);
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let x = bounds.x_min + rng.next_f64() * (bounds.x_max - bounds.x_min);
            let y = bounds.y_min + rng.next_f64() * (bounds.y_max - bounds.y_min);
            (x, y)
        })
        .collect();
    MetricInstance::from_points(&pts)
}

/// Random symmetric matrix with entries in [1, 10), repaired into a metric
/// by shortest-path closure. Entries are drawn for pairs (i, j), i < j, in
/// row-major order. The closure preserves symmetry exactly (both triangle
/// sides compute the same sum) and keeps every entry at least 1, so the
/// result validates at a tiny relative tolerance.
pub fn gen_random_metric(n: usize, seed: u64) -> Result<MetricInstance> {
    if n < 2 {
        return Err(Error::TooFewPoints { got: n });
    }
    let mut rng = SplitMix64::new(seed);
    let mut m = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = 1.0 + 9.0 * rng.next_f64();
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = m[i][l] + m[l][j];
                if via < m[i][j] {
                    m[i][j] = via;
                }
            }
        }
    }
    MetricInstance::from_matrix(&m)
}

/// Random graph image: seeded graph, embedded at distances {1, 2}.
pub fn gen_graph_reduction(n: usize, seed: u64, edge_prob: f64) -> Result<MetricInstance> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidParams(format!(
            "edge probability {edge_prob} outside [0, 1]"
        )));
    }
    if n < 2 {
        return Err(Error::GraphTooSmall { n });
    }
    graph_to_instance(&random_graph(n, edge_prob, seed))
}

/// Generator family and its knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorKind {
    EuclideanUniform { bounds: BoundingBox },
    RandomMetric,
    GraphReduction { edge_prob: f64 },
}

/// Complete recipe for one instance. Equal specs produce byte-identical
/// instances after serialization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn euclidean_unit(n: usize, seed: u64) -> Self {
        Self {
            kind: GeneratorKind::EuclideanUniform {
                bounds: BoundingBox::unit(),
            },
            n,
            seed,
        }
    }

    pub fn random_metric(n: usize, seed: u64) -> Self {
        Self {
            kind: GeneratorKind::RandomMetric,
            n,
            seed,
        }
    }

    pub fn graph_reduction(n: usize, seed: u64, edge_prob: f64) -> Self {
        Self {
            kind: GeneratorKind::GraphReduction { edge_prob },
            n,
            seed,
        }
    }

    pub fn build(&self) -> Result<MetricInstance> {
        match self.kind {
            GeneratorKind::EuclideanUniform { bounds } => gen_euclidean(self.n, self.seed, bounds),
            GeneratorKind::RandomMetric => gen_random_metric(self.n, self.seed),
            GeneratorKind::GraphReduction { edge_prob } => {
                gen_graph_reduction(self.n, self.seed, edge_prob)
            }
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::EuclideanUniform { bounds } => {
                if bounds == BoundingBox::unit() {
                    write!(f, "euclidean_uniform")
                } else {
                    write!(
                        f,
                        "euclidean_uniform(box={},{},{},{})",
                        bounds.x_min, bounds.y_min, bounds.x_max, bounds.y_max
                    )
                }
            }
            GeneratorKind::RandomMetric => write!(f, "random_metric"),
            GeneratorKind::GraphReduction { edge_prob } => {
                write!(f, "graph_reduction(p={edge_prob})")
            }
        }
    }
}
