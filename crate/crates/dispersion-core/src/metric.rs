//! Finite metric instances: construction, access, and axiom validation.

use crate::error::{Error, Result};

/// How the instance was constructed; decides the on-disk representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// Explicit symmetric distance matrix.
    Matrix,
    /// Planar points under Euclidean distance.
    Points2d,
}

/// A finite set of points with pairwise distances.
///
/// Distances are stored densely (row-major n x n) and are exactly symmetric.
/// Instances are immutable after construction and safe to share across
/// threads.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricInstance {
    n: usize,
    kind: InstanceKind,
    dist: Vec<f64>,
    points: Option<Vec<[f64; 2]>>,
    labels: Option<Vec<String>>,
}

impl MetricInstance {
    /// Builds an instance from an explicit n x n distance matrix.
    ///
    /// Asymmetric input is rejected rather than repaired; the first offending
    /// pair (scanning rows in order) is reported.
    pub fn from_matrix(matrix: &[Vec<f64>]) -> Result<Self> {
        let n = matrix.len();
        if n < 2 {
            return Err(Error::TooFewPoints { got: n });
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquare {
                    row: i,
                    found: row.len(),
                    expected: n,
                });
            }
        }
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let v = matrix[i][j];
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
                if v < 0.0 {
                    return Err(Error::NegativeEntry {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                if i == j && v != 0.0 {
                    return Err(Error::NonzeroDiagonal { index: i, value: v });
                }
                // +0.0 normalizes a parsed -0.0
                dist[i * n + j] = v + 0.0;
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if dist[i * n + j] != dist[j * n + i] {
                    return Err(Error::AsymmetricEntry { row: i, col: j });
                }
            }
        }
        Ok(Self {
            n,
            kind: InstanceKind::Matrix,
            dist,
            points: None,
            labels: None,
        })
    }

    /// Builds an instance from planar points under Euclidean distance.
    ///
    /// Duplicate points are permitted; they simply produce zero distances.
    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        let n = points.len();
        if n < 2 {
            return Err(Error::TooFewPoints { got: n });
        }
        for (i, &(x, y)) in points.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::NonFiniteCoordinate { index: i });
            }
        }
        let coords: Vec<[f64; 2]> = points.iter().map(|&(x, y)| [x, y]).collect();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let dx = coords[i][0] - coords[j][0];
                let dy = coords[i][1] - coords[j][1];
                let d = (dx * dx + dy * dy).sqrt();
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(Self {
            n,
            kind: InstanceKind::Points2d,
            dist,
            points: Some(coords),
            labels: None,
        })
    }

    /// Attaches display names to the points. Labels are an in-memory
    /// convenience; the text format does not carry them.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidParams(format!(
                "expected {} labels, got {}",
                self.n,
                labels.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.n
    }

    /// True when the instance holds no points. Constructors require n >= 2,
    /// so this is always false for constructed instances.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Distance between points `i` and `j`. Panics on out-of-range indices.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "point index out of range");
        self.dist[i * self.n + j]
    }

    pub fn kind(&self) -> InstanceKind {
        self.kind
    }

    /// Planar coordinates, present only for `Points2d` instances.
    pub fn points(&self) -> Option<&[[f64; 2]]> {
        self.points.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Largest pairwise distance.
    pub fn max_distance(&self) -> f64 {
        self.dist.iter().cloned().fold(0.0, f64::max)
    }

    /// Validation tolerance used when none is given: zero for instances whose
    /// distances are all integers, otherwise 1e-9 relative to the largest
    /// distance.
    pub fn default_tolerance(&self) -> f64 {
        let integral = self.dist.iter().all(|d| d.fract() == 0.0);
        if integral {
            0.0
        } else {
            1e-9 * self.max_distance()
        }
    }

    /// Checks the metric axioms, enumerating all ordered triples of distinct
    /// indices. A triple (i, l, j) is a violation when
    /// `d(i,j) - d(i,l) - d(l,j) > tol`.
    pub fn validate_metric(&self, tol: f64) -> MetricValidationReport {
        let n = self.n;
        let mut symmetric = true;
        let mut identity_ok = true;
        let mut positivity_ok = true;
        for i in 0..n {
            if self.dist[i * n + i] != 0.0 {
                identity_ok = false;
            }
            for j in i + 1..n {
                if self.dist[i * n + j] != self.dist[j * n + i] {
                    symmetric = false;
                }
                if self.dist[i * n + j] == 0.0 {
                    positivity_ok = false;
                }
            }
        }
        let mut violations = Vec::new();
        let mut max_gap = f64::NEG_INFINITY;
        for i in 0..n {
            for l in 0..n {
                if l == i {
                    continue;
                }
                for j in 0..n {
                    if j == i || j == l {
                        continue;
                    }
                    let gap = self.dist[i * n + j] - self.dist[i * n + l] - self.dist[l * n + j];
                    if gap > max_gap {
                        max_gap = gap;
                    }
                    if gap > tol {
                        violations.push(TriangleViolation { i, l, j, gap });
                    }
                }
            }
        }
        if !max_gap.is_finite() {
            max_gap = 0.0; // n == 2: no triples to check
        }
        MetricValidationReport {
            symmetric,
            identity_ok,
            positivity_ok,
            triangle_violations: violations,
            max_gap,
        }
    }
}

/// One triangle-inequality violation: `d(i,j) > d(i,l) + d(l,j) + tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleViolation {
    pub i: usize,
    pub l: usize,
    pub j: usize,
    pub gap: f64,
}

/// Outcome of [`MetricInstance::validate_metric`].
#[derive(Debug, Clone, PartialEq)]
pub struct MetricValidationReport {
    pub symmetric: bool,
    pub identity_ok: bool,
    /// False when some pair of distinct points is at distance zero.
    /// Duplicates are permitted by the solvers, so this flag is informational
    /// and does not affect `is_metric`.
    pub positivity_ok: bool,
    pub triangle_violations: Vec<TriangleViolation>,
    /// Largest `d(i,j) - d(i,l) - d(l,j)` over all triples (zero when n = 2).
    pub max_gap: f64,
}

impl MetricValidationReport {
    /// True when the instance passes strict validation.
    pub fn is_metric(&self) -> bool {
        self.symmetric && self.identity_ok && self.triangle_violations.is_empty()
    }
}
