//! Text formats: instances, solutions, graphs, ball reports, ratio
//! reports. All floats are written with 17 significant digits so a
//! write/read cycle reproduces values bit for bit. Lines starting with `#`
//! are comments in the native formats.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::BallReport;
use crate::generate::GeneratorSpec;
use crate::greedy::GreedyTrace;
use crate::harness::{ExactOutcome, RatioRecord};
use crate::metric::{InstanceKind, MetricInstance};
use crate::reduction::Graph;
use crate::cost::Solution;

/// 17 significant digits; parsing the result recovers the value exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_f64(token: &str, line: usize) -> Result<f64> {
    token
        .parse::<f64>()
        .map_err(|_| parse_err(line, format!("bad number `{token}`")))
}

fn parse_usize(token: &str, line: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("bad integer `{token}`")))
}

/// Lines with 1-based numbers, comments and blanks dropped.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn write_instance(instance: &MetricInstance) -> String {
    let n = instance.len();
    let mut out = String::new();
    match instance.kind() {
        InstanceKind::Points2d => {
            writeln!(out, "dispersion-instance v1 points2d {n}").unwrap();
            for &[x, y] in instance.points().unwrap() {
                writeln!(out, "{} {}", fmt_f64(x), fmt_f64(y)).unwrap();
            }
        }
        InstanceKind::Matrix => {
            writeln!(out, "dispersion-instance v1 matrix {n}").unwrap();
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| fmt_f64(instance.distance(i, j))).collect();
                writeln!(out, "{}", row.join(" ")).unwrap();
            }
        }
    }
    out
}

pub fn read_instance(text: &str) -> Result<MetricInstance> {
    let mut lines = significant_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty instance file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "dispersion-instance" || tokens[1] != "v1" {
        return Err(parse_err(hline, "expected `dispersion-instance v1 <kind> <n>`"));
    }
    let n = parse_usize(tokens[3], hline)?;
    match tokens[2] {
        "points2d" => {
            let mut pts = Vec::with_capacity(n);
            for _ in 0..n {
                let (ln, line) = lines
                    .next()
                    .ok_or_else(|| parse_err(hline, format!("expected {n} point lines")))?;
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(parse_err(ln, "expected `x y`"));
                }
                pts.push((parse_f64(parts[0], ln)?, parse_f64(parts[1], ln)?));
            }
            if let Some((ln, _)) = lines.next() {
                return Err(parse_err(ln, "trailing content after points"));
            }
            MetricInstance::from_points(&pts)
        }
        "matrix" => {
            let mut rows = Vec::with_capacity(n);
            for _ in 0..n {
                let (ln, line) = lines
                    .next()
                    .ok_or_else(|| parse_err(hline, format!("expected {n} matrix rows")))?;
                let row: Result<Vec<f64>> = line
                    .split_whitespace()
                    .map(|t| parse_f64(t, ln))
                    .collect();
                let row = row?;
                if row.len() != n {
                    return Err(parse_err(ln, format!("expected {n} entries, found {}", row.len())));
                }
                rows.push(row);
            }
            if let Some((ln, _)) = lines.next() {
                return Err(parse_err(ln, "trailing content after matrix"));
            }
            MetricInstance::from_matrix(&rows)
        }
        other => Err(parse_err(hline, format!("unknown instance kind `{other}`"))),
    }
}

pub fn write_solution(sol: &Solution, trace: Option<&GreedyTrace>) -> String {
    let mut out = String::new();
    writeln!(out, "dispersion-solution v1").unwrap();
    writeln!(out, "c {}", sol.profile.c).unwrap();
    writeln!(out, "k {}", sol.k()).unwrap();
    writeln!(out, "cost {}", fmt_f64(sol.cost)).unwrap();
    let subset: Vec<String> = sol.subset.iter().map(|i| i.to_string()).collect();
    writeln!(out, "subset {}", subset.join(" ")).unwrap();
    if let Some(trace) = trace {
        for step in &trace.steps {
            writeln!(out, "step {} {}", step.added, fmt_f64(step.cost)).unwrap();
        }
    }
    out
}

/// A parsed solution file. Indices are echoed as stored; consistency with
/// any particular instance is the caller's concern.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionFile {
    pub c: usize,
    pub k: usize,
    pub cost: f64,
    pub subset: Vec<usize>,
    pub steps: Vec<(usize, f64)>,
}

pub fn read_solution(text: &str) -> Result<SolutionFile> {
    let mut lines = significant_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty solution file"))?;
    if header != "dispersion-solution v1" {
        return Err(parse_err(hline, "expected `dispersion-solution v1`"));
    }
    let mut expect_field = |name: &str| -> Result<(usize, String)> {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(hline, format!("missing `{name}` line")))?;
        let rest = line
            .strip_prefix(name)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| parse_err(ln, format!("expected `{name} <value>`")))?;
        Ok((ln, rest.trim().to_string()))
    };
    let (ln_c, c_val) = expect_field("c")?;
    let c = parse_usize(&c_val, ln_c)?;
    let (ln_k, k_val) = expect_field("k")?;
    let k = parse_usize(&k_val, ln_k)?;
    let (ln_cost, cost_val) = expect_field("cost")?;
    let cost = parse_f64(&cost_val, ln_cost)?;
    let (ln_s, subset_val) = expect_field("subset")?;
    let subset: Result<Vec<usize>> = subset_val
        .split_whitespace()
        .map(|t| parse_usize(t, ln_s))
        .collect();
    let subset = subset?;
    if subset.len() != k {
        return Err(parse_err(
            ln_s,
            format!("subset has {} indices but k is {k}", subset.len()),
        ));
    }
    let mut steps = Vec::new();
    for (ln, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "step" {
            return Err(parse_err(ln, "expected `step <index> <cost>`"));
        }
        steps.push((parse_usize(parts[1], ln)?, parse_f64(parts[2], ln)?));
    }
    Ok(SolutionFile {
        c,
        k,
        cost,
        subset,
        steps,
    })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "dispersion-graph v1 {} {}", g.n_vertices(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Reads the native graph format, or DIMACS-style `p edge` / `e u v` text
/// (1-based, converted on load).
pub fn read_graph(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with("dispersion-graph") => read_graph_native(text),
        Some(_) => read_graph_dimacs(text),
        None => Err(parse_err(1, "empty graph file")),
    }
}

fn read_graph_native(text: &str) -> Result<Graph> {
    let mut lines = significant_lines(text);
    let (hline, header) = lines.next().unwrap();
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "dispersion-graph" || tokens[1] != "v1" {
        return Err(parse_err(hline, "expected `dispersion-graph v1 <n> <m>`"));
    }
    let n = parse_usize(tokens[2], hline)?;
    let m = parse_usize(tokens[3], hline)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(hline, format!("expected {m} edge lines")))?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(parse_err(ln, "expected `u v`"));
        }
        edges.push((parse_usize(parts[0], ln)?, parse_usize(parts[1], ln)?));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content after edges"));
    }
    Graph::new(n, &edges)
}

fn read_graph_dimacs(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts[0] {
            "p" => {
                if parts.len() != 4 || parts[1] != "edge" {
                    return Err(parse_err(ln, "expected `p edge <n> <m>`"));
                }
                n = Some(parse_usize(parts[2], ln)?);
            }
            "e" => {
                if parts.len() != 3 {
                    return Err(parse_err(ln, "expected `e <u> <v>`"));
                }
                let u = parse_usize(parts[1], ln)?;
                let v = parse_usize(parts[2], ln)?;
                if u == 0 || v == 0 {
                    return Err(parse_err(ln, "vertex indices are 1-based"));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(parse_err(ln, format!("unknown directive `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing `p edge` line"))?;
    Graph::new(n, &edges)
}

pub fn write_ball_report(report: &BallReport) -> String {
    let mut out = String::new();
    for (i, (a, b)) in report
        .contains_counts
        .iter()
        .zip(&report.covered_counts)
        .enumerate()
    {
        writeln!(out, "point {i} in_count {a} cover_count {b}").unwrap();
    }
    out
}

pub fn write_ratio_report(records: &[RatioRecord]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "generator\tn\tc\tk\tgreedy_cost\texact_cost\tratio\tgreedy_ms\texact_ms"
    )
    .unwrap();
    for r in records {
        let generator: GeneratorSpec = r.spec;
        let (exact_cost, ratio, exact_ms) = match r.exact {
            ExactOutcome::Solved { cost, ratio, ms } => {
                (fmt_f64(cost), fmt_f64(ratio), format!("{ms:.3}"))
            }
            ExactOutcome::BudgetExceeded { .. } => {
                ("NA".to_string(), "NA".to_string(), "NA".to_string())
            }
        };
        writeln!(
            out,
            "{generator}\t{}\t{}\t{}\t{}\t{exact_cost}\t{ratio}\t{:.3}\t{exact_ms}",
            r.n,
            r.c,
            r.k,
            fmt_f64(r.greedy_cost),
            r.greedy_ms,
        )
        .unwrap();
    }
    out
}
