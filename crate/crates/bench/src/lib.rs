//! Timing helpers shared by the criterion benches, the `bench` command and
//! the acceptance suite.

use std::time::{Duration, Instant};

use pathcover_core::gen::{gen_interval, rng};
use pathcover_core::{build_ordering, solve_1pc, OrderedGraph, VertexId};

/// Interval length as a fraction of the coordinate range; about a tenth of
/// all vertex pairs end up adjacent.
pub const DENSE: f64 = 0.25;

pub fn dense_graph(n: usize, seed: u64) -> OrderedGraph {
    build_ordering(&gen_interval(n, DENSE, &mut rng(seed)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminalMode {
    None,
    /// The vertex in the middle of the ordering.
    Middle,
}

impl TerminalMode {
    pub fn pick(self, n: usize) -> Option<VertexId> {
        match self {
            TerminalMode::None => None,
            TerminalMode::Middle => (n > 0).then(|| VertexId::new(n.div_ceil(2))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub edges: usize,
    pub lambda: usize,
    pub median: Duration,
}

/// Median wall time of `reps` solves of one dense graph per size.
pub fn measure(sizes: &[usize], reps: usize, seed: u64, mode: TerminalMode) -> Vec<BenchRow> {
    sizes
        .iter()
        .map(|&n| {
            let g = dense_graph(n, seed);
            let t = mode.pick(n);
            let mut times = Vec::with_capacity(reps.max(1));
            let mut lambda = 0;
            for _ in 0..reps.max(1) {
                let start = Instant::now();
                lambda = solve_1pc(&g, t).lambda();
                times.push(start.elapsed());
            }
            times.sort();
            BenchRow {
                n,
                edges: g.edge_count(),
                lambda,
                median: times[times.len() / 2],
            }
        })
        .collect()
}

/// Least-squares slope of log(time) against log(n).
pub fn scaling_exponent(rows: &[BenchRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.n > 0 && r.median > Duration::ZERO)
        .map(|r| ((r.n as f64).ln(), r.median.as_secs_f64().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / k, sy / k);
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = String::from("n\tedges\tlambda\tmedian_ms\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{:.3}\n",
            r.n,
            r.edges,
            r.lambda,
            r.median.as_secs_f64() * 1e3
        ));
    }
    if let Some(e) = scaling_exponent(rows) {
        out.push_str(&format!("exponent\t{e:.3}\n"));
    }
    out
}
