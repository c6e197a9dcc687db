//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipartite::{BipartiteConvexGraph, Convexity};
use crate::graph::{Interval, IntervalModel};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Interval,
    Biconvex,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    /// Vertex count for interval models, |X| for bipartite graphs.
    pub n: usize,
    /// |Y| for bipartite graphs.
    pub m: usize,
    /// 0 gives an edgeless graph, 1 a complete (bipartite) one.
    pub density: f64,
    pub seed: u64,
    pub count: usize,
}

/// Length around `density * width`, spread most at middling densities and
/// pinned at the two extremes.
fn length<R: Rng + ?Sized>(rng: &mut R, density: f64, width: usize) -> usize {
    let d = density.clamp(0.0, 1.0);
    let jitter = (rng.gen::<f64>() - 0.5) * d * (1.0 - d) * width as f64;
    ((d * width as f64 + jitter).round().max(0.0) as usize).min(width)
}

/// `n` intervals with distinct integer left ends in `[0, 10n)`.
pub fn gen_interval(n: usize, density: f64, rng: &mut impl Rng) -> IntervalModel {
    let width = 10 * n.max(1);
    let mut starts: Vec<usize> = (0..width).collect();
    starts.shuffle(rng);
    let intervals = starts[..n]
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            let len = length(rng, density, width);
            Interval::new(format!("v{}", k + 1), a as i64, (a + len) as i64)
        })
        .collect();
    IntervalModel::new(intervals).expect("generated intervals are well formed")
}

/// A biconvex graph with `|X| = nx`, `|Y| = ny`: each `y` gets a random run of
/// X. Runs are re-drawn until the Y order sorted by run start is convex for X
/// too; after a few misses the run ends are sorted as well, which always is.
pub fn gen_biconvex(nx: usize, ny: usize, density: f64, rng: &mut impl Rng) -> BipartiteConvexGraph {
    let x: Vec<String> = (1..=nx).map(|i| format!("x{i}")).collect();
    let y: Vec<String> = (1..=ny).map(|j| format!("y{j}")).collect();
    let draw = |rng: &mut dyn rand::RngCore| -> Vec<Option<(usize, usize)>> {
        (0..ny)
            .map(|_| {
                let len = length(rng, density, nx);
                (len > 0).then(|| {
                    let a = rng.gen_range(0..=nx - len);
                    (a, a + len - 1)
                })
            })
            .collect()
    };
    let build = |runs: &[Option<(usize, usize)>]| {
        let edges: Vec<(usize, usize)> = runs
            .iter()
            .enumerate()
            .filter_map(|(j, r)| r.map(|(a, b)| (j, a, b)))
            .flat_map(|(j, a, b)| (a..=b).map(move |i| (i, j)))
            .collect();
        BipartiteConvexGraph::new(x.clone(), y.clone(), &edges, Convexity::Bi)
    };
    let mut runs = Vec::new();
    for _ in 0..8 {
        runs = draw(rng);
        runs.sort_by_key(|r| r.map_or((usize::MAX, usize::MAX), |(a, b)| (a, b)));
        if let Ok(g) = build(&runs) {
            return g;
        }
    }
    let mut lefts: Vec<usize> = runs.iter().flatten().map(|r| r.0).collect();
    let mut rights: Vec<usize> = runs.iter().flatten().map(|r| r.1).collect();
    lefts.sort_unstable();
    rights.sort_unstable();
    let mut sorted: Vec<Option<(usize, usize)>> = lefts.into_iter().zip(rights).map(Some).collect();
    sorted.resize(ny, None);
    build(&sorted).expect("sorted runs are biconvex")
}
