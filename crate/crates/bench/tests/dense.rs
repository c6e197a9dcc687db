use std::time::Duration;

use pathcover_bench::{dense_graph, measure, TerminalMode};
use pathcover_core::verify::validate_cover;
use pathcover_core::solve_1pc;

#[test]
fn edge_count_grows_quadratically() {
    let ratios: Vec<f64> = [200usize, 400, 800]
        .iter()
        .map(|&n| dense_graph(n, 1).edge_count() as f64 / (n * n) as f64)
        .collect();
    for r in &ratios {
        assert!((0.05..0.5).contains(r), "{ratios:?}");
    }
}

#[test]
fn size_one_is_a_near_zero_baseline() {
    let rows = measure(&[1], 5, 0, TerminalMode::Middle);
    assert_eq!(rows[0].lambda, 1);
    assert!(rows[0].median < Duration::from_millis(5));
}

#[test]
fn benchmark_graphs_get_valid_covers() {
    for mode in [TerminalMode::None, TerminalMode::Middle] {
        let g = dense_graph(500, 2);
        let t = mode.pick(500);
        assert!(validate_cover(&g, &solve_1pc(&g, t), t).is_empty());
    }
}
