use pathcover_core::diff::{diff_engine_vs_oracle, exhaustive_instances, parse_corpus, DiffOptions};
use pathcover_core::gen::{gen_interval, rng};
use pathcover_core::oracle::oracle_min_cover;
use pathcover_core::verify::{check_nesting, d_connectivity, dominance_violations, validate_cover};
use pathcover_core::{
    build_ordering, min_path_cover, solve_1pc, solve_1pc_traced, Interval, IntervalModel, OrderedGraph, PathKind,
    VertexId,
};
use proptest::prelude::*;

fn v(i: usize) -> VertexId {
    VertexId::new(i)
}

fn lo(seq: &[usize]) -> OrderedGraph {
    OrderedGraph::from_leftmost(seq).unwrap()
}

fn ids(p: &[VertexId]) -> Vec<usize> {
    p.iter().map(|x| x.index()).collect()
}

#[test]
fn single_vertex_terminal() {
    let c = solve_1pc(&lo(&[1]), Some(v(1)));
    assert_eq!(c.lambda(), 1);
    assert_eq!(c.paths[0].kind, PathKind::Terminal);
}

#[test]
fn complete_graph_gives_a_path_from_the_terminal() {
    let g = lo(&[1, 1, 1, 1]);
    let c = solve_1pc(&g, Some(v(2)));
    assert_eq!(c.lambda(), 1);
    assert!(c.paths[0].has_endpoint(v(2)));
    assert!(validate_cover(&g, &c, Some(v(2))).is_empty());
}

#[test]
fn star_with_center_terminal() {
    let m = IntervalModel::new(vec![
        Interval::new("c", 0, 10),
        Interval::new("a", 1, 1),
        Interval::new("b", 4, 4),
        Interval::new("d", 7, 7),
    ])
    .unwrap();
    let g = build_ordering(&m);
    let center = v(g.labels().iter().position(|l| l == "c").unwrap() + 1);
    assert_eq!(solve_1pc(&g, None).lambda(), 2);
    let c = solve_1pc(&g, Some(center));
    assert_eq!(c.lambda(), 3);
    assert!(validate_cover(&g, &c, Some(center)).is_empty());
}

#[test]
fn path_graph_with_inner_terminal() {
    let g = lo(&[1, 1, 2, 3]);
    assert_eq!(solve_1pc(&g, Some(v(2))).lambda(), 2);
    assert_eq!(solve_1pc(&g, Some(v(4))).lambda(), 1);
}

#[test]
fn bridge_two_trivial_paths() {
    // v3 sees v1 and v2, which do not see each other
    let c = min_path_cover(&lo(&[1, 2, 1]));
    assert_eq!(c.lambda(), 1);
    let p = ids(&c.paths[0].vertices);
    assert!(p == [1, 3, 2] || p == [2, 3, 1], "{p:?}");
}

#[test]
fn long_interval_processed_last() {
    let m = IntervalModel::new(vec![
        Interval::new("a", 0, 10),
        Interval::new("b", 1, 2),
        Interval::new("c", 3, 4),
        Interval::new("d", 5, 6),
    ])
    .unwrap();
    let g = build_ordering(&m);
    assert_eq!(g.labels().last().unwrap(), "a");
    for t in std::iter::once(None).chain((1..=4).map(|t| Some(v(t)))) {
        let expected = oracle_min_cover(&g, t, false).unwrap().min_size;
        assert_eq!(solve_1pc(&g, t).lambda(), expected, "t={t:?}");
    }
}

#[test]
fn edgeless_graph() {
    let g = lo(&[1, 2, 3, 4, 5]);
    assert_eq!(solve_1pc(&g, None).lambda(), 5);
    assert_eq!(solve_1pc(&g, Some(v(3))).lambda(), 5);
}

#[test]
fn empty_graph() {
    let c = solve_1pc(&lo(&[]), None);
    assert_eq!(c.lambda(), 0);
}

#[test]
fn trace_ends_at_the_cover_size() {
    let g = lo(&[1, 1, 2, 2, 3, 5, 4]);
    for t in [None, Some(v(4))] {
        let (c, trace) = solve_1pc_traced(&g, t).unwrap();
        let last_step = trace.iter().rfind(|e| e.step == g.n()).expect("a step for the last vertex");
        assert!(last_step.lambda >= c.lambda());
        assert!(trace.windows(2).all(|w| w[0].step <= w[1].step));
    }
}

#[test]
fn exhaustive_prefixes_up_to_six() {
    let r = diff_engine_vs_oracle((1..=6).flat_map(exhaustive_instances), DiffOptions { prefix_mode: true });
    assert!(r.is_clean(), "{}", r.to_text());
}

#[test]
fn regression_corpus_is_clean() {
    let instances = parse_corpus(include_str!("corpus/regressions.txt")).unwrap();
    assert!(!instances.is_empty());
    let r = diff_engine_vs_oracle(instances, DiffOptions { prefix_mode: true });
    assert!(r.is_clean(), "{}", r.to_text());
}

/// Known misses stay valid covers and at most one path above the minimum.
#[test]
fn open_corpus_stays_within_one_path() {
    for inst in parse_corpus(include_str!("corpus/open.txt")).unwrap() {
        let g = &inst.graph;
        for t in std::iter::once(None).chain((1..=g.n()).map(|t| Some(v(t)))) {
            let c = solve_1pc(g, t);
            assert!(validate_cover(g, &c, t).is_empty(), "{} t={t:?}", inst.name);
            let best = oracle_min_cover(g, t, false).unwrap().min_size;
            assert!(c.lambda() <= best + 1, "{} t={t:?}: {} vs {best}", inst.name, c.lambda());
        }
    }
}

/// No minimum 1PC of this graph has an ε row at least as large as every
/// other optimum's, so the dominance clause cannot hold here.
#[test]
fn dominance_counterexample() {
    let g = lo(&[1, 2, 1, 4, 2, 6]);
    let optima = oracle_min_cover(&g, Some(v(2)), true).unwrap().all_optima.unwrap();
    assert!(optima.iter().all(|o| o.lambda() == 3));
    for o in &optima {
        assert!(!dominance_violations(o, &optima).is_empty(), "{o:?} dominates");
    }
    // the engine is still optimal
    assert_eq!(solve_1pc(&g, Some(v(2))).lambda(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]
    #[test]
    fn engine_output_is_a_non_nested_cover(
        n in 1usize..=50,
        density in 0.0f64..0.6,
        seed in any::<u64>(),
        pick in any::<prop::sample::Index>(),
        with_terminal in any::<bool>(),
    ) {
        let g = build_ordering(&gen_interval(n, density, &mut rng(seed)));
        let t = with_terminal.then(|| v(pick.index(n) + 1));
        let c = solve_1pc(&g, t);
        prop_assert!(validate_cover(&g, &c, t).is_empty());
        prop_assert!(check_nesting(&c).is_ok(), "{:?}", c);
        prop_assert_eq!(d_connectivity(&c), 2 * (n - c.lambda()));
        prop_assert!(c.lambda() >= solve_1pc(&g, None).lambda());
    }
}
