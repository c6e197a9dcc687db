use std::collections::HashSet;

use pathcover_core::diff::leftmost_sequences;
use pathcover_core::{build_ordering, validate_ordering, GraphError, IntervalModel, OrderedGraph, VertexId};
use proptest::prelude::*;

fn v(i: usize) -> VertexId {
    VertexId::new(i)
}

/// Edges as label pairs, each sorted, straight from pairwise interval tests.
fn naive_edges(pairs: &[(i64, i64)]) -> HashSet<(String, String)> {
    let mut out = HashSet::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let ((a, b), (c, d)) = (pairs[i], pairs[j]);
            if a.max(c) <= b.min(d) {
                out.insert((format!("v{}", i + 1), format!("v{}", j + 1)));
            }
        }
    }
    out
}

fn label_edges(g: &OrderedGraph) -> HashSet<(String, String)> {
    g.edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (g.label(a).to_string(), g.label(b).to_string());
            if x.trim_start_matches('v').parse::<usize>().unwrap() < y.trim_start_matches('v').parse::<usize>().unwrap() {
                (x, y)
            } else {
                (y, x)
            }
        })
        .collect()
}

fn model(pairs: &[(i64, i64)]) -> IntervalModel {
    let intervals = pairs
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| pathcover_core::Interval::new(format!("v{}", k + 1), a, b))
        .collect();
    IntervalModel::new(intervals).unwrap()
}

fn ordering_property_holds(g: &OrderedGraph) -> bool {
    let n = g.n();
    (1..=n).all(|k| {
        (1..k).all(|i| !g.is_adjacent(v(i), v(k)) || (i + 1..k).all(|j| g.is_adjacent(v(j), v(k))))
    })
}

#[test]
fn three_interval_example() {
    let m = IntervalModel::new(vec![
        pathcover_core::Interval::new("a", 0, 5),
        pathcover_core::Interval::new("b", 1, 2),
        pathcover_core::Interval::new("c", 3, 4),
    ])
    .unwrap();
    let g = build_ordering(&m);
    assert_eq!(g.labels(), ["b", "c", "a"]);
    assert_eq!(g.edges(), vec![(v(1), v(3)), (v(2), v(3))]);
    assert_eq!(g.leftmost_neighbor(v(3)), Some(v(1)));
}

#[test]
fn leftmost_neighbor_examples() {
    let k3 = OrderedGraph::from_leftmost(&[1, 1, 1]).unwrap();
    assert_eq!(k3.leftmost_neighbor(v(3)), Some(v(1)));
    let edgeless = OrderedGraph::from_leftmost(&[1, 2, 3]).unwrap();
    assert!((1..=3).all(|i| edgeless.leftmost_neighbor(v(i)).is_none()));
}

#[test]
fn claimed_orderings() {
    let labels = || (1..=3).map(|k| k.to_string()).collect::<Vec<_>>();
    assert!(validate_ordering(3, &[(0, 1), (1, 2)], &[0, 1, 2], labels()).is_ok());
    match validate_ordering(3, &[(0, 2)], &[0, 1, 2], labels()) {
        Err(GraphError::OrderingViolation { i, j, k }) => assert_eq!((i, j, k), (1, 2, 3)),
        other => panic!("expected a violation, got {other:?}"),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn four_cycle_fails_under_all_24_orderings() {
    let c4 = [(0, 1), (1, 2), (2, 3), (3, 0)];
    let perms = permutations(4);
    assert_eq!(perms.len(), 24);
    for p in perms {
        let r = validate_ordering(4, &c4, &p, (1..=4).map(|k| k.to_string()).collect());
        assert!(matches!(r, Err(GraphError::OrderingViolation { .. })), "{p:?} accepted");
    }
}

/// Every interval model with endpoints on a small grid yields a graph that is
/// also produced by its own `lo` sequence, and every `lo` sequence comes from
/// some model (its grid model). So enumerating `lo` sequences enumerates all
/// ordered interval graphs.
#[test]
fn leftmost_sequences_cover_every_grid_model() {
    for n in 1..=4usize {
        let all: HashSet<Vec<usize>> = leftmost_sequences(n).into_iter().collect();
        let spans: Vec<(i64, i64)> = (0..2 * n as i64).flat_map(|a| (a..2 * n as i64).map(move |b| (a, b))).collect();
        let mut pick = vec![0usize; n];
        let mut seen = HashSet::new();
        loop {
            let pairs: Vec<(i64, i64)> = pick.iter().map(|&k| spans[k]).collect();
            let g = build_ordering(&model(&pairs));
            let lo: Vec<usize> = (1..=n).map(|k| g.leftmost_neighbor(v(k)).map_or(k, |u| u.index())).collect();
            assert!(all.contains(&lo));
            let again = OrderedGraph::from_leftmost(&lo).unwrap();
            assert_eq!(again.edges(), g.edges());
            seen.insert(lo);
            let mut k = 0;
            while k < n {
                pick[k] += 1;
                if pick[k] < spans.len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        assert_eq!(seen, all, "n={n}: some lo sequence has no grid model");
    }
}

#[test]
fn grid_model_of_a_sequence_reproduces_it() {
    for lo in leftmost_sequences(5) {
        let pairs: Vec<(i64, i64)> = lo.iter().enumerate().map(|(k, &l)| (l as i64, k as i64 + 1)).collect();
        let g = build_ordering(&model(&pairs));
        assert_eq!(g.edges(), OrderedGraph::from_leftmost(&lo).unwrap().edges());
    }
}

proptest! {
    #[test]
    fn ordering_matches_pairwise_intersection(
        raw in prop::collection::vec((0i64..30, 0i64..12), 0..14)
    ) {
        let pairs: Vec<(i64, i64)> = raw.iter().map(|&(a, len)| (a, a + len)).collect();
        let g = build_ordering(&model(&pairs));
        prop_assert_eq!(label_edges(&g), naive_edges(&pairs));
        prop_assert!(ordering_property_holds(&g));
        let rights: Vec<i64> = g.labels().iter().map(|l| pairs[l[1..].parse::<usize>().unwrap() - 1].1).collect();
        prop_assert!(rights.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn built_ordering_validates_as_a_claim(
        raw in prop::collection::vec((0i64..30, 0i64..12), 1..12)
    ) {
        let pairs: Vec<(i64, i64)> = raw.iter().map(|&(a, len)| (a, a + len)).collect();
        let g = build_ordering(&model(&pairs));
        let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(a, b)| (a.index() - 1, b.index() - 1)).collect();
        let n = g.n();
        let again = validate_ordering(n, &edges, &(0..n).collect::<Vec<_>>(), g.labels().to_vec()).unwrap();
        prop_assert_eq!(again.edges(), g.edges());
    }
}
