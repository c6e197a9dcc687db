use std::collections::{HashMap, HashSet};

use pathcover_core::diff::leftmost_sequences;
use pathcover_core::gen::{gen_interval, rng};
use pathcover_core::oracle::{enumerate_covers, oracle_min_cover};
use pathcover_core::verify::validate_cover;
use pathcover_core::{build_ordering, Interval, IntervalModel, OrderedGraph, VertexId};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn v(i: usize) -> VertexId {
    VertexId::new(i)
}

fn min(g: &OrderedGraph, t: Option<usize>) -> usize {
    oracle_min_cover(g, t.map(v), false).unwrap().min_size
}

fn star() -> OrderedGraph {
    build_ordering(
        &IntervalModel::new(vec![
            Interval::new("c", 0, 10),
            Interval::new("a", 1, 1),
            Interval::new("b", 4, 4),
            Interval::new("d", 7, 7),
        ])
        .unwrap(),
    )
}

#[test]
fn small_examples() {
    let k4 = OrderedGraph::from_leftmost(&[1, 1, 1, 1]).unwrap();
    for t in [None, Some(1), Some(2), Some(3), Some(4)] {
        assert_eq!(min(&k4, t), 1);
    }
    let s = star();
    let center = s.labels().iter().position(|l| l == "c").unwrap() + 1;
    assert_eq!(min(&s, None), 2);
    assert_eq!(min(&s, Some(center)), 3);
    let edgeless = OrderedGraph::from_leftmost(&[1, 2, 3, 4, 5]).unwrap();
    assert_eq!(min(&edgeless, None), 5);
    let p4 = OrderedGraph::from_leftmost(&[1, 1, 2, 3]).unwrap();
    assert_eq!(min(&p4, Some(2)), 2);
    assert_eq!(min(&p4, Some(1)), 1);
}

/// Every path cover, found by cutting every vertex permutation into runs.
/// Paths are stored in a direction-free form.
fn covers_by_permutation(g: &OrderedGraph) -> HashMap<usize, HashSet<Vec<Vec<usize>>>> {
    let n = g.n();
    let mut out: HashMap<usize, HashSet<Vec<Vec<usize>>>> = HashMap::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut perms = Vec::new();
    heap(&mut perm, n, &mut perms);
    for p in perms {
        for cuts in 0u32..(1 << n.saturating_sub(1)) {
            let mut paths: Vec<Vec<usize>> = vec![vec![p[0]]];
            for k in 1..n {
                if cuts >> (k - 1) & 1 == 1 {
                    paths.push(vec![p[k]]);
                } else {
                    paths.last_mut().unwrap().push(p[k]);
                }
            }
            if paths.iter().all(|q| q.windows(2).all(|w| g.is_adjacent(v(w[0]), v(w[1])))) {
                for q in &mut paths {
                    if q.last() < q.first() {
                        q.reverse();
                    }
                }
                paths.sort();
                out.entry(paths.len()).or_default().insert(paths);
            }
        }
    }
    out
}

fn heap(a: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap(a, k - 1, out);
        let j = if k % 2 == 0 { i } else { 0 };
        a.swap(j, k - 1);
    }
}

fn check_enumeration(g: &OrderedGraph) {
    let n = g.n();
    let naive = covers_by_permutation(g);
    for t in std::iter::once(None).chain((1..=n).map(Some)) {
        let allowed = |c: &Vec<Vec<usize>>| {
            t.is_none_or(|t| c.iter().any(|q| q.first() == Some(&t) || q.last() == Some(&t)))
        };
        let best = (1..=n)
            .find(|s| naive.get(s).is_some_and(|set| set.iter().any(allowed)))
            .expect("some cover exists");
        let expected = naive[&best].iter().filter(|c| allowed(c)).count();
        let r = oracle_min_cover(g, t.map(v), true).unwrap();
        assert_eq!(r.min_size, best, "{:?} t={t:?}", g.edges());
        let all = r.all_optima.unwrap();
        assert_eq!(all.len(), expected, "{:?} t={t:?}", g.edges());
        for c in &all {
            assert!(validate_cover(g, c, t.map(v)).is_empty());
        }
        assert_eq!(enumerate_covers(g, t.map(v), best).len(), expected);
    }
}

#[test]
fn enumeration_matches_permutation_counter() {
    for n in 1..=5 {
        for lo in leftmost_sequences(n) {
            check_enumeration(&OrderedGraph::from_leftmost(&lo).unwrap());
        }
    }
    // a spread of n = 6 graphs
    for lo in leftmost_sequences(6).into_iter().step_by(7) {
        check_enumeration(&OrderedGraph::from_leftmost(&lo).unwrap());
    }
}

#[test]
fn removing_the_terminal_costs_at_most_one_path() {
    for n in 1..=6 {
        for lo in leftmost_sequences(n) {
            let g = OrderedGraph::from_leftmost(&lo).unwrap();
            for t in 1..=n {
                let with = min(&g, Some(t));
                let without = if n == 1 { 0 } else { min(&g.without(v(t)), None) };
                assert!(without == with || without + 1 == with, "lo={lo:?} t={t}: {without} vs {with}");
            }
        }
    }
}

proptest! {
    #[test]
    fn terminal_never_lowers_the_minimum(n in 1usize..=11, density in 0.0f64..0.6, seed in any::<u64>()) {
        let g = build_ordering(&gen_interval(n, density, &mut rng(seed)));
        let free = min(&g, None);
        for t in 1..=n {
            prop_assert!(min(&g, Some(t)) >= free);
        }
    }

    #[test]
    fn minimum_ignores_input_order_of_intervals(n in 1usize..=10, density in 0.0f64..0.6, seed in any::<u64>()) {
        let m = gen_interval(n, density, &mut rng(seed));
        let mut shuffled = m.intervals().to_vec();
        shuffled.shuffle(&mut rng(seed ^ 0x5eed));
        let renamed: Vec<Interval> = shuffled
            .into_iter()
            .enumerate()
            .map(|(k, i)| Interval::new(format!("w{k}"), i.left, i.right))
            .collect();
        let a = build_ordering(&m);
        let b = build_ordering(&IntervalModel::new(renamed).unwrap());
        prop_assert_eq!(min(&a, None), min(&b, None));
    }
}
