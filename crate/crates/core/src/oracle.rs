//! Exact exponential reference solvers.
//!
//! The minimum is found by a dynamic program over `(covered set, last vertex)`
//! states that lays the cover out as a sequence of path segments; it shares
//! nothing with the greedy engine. Enumeration of every optimum works on edge
//! subsets instead.

use crate::cover::{Path, PathCover, PathKind};
use crate::error::OracleError;
use crate::graph::{OrderedGraph, VertexId};

pub const DEFAULT_MIN_BOUND: usize = 12;
pub const DEFAULT_ENUMERATE_BOUND: usize = 8;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub min_size: usize,
    pub witness: PathCover,
    pub all_optima: Option<Vec<PathCover>>,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleBounds {
    pub min_size: usize,
    pub enumerate_all: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            min_size: DEFAULT_MIN_BOUND,
            enumerate_all: DEFAULT_ENUMERATE_BOUND,
        }
    }
}

pub fn oracle_min_cover(
    g: &OrderedGraph,
    terminal: Option<VertexId>,
    enumerate_all: bool,
) -> Result<OracleResult, OracleError> {
    oracle_min_cover_bounded(g, terminal, enumerate_all, OracleBounds::default())
}

pub fn oracle_min_cover_bounded(
    g: &OrderedGraph,
    terminal: Option<VertexId>,
    enumerate_all: bool,
    bounds: OracleBounds,
) -> Result<OracleResult, OracleError> {
    let n = g.n();
    let bound = if enumerate_all { bounds.enumerate_all } else { bounds.min_size };
    if n > bound {
        return Err(OracleError::InstanceTooLarge { n, bound });
    }
    let (min_size, witness) = segment_dp(g, terminal);
    let all_optima = enumerate_all.then(|| enumerate_covers(g, terminal, min_size));
    Ok(OracleResult {
        min_size,
        witness,
        all_optima,
    })
}

const INF: u8 = u8::MAX;

/// `f[mask][last][fresh]`: fewest segments laying out exactly `mask` with the
/// current segment ending at `last`; `fresh` marks a one-vertex segment.
/// The terminal may not be extended from once it was entered mid-segment.
fn segment_dp(g: &OrderedGraph, terminal: Option<VertexId>) -> (usize, PathCover) {
    let n = g.n();
    if n == 0 {
        return (0, PathCover::new(Vec::new(), terminal, 0));
    }
    let t = terminal.map(VertexId::zero_based);
    let states = 1usize << n;
    let idx = |mask: usize, last: usize, fresh: usize| (mask * n + last) * 2 + fresh;
    let mut f = vec![INF; states * n * 2];
    for u in 0..n {
        f[idx(1 << u, u, 1)] = 1;
    }
    for mask in 1..states {
        for last in 0..n {
            if mask & (1 << last) == 0 {
                continue;
            }
            for fresh in 0..2 {
                let cur = f[idx(mask, last, fresh)];
                if cur == INF {
                    continue;
                }
                let can_extend = !(Some(last) == t && fresh == 0);
                for u in 0..n {
                    if mask & (1 << u) != 0 {
                        continue;
                    }
                    let next = mask | (1 << u);
                    if can_extend && g.adjacent0(last, u) {
                        let s = &mut f[idx(next, u, 0)];
                        *s = (*s).min(cur);
                    }
                    let s = &mut f[idx(next, u, 1)];
                    *s = (*s).min(cur + 1);
                }
            }
        }
    }
    let full = states - 1;
    let (best, mut last, mut fresh) = (0..n)
        .flat_map(|l| (0..2).map(move |fr| (l, fr)))
        .map(|(l, fr)| (f[idx(full, l, fr)], l, fr))
        .min()
        .expect("n > 0");
    // Walk the table backwards to recover one optimal layout.
    let mut mask = full;
    let mut segments: Vec<Vec<usize>> = vec![vec![last]];
    let mut value = best;
    while mask.count_ones() > 1 {
        let prev_mask = mask & !(1 << last);
        let mut found = None;
        'search: for p in 0..n {
            if prev_mask & (1 << p) == 0 {
                continue;
            }
            for pf in 0..2 {
                let pv = f[idx(prev_mask, p, pf)];
                if pv == INF {
                    continue;
                }
                let extendable = !(Some(p) == t && pf == 0);
                let ok = if fresh == 1 {
                    pv + 1 == value
                } else {
                    extendable && g.adjacent0(p, last) && pv == value
                };
                if ok {
                    found = Some((p, pf, pv));
                    break 'search;
                }
            }
        }
        let (p, pf, pv) = found.expect("DP table is consistent");
        if fresh == 1 {
            segments.push(vec![p]);
        } else {
            segments.last_mut().expect("non-empty").push(p);
        }
        mask = prev_mask;
        last = p;
        fresh = pf;
        value = pv;
    }
    let paths = segments
        .into_iter()
        .map(|seg| {
            let kind = match t {
                Some(t) if seg.contains(&t) => PathKind::Terminal,
                _ => PathKind::Free,
            };
            Path::new(seg.into_iter().map(VertexId::from_zero_based).collect(), kind)
        })
        .collect();
    let mut cover = PathCover::new(paths, terminal, n);
    cover.canonicalize();
    (best as usize, cover)
}

/// Every path cover of size `size` (as a set of undirected paths), found by
/// choosing `n - size` edges with all degrees at most two, no cycle, and the
/// terminal of degree at most one.
pub fn enumerate_covers(g: &OrderedGraph, terminal: Option<VertexId>, size: usize) -> Vec<PathCover> {
    let n = g.n();
    if size > n || (n > 0 && size == 0) {
        return Vec::new();
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| (a.zero_based(), b.zero_based()))
        .collect();
    let mut search = EdgeSearch {
        n,
        edges: &edges,
        need: n - size,
        t: terminal.map(VertexId::zero_based),
        degree: vec![0; n],
        chosen: Vec::new(),
        out: Vec::new(),
    };
    search.run(0);
    search
        .out
        .into_iter()
        .map(|chosen| edges_to_cover(n, &chosen, terminal))
        .collect()
}

struct EdgeSearch<'a> {
    n: usize,
    edges: &'a [(usize, usize)],
    need: usize,
    t: Option<usize>,
    degree: Vec<u8>,
    chosen: Vec<(usize, usize)>,
    out: Vec<Vec<(usize, usize)>>,
}

impl EdgeSearch<'_> {
    fn cap(&self, v: usize) -> u8 {
        if Some(v) == self.t {
            1
        } else {
            2
        }
    }

    fn closes_cycle(&self, a: usize, b: usize) -> bool {
        let mut stack = vec![a];
        let mut seen = vec![false; self.n];
        seen[a] = true;
        while let Some(v) = stack.pop() {
            if v == b {
                return true;
            }
            for &(x, y) in &self.chosen {
                let w = if x == v {
                    y
                } else if y == v {
                    x
                } else {
                    continue;
                };
                if !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        false
    }

    fn run(&mut self, from: usize) {
        if self.chosen.len() == self.need {
            self.out.push(self.chosen.clone());
            return;
        }
        if self.edges.len() - from < self.need - self.chosen.len() {
            return;
        }
        for e in from..self.edges.len() {
            if self.edges.len() - e < self.need - self.chosen.len() {
                break;
            }
            let (a, b) = self.edges[e];
            if self.degree[a] >= self.cap(a) || self.degree[b] >= self.cap(b) {
                continue;
            }
            if self.closes_cycle(a, b) {
                continue;
            }
            self.degree[a] += 1;
            self.degree[b] += 1;
            self.chosen.push((a, b));
            self.run(e + 1);
            self.chosen.pop();
            self.degree[a] -= 1;
            self.degree[b] -= 1;
        }
    }
}

fn edges_to_cover(n: usize, chosen: &[(usize, usize)], terminal: Option<VertexId>) -> PathCover {
    let mut nb: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in chosen {
        nb[a].push(b);
        nb[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for start in 0..n {
        if seen[start] || nb[start].len() == 2 {
            continue;
        }
        let mut seq = vec![start];
        seen[start] = true;
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&nx) = nb[cur].iter().find(|&&x| x != prev) {
            seq.push(nx);
            seen[nx] = true;
            prev = cur;
            cur = nx;
        }
        let kind = match terminal {
            Some(t) if seq.contains(&t.zero_based()) => PathKind::Terminal,
            _ => PathKind::Free,
        };
        paths.push(Path::new(seq.into_iter().map(VertexId::from_zero_based).collect(), kind));
    }
    let mut cover = PathCover::new(paths, terminal, n);
    cover.canonicalize();
    cover
}

/// Largest graph accepted by [`oracle_hamiltonian_path`].
pub const HAMILTONIAN_BOUND: usize = 20;

/// A Hamiltonian path of the graph on `0..n` given by `adj`, starting at
/// `start` when given. Bitmask dynamic program over `(visited set, last vertex)`.
pub fn oracle_hamiltonian_path(
    n: usize,
    adj: impl Fn(usize, usize) -> bool,
    start: Option<usize>,
) -> Result<Option<Vec<usize>>, OracleError> {
    if n > HAMILTONIAN_BOUND {
        return Err(OracleError::InstanceTooLarge { n, bound: HAMILTONIAN_BOUND });
    }
    if n == 0 {
        return Ok(start.is_none().then(Vec::new));
    }
    let nb: Vec<u32> = (0..n)
        .map(|u| (0..n).filter(|&v| v != u && adj(u, v)).fold(0, |m, v| m | 1 << v))
        .collect();
    let states = 1usize << n;
    // reach[mask] = set of possible last vertices of a path visiting exactly mask
    let mut reach = vec![0u32; states];
    match start {
        Some(s) => reach[1 << s] = 1 << s,
        None => (0..n).for_each(|u| reach[1 << u] = 1 << u),
    }
    for mask in 1..states {
        let mut ends = reach[mask];
        while ends != 0 {
            let last = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut ext = nb[last] & !(mask as u32);
            while ext != 0 {
                let u = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                reach[mask | 1 << u] |= 1 << u;
            }
        }
    }
    let full = states - 1;
    if reach[full] == 0 {
        return Ok(None);
    }
    let mut last = reach[full].trailing_zeros() as usize;
    let mut mask = full;
    let mut path = vec![last];
    while mask.count_ones() > 1 {
        let prev = mask & !(1 << last);
        let p = (0..n)
            .find(|&p| reach[prev] >> p & 1 == 1 && nb[p] >> last & 1 == 1)
            .expect("table is consistent");
        path.push(p);
        mask = prev;
        last = p;
    }
    path.reverse();
    Ok(Some(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::validate_cover;

    fn g(lo: &[usize]) -> OrderedGraph {
        OrderedGraph::from_leftmost(lo).unwrap()
    }

    #[test]
    fn complete_graph_any_terminal() {
        let k4 = g(&[1, 1, 1, 1]);
        for t in 1..=4 {
            let r = oracle_min_cover(&k4, Some(VertexId::new(t)), false).unwrap();
            assert_eq!(r.min_size, 1);
            assert!(validate_cover(&k4, &r.witness, Some(VertexId::new(t))).is_empty());
        }
    }

    #[test]
    fn star_with_center_terminal() {
        // leaves 1..3 as disjoint points, centre 4 spans them all
        let star = g(&[1, 2, 3, 1]);
        assert_eq!(oracle_min_cover(&star, None, false).unwrap().min_size, 2);
        assert_eq!(oracle_min_cover(&star, Some(VertexId::new(4)), false).unwrap().min_size, 3);
    }

    #[test]
    fn edgeless_and_path() {
        assert_eq!(oracle_min_cover(&g(&[1, 2, 3, 4, 5]), None, false).unwrap().min_size, 5);
        let p4 = g(&[1, 1, 2, 3]);
        assert_eq!(oracle_min_cover(&p4, Some(VertexId::new(2)), false).unwrap().min_size, 2);
        assert_eq!(oracle_min_cover(&p4, Some(VertexId::new(1)), false).unwrap().min_size, 1);
    }

    #[test]
    fn bounds_are_enforced() {
        let big = g(&(1..=13).collect::<Vec<_>>());
        assert_eq!(
            oracle_min_cover(&big, None, false).unwrap_err(),
            OracleError::InstanceTooLarge { n: 13, bound: 12 }
        );
        let mid = g(&(1..=9).collect::<Vec<_>>());
        assert!(oracle_min_cover(&mid, None, true).is_err());
    }

    #[test]
    fn enumeration_of_k3() {
        let r = oracle_min_cover(&g(&[1, 1, 1]), None, true).unwrap();
        // three Hamiltonian paths, one per choice of middle vertex
        assert_eq!(r.all_optima.unwrap().len(), 3);
        let r = oracle_min_cover(&g(&[1, 1, 1]), Some(VertexId::new(1)), true).unwrap();
        assert_eq!(r.all_optima.unwrap().len(), 2);
    }

    #[test]
    fn hamiltonian_paths() {
        let p4 = g(&[1, 1, 2, 3]);
        let adj = |a: usize, b: usize| p4.adjacent0(a, b);
        let hp = oracle_hamiltonian_path(4, adj, None).unwrap().unwrap();
        assert!(hp == [0, 1, 2, 3] || hp == [3, 2, 1, 0]);
        assert_eq!(oracle_hamiltonian_path(4, adj, Some(0)).unwrap(), Some(vec![0, 1, 2, 3]));
        assert_eq!(oracle_hamiltonian_path(4, adj, Some(1)).unwrap(), None);
        let star = g(&[1, 2, 3, 1]);
        assert_eq!(oracle_hamiltonian_path(4, |a, b| star.adjacent0(a, b), None).unwrap(), None);
        assert_eq!(oracle_hamiltonian_path(0, adj, None).unwrap(), Some(vec![]));
    }

    #[test]
    fn empty_graph() {
        let r = oracle_min_cover(&g(&[]), None, true).unwrap();
        assert_eq!(r.min_size, 0);
        assert_eq!(r.all_optima.unwrap().len(), 1);
    }
}
