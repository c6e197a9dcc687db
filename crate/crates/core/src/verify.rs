//! Independent validators for path covers.

use std::fmt;

use serde::Serialize;

use crate::cover::{PathCover, PathKind};
use crate::graph::{OrderedGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    SizeMismatch { cover_n: usize, graph_n: usize },
    OutOfRange { vertex: usize },
    DuplicateVertex { vertex: usize },
    CoverageViolation { vertex: usize },
    AdjacencyViolation { a: usize, b: usize },
    TerminalViolation { terminal: usize, detail: String },
    TerminalMismatch { cover: Option<usize>, requested: Option<usize> },
    DConnectivity { sum: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SizeMismatch { cover_n, graph_n } => {
                write!(f, "SizeMismatch: cover is for n={cover_n}, graph has n={graph_n}")
            }
            Violation::OutOfRange { vertex } => write!(f, "OutOfRange: vertex {vertex}"),
            Violation::DuplicateVertex { vertex } => write!(f, "DuplicateVertex: vertex {vertex}"),
            Violation::CoverageViolation { vertex } => {
                write!(f, "CoverageViolation: vertex {vertex} is not covered")
            }
            Violation::AdjacencyViolation { a, b } => {
                write!(f, "AdjacencyViolation: {a}-{b} is not an edge")
            }
            Violation::TerminalViolation { terminal, detail } => {
                write!(f, "TerminalViolation: terminal {terminal} {detail}")
            }
            Violation::TerminalMismatch { cover, requested } => write!(
                f,
                "TerminalMismatch: cover declares {cover:?}, expected {requested:?}"
            ),
            Violation::DConnectivity { sum, expected } => {
                write!(f, "DConnectivity: degree sum {sum}, expected {expected}")
            }
        }
    }
}

/// Checks that `c` is a path cover of `g` with `terminal` (if any) as a path
/// endpoint. All violations are collected; an empty list means valid.
pub fn validate_cover(g: &OrderedGraph, c: &PathCover, terminal: Option<VertexId>) -> Vec<Violation> {
    let n = g.n();
    let mut out = Vec::new();
    if c.n != n {
        out.push(Violation::SizeMismatch {
            cover_n: c.n,
            graph_n: n,
        });
    }
    if c.terminal != terminal {
        out.push(Violation::TerminalMismatch {
            cover: c.terminal.map(VertexId::index),
            requested: terminal.map(VertexId::index),
        });
    }
    let mut seen = vec![false; n];
    let mut degree_sum = 0usize;
    for p in &c.paths {
        for w in p.vertices.windows(2) {
            let (a, b) = (w[0], w[1]);
            if g.contains(a) && g.contains(b) && !g.is_adjacent(a, b) {
                out.push(Violation::AdjacencyViolation {
                    a: a.index(),
                    b: b.index(),
                });
            }
        }
        degree_sum += 2 * p.vertices.len().saturating_sub(1);
        for &v in &p.vertices {
            if !g.contains(v) {
                out.push(Violation::OutOfRange { vertex: v.index() });
            } else if std::mem::replace(&mut seen[v.zero_based()], true) {
                out.push(Violation::DuplicateVertex { vertex: v.index() });
            }
        }
    }
    for (k, covered) in seen.iter().enumerate() {
        if !covered {
            out.push(Violation::CoverageViolation { vertex: k + 1 });
        }
    }
    if let Some(t) = terminal {
        let holders: Vec<_> = c.paths.iter().filter(|p| p.vertices.contains(&t)).collect();
        match holders.as_slice() {
            [p] if !p.has_endpoint(t) => out.push(Violation::TerminalViolation {
                terminal: t.index(),
                detail: "is an internal vertex".into(),
            }),
            [p] if p.kind != PathKind::Terminal => out.push(Violation::TerminalViolation {
                terminal: t.index(),
                detail: "lies on a path not marked terminal".into(),
            }),
            _ => {}
        }
    }
    let marked = c.paths.iter().filter(|p| p.kind == PathKind::Terminal).count();
    let expected_marked = usize::from(terminal.is_some());
    if marked != expected_marked {
        out.push(Violation::TerminalViolation {
            terminal: terminal.map(VertexId::index).unwrap_or(0),
            detail: format!("{marked} paths marked terminal, expected {expected_marked}"),
        });
    }
    // Only meaningful for a partition; duplicates and gaps are reported above.
    if out.is_empty() {
        let expected = 2 * (n - c.lambda());
        if degree_sum != expected {
            out.push(Violation::DConnectivity {
                sum: degree_sum,
                expected,
            });
        }
    }
    out
}

/// One path's endpoint lies strictly between the two endpoints of another.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NestingViolation {
    /// 0-based positions in `c.paths`.
    pub outer: usize,
    pub inner: usize,
    pub endpoint: usize,
}

impl fmt::Display for NestingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NestingViolation: endpoint {} of P{} lies inside P{}",
            self.endpoint,
            self.inner + 1,
            self.outer + 1
        )
    }
}

/// Non-nesting of endpoints. Without a terminal every pair of paths is
/// checked; with a terminal only pairs of free paths are.
pub fn check_nesting(c: &PathCover) -> Result<(), NestingViolation> {
    let mut marks: Vec<(VertexId, usize)> = c
        .paths
        .iter()
        .enumerate()
        .filter(|(_, p)| c.terminal.is_none() || p.kind == PathKind::Free)
        .filter_map(|(k, p)| p.endpoints().map(|(l, r)| [(l, k), (r, k)]))
        .flatten()
        .collect();
    marks.sort();
    // Every path's two endpoints must be neighbours in the sorted sequence.
    for (k, p) in c.paths.iter().enumerate() {
        if c.terminal.is_some() && p.kind != PathKind::Free {
            continue;
        }
        let Some((l, r)) = p.endpoints() else { continue };
        if l == r {
            continue;
        }
        let lo = marks.partition_point(|&(v, _)| v <= l);
        let hi = marks.partition_point(|&(v, _)| v < r);
        if let Some(&(v, owner)) = marks[lo..hi].first() {
            return Err(NestingViolation {
                outer: k,
                inner: owner,
                endpoint: v.index(),
            });
        }
    }
    Ok(())
}

/// An optimum with more paths ending above `position` than the checked cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominanceViolation {
    /// Index into the list of optima.
    pub optimum: usize,
    pub position: usize,
    pub ours: usize,
    pub theirs: usize,
}

/// For each optimum, the first `i` in `1..ρ` (ρ = rightmost endpoint of `c`)
/// with `ε'_i > ε_i`.
pub fn dominance_violations(c: &PathCover, optima: &[PathCover]) -> Vec<DominanceViolation> {
    let ours = c.epsilon_profile();
    let rho = c.rightmost_endpoint();
    optima
        .iter()
        .enumerate()
        .filter_map(|(k, o)| {
            let theirs = o.epsilon_profile();
            (1..rho).find(|&i| theirs[i] > ours[i]).map(|i| DominanceViolation {
                optimum: k,
                position: i,
                ours: ours[i],
                theirs: theirs[i],
            })
        })
        .collect()
}

/// Sum over vertices of their degree inside the cover.
pub fn d_connectivity(c: &PathCover) -> usize {
    c.paths.iter().map(|p| 2 * p.vertices.len().saturating_sub(1)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::Path;

    fn path(vs: &[usize], kind: PathKind) -> Path {
        Path::new(vs.iter().map(|&v| VertexId::new(v)).collect(), kind)
    }

    fn k(n: usize) -> OrderedGraph {
        OrderedGraph::from_leftmost(&vec![1; n]).unwrap()
    }

    #[test]
    fn hamiltonian_path_of_k3_is_valid() {
        let c = PathCover::new(vec![path(&[2, 1, 3], PathKind::Free)], None, 3);
        assert!(validate_cover(&k(3), &c, None).is_empty());
        assert_eq!(check_nesting(&c), Ok(()));
    }

    #[test]
    fn missing_vertex_is_reported() {
        let c = PathCover::new(vec![path(&[1, 2], PathKind::Free)], None, 3);
        assert_eq!(
            validate_cover(&k(3), &c, None),
            vec![Violation::CoverageViolation { vertex: 3 }]
        );
    }

    #[test]
    fn internal_terminal_is_reported() {
        let t = Some(VertexId::new(2));
        let c = PathCover::new(vec![path(&[1, 2, 3], PathKind::Terminal)], t, 3);
        let v = validate_cover(&k(3), &c, t);
        assert!(matches!(v.as_slice(), [Violation::TerminalViolation { terminal: 2, .. }]));
    }

    #[test]
    fn non_edges_are_reported() {
        let p3 = OrderedGraph::from_leftmost(&[1, 1, 2]).unwrap();
        let c = PathCover::new(vec![path(&[2, 1, 3], PathKind::Free)], None, 3);
        assert!(validate_cover(&p3, &c, None).contains(&Violation::AdjacencyViolation { a: 1, b: 3 }));
    }

    #[test]
    fn nested_paths_are_reported() {
        let c = PathCover::new(
            vec![path(&[1, 4], PathKind::Free), path(&[2, 3], PathKind::Free)],
            None,
            4,
        );
        assert_eq!(
            check_nesting(&c),
            Err(NestingViolation {
                outer: 0,
                inner: 1,
                endpoint: 2
            })
        );
        // The terminal path is exempt once a terminal exists.
        let c = PathCover::new(
            vec![path(&[1, 4], PathKind::Terminal), path(&[2, 3], PathKind::Free)],
            Some(VertexId::new(1)),
            4,
        );
        assert_eq!(check_nesting(&c), Ok(()));
    }
}
