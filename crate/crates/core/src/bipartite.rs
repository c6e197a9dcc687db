//! Hamiltonian paths of convex and biconvex bipartite graphs through the
//! interval graph `G'` obtained by joining same-side vertices with a common
//! neighbour.

use crate::engine::{min_path_cover, solve_1pc};
use crate::error::BipartiteError;
use crate::graph::{build_ordering, Interval, IntervalModel, OrderedGraph, VertexId};
use crate::oracle::oracle_hamiltonian_path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convexity {
    /// Every `N(y)` is consecutive in the X ordering.
    X,
    /// Additionally every `N(x)` is consecutive in the Y ordering.
    Bi,
}

/// A vertex of a bipartite graph: its side and its position in that side's ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BipVertex {
    X(usize),
    Y(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteConvexGraph {
    x: Vec<String>,
    y: Vec<String>,
    /// `ny[j]`: sorted X positions adjacent to `y_j`.
    ny: Vec<Vec<usize>>,
    /// `nx[i]`: sorted Y positions adjacent to `x_i`.
    nx: Vec<Vec<usize>>,
    convexity: Convexity,
}

/// Which same-side edges `convexify` adds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Join `y1 y2` when `N(y1)` and `N(y2)` meet; needs X-convexity.
    AddYEdges,
    /// Join `x1 x2` when `N(x1)` and `N(x2)` meet; needs Y-convexity.
    AddXEdges,
}

fn consecutive(sorted: &[usize]) -> bool {
    sorted.windows(2).all(|w| w[1] == w[0] + 1)
}

impl BipartiteConvexGraph {
    /// `edges` are `(x position, y position)` pairs, 0-based in the given orderings.
    pub fn new(
        x: Vec<String>,
        y: Vec<String>,
        edges: &[(usize, usize)],
        convexity: Convexity,
    ) -> Result<Self, BipartiteError> {
        let mut labels: Vec<&String> = x.iter().chain(&y).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(BipartiteError::Invalid(format!("duplicate vertex label {}", w[0])));
        }
        let mut ny = vec![Vec::new(); y.len()];
        let mut nx = vec![Vec::new(); x.len()];
        for &(i, j) in edges {
            if i >= x.len() || j >= y.len() {
                return Err(BipartiteError::Invalid(format!("edge ({i}, {j}) out of range")));
            }
            ny[j].push(i);
            nx[i].push(j);
        }
        for list in ny.iter_mut().chain(nx.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        let g = BipartiteConvexGraph { x, y, ny, nx, convexity };
        g.check_side(Side::AddYEdges)?;
        if convexity == Convexity::Bi {
            g.check_side(Side::AddXEdges)?;
        }
        Ok(g)
    }

    /// Checks the convexity that `side` relies on.
    fn check_side(&self, side: Side) -> Result<(), BipartiteError> {
        let (lists, labels, name) = match side {
            Side::AddYEdges => (&self.ny, &self.y, "X"),
            Side::AddXEdges => (&self.nx, &self.x, "Y"),
        };
        match lists.iter().position(|n| !consecutive(n)) {
            Some(k) => Err(BipartiteError::ConvexityViolation {
                vertex: labels[k].clone(),
                side: name,
            }),
            None => Ok(()),
        }
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x
    }

    pub fn y_labels(&self) -> &[String] {
        &self.y
    }

    pub fn convexity(&self) -> Convexity {
        self.convexity
    }

    pub fn label(&self, v: BipVertex) -> &str {
        match v {
            BipVertex::X(i) => &self.x[i],
            BipVertex::Y(j) => &self.y[j],
        }
    }

    pub fn find(&self, label: &str) -> Option<BipVertex> {
        if let Some(i) = self.x.iter().position(|l| l == label) {
            return Some(BipVertex::X(i));
        }
        self.y.iter().position(|l| l == label).map(BipVertex::Y)
    }

    /// `(x, y)` position pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .nx
            .iter()
            .enumerate()
            .flat_map(|(i, n)| n.iter().map(move |&j| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn neighbors_of_y(&self, j: usize) -> &[usize] {
        &self.ny[j]
    }

    pub fn neighbors_of_x(&self, i: usize) -> &[usize] {
        &self.nx[i]
    }

    pub fn is_edge(&self, a: BipVertex, b: BipVertex) -> bool {
        match (a, b) {
            (BipVertex::X(i), BipVertex::Y(j)) | (BipVertex::Y(j), BipVertex::X(i)) => {
                self.ny[j].binary_search(&i).is_ok()
            }
            _ => false,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.x.len() + self.y.len()
    }

    /// Vertices in a fixed order: all of X, then all of Y.
    pub fn vertices(&self) -> Vec<BipVertex> {
        (0..self.x.len())
            .map(BipVertex::X)
            .chain((0..self.y.len()).map(BipVertex::Y))
            .collect()
    }

    /// Whether `path` is a Hamiltonian path of this graph.
    pub fn is_hamiltonian_path(&self, path: &[BipVertex]) -> bool {
        let mut seen = std::collections::HashSet::new();
        path.len() == self.vertex_count()
            && path.iter().all(|&v| match v {
                BipVertex::X(i) => i < self.x.len(),
                BipVertex::Y(j) => j < self.y.len(),
            })
            && path.iter().all(|v| seen.insert(*v))
            && path.windows(2).all(|w| self.is_edge(w[0], w[1]))
    }
}

/// The interval graph `G'` with an explicit model, and the bipartite vertex
/// behind each ordered position (index `k` is position `k + 1`).
#[derive(Debug, Clone)]
pub struct Convexified {
    pub graph: OrderedGraph,
    pub model: IntervalModel,
    pub vertex_of: Vec<BipVertex>,
}

impl Convexified {
    pub fn position(&self, v: BipVertex) -> VertexId {
        let k = self.vertex_of.iter().position(|&w| w == v).expect("vertex of the bipartite graph");
        VertexId::new(k + 1)
    }
}

/// Builds `G'`: the side whose neighbourhoods are consecutive becomes
/// intervals `[min N, max N]` over point intervals of the other side.
pub fn convexify(g: &BipartiteConvexGraph, side: Side) -> Result<Convexified, BipartiteError> {
    g.check_side(side)?;
    let (points, spans, lists) = match side {
        Side::AddYEdges => (g.x.len(), g.y.len(), &g.ny),
        Side::AddXEdges => (g.y.len(), g.x.len(), &g.nx),
    };
    let point = |k: usize| match side {
        Side::AddYEdges => BipVertex::X(k),
        Side::AddXEdges => BipVertex::Y(k),
    };
    let span = |k: usize| match side {
        Side::AddYEdges => BipVertex::Y(k),
        Side::AddXEdges => BipVertex::X(k),
    };
    let mut intervals = Vec::with_capacity(points + spans);
    let mut isolated = 0i64;
    for k in 0..points {
        let at = k as i64 + 1;
        intervals.push(Interval::new(g.label(point(k)), at, at));
    }
    for k in 0..spans {
        let (l, r) = match (lists[k].first(), lists[k].last()) {
            (Some(&a), Some(&b)) => (a as i64 + 1, b as i64 + 1),
            _ => {
                // no neighbours: a private point to the right of everything
                isolated += 1;
                let at = points as i64 + isolated;
                (at, at)
            }
        };
        intervals.push(Interval::new(g.label(span(k)), l, r));
    }
    let model = IntervalModel::new(intervals).map_err(|e| BipartiteError::Invalid(e.to_string()))?;
    let graph = build_ordering(&model);
    let vertex_of = graph
        .labels()
        .iter()
        .map(|l| g.find(l).expect("labels come from the bipartite graph"))
        .collect();
    let c = Convexified { graph, model, vertex_of };
    debug_assert!(c.vertex_of.len() > 200 || matches_definition(g, &c, side));
    Ok(c)
}

/// `G'` has exactly the edges of `g` plus same-side edges between vertices
/// with a common neighbour.
pub fn matches_definition(g: &BipartiteConvexGraph, c: &Convexified, side: Side) -> bool {
    let n = c.vertex_of.len();
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            let (u, v) = (c.vertex_of[a], c.vertex_of[b]);
            let expected = match (u, v, side) {
                (BipVertex::Y(p), BipVertex::Y(q), Side::AddYEdges) => g.ny[p].iter().any(|i| g.ny[q].contains(i)),
                (BipVertex::X(p), BipVertex::X(q), Side::AddXEdges) => g.nx[p].iter().any(|j| g.nx[q].contains(j)),
                _ => g.is_edge(u, v),
            };
            c.graph.is_adjacent(VertexId::new(a + 1), VertexId::new(b + 1)) == expected
        })
    })
}

/// Translates a one-path cover of `G'` back and checks it against the
/// original edges. A failure here is an engine bug, not a "no path" answer.
fn lift(g: &BipartiteConvexGraph, c: &Convexified, path: &[VertexId]) -> Vec<BipVertex> {
    let out: Vec<BipVertex> = path.iter().map(|v| c.vertex_of[v.index() - 1]).collect();
    assert!(
        g.is_hamiltonian_path(&out),
        "Hamiltonian path of G' does not alternate between X and Y"
    );
    out
}

fn single_path(g: &BipartiteConvexGraph, c: &Convexified, terminal: Option<BipVertex>) -> Option<Vec<BipVertex>> {
    let cover = match terminal {
        Some(t) => solve_1pc(&c.graph, Some(c.position(t))),
        None => min_path_cover(&c.graph),
    };
    if cover.lambda() != 1 {
        return None;
    }
    let mut path = cover.paths[0].vertices.clone();
    if let Some(t) = terminal {
        if path.last() == Some(&c.position(t)) {
            path.reverse();
        }
    }
    Some(lift(g, c, &path))
}

fn require_bi(g: &BipartiteConvexGraph) -> Result<(), BipartiteError> {
    g.check_side(Side::AddYEdges)?;
    g.check_side(Side::AddXEdges)
}

/// Hamiltonian path of a biconvex graph, or `None` if there is none.
pub fn hp_biconvex(g: &BipartiteConvexGraph) -> Result<Option<Vec<BipVertex>>, BipartiteError> {
    require_bi(g)?;
    let (nx, ny) = (g.x.len(), g.y.len());
    if nx.abs_diff(ny) > 1 {
        return Ok(None);
    }
    if nx + ny == 0 {
        return Ok(Some(Vec::new()));
    }
    if nx == ny {
        let c = convexify(g, Side::AddYEdges)?;
        // an alternating path with |X| = |Y| has exactly one end in Y
        let pendant: Vec<usize> = (0..ny).filter(|&j| g.ny[j].len() == 1).collect();
        if pendant.len() >= 2 {
            return Ok(None);
        }
        let starts: Vec<usize> = match pendant.first() {
            Some(&j) => vec![j],
            None => (0..ny).collect(),
        };
        for j in starts {
            if let Some(p) = single_path(g, &c, Some(BipVertex::Y(j))) {
                return Ok(Some(p));
            }
        }
        return Ok(None);
    }
    let side = if nx > ny { Side::AddYEdges } else { Side::AddXEdges };
    let c = convexify(g, side)?;
    Ok(single_path(g, &c, None))
}

/// Hamiltonian path of a biconvex graph starting at `start`, which must be in Y.
pub fn onehp_biconvex(g: &BipartiteConvexGraph, start: BipVertex) -> Result<Option<Vec<BipVertex>>, BipartiteError> {
    require_bi(g)?;
    let BipVertex::Y(j) = start else {
        return Err(BipartiteError::StartNotInY(g.label(start).to_string()));
    };
    if j >= g.y.len() {
        return Err(BipartiteError::Invalid(format!("no Y vertex at position {j}")));
    }
    let (nx, ny) = (g.x.len(), g.y.len());
    if nx.abs_diff(ny) > 1 || nx == ny + 1 {
        return Ok(None);
    }
    let side = if nx == ny { Side::AddYEdges } else { Side::AddXEdges };
    let c = convexify(g, side)?;
    Ok(single_path(g, &c, Some(start)))
}

/// Hamiltonian path of an X-convex graph when `|X| = |Y|` or `|X| - |Y| = 1`.
pub fn hp_xconvex(g: &BipartiteConvexGraph) -> Result<Option<Vec<BipVertex>>, BipartiteError> {
    g.check_side(Side::AddYEdges)?;
    let (nx, ny) = (g.x.len(), g.y.len());
    if nx.abs_diff(ny) > 1 {
        return Ok(None);
    }
    if ny == nx + 1 {
        return Err(BipartiteError::UnsupportedCase(
            "|Y| - |X| = 1 on an X-convex graph needs both path ends fixed".into(),
        ));
    }
    if nx + ny == 0 {
        return Ok(Some(Vec::new()));
    }
    let c = convexify(g, Side::AddYEdges)?;
    if nx == ny + 1 {
        return Ok(single_path(g, &c, None));
    }
    for j in 0..ny {
        if let Some(p) = single_path(g, &c, Some(BipVertex::Y(j))) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Hamiltonian path of an X-convex graph starting at `start`, in the cases
/// `|X| = |Y|` with `start` in Y, and `|X| - |Y| = 1`.
pub fn onehp_xconvex(g: &BipartiteConvexGraph, start: BipVertex) -> Result<Option<Vec<BipVertex>>, BipartiteError> {
    g.check_side(Side::AddYEdges)?;
    let (nx, ny) = (g.x.len(), g.y.len());
    let in_y = matches!(start, BipVertex::Y(_));
    if nx.abs_diff(ny) > 1 {
        return Ok(None);
    }
    if ny == nx + 1 {
        if !in_y {
            // both ends of an alternating path with more Y vertices are in Y
            return Ok(None);
        }
        return Err(BipartiteError::UnsupportedCase(
            "|Y| - |X| = 1 with a start in Y needs both path ends fixed".into(),
        ));
    }
    if nx == ny + 1 && in_y {
        return Ok(None);
    }
    if nx == ny && !in_y {
        return Err(BipartiteError::UnsupportedCase("|X| = |Y| with a start in X".into()));
    }
    let c = convexify(g, Side::AddYEdges)?;
    Ok(single_path(g, &c, Some(start)))
}

/// Brute-force Hamiltonian path of a bipartite graph, optionally from `start`.
pub fn brute_force_hp(g: &BipartiteConvexGraph, start: Option<BipVertex>) -> Option<Vec<BipVertex>> {
    let vs = g.vertices();
    let s = start.map(|v| vs.iter().position(|&w| w == v).expect("vertex of g"));
    oracle_hamiltonian_path(vs.len(), |a, b| g.is_edge(vs[a], vs[b]), s)
        .expect("bipartite oracle bound")
        .map(|p| p.into_iter().map(|k| vs[k]).collect())
}

/// Brute-force Hamiltonian path of an ordered graph.
pub fn brute_force_interval_hp(g: &OrderedGraph) -> Option<Vec<VertexId>> {
    oracle_hamiltonian_path(g.n(), |a, b| g.is_adjacent(VertexId::new(a + 1), VertexId::new(b + 1)), None)
        .expect("interval oracle bound")
        .map(|p| p.into_iter().map(|k| VertexId::new(k + 1)).collect())
}

/// Every biconvex graph on `|X| = nx`, `|Y| = ny` with the identity orderings,
/// each Y vertex adjacent to a non-empty run of X.
pub fn all_biconvex(nx: usize, ny: usize) -> Vec<BipartiteConvexGraph> {
    all_convex(nx, ny, false, Convexity::Bi)
}

/// Like [`all_biconvex`]; with `allow_isolated`, Y vertices may have no neighbour.
pub fn all_convex(nx: usize, ny: usize, allow_isolated: bool, convexity: Convexity) -> Vec<BipartiteConvexGraph> {
    let mut runs: Vec<Option<(usize, usize)>> = Vec::new();
    if allow_isolated {
        runs.push(None);
    }
    for a in 0..nx {
        for b in a..nx {
            runs.push(Some((a, b)));
        }
    }
    let x: Vec<String> = (1..=nx).map(|i| format!("x{i}")).collect();
    let y: Vec<String> = (1..=ny).map(|j| format!("y{j}")).collect();
    let mut out = Vec::new();
    if runs.is_empty() && ny > 0 {
        return out;
    }
    let mut pick = vec![0usize; ny];
    loop {
        let edges: Vec<(usize, usize)> = pick
            .iter()
            .enumerate()
            .filter_map(|(j, &r)| runs[r].map(|(a, b)| (j, a, b)))
            .flat_map(|(j, a, b)| (a..=b).map(move |i| (i, j)))
            .collect();
        if let Ok(g) = BipartiteConvexGraph::new(x.clone(), y.clone(), &edges, convexity) {
            out.push(g);
        }
        // next tuple
        let mut k = 0;
        loop {
            if k == ny {
                return out;
            }
            pick[k] += 1;
            if pick[k] < runs.len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// Searches biconvex graphs with `|X| = |Y| <= bound` for one where `G'`
/// (with the Y-side edges) has a Hamiltonian path but `G` has none. Sizes are
/// tried from `bound` down, so the answer has the largest size that has one.
pub fn find_observation51_counterexample(bound: usize) -> Option<BipartiteConvexGraph> {
    (1..=bound).rev().find_map(|k| {
        all_biconvex(k, k).into_iter().find(|g| {
            let c = convexify(g, Side::AddYEdges).expect("biconvex");
            brute_force_hp(g, None).is_none() && brute_force_interval_hp(&c.graph).is_some()
        })
    })
}
