//! Interval models and the right-endpoint vertex ordering.
//!
//! Every graph handled by the engine is stored together with an ordering
//! `v_1, ..., v_n` such that whenever `i < j < k` and `v_i v_k` is an edge,
//! `v_j v_k` is an edge too. Under that ordering the lower neighbourhood of
//! each vertex is a contiguous run `v_lo, ..., v_{k-1}`, so the whole graph is
//! captured by one index per vertex.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;

use crate::error::GraphError;

/// Exact interval endpoint.
pub type Endpoint = Ratio<i64>;

/// A vertex, identified by its 1-based position in the ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    /// Builds a vertex id from a 1-based position. Panics on zero.
    pub fn new(index: usize) -> Self {
        assert!(index >= 1, "vertex ids are 1-based");
        VertexId(index as u32)
    }

    pub(crate) fn from_zero_based(index: usize) -> Self {
        VertexId(index as u32 + 1)
    }

    /// 1-based position in the ordering.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn zero_based(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub id: String,
    pub left: Endpoint,
    pub right: Endpoint,
}

impl Interval {
    pub fn new(id: impl Into<String>, left: impl Into<Endpoint>, right: impl Into<Endpoint>) -> Self {
        Interval {
            id: id.into(),
            left: left.into(),
            right: right.into(),
        }
    }

    /// Closed-interval intersection test.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }
}

/// A family of closed intervals; its intersection graph is the interval graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalModel {
    intervals: Vec<Interval>,
}

impl IntervalModel {
    pub fn new(intervals: Vec<Interval>) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(intervals.len());
        for iv in &intervals {
            if iv.left > iv.right {
                return Err(GraphError::InvertedInterval {
                    id: iv.id.clone(),
                    left: iv.left.to_string(),
                    right: iv.right.to_string(),
                });
            }
            if !seen.insert(iv.id.as_str()) {
                return Err(GraphError::DuplicateId(iv.id.clone()));
            }
        }
        Ok(IntervalModel { intervals })
    }

    /// Integer-endpoint convenience constructor; ids are `"1"`, `"2"`, ...
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self, GraphError> {
        Self::new(
            pairs
                .iter()
                .enumerate()
                .map(|(k, &(l, r))| Interval::new((k + 1).to_string(), l, r))
                .collect(),
        )
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingOrigin {
    FromModel,
    ClaimedAndValidated,
}

/// An interval graph whose vertices are numbered by a valid ordering.
///
/// `lo[k]` holds the (0-based) leftmost lower neighbour of vertex `k`, or `k`
/// itself when `k` has no lower neighbour. Adjacency queries are O(1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedGraph {
    lo: Vec<u32>,
    labels: Vec<String>,
    origin: OrderingOrigin,
}

impl OrderedGraph {
    /// Builds a graph directly from leftmost-lower-neighbour positions
    /// (1-based, `lo[k-1] == k` meaning "no lower neighbour").
    pub fn from_leftmost(leftmost: &[usize]) -> Result<Self, GraphError> {
        let mut lo = Vec::with_capacity(leftmost.len());
        for (k, &l) in leftmost.iter().enumerate() {
            if l < 1 || l > k + 1 {
                return Err(GraphError::Parse(format!(
                    "leftmost neighbour {l} of vertex {} is out of range",
                    k + 1
                )));
            }
            lo.push((l - 1) as u32);
        }
        let labels = (1..=leftmost.len()).map(|k| k.to_string()).collect();
        Ok(OrderedGraph {
            lo,
            labels,
            origin: OrderingOrigin::ClaimedAndValidated,
        })
    }

    pub fn n(&self) -> usize {
        self.lo.len()
    }

    pub fn origin(&self) -> OrderingOrigin {
        self.origin
    }

    /// Original label of the vertex at position `v`.
    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.zero_based()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n()).map(VertexId::from_zero_based)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.index() >= 1 && v.index() <= self.n()
    }

    pub fn is_adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adjacent0(a.zero_based(), b.zero_based())
    }

    #[inline]
    pub(crate) fn adjacent0(&self, a: usize, b: usize) -> bool {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => a >= self.lo[b] as usize,
            std::cmp::Ordering::Greater => b >= self.lo[a] as usize,
            std::cmp::Ordering::Equal => false,
        }
    }

    /// 0-based leftmost lower neighbour, or `k` itself.
    #[inline]
    pub(crate) fn lo0(&self, k: usize) -> usize {
        self.lo[k] as usize
    }

    /// Minimum-index neighbour of `v` among `v_1, ..., v_{i-1}`.
    pub fn leftmost_neighbor(&self, v: VertexId) -> Option<VertexId> {
        let k = v.zero_based();
        let l = self.lo0(k);
        (l < k).then(|| VertexId::from_zero_based(l))
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let k = v.zero_based();
        let mut out: Vec<VertexId> = (self.lo0(k)..k).map(VertexId::from_zero_based).collect();
        out.extend(
            (k + 1..self.n())
                .filter(|&w| self.lo0(w) <= k)
                .map(VertexId::from_zero_based),
        );
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|k| k - self.lo0(k)).sum()
    }

    /// All edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.n() {
            for b in a + 1..self.n() {
                if self.adjacent0(a, b) {
                    out.push((VertexId::from_zero_based(a), VertexId::from_zero_based(b)));
                }
            }
        }
        out
    }

    /// The subgraph induced by the first `len` vertices.
    pub fn prefix(&self, len: usize) -> OrderedGraph {
        OrderedGraph {
            lo: self.lo[..len].to_vec(),
            labels: self.labels[..len].to_vec(),
            origin: self.origin,
        }
    }

    /// The graph with vertex `v` deleted; the ordering of the rest is kept.
    pub fn without(&self, v: VertexId) -> OrderedGraph {
        let del = v.zero_based();
        let mut lo = Vec::with_capacity(self.n().saturating_sub(1));
        let mut labels = Vec::with_capacity(self.n().saturating_sub(1));
        for k in (0..self.n()).filter(|&k| k != del) {
            let new_k = if k > del { k - 1 } else { k };
            let mut l = self.lo0(k);
            if k > del && l == del {
                l += 1;
            }
            let new_l = if l > del { l - 1 } else { l };
            lo.push(new_l.min(new_k) as u32);
            labels.push(self.labels[k].clone());
        }
        OrderedGraph {
            lo,
            labels,
            origin: self.origin,
        }
    }
}

/// Renumbers the intervals by ascending right endpoint (ties: ascending left
/// endpoint, then input order) and builds the intersection graph.
pub fn build_ordering(model: &IntervalModel) -> OrderedGraph {
    let ivs = model.intervals();
    let mut order: Vec<usize> = (0..ivs.len()).collect();
    order.sort_by(|&a, &b| {
        ivs[a]
            .right
            .cmp(&ivs[b].right)
            .then_with(|| ivs[a].left.cmp(&ivs[b].left))
            .then_with(|| a.cmp(&b))
    });
    let rights: Vec<&Endpoint> = order.iter().map(|&k| &ivs[k].right).collect();
    let lo = order
        .iter()
        .enumerate()
        .map(|(pos, &k)| {
            // lower neighbours of `pos` are exactly the earlier intervals whose
            // right end reaches its left end; rights are sorted, so a suffix.
            let first = rights[..pos].partition_point(|r| **r < ivs[k].left);
            first as u32
        })
        .collect();
    let labels = order.iter().map(|&k| ivs[k].id.clone()).collect();
    let graph = OrderedGraph {
        lo,
        labels,
        origin: OrderingOrigin::FromModel,
    };
    debug_assert!(ivs.len() > 256 || {
        let by_label: std::collections::HashMap<&str, &Interval> =
            ivs.iter().map(|iv| (iv.id.as_str(), iv)).collect();
        (0..graph.n()).all(|a| {
            (0..graph.n()).all(|b| {
                a == b
                    || graph.adjacent0(a, b)
                        == by_label[graph.labels[a].as_str()]
                            .intersects(by_label[graph.labels[b].as_str()])
            })
        })
    });
    graph
}

/// Checks that `claimed` (a permutation of `0..n`, `claimed[k]` = the input
/// vertex placed at position `k`) is a valid ordering for the given
/// undirected edge list, and builds the ordered graph if so.
///
/// `labels[v]` names input vertex `v`.
pub fn validate_ordering(
    n: usize,
    edges: &[(usize, usize)],
    claimed: &[usize],
    labels: Vec<String>,
) -> Result<OrderedGraph, GraphError> {
    if claimed.len() != n || labels.len() != n {
        return Err(GraphError::NotAPermutation(format!(
            "expected {n} entries, got {}",
            claimed.len()
        )));
    }
    let mut pos = vec![usize::MAX; n];
    for (k, &v) in claimed.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(GraphError::NotAPermutation(format!(
                "vertex {} appears more than once or is out of range",
                v + 1
            )));
        }
        pos[v] = k;
    }
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut seen = HashSet::with_capacity(edges.len());
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(GraphError::Parse(format!("edge {} {} out of range", u + 1, v + 1)));
        }
        if u == v {
            return Err(GraphError::Parse(format!("self loop at vertex {}", u + 1)));
        }
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        if seen.insert((a, b)) {
            lower[b].push(a);
        }
    }
    let mut lo = Vec::with_capacity(n);
    for (k, nb) in lower.iter_mut().enumerate() {
        nb.sort_unstable();
        let first = nb.first().copied().unwrap_or(k);
        // the lower neighbours of k must be exactly first..k
        for (off, &a) in nb.iter().enumerate() {
            if a != first + off {
                let missing = first + off;
                return Err(GraphError::OrderingViolation {
                    i: first + 1,
                    j: missing + 1,
                    k: k + 1,
                });
            }
        }
        if let Some(&last) = nb.last() {
            if last != k - 1 {
                return Err(GraphError::OrderingViolation {
                    i: first + 1,
                    j: last + 2,
                    k: k + 1,
                });
            }
        }
        lo.push(first as u32);
    }
    let labels = claimed.iter().map(|&v| labels[v].clone()).collect();
    Ok(OrderedGraph {
        lo,
        labels,
        origin: OrderingOrigin::ClaimedAndValidated,
    })
}
