//! Text formats for interval models, adjacency lists with a claimed
//! ordering, and convex bipartite graphs. `#` starts a comment everywhere.

use std::collections::HashMap;
use std::fmt::Write;
use std::str::FromStr;

use crate::bipartite::{BipartiteConvexGraph, Convexity};
use crate::error::{FormatError, GraphError, InputError};
use crate::graph::{validate_ordering, Endpoint, Interval, IntervalModel, OrderedGraph};

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

fn endpoint(line: usize, tok: &str) -> Result<Endpoint, FormatError> {
    Endpoint::from_str(tok).map_err(|_| err(line, format!("bad endpoint {tok:?}, expected an integer or p/q")))
}

/// `<id> <left> <right>` per line.
pub fn parse_interval_model(text: &str) -> Result<IntervalModel, InputError> {
    let mut intervals = Vec::new();
    for (no, line) in lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [id, l, r] = toks[..] else {
            return Err(err(no, "expected `<id> <left> <right>`").into());
        };
        intervals.push(Interval::new(id, endpoint(no, l)?, endpoint(no, r)?));
    }
    Ok(IntervalModel::new(intervals)?)
}

pub fn format_interval_model(model: &IntervalModel) -> String {
    let mut out = String::new();
    for iv in model.intervals() {
        writeln!(out, "{} {} {}", iv.id, iv.left, iv.right).expect("write to string");
    }
    out
}

/// An adjacency file: `n m`, then `m` lines `u v` (1-based), and an optional
/// `pi: i1 ... in` line listing the vertices in ordering position order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyInput {
    pub n: usize,
    /// 0-based endpoints.
    pub edges: Vec<(usize, usize)>,
    /// 0-based vertex at each ordering position.
    pub pi: Option<Vec<usize>>,
}

impl AdjacencyInput {
    /// Validates the claimed ordering (the identity when none is given).
    pub fn into_graph(self) -> Result<OrderedGraph, GraphError> {
        let pi = self.pi.unwrap_or_else(|| (0..self.n).collect());
        let labels = (1..=self.n).map(|v| v.to_string()).collect();
        validate_ordering(self.n, &self.edges, &pi, labels)
    }
}

pub fn parse_adjacency(text: &str) -> Result<AdjacencyInput, FormatError> {
    let mut it = lines(text);
    let (head, header) = it.next().ok_or_else(|| err(0, "empty adjacency file"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| err(head, format!("bad header token {t:?}"))))
        .collect::<Result<_, _>>()?;
    let [n, m] = nums[..] else {
        return Err(err(head, "header must be `n m`"));
    };
    let vertex = |no: usize, t: &str| -> Result<usize, FormatError> {
        match t.parse::<usize>() {
            Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
            _ => Err(err(no, format!("vertex {t:?} is not in 1..={n}"))),
        }
    };
    let mut edges = Vec::with_capacity(m);
    let mut pi = None;
    for (no, line) in it {
        if let Some(rest) = line.strip_prefix("pi:") {
            if pi.is_some() {
                return Err(err(no, "second pi: line"));
            }
            pi = Some(rest.split_whitespace().map(|t| vertex(no, t)).collect::<Result<Vec<_>, _>>()?);
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = toks[..] else {
            return Err(err(no, "expected an edge `u v`"));
        };
        edges.push((vertex(no, u)?, vertex(no, v)?));
    }
    if edges.len() != m {
        return Err(err(head, format!("header announces {m} edges, found {}", edges.len())));
    }
    Ok(AdjacencyInput { n, edges, pi })
}

/// Writes `g` with its own ordering as the identity `pi:` line.
pub fn format_adjacency(g: &OrderedGraph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (a, b) in edges {
        writeln!(out, "{a} {b}").expect("write to string");
    }
    let pi: Vec<String> = (1..=g.n()).map(|v| v.to_string()).collect();
    writeln!(out, "pi: {}", pi.join(" ")).expect("write to string");
    out
}

/// Header `X=<k> Y=<m> convex=<x|bi>`, the X ordering line, an optional Y
/// ordering line (required when some Y vertex has no edge), then `x y` edges.
pub fn parse_bipartite(text: &str) -> Result<BipartiteConvexGraph, InputError> {
    let mut it = lines(text);
    let (no, header) = it.next().ok_or_else(|| err(0, "empty bipartite file"))?;
    let (mut k, mut m, mut convexity) = (None, None, None);
    for tok in header.split_whitespace() {
        match tok.split_once('=') {
            Some(("X", v)) => k = v.parse::<usize>().ok(),
            Some(("Y", v)) => m = v.parse::<usize>().ok(),
            Some(("convex", "x")) => convexity = Some(Convexity::X),
            Some(("convex", "bi")) => convexity = Some(Convexity::Bi),
            _ => return Err(err(no, format!("bad header token {tok:?}")).into()),
        }
    }
    let (Some(k), Some(m), Some(convexity)) = (k, m, convexity) else {
        return Err(err(no, "header must be `X=<k> Y=<m> convex=<x|bi>`").into());
    };
    // with X empty the X line is blank, so there is nothing to read
    let (no, x): (usize, Vec<String>) = if k == 0 {
        (no, Vec::new())
    } else {
        let (no, xline) = it.next().ok_or_else(|| err(no, "missing X ordering line"))?;
        (no, xline.split_whitespace().map(String::from).collect())
    };
    if x.len() != k {
        return Err(err(no, format!("X ordering lists {} vertices, header says {k}", x.len())).into());
    }
    let xpos: HashMap<&str, usize> = x.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut y: Vec<String> = Vec::new();
    let mut y_given = false;
    let mut raw_edges = Vec::new();
    for (idx, (no, line)) in it.enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if idx == 0 && toks.first().is_some_and(|t| !xpos.contains_key(t)) {
            y = toks.iter().map(|t| t.to_string()).collect();
            y_given = true;
            continue;
        }
        let [a, b] = toks[..] else {
            return Err(err(no, "expected an edge `x y`").into());
        };
        let i = *xpos.get(a).ok_or_else(|| err(no, format!("{a:?} is not an X vertex")))?;
        raw_edges.push((no, i, b.to_string()));
    }
    if !y_given {
        for (_, _, b) in &raw_edges {
            if !y.contains(b) {
                y.push(b.clone());
            }
        }
    }
    if y.len() != m {
        return Err(err(0, format!("found {} Y vertices, header says {m}", y.len())).into());
    }
    let ypos: HashMap<&str, usize> = y.iter().enumerate().map(|(j, l)| (l.as_str(), j)).collect();
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (no, i, b) in &raw_edges {
        let j = *ypos.get(b.as_str()).ok_or_else(|| err(*no, format!("{b:?} is not a Y vertex")))?;
        edges.push((*i, j));
    }
    Ok(BipartiteConvexGraph::new(x, y, &edges, convexity)?)
}

pub fn format_bipartite(g: &BipartiteConvexGraph) -> String {
    let convex = match g.convexity() {
        Convexity::X => "x",
        Convexity::Bi => "bi",
    };
    let mut out = format!("X={} Y={} convex={convex}\n", g.x_labels().len(), g.y_labels().len());
    writeln!(out, "{}", g.x_labels().join(" ")).expect("write to string");
    writeln!(out, "{}", g.y_labels().join(" ")).expect("write to string");
    for (i, j) in g.edges() {
        writeln!(out, "{} {}", g.x_labels()[i], g.y_labels()[j]).expect("write to string");
    }
    out
}
