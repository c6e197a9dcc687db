//! Path covers and their text serialization.
//!
//! ```text
//! lambda=2 terminal=2 n=4
//! P1 T: 2 1
//! P2 F: 3 4
//! ```

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::FormatError;
use crate::graph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathKind {
    Terminal,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub kind: PathKind,
}

impl Path {
    pub fn new(vertices: Vec<VertexId>, kind: PathKind) -> Self {
        Path { vertices, kind }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    /// `(left, right)` endpoints in ordering terms.
    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        let a = *self.vertices.first()?;
        let b = *self.vertices.last()?;
        Some((a.min(b), a.max(b)))
    }

    pub fn has_endpoint(&self, v: VertexId) -> bool {
        self.vertices.first() == Some(&v) || self.vertices.last() == Some(&v)
    }
}

/// A finished path cover of an ordered graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCover {
    pub paths: Vec<Path>,
    pub terminal: Option<VertexId>,
    pub n: usize,
}

impl PathCover {
    pub fn new(paths: Vec<Path>, terminal: Option<VertexId>, n: usize) -> Self {
        PathCover { paths, terminal, n }
    }

    /// Number of paths.
    pub fn lambda(&self) -> usize {
        self.paths.len()
    }

    /// Puts every path and the path list into a canonical form: the terminal
    /// path starts at the terminal, free paths start at their left endpoint,
    /// and paths are sorted by left endpoint.
    pub fn canonicalize(&mut self) {
        let terminal = self.terminal;
        for p in &mut self.paths {
            let (Some(&a), Some(&b)) = (p.vertices.first(), p.vertices.last()) else {
                continue;
            };
            let flip = match terminal {
                Some(t) if p.kind == PathKind::Terminal => b == t && a != t,
                _ => b < a,
            };
            if flip {
                p.vertices.reverse();
            }
        }
        self.paths.sort_by_key(|p| p.endpoints());
    }

    pub fn terminal_path(&self) -> Option<&Path> {
        self.paths.iter().find(|p| p.kind == PathKind::Terminal)
    }

    /// `eps[i]` = number of distinct paths having an endpoint with index in
    /// `(i, n]`, for `i = 0..=n`. `eps[0]` is the path count.
    pub fn epsilon_profile(&self) -> Vec<usize> {
        let mut by_right = vec![0usize; self.n + 1];
        for p in &self.paths {
            if let Some((_, r)) = p.endpoints() {
                by_right[r.index()] += 1;
            }
        }
        let mut eps = vec![0usize; self.n + 1];
        let mut acc = 0;
        for i in (0..=self.n).rev() {
            eps[i] = acc;
            acc += by_right[i];
        }
        eps
    }

    /// Index of the rightmost endpoint of any path, 0 for the empty cover.
    pub fn rightmost_endpoint(&self) -> usize {
        self.paths
            .iter()
            .filter_map(|p| p.endpoints())
            .map(|(_, r)| r.index())
            .max()
            .unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<PathCover, FormatError> {
        let mut header: Option<(usize, Option<VertexId>, usize)> = None;
        let mut paths = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| FormatError {
                line: line_no,
                message,
            };
            if header.is_none() {
                let mut lambda = None;
                let mut terminal = None;
                let mut n = None;
                for tok in line.split_whitespace() {
                    let (key, val) = tok
                        .split_once('=')
                        .ok_or_else(|| err(format!("expected key=value, got {tok:?}")))?;
                    match key {
                        "lambda" => {
                            lambda = Some(val.parse::<usize>().map_err(|e| err(format!("lambda: {e}")))?)
                        }
                        "terminal" => {
                            terminal = Some(if val == "none" {
                                None
                            } else {
                                let t = val.parse::<usize>().map_err(|e| err(format!("terminal: {e}")))?;
                                if t == 0 {
                                    return Err(err("terminal must be 1-based".into()));
                                }
                                Some(VertexId::new(t))
                            })
                        }
                        "n" => n = Some(val.parse::<usize>().map_err(|e| err(format!("n: {e}")))?),
                        other => return Err(err(format!("unknown header key {other:?}"))),
                    }
                }
                match (lambda, terminal, n) {
                    (Some(l), Some(t), Some(n)) => header = Some((l, t, n)),
                    _ => return Err(err("header must define lambda, terminal and n".into())),
                }
                continue;
            }
            let (head, body) = line
                .split_once(':')
                .ok_or_else(|| err("path line must look like `P<k> T|F: ...`".into()))?;
            let mut head_toks = head.split_whitespace();
            let name = head_toks.next().unwrap_or("");
            if !name.starts_with('P') {
                return Err(err(format!("bad path name {name:?}")));
            }
            let kind = match head_toks.next().map(|s| s.trim_matches(|c| c == '[' || c == ']')) {
                Some("T") => PathKind::Terminal,
                Some("F") => PathKind::Free,
                other => return Err(err(format!("expected path kind T or F, got {other:?}"))),
            };
            let vertices = body
                .split_whitespace()
                .map(|tok| match tok.parse::<usize>() {
                    Ok(0) => Err(err("vertex indices are 1-based".into())),
                    Ok(v) => Ok(VertexId::new(v)),
                    Err(e) => Err(err(format!("vertex {tok:?}: {e}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if vertices.is_empty() {
                return Err(err("empty path".into()));
            }
            paths.push(Path::new(vertices, kind));
        }
        let (lambda, terminal, n) = header.ok_or(FormatError {
            line: 0,
            message: "missing header".into(),
        })?;
        if lambda != paths.len() {
            return Err(FormatError {
                line: 0,
                message: format!("header says lambda={lambda} but {} paths follow", paths.len()),
            });
        }
        Ok(PathCover { paths, terminal, n })
    }
}

impl fmt::Display for PathCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terminal = self
            .terminal
            .map(|t| t.to_string())
            .unwrap_or_else(|| "none".to_string());
        writeln!(f, "lambda={} terminal={} n={}", self.lambda(), terminal, self.n)?;
        for (k, p) in self.paths.iter().enumerate() {
            let mut line = String::new();
            let kind = match p.kind {
                PathKind::Terminal => 'T',
                PathKind::Free => 'F',
            };
            write!(line, "P{} {}:", k + 1, kind)?;
            for v in &p.vertices {
                write!(line, " {v}")?;
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
