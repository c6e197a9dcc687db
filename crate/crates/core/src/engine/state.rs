//! Mutable path bookkeeping used by the engine.
//!
//! Paths are stored as doubly linked vertex chains (`link`) plus one record
//! per path with its two endpoints. Every structural edit is O(path length).

use crate::cover::{Path, PathCover, PathKind};
use crate::error::InternalInvariantViolation;
use crate::graph::{OrderedGraph, VertexId};

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PathRec {
    /// Endpoints, `ends[0] <= ends[1]`; equal for a trivial path.
    pub ends: [u32; 2],
    pub alive: bool,
    /// Creation counter, used only to break ties deterministically.
    pub born: u32,
}

impl PathRec {
    pub fn left(&self) -> usize {
        self.ends[0] as usize
    }
    pub fn right(&self) -> usize {
        self.ends[1] as usize
    }
}

/// Classification of a vertex in the partial cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointClass {
    Unplaced,
    Internal,
    LeftEndpoint,
    RightEndpoint,
    /// Both endpoints of a one-vertex path.
    Trivial,
}

/// The evolving cover of the processed prefix.
#[derive(Debug, Clone)]
pub struct CoverState<'g> {
    pub(crate) g: &'g OrderedGraph,
    /// Vertex that is never processed (the shadow run drops the terminal).
    pub(crate) skip: Option<usize>,
    pub(crate) terminal: Option<usize>,
    pub(crate) link: Vec<[u32; 2]>,
    pub(crate) pid: Vec<u32>,
    pub(crate) placed: Vec<bool>,
    pub(crate) paths: Vec<PathRec>,
    pub(crate) lambda: usize,
    /// Number of vertices of the ordering already swept (placed or skipped).
    pub(crate) next: usize,
    born_counter: u32,
}

impl<'g> CoverState<'g> {
    pub(crate) fn new(g: &'g OrderedGraph, terminal: Option<usize>, skip: Option<usize>) -> Self {
        let n = g.n();
        CoverState {
            g,
            skip,
            terminal,
            link: vec![[NONE; 2]; n],
            pid: vec![NONE; n],
            placed: vec![false; n],
            paths: Vec::new(),
            lambda: 0,
            next: 0,
            born_counter: 0,
        }
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Number of ordering positions swept so far.
    pub fn processed(&self) -> usize {
        self.next
    }

    pub fn classify(&self, v: VertexId) -> EndpointClass {
        let v = v.zero_based();
        if !self.placed[v] {
            return EndpointClass::Unplaced;
        }
        let rec = &self.paths[self.pid[v] as usize];
        match self.degree(v) {
            2 => EndpointClass::Internal,
            0 => EndpointClass::Trivial,
            _ if rec.left() == v => EndpointClass::LeftEndpoint,
            _ => EndpointClass::RightEndpoint,
        }
    }

    #[inline]
    pub(crate) fn adj(&self, a: usize, b: usize) -> bool {
        Some(a) != self.skip && Some(b) != self.skip && self.g.adjacent0(a, b)
    }

    #[inline]
    pub(crate) fn degree(&self, v: usize) -> usize {
        self.link[v].iter().filter(|&&x| x != NONE).count()
    }

    #[inline]
    pub(crate) fn is_endpoint(&self, v: usize) -> bool {
        self.placed[v] && self.degree(v) < 2
    }

    /// An endpoint other than the terminal; the terminal's own one-vertex
    /// path still offers one free end.
    #[inline]
    pub(crate) fn is_free_endpoint(&self, v: usize) -> bool {
        self.is_endpoint(v) && (Some(v) != self.terminal || self.degree(v) == 0)
    }

    #[inline]
    pub(crate) fn path(&self, v: usize) -> usize {
        self.pid[v] as usize
    }

    pub(crate) fn is_terminal_path(&self, p: usize) -> bool {
        match self.terminal {
            Some(t) => self.placed[t] && self.pid[t] as usize == p,
            None => false,
        }
    }

    pub(crate) fn alive_paths(&self) -> impl Iterator<Item = usize> + '_ {
        self.paths
            .iter()
            .enumerate()
            .filter(|(_, r)| r.alive)
            .map(|(k, _)| k)
    }

    /// Path neighbour of `v` other than `not`.
    #[inline]
    pub(crate) fn other_link(&self, v: usize, not: u32) -> u32 {
        let [a, b] = self.link[v];
        if a != not {
            a
        } else {
            b
        }
    }

    /// Vertices of `v`'s path in order, starting from `from` (an endpoint).
    pub(crate) fn walk_from(&self, from: usize) -> Vec<usize> {
        let mut out = vec![from];
        let mut prev = NONE;
        let mut cur = from as u32;
        loop {
            let nx = self.other_link(cur as usize, prev);
            if nx == NONE {
                break;
            }
            out.push(nx as usize);
            prev = cur;
            cur = nx;
        }
        out
    }

    /// Vertices of path `p` from its left endpoint.
    pub(crate) fn path_vertices(&self, p: usize) -> Vec<usize> {
        self.walk_from(self.paths[p].left())
    }

    fn find_end(&self, v: usize) -> usize {
        if self.degree(v) < 2 {
            return v;
        }
        let mut prev = v as u32;
        let mut cur = self.link[v][0];
        loop {
            let nx = self.other_link(cur as usize, prev);
            if nx == NONE {
                return cur as usize;
            }
            prev = cur;
            cur = nx;
        }
    }

    /// Re-derives the record of the path through `v`, storing it under `id`.
    pub(crate) fn rebuild(&mut self, v: usize, id: usize) {
        let start = self.find_end(v);
        let verts = self.walk_from(start);
        for &w in &verts {
            self.pid[w] = id as u32;
        }
        let a = start as u32;
        let b = *verts.last().expect("non-empty") as u32;
        let rec = &mut self.paths[id];
        rec.ends = [a.min(b), a.max(b)];
        rec.alive = true;
    }

    pub(crate) fn new_record(&mut self) -> usize {
        self.born_counter += 1;
        self.paths.push(PathRec {
            ends: [0, 0],
            alive: true,
            born: self.born_counter,
        });
        self.paths.len() - 1
    }

    pub(crate) fn kill(&mut self, p: usize) {
        if self.paths[p].alive {
            self.paths[p].alive = false;
            self.lambda -= 1;
        }
    }

    /// Places `v` as a new one-vertex path.
    pub(crate) fn place_trivial(&mut self, v: usize) -> usize {
        let id = self.new_record();
        self.placed[v] = true;
        self.link[v] = [NONE; 2];
        self.pid[v] = id as u32;
        self.paths[id].ends = [v as u32, v as u32];
        self.lambda += 1;
        id
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        for (x, y) in [(a, b), (b, a)] {
            let slot = self.link[x].iter().position(|&s| s == NONE).expect("free link slot");
            self.link[x][slot] = y as u32;
        }
    }

    pub(crate) fn remove_edge(&mut self, a: usize, b: usize) {
        for (x, y) in [(a, b), (b, a)] {
            let slot = self.link[x].iter().position(|&s| s == y as u32).expect("edge present");
            self.link[x][slot] = NONE;
        }
    }

    /// Joins endpoint `e` (of one path) and endpoint `f` (of another path)
    /// with an edge; the merged path keeps the older record.
    pub(crate) fn join(&mut self, e: usize, f: usize) {
        let (pe, pf) = (self.path(e), self.path(f));
        debug_assert_ne!(pe, pf);
        let keep = if self.paths[pe].born <= self.paths[pf].born { pe } else { pf };
        let drop = if keep == pe { pf } else { pe };
        self.add_edge(e, f);
        self.kill(drop);
        self.rebuild(e, keep);
    }

    /// Attaches unplaced `v` to endpoint `e`.
    pub(crate) fn attach(&mut self, e: usize, v: usize) {
        let p = self.path(e);
        self.placed[v] = true;
        self.add_edge(e, v);
        self.rebuild(v, p);
    }

    /// Removes path edge `a b`; the piece containing `b` gets a new record.
    /// Returns the new record id.
    pub(crate) fn cut(&mut self, a: usize, b: usize) -> usize {
        let p = self.path(a);
        self.remove_edge(a, b);
        self.rebuild(a, p);
        let q = self.new_record();
        self.lambda += 1;
        self.rebuild(b, q);
        q
    }

    /// Replaces path `p` by the explicit vertex sequence `seq`.
    pub(crate) fn relay(&mut self, p: usize, seq: &[usize]) {
        for &v in seq {
            self.link[v] = [NONE; 2];
        }
        for w in seq.windows(2) {
            self.add_edge(w[0], w[1]);
        }
        self.rebuild(seq[0], p);
    }

    /// `row[j]` = number of paths with an endpoint at a position `> j`.
    pub(crate) fn epsilon_row(&self) -> Vec<u32> {
        let mut by_right = vec![0u32; self.next + 1];
        for p in self.alive_paths() {
            by_right[self.paths[p].right()] += 1;
        }
        let mut row = vec![0u32; self.next + 1];
        let mut acc = 0;
        for j in (0..=self.next).rev() {
            row[j] = acc;
            acc += by_right[j];
        }
        row
    }

    /// Whether some free path has an endpoint strictly inside another free path.
    pub(crate) fn free_nested(&self) -> bool {
        let t = self.terminal;
        let mut spans: Vec<(usize, usize)> = self
            .alive_paths()
            .map(|p| (self.paths[p].left(), self.paths[p].right()))
            .filter(|&(l, r)| t != Some(l) && t != Some(r))
            .collect();
        spans.sort_unstable();
        // sorted by left end: nesting shows up as a left end below the previous right end
        spans.windows(2).any(|w| w[1].0 < w[0].1)
    }

    /// Structural self-check of the prefix cover.
    pub(crate) fn check(&self) -> Result<(), InternalInvariantViolation> {
        let step = self.next;
        let fail = |detail: String| Err(InternalInvariantViolation { step, detail });
        let mut covered = 0usize;
        let mut alive = 0usize;
        for p in self.alive_paths() {
            alive += 1;
            let verts = self.path_vertices(p);
            let rec = &self.paths[p];
            let (a, b) = (verts[0], *verts.last().expect("non-empty"));
            if [a.min(b) as u32, a.max(b) as u32] != rec.ends {
                return fail(format!("path record {p} has stale endpoints"));
            }
            for w in verts.windows(2) {
                if !self.adj(w[0], w[1]) {
                    return fail(format!("path edge {}-{} is not a graph edge", w[0] + 1, w[1] + 1));
                }
            }
            for &v in &verts {
                if self.pid[v] as usize != p || !self.placed[v] || v >= self.next {
                    return fail(format!("vertex {} is misfiled", v + 1));
                }
            }
            covered += verts.len();
        }
        let expected = (0..self.next).filter(|&v| Some(v) != self.skip).count();
        if covered != expected {
            return fail(format!("paths cover {covered} vertices, prefix has {expected}"));
        }
        if alive != self.lambda {
            return fail(format!("lambda is {} but {alive} paths are alive", self.lambda));
        }
        if let Some(t) = self.terminal {
            if t < self.next && !self.is_endpoint(t) {
                return fail(format!("terminal {} became internal", t + 1));
            }
        }
        Ok(())
    }

    /// The current prefix cover as a standalone `PathCover` (vertex indices
    /// are positions in the full ordering).
    pub fn snapshot(&self) -> PathCover {
        let terminal = self.terminal.filter(|&t| t < self.next);
        let mut paths: Vec<(u32, Path)> = self
            .alive_paths()
            .map(|p| {
                let kind = if self.is_terminal_path(p) {
                    PathKind::Terminal
                } else {
                    PathKind::Free
                };
                let verts = self.path_vertices(p);
                (
                    self.paths[p].born,
                    Path::new(verts.into_iter().map(VertexId::from_zero_based).collect(), kind),
                )
            })
            .collect();
        paths.sort_by_key(|(born, _)| *born);
        let mut cover = PathCover::new(
            paths.into_iter().map(|(_, p)| p).collect(),
            terminal.map(VertexId::from_zero_based),
            self.next,
        );
        cover.canonicalize();
        cover
    }
}
