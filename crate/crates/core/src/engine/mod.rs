//! The greedy sweep computing a minimum 1-fixed-endpoint path cover.

mod state;

pub use state::{CoverState, EndpointClass};

use serde::Serialize;

use crate::cover::PathCover;
use crate::error::InternalInvariantViolation;
use crate::graph::{OrderedGraph, VertexId};
use state::NONE;

/// One operation performed while sweeping a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEvent {
    /// 1-based position of the swept vertex.
    pub step: usize,
    pub op: &'static str,
    pub case: String,
    /// 1-based vertices that the operation touched.
    pub touched: Vec<usize>,
    pub lambda: usize,
}

/// Drives the sweep over `g` one vertex at a time.
pub struct Engine<'g> {
    state: CoverState<'g>,
    shadow: Option<CoverState<'g>>,
    /// Runner-up covers of the same prefix, each with its log since the terminal.
    alts: Vec<(CoverState<'g>, Vec<TraceEvent>)>,
    /// Log of the current cover since the terminal was placed.
    log: Vec<TraceEvent>,
    trace: Option<Vec<TraceEvent>>,
}

/// Number of prefix covers carried once the terminal is placed.
const BEAM: usize = 4;

impl<'g> Engine<'g> {
    pub fn new(g: &'g OrderedGraph, terminal: Option<VertexId>) -> Self {
        if let Some(t) = terminal {
            assert!(g.contains(t), "terminal {t} out of range");
        }
        Engine {
            state: CoverState::new(g, terminal.map(VertexId::zero_based), None),
            shadow: None,
            alts: Vec::new(),
            log: Vec::new(),
            trace: None,
        }
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn state(&self) -> &CoverState<'g> {
        &self.state
    }

    pub fn is_done(&self) -> bool {
        self.state.next >= self.state.g.n()
    }

    /// Sweeps the next vertex.
    pub fn step(&mut self) -> Result<(), InternalInvariantViolation> {
        let i = self.state.next;
        let g = self.state.g;
        if i >= g.n() {
            return Ok(());
        }
        let Some(sp) = self.shadow.take() else {
            if self.state.terminal == Some(i) {
                // From here on the shadow sweeps the same prefix with the terminal removed.
                let mut shadow = self.state.clone();
                shadow.terminal = None;
                shadow.skip = Some(i);
                shadow.next = i + 1;
                self.shadow = Some(shadow);
            }
            let mut log = self.trace.as_mut();
            sweep_vertex(&mut self.state, i, None, &mut log)?;
            self.state.next = i + 1;
            return self.state.check();
        };
        let tracing = self.trace.is_some();
        let mut cands: Vec<(CoverState<'g>, Vec<TraceEvent>)> = Vec::new();

        for (prev, prev_log) in std::iter::once((&self.state, &self.log)).chain(self.alts.iter().map(|(c, l)| (c, l))) {
            let mut main = prev.clone();
            let mut log = prev_log.clone();
            sweep_vertex(&mut main, i, Some(&sp), &mut tracing.then_some(&mut log))?;
            main.next = i + 1;
            cands.push((main, log));
        }

        let mut sn = sp.clone();
        sweep_vertex(&mut sn, i, None, &mut None)?;
        sn.next = i + 1;

        let base = self.log.clone();
        // the terminal hung on the shadow after v_i
        for plan in hang_plans(&sn) {
            let mut c = unshadow(&sn);
            let mut log = base.clone();
            apply_hang(&mut c, plan, i, &mut tracing.then_some(&mut log));
            cands.push((c, log));
        }
        // the terminal hung on the shadow before v_i
        for plan in hang_plans(&sp) {
            let mut c = unshadow(&sp);
            let mut log = base.clone();
            apply_hang(&mut c, plan, i, &mut tracing.then_some(&mut log));
            sweep_vertex(&mut c, i, None, &mut tracing.then_some(&mut log))?;
            c.next = i + 1;
            cands.push((c, log));
        }
        // v_i joins the shadow and the terminal hangs on v_i
        let t = sp.skip.expect("shadow skips the terminal");
        if g.adjacent0(t, i) {
            let mut c = unshadow(&sp);
            let mut log = base.clone();
            let v = view(&c, i);
            match leftmost_free(&c, &v) {
                Some(e) => c.attach(e, i),
                None => {
                    c.place_trivial(i);
                }
            }
            c.attach(i, t);
            c.next = i + 1;
            emit(&mut tracing.then_some(&mut log), &c, i, "connect", "detour: v_t joins v_i", &[i, t]);
            cands.push((c, log));
        }

        for (c, log) in cands.iter_mut() {
            while splice(c, &mut tracing.then_some(&mut *log)) {}
        }
        // stable sort keeps generation order among equals
        let mut keyed: Vec<_> = cands.into_iter().map(|c| (rank_key(&c.0), c)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let cands = keyed.into_iter().map(|(_, c)| c);
        let mut kept: Vec<(CoverState<'g>, Vec<TraceEvent>)> = Vec::new();
        for c in cands {
            if kept.len() == BEAM {
                break;
            }
            if kept.iter().all(|k| k.0.link != c.0.link) {
                kept.push(c);
            }
        }
        let mut kept = kept.into_iter();
        let (state, log) = kept.next().expect("at least one candidate");
        self.state = state;
        self.log = log;
        self.alts = kept.collect();
        self.shadow = Some(sn);
        self.state.check()
    }

    pub fn run(mut self) -> Result<(PathCover, Vec<TraceEvent>), InternalInvariantViolation> {
        while !self.is_done() {
            self.step()?;
        }
        if self.state.terminal.is_some() {
            let mut log = Vec::new();
            let tracing = self.trace.is_some();
            while splice(&mut self.state, &mut tracing.then_some(&mut log)) {}
            self.log.extend(log);
            self.state.check()?;
        }
        let cover = self.state.snapshot();
        let mut trace = self.trace.unwrap_or_default();
        trace.extend(self.log);
        Ok((cover, trace))
    }
}

/// Minimum path cover of `g` in which `terminal` (if given) is a path endpoint.
pub fn solve_1pc(g: &OrderedGraph, terminal: Option<VertexId>) -> PathCover {
    Engine::new(g, terminal)
        .run()
        .map(|(c, _)| c)
        .unwrap_or_else(|e| panic!("{e}"))
}

/// Like [`solve_1pc`], also returning the per-step operation log.
pub fn solve_1pc_traced(
    g: &OrderedGraph,
    terminal: Option<VertexId>,
) -> Result<(PathCover, Vec<TraceEvent>), InternalInvariantViolation> {
    Engine::new(g, terminal).with_trace().run()
}

/// Minimum path cover (no terminal).
pub fn min_path_cover(g: &OrderedGraph) -> PathCover {
    solve_1pc(g, None)
}

type Log<'a> = Option<&'a mut Vec<TraceEvent>>;

fn emit(log: &mut Log<'_>, s: &CoverState<'_>, i: usize, op: &'static str, case: &str, touched: &[usize]) {
    if let Some(log) = log.as_mut() {
        log.push(TraceEvent {
            step: i + 1,
            op,
            case: case.to_string(),
            touched: touched.iter().map(|v| v + 1).collect(),
            lambda: s.lambda,
        });
    }
}

/// What the swept vertex sees of the current cover.
struct View {
    /// Lower neighbours are exactly `lo..i` (minus the skipped vertex).
    lo: usize,
    /// Endpoints among the lower neighbours, ascending.
    ends: Vec<usize>,
    /// Distinct paths owning those endpoints, ordered by first endpoint seen.
    touching: Vec<usize>,
}

impl View {
    fn sees(&self, v: usize, i: usize) -> bool {
        v >= self.lo && v < i
    }
}

fn view(s: &CoverState<'_>, i: usize) -> View {
    let mut lo = s.g.lo0(i);
    if Some(lo) == s.skip {
        lo += 1;
    }
    let lo = lo.min(i);
    let mut ends = Vec::new();
    let mut touching: Vec<usize> = Vec::new();
    for v in lo..i {
        if Some(v) == s.skip || !s.is_endpoint(v) {
            continue;
        }
        ends.push(v);
        let p = s.path(v);
        if !touching.contains(&p) {
            touching.push(p);
        }
    }
    View { lo, ends, touching }
}

fn sweep_vertex<'g>(
    s: &mut CoverState<'g>,
    i: usize,
    shadow: Option<&CoverState<'g>>,
    log: &mut Log<'_>,
) -> Result<(), InternalInvariantViolation> {
    let v = view(s, i);
    let eps = v.touching.len();
    if s.terminal == Some(i) {
        if let Some(&e) = v.ends.iter().find(|&&e| s.is_free_endpoint(e)) {
            s.attach(e, i);
            emit(log, s, i, "connect", "terminal joins leftmost endpoint", &[e, i]);
        } else {
            s.place_trivial(i);
            emit(log, s, i, "new_trivial", "terminal", &[i]);
        }
        return Ok(());
    }
    let free_paths: Vec<usize> = v
        .touching
        .iter()
        .copied()
        .filter(|&p| v.ends.iter().any(|&e| s.path(e) == p && s.is_free_endpoint(e)))
        .collect();
    if eps >= 2 {
        if free_paths.len() >= 2 {
            bridge(s, i, &v, &free_paths, log);
            return Ok(());
        }
        if let Some(sh) = shadow {
            if terminal_detour(s, i, sh, log) {
                return Ok(());
            }
        }
        if merge_bridge(s, i, &v, log) {
            return Ok(());
        }
        let e = leftmost_free(s, &v).expect("one free path is seen");
        s.attach(e, i);
        emit(log, s, i, "connect", "terminal seen, no detour", &[e, i]);
        return Ok(());
    }
    if eps == 1 && !free_paths.is_empty() {
        if merge_bridge(s, i, &v, log) {
            return Ok(());
        }
        let e = leftmost_free(s, &v).expect("free endpoint seen");
        s.attach(e, i);
        emit(log, s, i, "connect", "single path seen", &[e, i]);
        return Ok(());
    }
    if insert(s, i, &v, log) || split_merge(s, i, &v, log) {
        return Ok(());
    }
    s.place_trivial(i);
    emit(log, s, i, "new_path", "trivial", &[i]);
    Ok(())
}

fn leftmost_free(s: &CoverState<'_>, v: &View) -> Option<usize> {
    v.ends.iter().copied().find(|&e| s.is_free_endpoint(e))
}

/// Leftmost free endpoint of path `p` that the swept vertex sees.
fn leftmost_free_of(s: &CoverState<'_>, v: &View, p: usize) -> Option<usize> {
    v.ends
        .iter()
        .copied()
        .find(|&e| s.path(e) == p && s.is_free_endpoint(e))
}

fn bridge(s: &mut CoverState<'_>, i: usize, v: &View, free_paths: &[usize], log: &mut Log<'_>) {
    let mut cands: Vec<(usize, usize)> = free_paths
        .iter()
        .map(|&p| (leftmost_free_of(s, v, p).expect("free path"), p))
        .collect();
    cands.sort();
    let (e1, _) = cands[0];
    let (e2, _) = cands[1];
    s.attach(e1, i);
    s.join(i, e2);
    emit(log, s, i, "bridge", "leftmost free endpoints", &[e1, i, e2]);
}

/// The swept vertex sees the terminal endpoint and one free path only:
/// re-route through the cover of the prefix without the terminal.
fn terminal_detour<'g>(
    s: &mut CoverState<'g>,
    i: usize,
    shadow: &CoverState<'g>,
    log: &mut Log<'_>,
) -> bool {
    let t = s.terminal.expect("terminal placed");
    let sv = view(shadow, i);
    if shadow.lambda + 1 == s.lambda {
        if let Some(&e) = sv.ends.first() {
            adopt(s, shadow);
            s.attach(e, i);
            s.attach(i, t);
            emit(log, s, i, "connect", "detour: shadow smaller, connect v_t to v_i", &[e, i, t]);
            return true;
        }
    } else if shadow.lambda == s.lambda {
        // hang v_t on a shadow endpoint so that v_i can then bridge
        let mut cands: Vec<usize> = shadow
            .alive_paths()
            .flat_map(|p| {
                let [a, b] = shadow.paths[p].ends;
                [a as usize, b as usize]
            })
            .filter(|&e| s.g.adjacent0(e, t))
            .collect();
        cands.sort_unstable();
        cands.dedup();
        for l in cands {
            let mut trial = shadow.clone();
            trial.terminal = s.terminal;
            trial.skip = None;
            trial.attach(l, t);
            let tv = view(&trial, i);
            let free: Vec<usize> = tv
                .touching
                .iter()
                .copied()
                .filter(|&p| tv.ends.iter().any(|&e| trial.path(e) == p && trial.is_free_endpoint(e)))
                .collect();
            if free.len() >= 2 {
                adopt(s, &trial);
                bridge(s, i, &tv, &free, log);
                emit(log, s, i, "bridge", "detour: terminal joins a shadow endpoint", &[l, t]);
                return true;
            }
        }
    }
    false
}

/// Replaces the main cover by the shadow cover (terminal still unplaced in it).
fn adopt<'g>(s: &mut CoverState<'g>, shadow: &CoverState<'g>) {
    let t = s.terminal;
    let next = s.next;
    *s = shadow.clone();
    s.terminal = t;
    s.skip = None;
    s.next = next;
}

fn insert(s: &mut CoverState<'_>, i: usize, v: &View, log: &mut Log<'_>) -> bool {
    // Seen path edge with the largest upper end, then the largest lower end.
    let mut best: Option<(usize, usize)> = None;
    for a in (v.lo..i).rev() {
        if Some(a) == s.skip || !s.placed[a] {
            continue;
        }
        for &b in &s.link[a] {
            let b = b as usize;
            if b != state::NONE as usize && b < a && v.sees(b, i) && best.is_none_or(|(x, _)| b > x) {
                best = Some((b, a));
            }
        }
        if best.is_some() {
            break;
        }
    }
    let Some((a, b)) = best else { return false };
    s.remove_edge(a, b);
    s.placed[i] = true;
    s.add_edge(a, i);
    s.add_edge(i, b);
    let p = s.path(a);
    s.rebuild(a, p);
    emit(log, s, i, "insert", "two consecutive neighbours", &[a, i, b]);
    true
}

fn split_merge(s: &mut CoverState<'_>, i: usize, v: &View, log: &mut Log<'_>) -> bool {
    if s.lambda < 2 {
        return false;
    }
    for x in v.lo..i {
        if Some(x) == s.skip || !s.placed[x] || s.degree(x) != 2 {
            continue;
        }
        for &a in &s.link[x].clone() {
            let a = a as usize;
            let px = s.path(x);
            let target = free_ends(s).into_iter().find(|&b| s.path(b) != px && s.adj(a, b));
            if let Some(b) = target {
                s.cut(x, a);
                s.join(a, b);
                s.attach(x, i);
                emit(log, s, i, "split_merge", "re-route internal neighbour", &[x, a, b, i]);
                return true;
            }
        }
    }
    false
}

/// Free endpoints of the cover, ascending.
fn free_ends(s: &CoverState<'_>) -> Vec<usize> {
    let mut out: Vec<usize> = s
        .alive_paths()
        .flat_map(|p| {
            let [a, b] = s.paths[p].ends;
            [a as usize, b as usize]
        })
        .filter(|&e| s.is_free_endpoint(e))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Cuts an internal edge `x a` with `x` seen, merges the piece of `a` into
/// another path through an endpoint adjacent to `a`, then bridges through `x`.
fn merge_bridge(s: &mut CoverState<'_>, i: usize, v: &View, log: &mut Log<'_>) -> bool {
    if s.lambda < 2 {
        return false;
    }
    let ends = free_ends(s);
    let seen_free: Vec<usize> = v.ends.iter().copied().filter(|&e| s.is_free_endpoint(e)).collect();
    for x in v.lo..i {
        if Some(x) == s.skip || !s.placed[x] || s.degree(x) != 2 {
            continue;
        }
        for &a in &s.link[x].clone() {
            let a = a as usize;
            let px = s.path(x);
            for &b in &ends {
                if !(s.path(b) != px && s.adj(a, b)) {
                    continue;
                }
                // v_i needs a second free endpoint outside the piece of x
                let away = seen_free.iter().any(|&e| e != b && s.path(e) != px);
                let own = seen_free.iter().any(|&e| e != x && s.path(e) == px);
                if !away && !own {
                    continue;
                }
                let mut trial = s.clone();
                trial.cut(x, a);
                if !trial.is_free_endpoint(a) || !trial.is_free_endpoint(x) {
                    continue;
                }
                trial.join(a, b);
                let tv = view(&trial, i);
                let px = trial.path(x);
                let other = tv
                    .ends
                    .iter()
                    .copied()
                    .find(|&e| trial.path(e) != px && trial.is_free_endpoint(e));
                if let Some(e) = other {
                    *s = trial;
                    let (e1, e2) = if x < e { (x, e) } else { (e, x) };
                    s.attach(e1, i);
                    s.join(i, e2);
                    emit(log, s, i, "bridge", "split, merge, then bridge", &[x, a, b, i, e]);
                    return true;
                }
            }
        }
    }
    false
}

/// A way to give the terminal a place on the shadow cover: an existing
/// endpoint next to it, one rotation of a path (if the end `p_k` sees `p_j`,
/// the path `p_1..p_j p_k..p_{j+1}` ends at `p_{j+1}`), or a path of its own.
enum Hang {
    Endpoint(usize),
    Rotate { path: usize, seq: Vec<usize> },
    Alone,
}

fn hang_plans(shadow: &CoverState<'_>) -> Vec<Hang> {
    let t = shadow.skip.expect("shadow skips the terminal");
    let g = shadow.g;
    let mut out = vec![Hang::Alone];
    let ends: Vec<usize> = (0..shadow.next)
        .filter(|&e| Some(e) != shadow.skip && shadow.is_endpoint(e) && g.adjacent0(e, t))
        .collect();
    if let (Some(&a), Some(&b)) = (ends.first(), ends.last()) {
        out.push(Hang::Endpoint(a));
        if b != a {
            out.push(Hang::Endpoint(b));
        }
        return out;
    }
    for p in shadow.alive_paths() {
        let seq = shadow.path_vertices(p);
        let k = seq.len();
        if k < 3 {
            continue;
        }
        for flip in [false, true] {
            let seq: Vec<usize> = if flip { seq.iter().rev().copied().collect() } else { seq.clone() };
            let end = seq[k - 1];
            for j in 0..k - 2 {
                if g.adjacent0(seq[j], end) && g.adjacent0(seq[j + 1], t) {
                    let mut rot = seq[..=j].to_vec();
                    rot.extend(seq[j + 1..].iter().rev());
                    out.push(Hang::Rotate { path: p, seq: rot });
                    return out;
                }
            }
        }
    }
    out
}

/// The shadow cover as a main cover in which the terminal is not yet placed.
fn unshadow<'g>(shadow: &CoverState<'g>) -> CoverState<'g> {
    let mut c = shadow.clone();
    c.terminal = c.skip.take();
    c
}

fn apply_hang(c: &mut CoverState<'_>, plan: Hang, i: usize, log: &mut Log<'_>) {
    let t = c.terminal.expect("terminal");
    match plan {
        Hang::Alone => {
            c.place_trivial(t);
            emit(log, c, i, "new_path", "terminal on a path of its own", &[t]);
        }
        Hang::Endpoint(e) => {
            c.attach(e, t);
            emit(log, c, i, "connect", "terminal hung on shadow endpoint", &[e, t]);
        }
        Hang::Rotate { path, seq } => {
            c.relay(path, &seq);
            let e = *seq.last().expect("non-empty");
            c.attach(e, t);
            emit(log, c, i, "connect", "terminal hung on rotated shadow path", &[e, t]);
        }
    }
}

/// Fewer paths first, then no nested free paths, then more paths with an
/// endpoint above each position, compared from the left.
fn rank_key(c: &CoverState<'_>) -> (usize, bool, std::cmp::Reverse<Vec<u32>>) {
    (c.lambda, c.free_nested(), std::cmp::Reverse(c.epsilon_row()))
}

/// The far ends reachable from `base` by at most one rotation at its last
/// vertex, keeping `base[0]` as the near end: `(w, j)` means the order
/// `base[..=j]` followed by `base[j+1..]` reversed, which ends at `w = base[j+1]`;
/// `j = usize::MAX` keeps `base` as is. Sorted by `w`, with suffix minima of
/// the leftmost neighbour so adjacency to a fixed vertex is a lookup.
struct FarEnds {
    ends: Vec<(usize, usize)>,
    suffix_lo: Vec<(usize, usize)>,
}

impl FarEnds {
    fn new(g: &OrderedGraph, base: &[usize]) -> Self {
        let k = base.len();
        let last = base[k - 1];
        let mut ends = vec![(last, usize::MAX)];
        for j in 0..k.saturating_sub(2) {
            if g.adjacent0(base[j], last) {
                ends.push((base[j + 1], j));
            }
        }
        ends.sort_unstable();
        let mut suffix_lo = vec![(usize::MAX, 0); ends.len() + 1];
        for x in (0..ends.len()).rev() {
            suffix_lo[x] = suffix_lo[x + 1].min((g.lo0(ends[x].0), x));
        }
        FarEnds { ends, suffix_lo }
    }

    /// Some far end adjacent to `b`.
    fn adjacent_to(&self, g: &OrderedGraph, b: usize) -> Option<(usize, usize)> {
        let lo = g.lo0(b);
        let from = self.ends.partition_point(|&(w, _)| w < lo);
        if let Some(&e) = self.ends.get(from) {
            if e.0 < b {
                return Some(e);
            }
        }
        let above = self.ends.partition_point(|&(w, _)| w <= b);
        let (l, x) = self.suffix_lo[above];
        (l <= b).then(|| self.ends[x])
    }

    fn order(base: &[usize], j: usize) -> Vec<usize> {
        if j == usize::MAX {
            return base.to_vec();
        }
        let mut out = base[..=j].to_vec();
        out.extend(base[j + 1..].iter().rev());
        out
    }
}

/// Removes one path by splicing a free path (possibly rotated once) into an
/// edge of another path, or onto one of its free ends.
fn splice(s: &mut CoverState<'_>, log: &mut Log<'_>) -> bool {
    let g = s.g;
    if s.lambda < 2 {
        return false;
    }
    let paths: Vec<usize> = s.alive_paths().collect();
    for &f in &paths {
        if s.is_terminal_path(f) {
            continue;
        }
        let fseq = s.path_vertices(f);
        let rev: Vec<usize> = fseq.iter().rev().copied().collect();
        for base in [&fseq, &rev] {
            let u = base[0];
            let far = FarEnds::new(g, base);
            for &q in &paths {
                if q == f {
                    continue;
                }
                let qseq = s.path_vertices(q);
                let m = qseq.len();
                let mut found = None;
                for x in 0..m.saturating_sub(1) {
                    let (a, b) = (qseq[x], qseq[x + 1]);
                    if g.adjacent0(a, u) {
                        if let Some((_, j)) = far.adjacent_to(g, b) {
                            found = Some((x, j, false));
                            break;
                        }
                    }
                    if g.adjacent0(b, u) {
                        if let Some((_, j)) = far.adjacent_to(g, a) {
                            found = Some((x, j, true));
                            break;
                        }
                    }
                }
                let seq: Vec<usize> = if let Some((x, j, flip)) = found {
                    let mut var = FarEnds::order(base, j);
                    if flip {
                        var.reverse();
                    }
                    let mut out = qseq[..=x].to_vec();
                    out.extend(var);
                    out.extend(&qseq[x + 1..]);
                    out
                } else {
                    // end to end; the terminal stays an end of the merged path
                    let open = |e: usize| s.is_free_endpoint(e) && (m == 1 || Some(e) != s.terminal);
                    let (qa, qb) = (qseq[0], qseq[m - 1]);
                    if open(qb) && g.adjacent0(qb, u) {
                        qseq.iter().chain(base.iter()).copied().collect()
                    } else if open(qa) && g.adjacent0(qa, u) {
                        base.iter().rev().chain(qseq.iter()).copied().collect()
                    } else {
                        continue;
                    }
                };
                for &v in &fseq {
                    s.link[v] = [NONE; 2];
                }
                s.kill(f);
                s.relay(q, &seq);
                emit(log, s, s.next - 1, "splice", "free path spliced into another path", &[u]);
                return true;
            }
        }
    }
    false
}
