//! Differential runs of the engine against the exact oracle.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{solve_1pc_traced, TraceEvent};
use crate::gen::{gen_interval, rng};
use crate::graph::{build_ordering, OrderedGraph, VertexId};
use crate::oracle::oracle_min_cover;
use crate::verify::validate_cover;

/// One graph to check, with the command line that regenerates it.
#[derive(Debug, Clone)]
pub struct DiffInstance {
    pub name: String,
    pub graph: OrderedGraph,
    pub seed: Option<u64>,
    pub repro: String,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DiffOptions {
    /// Also compare on every prefix `G[v_1..v_i]`.
    pub prefix_mode: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub instance: String,
    pub seed: Option<u64>,
    /// 1-based terminal, if any.
    pub terminal: Option<usize>,
    /// Prefix length compared (the whole graph unless in prefix mode).
    pub prefix: usize,
    pub engine: Option<usize>,
    pub oracle: usize,
    /// Engine failure or cover violations, if the cover itself was bad.
    pub detail: Option<String>,
    pub repro: String,
    pub trace: Vec<TraceEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct InstanceVerdict {
    pub instance: String,
    pub seed: Option<u64>,
    pub n: usize,
    pub runs: usize,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct DiffReport {
    pub instances: usize,
    /// (graph or prefix, terminal choice) pairs compared.
    pub runs: usize,
    pub verdicts: Vec<InstanceVerdict>,
    pub mismatches: Vec<Mismatch>,
}

impl DiffReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per instance plus one block per mismatch.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "instances={} runs={} mismatches={}\n",
            self.instances,
            self.runs,
            self.mismatches.len()
        );
        for m in &self.mismatches {
            out.push_str(&format!(
                "MISMATCH {} terminal={} prefix={} engine={} oracle={}{}\n  repro: {}\n",
                m.instance,
                m.terminal.map_or("none".to_string(), |t| t.to_string()),
                m.prefix,
                m.engine.map_or("-".to_string(), |e| e.to_string()),
                m.oracle,
                m.detail.as_ref().map_or(String::new(), |d| format!(" ({d})")),
                m.repro
            ));
            for e in &m.trace {
                out.push_str(&format!(
                    "    step {} {} [{}] {:?} lambda={}\n",
                    e.step, e.op, e.case, e.touched, e.lambda
                ));
            }
        }
        out
    }
}

/// Engine size (if it ran), oracle size, failure detail and engine trace.
pub type Disagreement = (Option<usize>, usize, Option<String>, Vec<TraceEvent>);

/// Compares `g` on one terminal choice; `None` when engine and oracle agree.
pub fn compare(g: &OrderedGraph, terminal: Option<VertexId>) -> Option<Disagreement> {
    let oracle = oracle_min_cover(g, terminal, false).expect("instance within oracle bound").min_size;
    match solve_1pc_traced(g, terminal) {
        Err(e) => Some((None, oracle, Some(e.to_string()), Vec::new())),
        Ok((cover, trace)) => {
            let violations = validate_cover(g, &cover, terminal);
            if !violations.is_empty() {
                let detail = violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
                return Some((Some(cover.lambda()), oracle, Some(detail), trace));
            }
            (cover.lambda() != oracle).then_some((Some(cover.lambda()), oracle, None, trace))
        }
    }
}

fn check_instance(inst: &DiffInstance, opts: DiffOptions) -> (InstanceVerdict, Vec<Mismatch>) {
    let n = inst.graph.n();
    let prefixes: Vec<usize> = if opts.prefix_mode { (1..=n).collect() } else { vec![n] };
    let mut verdict = InstanceVerdict {
        instance: inst.name.clone(),
        seed: inst.seed,
        n,
        ..Default::default()
    };
    let mut found = Vec::new();
    for len in prefixes {
        let g = if len == n { inst.graph.clone() } else { inst.graph.prefix(len) };
        for t in std::iter::once(None).chain((1..=len).map(Some)) {
            verdict.runs += 1;
            if let Some((engine, oracle, detail, trace)) = compare(&g, t.map(VertexId::new)) {
                found.push(Mismatch {
                    instance: inst.name.clone(),
                    seed: inst.seed,
                    terminal: t,
                    prefix: len,
                    engine,
                    oracle,
                    detail,
                    repro: inst.repro.clone(),
                    trace,
                });
            }
        }
    }
    verdict.mismatches = found.len();
    (verdict, found)
}

/// Runs every instance on every terminal choice (and no terminal). Work is
/// spread over threads; the report keeps input order.
pub fn diff_engine_vs_oracle(instances: impl IntoIterator<Item = DiffInstance>, opts: DiffOptions) -> DiffReport {
    let instances: Vec<DiffInstance> = instances.into_iter().collect();
    let results: Vec<(InstanceVerdict, Vec<Mismatch>)> =
        instances.par_iter().map(|inst| check_instance(inst, opts)).collect();
    let mut report = DiffReport {
        instances: instances.len(),
        ..Default::default()
    };
    for (verdict, mismatches) in results {
        report.runs += verdict.runs;
        report.verdicts.push(verdict);
        report.mismatches.extend(mismatches);
    }
    report
}

/// All `lo` sequences of length `n`: position `k` (1-based) takes a leftmost
/// lower neighbour in `1..=k`. Each sequence is one ordered interval graph,
/// realised by the grid model `v_k = [lo_k, k]`.
pub fn leftmost_sequences(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 1..=n {
        out = out
            .into_iter()
            .flat_map(|s| {
                (1..=k).map(move |l| {
                    let mut t = s.clone();
                    t.push(l);
                    t
                })
            })
            .collect();
    }
    out
}

fn lo_name(lo: &[usize]) -> String {
    let parts: Vec<String> = lo.iter().map(|l| l.to_string()).collect();
    format!("lo={}", parts.join(","))
}

/// Every ordered interval graph on exactly `n` vertices.
pub fn exhaustive_instances(n: usize) -> Vec<DiffInstance> {
    leftmost_sequences(n)
        .into_iter()
        .map(|lo| {
            let name = lo_name(&lo);
            DiffInstance {
                graph: OrderedGraph::from_leftmost(&lo).expect("valid by construction"),
                seed: None,
                repro: format!("pathcover oracle --lo {}", &name[3..]),
                name,
            }
        })
        .collect()
}

/// Instance `k` of a random campaign uses seed `seed + k`: a size in
/// `1..=max_n`, a density in `(0, 0.6]`, then a generated model.
pub fn random_instance(max_n: usize, seed: u64) -> DiffInstance {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n.max(1));
    let density = r.gen_range(0.0..0.6f64).max(1e-3);
    let model = gen_interval(n, density, &mut r);
    DiffInstance {
        name: format!("random n={n} seed={seed}"),
        graph: build_ordering(&model),
        seed: Some(seed),
        repro: format!("pathcover oracle --random count=1 n={max_n} --seed {seed}"),
    }
}

pub fn random_instances(count: usize, max_n: usize, seed: u64) -> Vec<DiffInstance> {
    (0..count as u64).map(|k| random_instance(max_n, seed.wrapping_add(k))).collect()
}

/// Parses a corpus: one `lo=<l1,l2,...>` per line, `#` comments.
pub fn parse_corpus(text: &str) -> Result<Vec<DiffInstance>, String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            let body = l.strip_prefix("lo=").ok_or_else(|| format!("expected lo=..., got {l:?}"))?;
            let lo = body
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{l:?}: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            let graph = OrderedGraph::from_leftmost(&lo).map_err(|e| e.to_string())?;
            Ok(DiffInstance {
                name: lo_name(&lo),
                graph,
                seed: None,
                repro: format!("pathcover oracle --lo {body}"),
            })
        })
        .collect()
}

/// The `lo` line for a graph, as stored in a corpus.
pub fn corpus_line(g: &OrderedGraph) -> String {
    let lo: Vec<usize> = (0..g.n()).map(|k| g.lo0(k) + 1).collect();
    lo_name(&lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_stream_gives_empty_report() {
        let r = diff_engine_vs_oracle(Vec::new(), DiffOptions::default());
        assert_eq!(r, DiffReport::default());
        assert!(r.is_clean());
    }

    #[test]
    fn sequence_counts_are_factorials() {
        let counts: Vec<usize> = (0..6).map(|n| leftmost_sequences(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 24, 120]);
    }

    #[test]
    fn corpus_lines_round_trip() {
        let inst = parse_corpus("# c\nlo=1,1,2\n").unwrap();
        assert_eq!(corpus_line(&inst[0].graph), "lo=1,1,2");
        assert!(parse_corpus("1,2").is_err());
    }

    #[test]
    fn random_instance_is_reproducible() {
        let a = random_instance(10, 77);
        let b = random_instance(10, 77);
        assert_eq!(a.graph, b.graph);
    }

    #[test]
    fn small_exhaustive_is_clean() {
        let r = diff_engine_vs_oracle((1..=4).flat_map(exhaustive_instances), DiffOptions { prefix_mode: true });
        assert!(r.is_clean(), "{}", r.to_text());
    }
}
