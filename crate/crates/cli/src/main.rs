use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pathcover_bench::{format_table, measure, TerminalMode};
use pathcover_core::bipartite::{hp_biconvex, hp_xconvex, onehp_biconvex, onehp_xconvex, BipVertex, Convexity};
use pathcover_core::diff::{
    corpus_line, diff_engine_vs_oracle, exhaustive_instances, parse_corpus, random_instances, DiffInstance,
    DiffOptions,
};
use pathcover_core::gen::{gen_biconvex, gen_interval, rng};
use pathcover_core::graph::OrderingOrigin;
use pathcover_core::io::{
    format_bipartite, format_interval_model, parse_adjacency, parse_bipartite, parse_interval_model,
};
use pathcover_core::oracle::DEFAULT_MIN_BOUND;
use pathcover_core::verify::{check_nesting, validate_cover};
use pathcover_core::{
    build_ordering, solve_1pc_traced, BipartiteConvexGraph, BipartiteError, InputError, OrderedGraph, PathCover,
    VertexId,
};

const EXIT_VIOLATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ORDERING: u8 = 3;
const EXIT_TOO_LARGE: u8 = 4;
const EXIT_UNSUPPORTED: u8 = 5;

/// Largest exhaustive enumeration size accepted (n! graphs).
const EXHAUSTIVE_BOUND: usize = 9;

#[derive(Parser)]
#[command(name = "pathcover", version, about = "Minimum path covers with one fixed endpoint on interval graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Interval,
    Adj,
    Bipartite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchTerminal {
    None,
    Middle,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Interval,
    Biconvex,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimum path cover (with --terminal: the terminal is a path end).
    Solve {
        input: PathBuf,
        /// Ordering position (1-based) of the terminal; a Y label for bipartite input.
        #[arg(long)]
        terminal: Option<String>,
        /// Also answer whether one path suffices.
        #[arg(long)]
        hp: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Print the operation log to stderr.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a cover file against a graph file.
    Verify {
        graph: PathBuf,
        cover: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Compare the engine with the exact oracle.
    Oracle {
        /// `n=<k>`: every ordered interval graph on 1..=k vertices.
        #[arg(long)]
        exhaustive: Option<String>,
        /// `count=<c> n=<k>`: random models with up to k vertices.
        #[arg(long, num_args = 1..)]
        random: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// A single graph given by leftmost lower neighbours, e.g. `1,1,2`.
        #[arg(long)]
        lo: Option<String>,
        /// A graph file (interval or adjacency format).
        #[arg(long)]
        input: Option<PathBuf>,
        /// A corpus file of `lo=` lines.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Append the graphs of mismatches to this corpus file.
        #[arg(long)]
        append_corpus: Option<PathBuf>,
        /// Also compare after every processed vertex.
        #[arg(long)]
        prefix: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the engine on dense random models.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "both")]
        terminal: BenchTerminal,
    },
    /// Write random instances.
    Gen {
        #[arg(long, value_enum, default_value = "interval")]
        kind: Kind,
        /// Vertex count, or |X| for biconvex graphs.
        #[arg(long)]
        n: usize,
        /// |Y| for biconvex graphs (defaults to n).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance k uses seed + k; more than one needs --out as a directory.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed command: message and exit code.
struct Fail(u8, String);

impl From<InputError> for Fail {
    fn from(e: InputError) -> Self {
        let code = if e.is_invalid_ordering() { EXIT_ORDERING } else { EXIT_PARSE };
        Fail(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail(EXIT_VIOLATION, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn detect(text: &str) -> Format {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("X=") {
        Format::Bipartite
    } else if first.split_whitespace().count() == 2 {
        Format::Adj
    } else {
        Format::Interval
    }
}

enum Instance {
    Interval(OrderedGraph),
    Bipartite(BipartiteConvexGraph),
}

fn load(text: &str, format: Option<Format>) -> Result<Instance, Fail> {
    match format.unwrap_or_else(|| detect(text)) {
        Format::Interval => Ok(Instance::Interval(build_ordering(&parse_interval_model(text)?))),
        Format::Adj => {
            let adj = parse_adjacency(text).map_err(InputError::from)?;
            Ok(Instance::Interval(adj.into_graph().map_err(InputError::from)?))
        }
        Format::Bipartite => Ok(Instance::Bipartite(parse_bipartite(text)?)),
    }
}

fn load_graph(path: &Path, format: Option<Format>) -> Result<OrderedGraph, Fail> {
    match load(&read(path)?, format)? {
        Instance::Interval(g) => Ok(g),
        Instance::Bipartite(_) => Err(Fail(EXIT_PARSE, "expected an interval or adjacency file".into())),
    }
}

fn solve(
    input: &Path,
    terminal: Option<String>,
    hp: bool,
    format: Option<Format>,
    trace: bool,
    out: Option<&Path>,
) -> Result<(), Fail> {
    let g = match load(&read(input)?, format)? {
        Instance::Bipartite(b) => return solve_bipartite(&b, terminal, out),
        Instance::Interval(g) => g,
    };
    let t = match terminal {
        None => None,
        Some(s) => match s.parse::<usize>() {
            Ok(t) if (1..=g.n()).contains(&t) => Some(VertexId::new(t)),
            _ => return Err(Fail(EXIT_PARSE, format!("terminal {s:?} is not a position in 1..={}", g.n()))),
        },
    };
    let (cover, events) = solve_1pc_traced(&g, t).map_err(|e| Fail(EXIT_VIOLATION, e.to_string()))?;
    if trace {
        for e in &events {
            eprintln!("step {} {} [{}] {:?} lambda={}", e.step, e.op, e.case, e.touched, e.lambda);
        }
    }
    let mut text = cover.to_text();
    if g.origin() == OrderingOrigin::FromModel {
        text.push_str(&format!("# order: {}\n", g.labels().join(" ")));
    }
    if hp {
        let which = if t.is_some() { "1hp" } else { "hp" };
        let answer = if cover.lambda() == 1 { "yes" } else { "no" };
        text.push_str(&format!("# {which}={answer}\n"));
    }
    write_out(out, &text)?;
    eprintln!("lambda={}", cover.lambda());
    Ok(())
}

fn solve_bipartite(g: &BipartiteConvexGraph, start: Option<String>, out: Option<&Path>) -> Result<(), Fail> {
    let start = match start {
        None => None,
        Some(s) => Some(g.find(&s).ok_or_else(|| Fail(EXIT_PARSE, format!("no vertex labelled {s:?}")))?),
    };
    let result = match (g.convexity(), start) {
        (Convexity::Bi, None) => hp_biconvex(g),
        (Convexity::Bi, Some(s)) => onehp_biconvex(g, s),
        (Convexity::X, None) => hp_xconvex(g),
        (Convexity::X, Some(s)) => onehp_xconvex(g, s),
    };
    let path = match result {
        Ok(p) => p,
        Err(e @ BipartiteError::UnsupportedCase(_)) => return Err(Fail(EXIT_UNSUPPORTED, e.to_string())),
        Err(e) => return Err(InputError::from(e).into()),
    };
    let text = match path {
        Some(p) => {
            let labels: Vec<&str> = p.iter().map(|&v: &BipVertex| g.label(v)).collect();
            format!("hp: {}\n", labels.join(" "))
        }
        None => "hp: none\n".to_string(),
    };
    write_out(out, &text)
}

fn verify(graph: &Path, cover: &Path, format: Option<Format>) -> Result<(), Fail> {
    let g = load_graph(graph, format)?;
    let c = PathCover::parse(&read(cover)?).map_err(|e| Fail(EXIT_PARSE, format!("{}: {e}", cover.display())))?;
    let mut problems: Vec<String> = validate_cover(&g, &c, c.terminal).iter().map(|v| v.to_string()).collect();
    if problems.is_empty() {
        if let Err(e) = check_nesting(&c) {
            problems.push(e.to_string());
        }
    }
    if problems.is_empty() {
        println!("ok lambda={}", c.lambda());
        Ok(())
    } else {
        Err(Fail(EXIT_VIOLATION, problems.join("\n")))
    }
}

/// `key=value` tokens; unknown keys are errors.
fn keyed(tokens: &[String], allowed: &[&str]) -> Result<Vec<(String, u64)>, Fail> {
    tokens
        .iter()
        .flat_map(|t| t.split_whitespace())
        .map(|t| {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| Fail(EXIT_PARSE, format!("expected key=value, got {t:?}")))?;
            if !allowed.contains(&k) {
                return Err(Fail(EXIT_PARSE, format!("unknown key {k:?}")));
            }
            let v = v.parse::<u64>().map_err(|_| Fail(EXIT_PARSE, format!("{k}: not a number")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

fn lookup(pairs: &[(String, u64)], key: &str) -> Option<u64> {
    pairs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| *v)
}

#[allow(clippy::too_many_arguments)]
fn oracle(
    exhaustive: Option<String>,
    random: Option<Vec<String>>,
    seed: u64,
    lo: Option<String>,
    input: Option<PathBuf>,
    corpus: Option<PathBuf>,
    append_corpus: Option<PathBuf>,
    prefix: bool,
    json: bool,
    out: Option<&Path>,
) -> Result<(), Fail> {
    let mut instances: Vec<DiffInstance> = Vec::new();
    if let Some(spec) = exhaustive {
        let pairs = keyed(&[spec], &["n"])?;
        let n = lookup(&pairs, "n").ok_or_else(|| Fail(EXIT_PARSE, "--exhaustive needs n=<k>".into()))? as usize;
        if n > EXHAUSTIVE_BOUND {
            return Err(Fail(EXIT_TOO_LARGE, format!("exhaustive n={n} exceeds {EXHAUSTIVE_BOUND}")));
        }
        instances.extend((1..=n).flat_map(exhaustive_instances));
    }
    if let Some(spec) = random {
        let pairs = keyed(&spec, &["count", "n", "seed"])?;
        let count = lookup(&pairs, "count").unwrap_or(1) as usize;
        let n = lookup(&pairs, "n").ok_or_else(|| Fail(EXIT_PARSE, "--random needs n=<k>".into()))? as usize;
        let seed = lookup(&pairs, "seed").unwrap_or(seed);
        if n > DEFAULT_MIN_BOUND {
            return Err(Fail(EXIT_TOO_LARGE, format!("n={n} exceeds the oracle bound {DEFAULT_MIN_BOUND}")));
        }
        instances.extend(random_instances(count, n, seed));
    }
    if let Some(lo) = lo {
        let found = parse_corpus(&format!("lo={lo}")).map_err(|e| Fail(EXIT_PARSE, e))?;
        instances.extend(found);
    }
    if let Some(path) = input {
        let graph = load_graph(&path, None)?;
        instances.push(DiffInstance {
            name: path.display().to_string(),
            repro: format!("pathcover oracle --input {}", path.display()),
            graph,
            seed: None,
        });
    }
    if let Some(path) = corpus {
        instances.extend(parse_corpus(&read(&path)?).map_err(|e| Fail(EXIT_PARSE, e))?);
    }
    if let Some(big) = instances.iter().find(|i| i.graph.n() > DEFAULT_MIN_BOUND) {
        return Err(Fail(
            EXIT_TOO_LARGE,
            format!("{} has {} vertices, oracle bound is {DEFAULT_MIN_BOUND}", big.name, big.graph.n()),
        ));
    }
    let graphs: Vec<OrderedGraph> = instances.iter().map(|i| i.graph.clone()).collect();
    let report = diff_engine_vs_oracle(instances, DiffOptions { prefix_mode: prefix });
    let text = if json { report.to_json() + "\n" } else { report.to_text() };
    write_out(out, &text)?;
    if let (Some(path), false) = (append_corpus, report.is_clean()) {
        let mut lines: Vec<String> = Vec::new();
        for (g, v) in graphs.iter().zip(&report.verdicts) {
            if v.mismatches > 0 {
                lines.push(format!("{}  # {}\n", corpus_line(g), v.instance));
            }
        }
        let mut existing = fs::read_to_string(&path).unwrap_or_default();
        existing.extend(lines);
        fs::write(&path, existing).map_err(|e| Fail(EXIT_VIOLATION, format!("{}: {e}", path.display())))?;
    }
    if report.is_clean() {
        Ok(())
    } else {
        Err(Fail(EXIT_VIOLATION, format!("{} mismatches", report.mismatches.len())))
    }
}

fn bench(sizes: &[usize], reps: usize, seed: u64, terminal: BenchTerminal) {
    let modes: &[(&str, TerminalMode)] = match terminal {
        BenchTerminal::None => &[("none", TerminalMode::None)],
        BenchTerminal::Middle => &[("middle", TerminalMode::Middle)],
        BenchTerminal::Both => &[("none", TerminalMode::None), ("middle", TerminalMode::Middle)],
    };
    for (name, mode) in modes {
        println!("# terminal={name}");
        print!("{}", format_table(&measure(sizes, reps, seed, *mode)));
    }
}

#[allow(clippy::too_many_arguments)]
fn generate(
    kind: Kind,
    n: usize,
    m: Option<usize>,
    density: f64,
    seed: u64,
    count: usize,
    out: Option<&Path>,
) -> Result<(), Fail> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Fail(EXIT_PARSE, "density must lie in [0, 1]".into()));
    }
    let one = |k: u64| {
        let mut r = rng(seed.wrapping_add(k));
        match kind {
            Kind::Interval => format_interval_model(&gen_interval(n, density, &mut r)),
            Kind::Biconvex => format_bipartite(&gen_biconvex(n, m.unwrap_or(n), density, &mut r)),
        }
    };
    if count == 1 {
        return write_out(out, &one(0));
    }
    let dir = out.ok_or_else(|| Fail(EXIT_PARSE, "--count above 1 needs --out <directory>".into()))?;
    fs::create_dir_all(dir).map_err(|e| Fail(EXIT_VIOLATION, format!("{}: {e}", dir.display())))?;
    for k in 0..count {
        write_out(Some(&dir.join(format!("instance-{k}.txt"))), &one(k as u64))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Solve {
            input,
            terminal,
            hp,
            format,
            trace,
            out,
        } => solve(&input, terminal, hp, format, trace, out.as_deref()),
        Cmd::Verify { graph, cover, format } => verify(&graph, &cover, format),
        Cmd::Oracle {
            exhaustive,
            random,
            seed,
            lo,
            input,
            corpus,
            append_corpus,
            prefix,
            json,
            out,
        } => oracle(exhaustive, random, seed, lo, input, corpus, append_corpus, prefix, json, out.as_deref()),
        Cmd::Bench {
            sizes,
            reps,
            seed,
            terminal,
        } => {
            bench(&sizes, reps, seed, terminal);
            Ok(())
        }
        Cmd::Gen {
            kind,
            n,
            m,
            density,
            seed,
            count,
            out,
        } => generate(kind, n, m, density, seed, count, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
