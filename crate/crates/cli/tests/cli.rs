use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathcover")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("pathcover-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.0.join(name);
        fs::write(&p, text).unwrap();
        p.display().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).display().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn lambda_of(cover: &str) -> usize {
    let first = cover.lines().next().unwrap();
    first.split_whitespace().find_map(|t| t.strip_prefix("lambda=")).unwrap().parse().unwrap()
}

#[test]
fn solve_small_models() {
    let s = Scratch::new("small");
    let k4 = s.file("k4.txt", "a 0 10\nb 1 10\nc 2 10\nd 3 10\n");
    let o = bin(&["solve", &k4, "--terminal", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lambda_of(&stdout(&o)), 1);

    let edgeless = s.file("e.txt", "a 0 0\nb 1 1\nc 2 2\nd 3 3\ne 4 4\n");
    assert_eq!(lambda_of(&stdout(&bin(&["solve", &edgeless]))), 5);

    let p4 = s.file("p4.txt", "a 0 1\nb 1 2\nc 2 3\nd 3 4\n");
    let o = bin(&["solve", &p4, "--terminal", "2", "--hp"]);
    assert_eq!(lambda_of(&stdout(&o)), 2);
    assert!(stdout(&o).contains("# 1hp=no"));
    let o = bin(&["solve", &p4, "--terminal", "1", "--hp"]);
    assert!(stdout(&o).contains("# 1hp=yes"));
}

#[test]
fn exit_codes_for_bad_input() {
    let s = Scratch::new("bad");
    let junk = s.file("junk.txt", "a 0\n");
    assert_eq!(bin(&["solve", &junk]).status.code(), Some(2));
    let missing = s.path("nothing-here.txt");
    assert_eq!(bin(&["solve", &missing]).status.code(), Some(2));
    let backwards = s.file("back.txt", "a 3 1\n");
    assert_eq!(bin(&["solve", &backwards]).status.code(), Some(2));

    // 1-3 without 2-3 under the identity order
    let bad_order = s.file("order.txt", "3 1\n1 3\n");
    let o = bin(&["solve", &bad_order, "--format", "adj"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("1 < 2 < 3"), "{}", stderr(&o));
    let good_order = s.file("order2.txt", "3 1\n1 3\npi: 1 3 2\n");
    assert_eq!(bin(&["solve", &good_order]).status.code(), Some(0));

    let c4 = s.file("c4.txt", "4 4\n1 2\n2 3\n3 4\n4 1\n");
    assert_eq!(bin(&["solve", &c4]).status.code(), Some(3));

    let not_convex = s.file("nc.txt", "X=3 Y=1 convex=x\nx1 x2 x3\nx1 y1\nx3 y1\n");
    assert_eq!(bin(&["solve", &not_convex]).status.code(), Some(3));
}

#[test]
fn verify_round_trip_and_tampering() {
    let s = Scratch::new("verify");
    let g = s.file("g.txt", "a 0 1\nb 1 2\nc 2 3\nd 3 4\ne 10 11\n");
    let cover = s.path("c.txt");
    assert_eq!(bin(&["solve", &g, "--out", &cover]).status.code(), Some(0));
    let o = bin(&["verify", &g, &cover]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let text = fs::read_to_string(&cover).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    // swap the first and third vertex of the long path
    let tampered: String = lines
        .iter()
        .map(|l| {
            if l.contains(": 1 2 3 4") {
                l.replace(": 1 2 3 4", ": 3 2 1 4")
            } else if l.contains(": 4 3 2 1") {
                l.replace(": 4 3 2 1", ": 4 1 2 3")
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    assert_ne!(tampered, text.trim_end());
    let bad = s.file("bad.txt", &tampered);
    let o = bin(&["verify", &g, &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("AdjacencyViolation"), "{}", stderr(&o));

    let internal = s.file("int.txt", "lambda=2 terminal=2 n=5\nP1 T: 1 2 3 4\nP2 F: 5\n");
    let o = bin(&["verify", &g, &internal]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("TerminalViolation"), "{}", stderr(&o));

    let garbage = s.file("garbage.txt", "hello\n");
    assert_eq!(bin(&["verify", &g, &garbage]).status.code(), Some(2));
}

#[test]
fn oracle_command() {
    let o = bin(&["oracle", "--exhaustive", "n=6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("instances=873 "), "{}", stdout(&o));

    let o = bin(&["oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "instances=0 runs=0 mismatches=0\n");

    assert_eq!(bin(&["oracle", "--exhaustive", "n=10"]).status.code(), Some(4));
    assert_eq!(bin(&["oracle", "--random", "count=1", "n=13"]).status.code(), Some(4));
    assert_eq!(bin(&["oracle", "--random", "count=1", "size=3"]).status.code(), Some(2));

    let o = bin(&["oracle", "--random", "count=50", "n=10", "seed=42", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"instances\": 50"));

    let o = bin(&["oracle", "--lo", "1,2,1,4,2,6", "--prefix"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn gen_is_reproducible_and_feeds_solve() {
    let s = Scratch::new("gen");
    let a = stdout(&bin(&["gen", "--n", "40", "--density", "0.3", "--seed", "5"]));
    let b = stdout(&bin(&["gen", "--n", "40", "--density", "0.3", "--seed", "5"]));
    assert_eq!(a, b);
    assert_ne!(a, stdout(&bin(&["gen", "--n", "40", "--density", "0.3", "--seed", "6"])));

    let full = s.file("full.txt", &stdout(&bin(&["gen", "--n", "12", "--density", "1"])));
    assert_eq!(lambda_of(&stdout(&bin(&["solve", &full]))), 1);
    let empty = s.file("empty.txt", &stdout(&bin(&["gen", "--n", "12", "--density", "0"])));
    assert_eq!(lambda_of(&stdout(&bin(&["solve", &empty]))), 12);

    let dir = s.path("many");
    assert_eq!(bin(&["gen", "--n", "30", "--count", "100", "--seed", "1", "--out", &dir]).status.code(), Some(0));
    for k in 0..100 {
        let g = Path::new(&dir).join(format!("instance-{k}.txt")).display().to_string();
        let cover = s.path("cover.txt");
        let t = (k % 30 + 1).to_string();
        assert_eq!(bin(&["solve", &g, "--terminal", &t, "--out", &cover]).status.code(), Some(0));
        let o = bin(&["verify", &g, &cover]);
        assert_eq!(o.status.code(), Some(0), "instance {k}: {}", stderr(&o));
    }
}

#[test]
fn bipartite_solve() {
    let s = Scratch::new("bip");
    let p5 = s.file("p5.txt", "X=2 Y=3 convex=bi\nx1 x2\ny1 y2 y3\nx1 y1\nx1 y2\nx2 y2\nx2 y3\n");
    let o = bin(&["solve", &p5]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "hp: y1 x1 y2 x2 y3\n");
    assert_eq!(stdout(&bin(&["solve", &p5, "--terminal", "y2"])), "hp: none\n");

    let generated = stdout(&bin(&["gen", "--kind", "biconvex", "--n", "5", "--m", "5", "--density", "0.6"]));
    assert!(generated.starts_with("X=5 Y=5 convex=bi"));
    let f = s.file("gen.txt", &generated);
    assert_eq!(bin(&["solve", &f]).status.code(), Some(0));
}

#[test]
fn bench_prints_a_table() {
    let o = bin(&["bench", "--sizes", "1,50", "--reps", "1", "--terminal", "middle"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("# terminal=middle"));
    assert!(out.contains("exponent"));
}
