use std::path::PathBuf;
use std::process::{Command, Output};

use sepprof::treegraded::TreeGrading;
use sepprof::{Graph, TreeDecomposition};
use serde_json::Value;
use tempfile::TempDir;

const K5: &str = "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const P4: &str = "4 3\n0 1\n1 2\n2 3\n";
const C6: &str = r#"{"n":6,"edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[0,5]]}"#;
const BOWTIE_SPEC: &str = r#"{
  "templates": {"C3": {"n": 3, "edges": [[0,1],[1,2],[0,2]]}},
  "tree_nodes": [{"template": "C3"}, {"template": "C3"}],
  "tree_edges": [{"parent": 0, "child": 1, "parent_vertex": 2, "child_vertex": 0}]
}"#;
const Z2Z3: &str = r#"{
  "g": {"kind": "finite-table", "order": 2, "table": [[0,1],[1,0]], "gens": [1]},
  "h": {"kind": "finite-table", "order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]], "gens": [1,2]}
}"#;

struct Sandbox(TempDir);

impl Sandbox {
    fn new() -> Self {
        Sandbox(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn run(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&dyn AsRef<std::ffi::OsStr>], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sepprof"));
    cmd.env_remove("SEPPROF_BUDGET");
    for a in args {
        cmd.arg(a);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn csv_values(out: &Output) -> Vec<usize> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect()
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn compute_treewidth_with_certificate() {
    let s = Sandbox::new();
    let g = s.file("k5.graph", K5);
    let out = run(&[&"compute", &"tw", &g]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["value"], 4);
    let td: TreeDecomposition =
        serde_json::from_value(r["results"]["certificate"].clone()).unwrap();
    assert_eq!(td.validate(&Graph::complete(5)), Ok(4));
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn compute_cutsize() {
    let s = Sandbox::new();
    let out = run(&[&"compute", &"cut", &s.file("p4.graph", P4)]);
    let r = report(&out);
    assert_eq!(r["results"]["value"], 1);
    assert_eq!(r["results"]["certificate"]["S"], serde_json::json!([1]));
}

#[test]
fn compute_every_invariant() {
    let s = Sandbox::new();
    let g = s.file("c6.json", C6);
    let expected = [
        ("tw", 2),
        ("cut", 2),
        ("sn", 2),
        ("bsep", 2),
        ("cw", 2),
        ("pw", 2),
        ("sumcut", 9),
    ];
    for (inv, value) in expected {
        let out = run(&[&"compute", &inv, &g]);
        assert_eq!(out.status.code(), Some(0), "{inv}");
        let r = report(&out);
        assert_eq!(r["results"]["value"], value, "{inv}");
        assert!(!r["results"]["certificate"].is_null(), "{inv}");
    }
    let r = report(&run(&[&"compute", &"sumcut", &g]));
    assert!(r["flags"]["definition"].is_string());
}

#[test]
fn relaxed_balanced_separator() {
    let s = Sandbox::new();
    let g = s.file("k5.graph", K5);
    let r = report(&run(&[&"compute", &"bsep", &g, &"--no-completion"]));
    assert_eq!(r["results"]["value"], 0);
    assert!(r["flags"]["completion"].is_string());
    assert_eq!(
        report(&run(&[&"compute", &"bsep", &g]))["results"]["value"],
        2
    );
    assert_eq!(
        run(&[&"compute", &"tw", &g, &"--no-completion"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn size_limit_exits_three() {
    let s = Sandbox::new();
    let edges: String = (0..29).map(|i| format!("{i} {}\n", i + 1)).collect();
    let g = s.file("huge.graph", &format!("30 29\n{edges}"));
    let out = run(&[&"compute", &"tw", &g]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["error"]["kind"], "resource-limit");
    assert!(r["error"]["message"]
        .as_str()
        .unwrap()
        .contains("limit is 25"));
}

#[test]
fn parse_error_exits_two() {
    let s = Sandbox::new();
    let g = s.file("bad.graph", "3 2\n0 1\n1 1\n");
    let out = run(&[&"compute", &"tw", &g]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report(&out)["error"]["message"]
        .as_str()
        .unwrap()
        .contains("line 3"));
    let missing = run(&[&"compute", &"tw", &s.path("nope.graph")]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn profile_tables() {
    let s = Sandbox::new();
    let c6 = s.file("c6.json", C6);
    let out = run(&[&"profile", &"tw", &c6, &"--r", &"6", &"--format", &"csv"]);
    assert_eq!(csv_values(&out), [0, 1, 1, 1, 1, 2]);

    let tree: String = (1..10).map(|v| format!("{} {v}\n", (v - 1) / 2)).collect();
    let tree = s.file("tree.graph", &format!("10 9\n{tree}"));
    let out = run(&[&"profile", &"cut", &tree, &"--r", &"8", &"--format", &"csv"]);
    assert_eq!(csv_values(&out), [1; 8]);

    let k1 = s.file("k1.graph", "1 0\n");
    let out = run(&[&"profile", &"tw", &k1, &"--r", &"3", &"--format", &"csv"]);
    assert_eq!(csv_values(&out), [0, 0, 0]);
}

#[test]
fn profiles_do_not_depend_on_jobs() {
    let s = Sandbox::new();
    let g = s.file("grid.json", &Graph::grid(3, 4).to_json());
    let csv = |jobs: &str| {
        run(&[
            &"profile",
            &"tw",
            &g,
            &"--r",
            &"7",
            &"--format",
            &"csv",
            &"--jobs",
            &jobs,
        ])
        .stdout
    };
    assert_eq!(csv("1"), csv("2"));
    assert_eq!(csv("1"), csv("8"));
    let json = |jobs: &str| {
        let mut v = without_timing(report(&run(&[
            &"profile", &"cut", &g, &"--r", &"6", &"--jobs", &jobs,
        ])));
        v["command"] = Value::Null;
        v
    };
    assert_eq!(json("1"), json("8"));
}

#[test]
fn budget_from_environment_marks_lower_bounds() {
    let s = Sandbox::new();
    let g = s.file("c6.json", C6);
    let out = run_env(
        &[&"profile", &"tw", &g, &"--r", &"6", &"--format", &"csv"],
        &[("SEPPROF_BUDGET", "4")],
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().nth(1).unwrap().contains(",true,"));
    let r = report(&run_env(
        &[&"profile", &"tw", &g, &"--r", &"6"],
        &[("SEPPROF_BUDGET", "4")],
    ));
    assert_eq!(r["flags"]["lower_bound"], true);
    assert_eq!(r["results"]["subgraphs"], 4);
}

#[test]
fn sandwich_passes_on_cycle() {
    let s = Sandbox::new();
    let out = run(&[&"verify", &"sandwich", &s.file("c6.json", C6), &"--r", &"6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    let rows = r["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let g: Graph = serde_json::from_str(C6).unwrap();
    for row in rows {
        assert_eq!(row["sep_minus_1_le_tw"], true);
        assert_eq!(row["tw_le_15_sep"], true);
        let td: TreeDecomposition =
            serde_json::from_value(row["tw_witness"]["decomposition"].clone()).unwrap();
        let sub: sepprof::VertexSet =
            serde_json::from_value(row["tw_witness"]["subgraph"].clone()).unwrap();
        let (h, map) = g.induced_subgraph(&sub).unwrap();
        let mut index = vec![usize::MAX; g.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let local = TreeDecomposition {
            bags: td.bags.iter().map(|b| b.map(&index)).collect(),
            tree_edges: td.tree_edges.clone(),
        };
        assert_eq!(
            local.validate(&h).unwrap(),
            row["tw"].as_u64().unwrap() as usize
        );
    }
}

#[test]
fn compose_then_verify() {
    let s = Sandbox::new();
    let spec = s.file("bowtie.spec", BOWTIE_SPEC);
    let tg_path = s.path("out/bowtie.tg");
    let out = run(&[&"gen", &"compose", &spec, &"-o", &tg_path]);
    assert_eq!(out.status.code(), Some(0));
    let tg = TreeGrading::from_json(&std::fs::read_to_string(&tg_path).unwrap()).unwrap();
    assert_eq!(tg.host.n(), 5);
    assert_eq!(tg.validate(), Ok(()));

    let eq = report(&run(&[&"verify", &"treegraded-eq", &tg_path, &"--r", &"5"]));
    assert_eq!(eq["passed"], true);
    let join = report(&run(&[&"verify", &"join", &tg_path]));
    assert_eq!(join["passed"], true);
    assert_eq!(join["results"]["joined_width"], 2);
    let v = run(&[&"validate", &"grading", &tg_path]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn invalid_grading_fails_validation() {
    let s = Sandbox::new();
    let bad = s.file(
        "c4.tg",
        r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]],"pieces":[[0,1],[1,2],[2,3],[0,3]]}"#,
    );
    let out = run(&[&"validate", &"grading", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["results"]["valid"], false);
    let cycles = run(&[&"validate", &"grading", &bad, &"--cycles", &"50"]);
    assert_eq!(cycles.status.code(), Some(1));
    // verification suites refuse an invalid grading as input
    assert_eq!(run(&[&"verify", &"join", &bad]).status.code(), Some(2));
}

#[test]
fn conversion_from_given_cutset() {
    let s = Sandbox::new();
    let g = s.file("c6.json", C6);
    let r = report(&run(&[&"verify", &"conversion", &g, &"--cutset", &"1,3"]));
    assert_eq!(r["passed"], true);
    assert_eq!(r["results"]["separator"]["size"], 2);
    let default = report(&run(&[&"verify", &"conversion", &g]));
    assert_eq!(default["passed"], true);
    assert_eq!(
        run(&[&"verify", &"conversion", &g, &"--cutset", &"0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cayley_ball_files() {
    let s = Sandbox::new();
    let spec = s.file("z2z3.json", Z2Z3);
    let dir = s.path("ball");
    let out = run(&[&"gen", &"cayley", &spec, &"--radius", &"5", &"-o", &dir]);
    assert_eq!(out.status.code(), Some(0));
    let graph =
        Graph::from_json(&std::fs::read_to_string(dir.join("graph.json")).unwrap()).unwrap();
    assert_eq!(graph.label(0), Some("e"));
    let tg = TreeGrading::from_json(&std::fs::read_to_string(dir.join("grading.json")).unwrap())
        .unwrap();
    assert_eq!(tg.host, graph);
    assert_eq!(tg.validate(), Ok(()));
    assert_eq!(report(&out)["results"]["n"], graph.n());
}

#[test]
fn cayley_errors() {
    let s = Sandbox::new();
    let broken = s.file(
        "broken.json",
        r#"{"g": {"kind": "finite-table", "order": 4,
                  "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]], "gens": [2]}}"#,
    );
    let out = run(&[&"gen", &"cayley", &broken, &"--radius", &"2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report(&out)["error"]["witness"]["violation"].is_string());

    let free = s.file(
        "free.json",
        r#"{"g":{"kind":"cyclic-infinite"},"h":{"kind":"cyclic-infinite"}}"#,
    );
    let out = run(&[
        &"gen",
        &"cayley",
        &free,
        &"--radius",
        &"9",
        &"--cap",
        &"100",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn single_group_ball() {
    let s = Sandbox::new();
    let z5 = s.file(
        "z5.json",
        r#"{"g": {"kind": "finite-table", "order": 5,
                  "table": [[0,1,2,3,4],[1,2,3,4,0],[2,3,4,0,1],[3,4,0,1,2],[4,0,1,2,3]],
                  "gens": [1,4]}}"#,
    );
    let r = report(&run(&[&"gen", &"cayley", &z5, &"--radius", &"3"]));
    assert_eq!(r["results"]["n"], 5);
    assert_eq!(r["results"]["m"], 5);
}

#[test]
fn validate_pace_decomposition() {
    let s = Sandbox::new();
    let g = s.file("c6.json", C6);
    let good = s.file(
        "c6.td",
        "c a path of two bags\ns td 2 4 6\nb 1 1 2 3 4\nb 2 1 4 5 6\n1 2\n",
    );
    let out = run(&[&"validate", &"td", &g, &good]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["width"], 3);
    let bad = s.file("bad.td", "s td 2 4 6\nb 1 1 2 3\nb 2 3 4 5 6\n1 2\n");
    assert_eq!(run(&[&"validate", &"td", &g, &bad]).status.code(), Some(1));
    let wrong_n = s.file("wrong.td", "s td 1 5 5\nb 1 1 2 3 4 5\n");
    assert_eq!(
        run(&[&"validate", &"td", &g, &wrong_n]).status.code(),
        Some(2)
    );
}

#[test]
fn reports_are_deterministic() {
    let s = Sandbox::new();
    let g = s.file("k5.graph", K5);
    let a = without_timing(report(&run(&[&"compute", &"pw", &g])));
    let b = without_timing(report(&run(&[&"compute", &"pw", &g])));
    assert_eq!(a, b);
}
