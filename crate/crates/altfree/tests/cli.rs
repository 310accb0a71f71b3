use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use altfree::format::{parse_hypergraph, parse_instance, serialize_hypergraph};
use altfree_core::oracle::{random_hypergraph, RandomSpec};

fn corpus_dir() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    altfree::corpus::write_all(dir.path()).unwrap();
    let path = dir.path().to_path_buf();
    (dir, path)
}

fn altfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altfree"))
        .args(args)
        .env_remove("ALTFREE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn check_reports_free_pattern_and_bad_input() {
    let (_t, d) = corpus_dir();
    let o = altfree(&[
        "check",
        &p(&d, "c4.hg"),
        "--order",
        "1,2,3,4",
        "--pattern",
        "ab^2",
    ]);
    assert_eq!((code(&o), stdout(&o)), (0, "FREE\n".to_string()));

    let o = altfree(&[
        "check",
        &p(&d, "k4.hg"),
        "--order",
        "1,2,3,4",
        "--pattern",
        "ab^2",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(
        stdout(&o),
        "PATTERN ab^2: edge 2 {1,3} and edge 5 {2,4} alternate at 1,2,3,4\n"
    );

    let o = altfree(&[
        "check",
        &p(&d, "c4.hg"),
        "--order",
        "1,2,3",
        "--pattern",
        "ab^2",
    ]);
    assert_eq!(code(&o), 2);
    let o = altfree(&[
        "check",
        &p(&d, "c4.hg"),
        "--order",
        "1,2,3,4",
        "--pattern",
        "abab",
    ]);
    assert_eq!(code(&o), 2);
    let o = altfree(&["check", &p(&d, "missing.hg"), "--order", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn solve_counts_and_decides() {
    let (_t, d) = corpus_dir();
    let o = altfree(&[
        "solve",
        &p(&d, "circular-4.hg"),
        "--pattern",
        "ab^2",
        "--count",
    ]);
    assert_eq!((code(&o), stdout(&o)), (0, "8\n".to_string()));
    let o = altfree(&[
        "solve",
        &p(&d, "two-interval-7.hg"),
        "--pattern",
        "ab^2a",
        "--count",
    ]);
    assert_eq!((code(&o), stdout(&o)), (0, "2\n".to_string()));
    let o = altfree(&["solve", &p(&d, "k4.hg"), "--pattern", "ab^2"]);
    assert_eq!((code(&o), stdout(&o)), (1, "UNSAT\n".to_string()));
    let o = altfree(&["solve", &p(&d, "c6.hg")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("SAT\n"));
}

#[test]
fn solve_output_is_deterministic() {
    let (_t, d) = corpus_dir();
    let a = altfree(&["solve", &p(&d, "circular-7.hg")]);
    let b = altfree(&["solve", &p(&d, "circular-7.hg")]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), "SAT\n1,2,3,4,5,6,7\n");
}

#[test]
fn budgets_report_timeout() {
    let (_t, d) = corpus_dir();
    let fano = p(&d, "fano.json");
    let o = altfree(&[
        "reduce",
        &p(&d, "fano.3hg"),
        "--target",
        "ab^2",
        "--out",
        &fano,
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("instance N=42, 238 edges"));
    let o = altfree(&["solve", &fano, "--max-nodes", "50"]);
    assert_eq!((code(&o), stdout(&o)), (3, "TIMEOUT\n".to_string()));
    let o = Command::new(env!("CARGO_BIN_EXE_altfree"))
        .args(["solve", &fano])
        .env("ALTFREE_BUDGET", "100ms")
        .output()
        .unwrap();
    assert_eq!((code(&o), stdout(&o)), (3, "TIMEOUT\n".to_string()));
    let o = altfree(&["solve", &fano, "--budget", "soon"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn reduce_sizes_and_unsupported_targets() {
    let (_t, d) = corpus_dir();
    let src = p(&d, "one-triple.3hg");
    let out = p(&d, "ot.json");
    let o = altfree(&["reduce", &src, "--target", "ab^2", "--out", &out]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("instance N=10, 20 edges"));
    let inst = parse_instance(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(inst.hypergraph.n_vertices(), 10);

    let o = altfree(&["reduce", &src, "--target", "ab^3a"]);
    assert_eq!(code(&o), 0);
    let inst = parse_instance(&stdout(&o)).unwrap();
    assert_eq!(inst.hypergraph.n_vertices(), 22);

    let o = altfree(&["reduce", &src, "--target", "ab^3"]);
    assert_eq!(
        parse_instance(&stdout(&o)).unwrap().hypergraph.n_vertices(),
        16
    );

    let o = altfree(&["reduce", &src, "--target", "ab^1a"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported"));

    let o = altfree(&["reduce", &p(&d, "c4.hg"), "--target", "pseudodisk"]);
    assert_eq!(code(&o), 0);
    let inst = parse_instance(&stdout(&o)).unwrap();
    assert_eq!(inst.hypergraph.n_vertices(), 5);
    assert!(inst.hypergraph.edges().iter().all(|e| e.contains(&5)));
}

#[test]
fn certify_both_directions() {
    let (_t, d) = corpus_dir();
    let inst = p(&d, "ot.json");
    altfree(&[
        "reduce",
        &p(&d, "one-triple.3hg"),
        "--target",
        "ab^2",
        "--out",
        &inst,
    ]);

    let o = altfree(&["certify", &inst, "--from-coloring", "red,red,blue"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "ordering 1,2,3,4,6,5,8,9,10,7\nFREE\n");

    let o = altfree(&["certify", &inst, "--from-ordering", "1,2,3,4,6,5,8,9,10,7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "coloring red,red,blue\nPROPER\n");

    let o = altfree(&["certify", &inst, "--from-coloring", "red,red,red"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("monochromatic triple"));

    let o = altfree(&["certify", &inst, "--from-ordering", "1,2,3,4,5,6,7,8,9,10"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("REJECTED"));

    let o = altfree(&["certify", &inst, "--from-coloring", "red,green,blue"]);
    assert_eq!(code(&o), 2);
    let o = altfree(&["certify", &inst]);
    assert_eq!(code(&o), 2);
}

#[test]
fn corpus_command_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = altfree(&["corpus", &dir.path().to_string_lossy()]);
    assert_eq!(code(&o), 0);
    for name in [
        "fano.3hg",
        "k4.hg",
        "c8.hg",
        "circular-6.hg",
        "two-interval-7.hg",
    ] {
        assert!(stdout(&o).lines().any(|l| l == name));
        assert!(dir.path().join(name).exists());
    }
}

#[test]
fn hypergraph_text_round_trips() {
    for seed in 0..100 {
        let n = 3 + (seed % 7) as u32;
        let m = (seed % 6) as usize;
        let h = random_hypergraph(RandomSpec::hypergraph(seed, n, m, 1, n as usize)).unwrap();
        let text = serialize_hypergraph(&h);
        assert_eq!(parse_hypergraph(&text).unwrap(), h, "seed {seed}");
        assert_eq!(
            serialize_hypergraph(&parse_hypergraph(&text).unwrap()),
            text
        );
    }
}
