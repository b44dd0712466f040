use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

const D4: &str = "4 4\n0 1\n0 2\n1 3\n2 3\n";

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dagwidth"))
        .args(args)
        .env_remove("DAGWIDTH_DEBUG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn mpc_on_d4_has_two_paths() {
    let f = file(D4);
    for variant in ["k2", "k3"] {
        let o = run(&["mpc", f.path().to_str().unwrap(), "--variant", variant, "--verify"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).lines().next(), Some("2"));
    }
}

#[test]
fn mpc_on_single_vertex() {
    let f = file("1 0\n");
    assert_eq!(stdout(&run(&["mpc", f.path().to_str().unwrap()])), "1\n0\n");
}

#[test]
fn cyclic_input_is_an_input_error() {
    let f = file("2 2\n0 1\n1 0\n");
    let o = run(&["mpc", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cycle detected"));
}

#[test]
fn parse_error_names_the_line() {
    let f = file("# g\n3 1\n0 one\n");
    let o = run(&["antichain", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn antichain_on_d4() {
    let f = file(D4);
    let o = run(&["antichain", f.path().to_str().unwrap(), "--verify"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "1 2\n".to_string()));
}

#[test]
fn mcc_chains_are_disjoint() {
    let f = file(D4);
    let o = run(&["mcc", f.path().to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut ids: Vec<&str> = text.lines().skip(1).flat_map(str::split_whitespace).collect();
    ids.sort_unstable();
    assert_eq!(ids, vec!["0", "1", "2", "3"]);
}

#[test]
fn sparsify_and_thin_emit_edge_lists() {
    let f = file(D4);
    let o = run(&["sparsify", f.path().to_str().unwrap()]);
    assert_eq!(stdout(&o), D4);
    let cover = NamedTempFile::new().unwrap();
    let o = run(&["thin", f.path().to_str().unwrap(), "--cover-out", cover.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let m: usize = stdout(&o).split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(m <= 4);
    assert_eq!(std::fs::read_to_string(cover.path()).unwrap().lines().next(), Some("2"));
}

#[test]
fn gen_remark_counts() {
    let o = run(&["gen", "--family", "remark", "--n", "2"]);
    assert_eq!(stdout(&o).lines().next(), Some("8 8"));
}

#[test]
fn gen_random_needs_a_seed() {
    assert_eq!(run(&["gen", "--family", "random", "--n", "10"]).status.code(), Some(1));
    let a = run(&["gen", "--family", "random", "--n", "30", "--k", "3", "--seed", "5"]);
    let b = run(&["gen", "--family", "random", "--n", "30", "--k", "3", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn remapped_ids_and_mapping() {
    let f = file("3 2\n100 200\n200 300\n");
    let map = NamedTempFile::new().unwrap();
    let o = run(&["mpc", f.path().to_str().unwrap(), "--map", map.path().to_str().unwrap()]);
    assert_eq!(stdout(&o), "1\n0 1 2\n");
    assert_eq!(std::fs::read_to_string(map.path()).unwrap(), "0 100\n1 200\n2 300\n");
}

#[test]
fn bench_prints_one_row_per_size() {
    let o = run(&["bench", "--k", "4", "--sizes", "200,400,800", "--runs", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("n,m,k,variant,ms,charges"));
    assert_eq!(text.lines().skip(1).count(), 3);
}

#[test]
fn debug_mode_traces_insertions() {
    let f = file(D4);
    let o = Command::new(env!("CARGO_BIN_EXE_dagwidth"))
        .args(["mpc", f.path().to_str().unwrap()])
        .env("DAGWIDTH_DEBUG", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().filter(|l| l.starts_with("i=")).count(), 4);
}
