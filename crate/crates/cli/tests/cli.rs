use std::process::{Command, Output};

use nilrep_cli::bench::BenchReport;
use nilrep_cli::report::{BasisReport, RepReport, VerifyReport};

fn nilrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilrep")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn collect_prints_normal_form() {
    let out = nilrep(&["collect", "--builtin", "heisenberg", "x2 x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "(1, 1, 1)\n");
    let out = nilrep(&["collect", "--builtin", "heisenberg", ""]);
    assert_eq!(stdout(&out), "(0, 0, 0)\n");
}

#[test]
fn input_errors_exit_2() {
    let out = nilrep(&["collect", "--builtin", "heisenberg", "x2 x9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x9"));
    assert_eq!(nilrep(&["basis", "--builtin", "bogus:3"]).status.code(), Some(2));
    assert_eq!(nilrep(&["basis", "--file", "/nonexistent/pres.txt"]).status.code(), Some(2));
    assert_eq!(nilrep(&["bench", "--family", "unitriangular", "--sizes", "5..3"]).status.code(), Some(2));
}

#[test]
fn presentation_file_matches_builtin() {
    let dir = std::env::temp_dir().join(format!("nilrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("heisenberg.txt");
    let render = nilrep::Family::Heisenberg.presentation().unwrap().render();
    std::fs::write(&path, render).unwrap();
    let from_file = nilrep(&["basis", "--file", path.to_str().unwrap(), "--format", "json"]);
    let builtin = nilrep(&["basis", "--builtin", "heisenberg", "--format", "json"]);
    let a: BasisReport = serde_json::from_slice(&from_file.stdout).unwrap();
    let b: BasisReport = serde_json::from_slice(&builtin.stdout).unwrap();
    assert_eq!(a.basis, b.basis);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn basis_counts_for_heisenberg() {
    let out = nilrep(&["basis", "--builtin", "heisenberg", "--counts", "--format", "json"]);
    let r: BasisReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.dimension, 4);
    let c = r.counts.unwrap();
    assert_eq!((c.insert_count, c.insert_bound), (7, 7));
    let out = nilrep(&["basis", "--builtin", "heisenberg"]);
    assert!(stdout(&out).starts_with("dimension 4 "));
}

#[test]
fn rep_json_round_trips_exactly() {
    let out = nilrep(&["rep", "--builtin", "heisenberg", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: RepReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.matrices.len(), 3);
    for m in &r.matrices {
        let mat = m.to_matrix().unwrap();
        assert_eq!(mat.dim(), 4);
        assert!(mat.is_integral());
        assert_eq!(nilrep_cli::report::MatrixJson::new(m.generator.clone(), &mat), *m);
    }
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, stdout(&out));
}

#[test]
fn verify_exit_status_and_seed() {
    let args = ["verify", "--builtin", "free_nilpotent_class2:3", "--trials", "500", "--seed", "7", "--format", "json"];
    let a = nilrep(&args);
    assert_eq!(a.status.code(), Some(0));
    let r: VerifyReport = serde_json::from_slice(&a.stdout).unwrap();
    assert!(r.passed);
    assert_eq!(r.sampling.trials, 500);
    assert_eq!(nilrep(&args).stdout, a.stdout);
}

#[test]
fn figure2_gap_exits_3() {
    let out = nilrep(&["verify", "--builtin", "unitriangular:5", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("figure1"));
    let out = nilrep(&["verify", "--builtin", "unitriangular:5", "--trials", "10", "--algorithm", "figure1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bench_tables() {
    let out = nilrep(&["bench", "--family", "free_nilpotent_class2", "--sizes", "2..5", "--jobs", "2", "--format", "json"]);
    let r: BenchReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.rows.iter().map(|r| r.n).collect::<Vec<_>>(), [3, 6, 10, 15]);
    assert!(r.rows.iter().all(|r| r.figure2_inserts <= r.figure1_inserts && r.wall_ms.is_some()));
    assert!(r.slope.is_some());

    let out = nilrep(&["bench", "--family", "unitriangular", "--sizes", "3..6", "--no-timing", "--format", "json"]);
    let r: BenchReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.rows.iter().map(|r| r.n).collect::<Vec<_>>(), [3, 6, 10, 15]);
    assert!(r.rows.iter().all(|r| r.dimension <= r.dimension_bound && r.wall_ms.is_none()));

    let out = nilrep(&["bench", "--family", "unitriangular", "--sizes", "4", "--format", "json"]);
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r.get("slope").is_none());

    let out = nilrep(&["bench", "--family", "free_abelian", "--sizes", "1..3", "--no-timing", "--format", "csv"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(1).unwrap().starts_with("free_abelian,1,1,1,"));
}
