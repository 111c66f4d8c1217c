//! End-to-end tests of the mmg binary: shared command examples, exit codes,
//! record determinism, and the reduction identity.

use std::path::Path;
use std::process::{Command, Output};

fn mmg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmg"))
        .args(args)
        .output()
        .expect("failed to launch mmg")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout not utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr not utf-8")
}

fn first_record(out: &Output) -> serde_json::Value {
    let text = stdout_of(out);
    let line = text.lines().next().expect("no output lines");
    serde_json::from_str(line).expect("first line is not a JSON record")
}

fn write_file(path: &Path, text: &str) {
    std::fs::write(path, text).expect("write test file");
}

#[test]
fn exact_reports_unit_diameter_on_a_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.mmg");
    write_file(&path, "p multimode 1 2 1 0\ne 0 0 1\n");
    let out = mmg(&["exact", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let rec = first_record(&out);
    assert_eq!(rec["diameter"], "1");
    assert_eq!(rec["radius"], "1");
    assert_eq!(rec["certified"], "1");
}

#[test]
fn generated_no_instance_round_trips_through_exact() {
    let dir = tempfile::tempdir().unwrap();
    let ov = dir.path().join("no.ov");
    let graph = dir.path().join("no.mmg");
    write_file(&ov, "a 11\na 10\nb 10\nb 11\n");
    let out = mmg(&[
        "gen",
        "--family",
        "diam-2mode-undirected",
        "--ov-file",
        ov.to_str().unwrap(),
        "--out",
        graph.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert_eq!(first_record(&out)["verdict"], "no");

    let text = std::fs::read_to_string(&graph).unwrap();
    assert!(text.contains("l diameter eq 2\n"), "{}", text);

    let exact = mmg(&["exact", graph.to_str().unwrap()]);
    assert!(exact.status.success(), "{}", stderr_of(&exact));
    let rec = first_record(&exact);
    assert_eq!(rec["diameter"], "2");
    assert_eq!(rec["verdict"], "labels-ok");

    let approx = mmg(&["approx-diam", graph.to_str().unwrap(), "--algo", "3approx"]);
    assert!(approx.status.success(), "{}", stderr_of(&approx));
    let est: u64 = first_record(&approx)["estimate"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!((1..=2).contains(&est), "estimate {} outside [1, 2]", est);
}

#[test]
fn records_are_identical_for_identical_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.mmg");
    let gen = |out_path: &Path| {
        mmg(&[
            "gen",
            "--family",
            "diam-2mode-undirected",
            "--random",
            "6",
            "--seed",
            "42",
            "--out",
            out_path.to_str().unwrap(),
        ])
    };
    let first = gen(&graph);
    assert!(first.status.success(), "{}", stderr_of(&first));
    let bytes_first = std::fs::read(&graph).unwrap();
    let graph2 = dir.path().join("g2.mmg");
    let second = gen(&graph2);
    assert!(second.status.success(), "{}", stderr_of(&second));
    assert_eq!(bytes_first, std::fs::read(&graph2).unwrap());

    let strip_ms = |out: &Output, rewrite: &str| {
        let mut rec = first_record(out);
        rec.as_object_mut().unwrap().remove("ms");
        let cmd = rec["command"].as_str().unwrap().replace(rewrite, "GRAPH");
        rec.as_object_mut().unwrap()["command"] = serde_json::Value::String(cmd);
        rec
    };
    for algo in ["3approx", "2approx", "2.5approx"] {
        let a = mmg(&["approx-diam", graph.to_str().unwrap(), "--algo", algo, "--seed", "9"]);
        let b = mmg(&["approx-diam", graph.to_str().unwrap(), "--algo", algo, "--seed", "9"]);
        assert!(a.status.success(), "{}: {}", algo, stderr_of(&a));
        assert_eq!(
            strip_ms(&a, graph.to_str().unwrap()),
            strip_ms(&b, graph.to_str().unwrap()),
            "{} records differ between runs",
            algo
        );
    }
    let a = mmg(&["approx-radius", graph.to_str().unwrap(), "--seed", "9"]);
    let b = mmg(&["approx-radius", graph.to_str().unwrap(), "--seed", "9"]);
    assert!(a.status.success(), "{}", stderr_of(&a));
    assert_eq!(
        strip_ms(&a, graph.to_str().unwrap()),
        strip_ms(&b, graph.to_str().unwrap())
    );
}

#[test]
fn exit_codes_separate_usage_from_input_errors() {
    let help = mmg(&["--help"]);
    assert_eq!(help.status.code(), Some(0));

    let unknown = mmg(&["exact", "/dev/null", "--bogus"]);
    assert_eq!(unknown.status.code(), Some(1));

    let missing = mmg(&["exact", "/definitely/not/here.mmg"]);
    assert_eq!(missing.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mmg");
    write_file(&bad, "p multimode 1 2 1 0\ne 0 0 9\n");
    let out = mmg(&["exact", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains("bad.mmg:2"), "{}", err);

    let lie = dir.path().join("lie.mmg");
    write_file(&lie, "p multimode 1 2 1 0\nl diameter eq 7\ne 0 0 1\n");
    let out = mmg(&["exact", lie.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("violated"), "{}", stderr_of(&out));
}

#[test]
fn reduce_offset_shifts_the_exact_diameter() {
    let dir = tempfile::tempdir().unwrap();
    let ov = dir.path().join("no.ov");
    let graph = dir.path().join("g.mmg");
    let reduced = dir.path().join("r.mmg");
    write_file(&ov, "a 11\na 10\nb 10\nb 11\n");
    let gen = mmg(&[
        "gen",
        "--family",
        "diam-2mode-undirected",
        "--ov-file",
        ov.to_str().unwrap(),
        "--out",
        graph.to_str().unwrap(),
    ]);
    assert!(gen.status.success(), "{}", stderr_of(&gen));

    let red = mmg(&[
        "reduce",
        graph.to_str().unwrap(),
        "--target",
        "diameter",
        "--out",
        reduced.to_str().unwrap(),
    ]);
    assert!(red.status.success(), "{}", stderr_of(&red));
    let offset: u64 = first_record(&red)["estimate"].as_str().unwrap().parse().unwrap();

    let text = std::fs::read_to_string(&reduced).unwrap();
    assert!(text.contains(&format!("c offset 2W={}\n", offset)), "{}", text);

    let exact = mmg(&["exact", reduced.to_str().unwrap()]);
    assert!(exact.status.success(), "{}", stderr_of(&exact));
    let d: u64 = first_record(&exact)["diameter"].as_str().unwrap().parse().unwrap();
    assert_eq!(d, offset + 2);
}

#[test]
fn radius_families_drive_directed_tasks() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("r.mmg");
    let gen = mmg(&[
        "gen",
        "--family",
        "radius-2mode-directed",
        "--random",
        "5",
        "--seed",
        "11",
        "--out",
        graph.to_str().unwrap(),
    ]);
    assert!(gen.status.success(), "{}", stderr_of(&gen));

    let fin = mmg(&["directed", graph.to_str().unwrap(), "--task", "finite-diam"]);
    assert!(fin.status.success(), "{}", stderr_of(&fin));
    let rec = first_record(&fin);
    assert!(rec["verdict"] == "finite" || rec["verdict"] == "infinite");

    let ecc = mmg(&["directed", graph.to_str().unwrap(), "--task", "min-ecc", "--mode", "1"]);
    assert!(ecc.status.success(), "{}", stderr_of(&ecc));

    let dag = mmg(&[
        "gen",
        "--family",
        "radius-2mode-dag",
        "--random",
        "5",
        "--seed",
        "11",
        "--out",
        graph.to_str().unwrap(),
    ]);
    assert!(dag.status.success(), "{}", stderr_of(&dag));
    let diam = mmg(&["directed", graph.to_str().unwrap(), "--task", "dag-diam"]);
    assert!(diam.status.success(), "{}", stderr_of(&diam));
    let ecc = mmg(&["directed", graph.to_str().unwrap(), "--task", "dag-finite-ecc"]);
    assert!(ecc.status.success(), "{}", stderr_of(&ecc));
}

#[test]
fn bench_prints_a_csv_header_and_one_row_per_path() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.mmg");
    let b = dir.path().join("b.mmg");
    write_file(&a, "p multimode 2 3 2 0\ne 0 0 1\ne 1 1 2\n");
    write_file(&b, "p multimode 2 2 1 0\ne 1 0 1\n");
    let out = mmg(&[
        "bench",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--algo",
        "3approx",
        "--repeat",
        "3",
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{}", text);
    assert_eq!(lines[0], "path,algo,n,k,m,median_ms");
    assert!(lines[1].contains("3approx,3,2,2,"), "{}", lines[1]);
    assert!(lines[2].contains("3approx,2,2,1,"), "{}", lines[2]);
}

#[test]
fn apsp_dump_lists_one_row_per_source() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.mmg");
    write_file(&path, "p multimode 1 3 2 0\ne 0 0 1\ne 0 1 2 4\n");
    let out = mmg(&["exact", path.to_str().unwrap(), "--apsp"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("apsp ")).collect();
    assert_eq!(rows, vec!["apsp 0 0 1 5", "apsp 1 1 0 4", "apsp 2 5 4 0"]);
}

#[test]
fn human_view_prints_a_table_instead_of_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.mmg");
    write_file(&path, "p multimode 1 2 1 0\ne 0 0 1\n");
    let out = mmg(&["exact", path.to_str().unwrap(), "--human"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(!text.starts_with('{'), "{}", text);
    assert!(text.contains("diameter:"), "{}", text);
    assert!(text.contains("radius:"), "{}", text);
}
