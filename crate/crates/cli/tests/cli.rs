use std::path::Path;
use std::process::{Command, Output};

fn csvqe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csvqe")).args(args).env_remove("CSVQE_THREADS").output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = csvqe(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn fails(args: &[&str]) -> String {
    let o = csvqe(args);
    assert_eq!(o.status.code(), Some(1), "{args:?} should fail");
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error: "));
    err
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn listing(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    v.sort();
    v
}

#[test]
fn version_lists_data_digests() {
    let out = ok(&["--version"]);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].contains(env!("CARGO_PKG_VERSION")));
    assert_eq!(lines.len(), 13);
    assert!(lines[1].starts_with("h0.ham sha256:") && lines[1].len() == "h0.ham sha256:".len() + 64);
    assert!(lines[12].starts_with("eagle127.json sha256:"));
}

#[test]
fn exact_energies() {
    let out = ok(&["exact", "--bundled", "h0"]);
    assert!(out.contains("E0 = -106.7266567245 Ha"), "{out}");
    let out = ok(&["exact", "--bundled", "h9"]);
    assert!(out.starts_with("h9: bond length 2.00 Å"));
    assert!(out.contains("E0 = -107.4293844988 Ha"));
    fails(&["exact", "--hamiltonian", "/nonexistent/file.ham"]);
    fails(&["exact", "--bundled", "h12"]);
    fails(&["exact"]);
    fails(&["frobnicate"]);
}

#[test]
fn malformed_hamiltonian_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.ham");
    std::fs::write(&path, "[identity] 1.0\n[clique 0]\n+1.0 XZ\n+1.0 ZZ\n").unwrap();
    let err = fails(&["exact", "--hamiltonian", path.to_str().unwrap()]);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn adapt_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h9");
    ok(&["adapt", "--bundled", "h9", "--topology", "falcon27", "--out", out.to_str().unwrap()]);
    assert_eq!(listing(&out), ["ansatz.circuit", "manifest.json", "result.json", "trace.jsonl"]);
    let trace = String::from_utf8(read(&out, "trace.jsonl")).unwrap();
    let mut last_energy = f64::INFINITY;
    for (i, line) in trace.lines().enumerate() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["iteration"], i + 1);
        assert!(v["operator"].as_str().unwrap().len() == 5);
        let e = v["energy"].as_f64().unwrap();
        assert!(e <= last_energy + 1e-9);
        last_energy = e;
        assert!(v["cnot_count"].is_u64());
    }
    let circuit = String::from_utf8(read(&out, "ansatz.circuit")).unwrap();
    let parsed = csvqe::circuit::parse_circuit(&circuit).unwrap();
    let result: serde_json::Value = serde_json::from_slice(&read(&out, "result.json")).unwrap();
    assert_eq!(result["cnot_count"], parsed.cnot_count());
    assert!(result["error_mha"].as_f64().unwrap().abs() < 4.48);
    let manifest: serde_json::Value = serde_json::from_slice(&read(&out, "manifest.json")).unwrap();
    assert_eq!(manifest["command"], "adapt");
    assert_eq!(manifest["input_digests"].as_array().unwrap().len(), 2);
}

#[test]
fn adapt_without_operators() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    ok(&["adapt", "--bundled", "h9", "--nmax", "0", "--out", out.to_str().unwrap()]);
    let result: serde_json::Value = serde_json::from_slice(&read(out, "result.json")).unwrap();
    assert_eq!(result["generators"].as_array().unwrap().len(), 0);
    assert_eq!(result["energy"], result["reference_energy"]);
    assert_eq!(result["termination"], "max_iterations");
    assert!(read(out, "trace.jsonl").is_empty());
    fails(&["adapt", "--bundled", "h9", "--reference", "012"]);
    fails(&["adapt", "--bundled", "h9", "--bias", "-1"]);
    fails(&["adapt", "--bundled", "h9", "--topology", "/nonexistent.json"]);
}

#[test]
fn paired_comparison_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(&["adapt", "--bundled", "h4", "--compare", "--out", dir.path().to_str().unwrap()]);
    let table = String::from_utf8(read(dir.path(), "compare.csv")).unwrap();
    assert!(out.contains(&table));
    let rows: Vec<Vec<&str>> = table.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "standard");
    assert_eq!(rows[1][0], "hardware_aware");
    assert_eq!(rows[1][5], "true");
    let cnots: Vec<usize> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(cnots[1] <= cnots[0]);
}

fn pec_rows(dir: &Path) -> Vec<Vec<String>> {
    let csv = String::from_utf8(read(dir, "pec.csv")).unwrap();
    csv.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn noiseless_curve_meets_the_target() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["pec", "--noise", "none", "--out", dir.path().to_str().unwrap()]);
    let rows = pec_rows(dir.path());
    assert_eq!(rows.len(), 10);
    for r in &rows {
        let adapt: f64 = r[7].parse().unwrap();
        let mitigated: f64 = r[9].parse().unwrap();
        assert!(adapt.abs() <= 0.00448 && mitigated.abs() <= 0.00448, "{r:?}");
    }
    let report: serde_json::Value = serde_json::from_slice(&read(dir.path(), "pec_report.json")).unwrap();
    assert_eq!(report.as_array().unwrap().len(), 10);
}

#[test]
fn single_point_matches_adapt_and_exact() {
    let dir = tempfile::tempdir().unwrap();
    let (p, a) = (dir.path().join("p"), dir.path().join("a"));
    ok(&["pec", "--ids", "h4", "--shots", "1000", "--out", p.to_str().unwrap()]);
    ok(&["adapt", "--bundled", "h4", "--topology", "falcon27", "--bias", "20", "--out", a.to_str().unwrap()]);
    let row = &pec_rows(&p)[0];
    let result: serde_json::Value = serde_json::from_slice(&read(&a, "result.json")).unwrap();
    assert_eq!(row[2], format!("{:.10}", result["exact_energy"].as_f64().unwrap()));
    assert_eq!(row[3], format!("{:.10}", result["energy"].as_f64().unwrap()));
    assert_eq!(row[11], result["cnot_count"].to_string());
    assert_eq!(row[10], "4");
    fails(&["pec", "--ids", "h4,h4"]);
    fails(&["pec", "--ids", "h4", "--tiles", "0"]);
    fails(&["pec", "--ids", "h4", "--lambdas", "0,1"]);
    fails(&["pec", "--ids", "h4", "--noise", "/nonexistent.json"]);
}

#[test]
fn noise_model_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("noise.json");
    let model = csvqe::qem::NoiseModel { tile_scales: Some(vec![1.0, 1.0]), ..Default::default() };
    std::fs::write(&path, model.to_json()).unwrap();
    let out = dir.path().join("out");
    let args = ["pec", "--ids", "h9", "--tiles", "2", "--shots", "2000", "--noise", path.to_str().unwrap()];
    ok(&[&args[..], &["--out", out.to_str().unwrap()]].concat());
    assert_eq!(pec_rows(&out)[0][10], "2");
    let manifest: serde_json::Value = serde_json::from_slice(&read(&out, "manifest.json")).unwrap();
    assert_eq!(manifest["input_digests"].as_array().unwrap().len(), 3);
    std::fs::write(&path, r#"{"p_1q": 0.0, "p_2q": 0.5, "readout": [{"p01": 0.7, "p10": 0.0}]}"#).unwrap();
    fails(&args);
}

#[test]
fn degeneracy_scan() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("levels.csv");
    std::fs::write(&csv, "bond_length,e0,e1,e2\n1.0,-1.0,-0.5,0.5\n1.5,-1.0,-0.3,-0.2999\n").unwrap();
    let out = ok(&["degeneracy", "--csv", csv.to_str().unwrap(), "--delta", "1", "--threshold", "0.99"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "bond_length,lower,upper,gap,score");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("1.5,1,2,"));
    fails(&["degeneracy", "--csv", csv.to_str().unwrap(), "--delta", "0"]);
    fails(&["degeneracy", "--csv", "/nonexistent.csv"]);
}

fn replay_matches(args: &[&str]) {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    ok(&[args, &["--out", a.to_str().unwrap()]].concat());
    ok(&["replay", a.join("manifest.json").to_str().unwrap(), "--out", b.to_str().unwrap()]);
    let names = listing(&a);
    assert_eq!(names, listing(&b));
    for name in names.iter().filter(|n| *n != "manifest.json") {
        assert_eq!(read(&a, name), read(&b, name), "{args:?}: {name} differs");
    }
    let strip = |dir: &Path| {
        let mut v: serde_json::Value = serde_json::from_slice(&read(dir, "manifest.json")).unwrap();
        v.as_object_mut().unwrap().remove("timestamp");
        v.as_object_mut().unwrap().remove("argv");
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn replays_are_byte_identical() {
    replay_matches(&["exact", "--bundled", "h3"]);
    replay_matches(&["adapt", "--bundled", "h6", "--topology", "falcon27", "--seed", "4"]);
    replay_matches(&["pec", "--ids", "h1,h8", "--shots", "5000", "--seed", "11"]);
}

#[test]
fn fixed_epoch_makes_manifests_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let run = || {
        let o = Command::new(env!("CARGO_BIN_EXE_csvqe"))
            .args(["exact", "--bundled", "h2", "--out", out.to_str().unwrap()])
            .env("SOURCE_DATE_EPOCH", "1700000000")
            .output()
            .unwrap();
        assert!(o.status.success());
        read(&out, "manifest.json")
    };
    assert_eq!(run(), run());
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(threads);
        let o = Command::new(env!("CARGO_BIN_EXE_csvqe"))
            .args(["pec", "--ids", "h2,h9", "--shots", "4000", "--out", out.to_str().unwrap()])
            .env("CSVQE_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        outputs.push((read(&out, "pec.csv"), read(&out, "pec_report.json")));
    }
    assert_eq!(outputs[0], outputs[1]);
    let o = Command::new(env!("CARGO_BIN_EXE_csvqe")).args(["exact", "--bundled", "h0"]).env("CSVQE_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn failures_leave_no_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    fails(&["adapt", "--bundled", "nope", "--out", out.to_str().unwrap()]);
    assert!(!out.exists());

    // `result.json` cannot be written over a directory; the files renamed
    // before it must be removed again.
    let blocked = dir.path().join("blocked");
    std::fs::create_dir_all(blocked.join("result.json")).unwrap();
    fails(&["adapt", "--bundled", "h4", "--nmax", "1", "--out", blocked.to_str().unwrap()]);
    assert_eq!(listing(&blocked), ["result.json"]);
}
