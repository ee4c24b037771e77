use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::Command;
use tempfile::TempDir;

fn gpi(args: &[&str]) -> (Value, i32) {
    gpi_env(args, &[])
}

fn gpi_env(args: &[&str], env: &[(&str, &str)]) -> (Value, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gpi"));
    cmd.args(args).env_remove("GPI_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (report, code)
}

fn make(dir: &Path, name: &str, family: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut args = vec!["make"];
    args.extend_from_slice(family);
    args.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let (_, code) = gpi(&args);
    assert_eq!(code, 0);
    path
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cyclic_six_is_isomorphic_to_itself() {
    let dir = TempDir::new().unwrap();
    let z6 = make(dir.path(), "z6.json", &["cyclic", "6"]);
    let (r, code) = gpi(&["iso", s(&z6), s(&z6)]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], "gpi.iso.v1");
    assert_eq!(r["isomorphic"], true);
    assert_eq!(r["aut_order"], "2");
    assert_eq!(r["seed"], 0);
    assert!(r["budgets"]["h2"].is_u64());
}

#[test]
fn recognize_quaternion() {
    let dir = TempDir::new().unwrap();
    let q8 = make(dir.path(), "q8.json", &["quaternion", "2"]);
    let (r, code) = gpi(&["recognize", s(&q8)]);
    assert_eq!(code, 0);
    assert_eq!(r["recognized"]["type"], "quaternion");
    assert_eq!(r["recognized"]["m"], 2);
}

#[test]
fn h2_of_trivial_module_over_z2() {
    let dir = TempDir::new().unwrap();
    let z2 = make(dir.path(), "z2.json", &["cyclic", "2"]);
    let triv = write(dir.path(), "trivial1.json", r#"{"p": 2, "d": 1, "images": [[1], [1]]}"#);
    let (r, code) = gpi(&["h2", "--group", s(&z2), "--rep", s(&triv), "-j", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["dim"], 1);
}

#[test]
fn tower_and_brute_agree() {
    let dir = TempDir::new().unwrap();
    let d8 = make(dir.path(), "d8.json", &["dihedral", "2"]);
    let q8 = make(dir.path(), "q8.json", &["quaternion", "2"]);
    let d12 = make(dir.path(), "d12.json", &["dih", "6"]);
    let z2 = make(dir.path(), "z2.json", &["cyclic", "2"]);
    let s3 = make(dir.path(), "s3.json", &["symmetric", "3"]);
    let p = make(dir.path(), "z2s3.json", &["product", s(&z2), s(&s3)]);
    for (a, b, iso) in [(&d8, &q8, false), (&d12, &p, true)] {
        for functor in ["o-p-radical", "center", "derived"] {
            let (r, code) = gpi(&["iso", s(a), s(b), "--functor", functor]);
            assert_eq!(code, 0);
            assert_eq!(r["isomorphic"], iso);
        }
        let (r, _) = gpi(&["iso", s(a), s(b), "--brute"]);
        assert_eq!(r["isomorphic"], iso);
        let (r, _) = gpi(&["oracle", "iso", s(a), s(b)]);
        assert_eq!(r["isomorphic"], iso);
    }
    let (tower, _) = gpi(&["aut", s(&d12)]);
    let (brute, _) = gpi(&["aut", s(&d12), "--brute"]);
    assert_eq!(tower["aut"]["order"], brute["aut"]["order"]);
    assert_eq!(tower["aut"]["order"], "12");
}

#[test]
fn usage_errors_exit_one() {
    let (r, code) = gpi(&["make", "bogus", "3"]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["kind"], "usage");
    let (_, code) = gpi(&["iso"]);
    assert_eq!(code, 1);
    let (_, code) = gpi(&["aut", "/nonexistent/g.json"]);
    assert_eq!(code, 1);
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"n": 2, "table": [[0, 1], [1, 1]]}"#);
    let (_, code) = gpi(&["aut", s(&bad)]);
    assert_eq!(code, 1);
    let z4 = make(dir.path(), "z4.json", &["cyclic", "4"]);
    let (r, code) = gpi(&["iso", s(&z4), s(&z4), "--functor", "nope"]);
    assert_eq!(code, 1, "{r}");
}

#[test]
fn budget_exceeded_exits_two() {
    let dir = TempDir::new().unwrap();
    let q16 = make(dir.path(), "q16.json", &["quaternion", "3"]);
    let (r, code) = gpi(&["--h2-budget", "1", "aut", s(&q16)]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "budget");
    assert_eq!(r["budgets"]["h2"], 1);
}

#[test]
fn seed_comes_from_environment() {
    let dir = TempDir::new().unwrap();
    let z4 = make(dir.path(), "z4.json", &["cyclic", "4"]);
    let (r, _) = gpi_env(&["radical", s(&z4)], &[("GPI_SEED", "17")]);
    assert_eq!(r["seed"], 17);
    let (r, _) = gpi_env(&["--seed", "5", "radical", s(&z4)], &[("GPI_SEED", "17")]);
    assert_eq!(r["seed"], 5);
}

#[test]
fn enum_sd_is_independent_of_threads() {
    let (one, code) = gpi(&["enum-sd", "--ell", "1", "--max-dim", "4"]);
    assert_eq!(code, 0);
    let (three, _) = gpi(&["--threads", "3", "enum-sd", "--ell", "1", "--max-dim", "4"]);
    assert_eq!(one, three);
    assert_eq!(one["pass"], true);
    let totals: Vec<u64> = one["dimensions"].as_array().unwrap().iter().map(|d| d["total"].as_u64().unwrap()).collect();
    assert_eq!(totals, vec![1, 5, 4, 16]);
}

#[test]
fn wild_family_counts() {
    let (r, code) = gpi(&["wild", "--p", "2", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["classes"], 10);
    assert_eq!(r["lower_bound"], 4);
}

#[test]
fn extension_data_feeds_cciso_and_oracle() {
    let dir = TempDir::new().unwrap();
    let z4 = make(dir.path(), "z4.json", &["cyclic", "4"]);
    let (r, code) = gpi(&["extdata", s(&z4), "--subgroup", "0,2"]);
    assert_eq!(code, 0);
    let q = write(dir.path(), "q.json", &r["quotient"].to_string());
    let theta = write(dir.path(), "theta.json", &r["theta"].to_string());
    let f = write(dir.path(), "f.json", &r["f"].to_string());
    let zero = write(dir.path(), "zero.json", r#"{"p": 2, "d": 1, "n": 2, "values": [[[0], [0]], [[0], [0]]]}"#);
    let (c, code) = gpi(&["cciso", "--group", s(&q), "--rep", s(&theta), s(&f), s(&zero)]);
    assert_eq!(code, 0, "{c}");
    assert_eq!(c["nonempty"], false);
    assert_eq!(c["dim_h2"], 1);
    let (c, _) = gpi(&["cciso", "--group", s(&q), "--rep", s(&theta), s(&f), s(&f)]);
    assert_eq!(c["nonempty"], true);
    let (o, _) = gpi(&["oracle", "cohomologous", "--group", s(&q), "--rep", s(&theta), s(&f), s(&zero)]);
    assert_eq!(o["cohomologous"], false);
}

#[test]
fn module_commands() {
    let dir = TempDir::new().unwrap();
    let z2 = make(dir.path(), "z2.json", &["cyclic", "2"]);
    let regular = write(dir.path(), "reg.json", r#"{"p": 2, "d": 2, "images": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]}"#);
    let triv2 = write(dir.path(), "triv2.json", r#"{"p": 2, "d": 2, "images": [[[1, 0], [0, 1]], [[1, 0], [0, 1]]]}"#);
    let (r, code) = gpi(&["decompose", s(&regular), "--group", s(&z2)]);
    assert_eq!(code, 0);
    assert_eq!(r["block_dims"], serde_json::json!([2]));
    let (r, _) = gpi(&["decompose", s(&triv2), "--group", s(&z2)]);
    assert_eq!(r["block_dims"], serde_json::json!([1, 1]));
    let (r, _) = gpi(&["oracle", "indecomposable", s(&regular), "--group", s(&z2)]);
    assert_eq!(r["indecomposable"], true);
    let (r, code) = gpi(&["actcomp", s(&regular), s(&triv2), "--group", s(&z2)]);
    assert_eq!(code, 0);
    assert_eq!(r["nonempty"], false);
    let (r, _) = gpi(&["actcomp", s(&regular), s(&regular), "--group", s(&z2)]);
    assert_eq!(r["nonempty"], true);
    let s3 = make(dir.path(), "s3.json", &["symmetric", "3"]);
    let (r, _) = gpi(&["sylow", "-p", "3", s(&s3)]);
    assert_eq!(r["sylow"]["order"], 3);
    let (r, _) = gpi(&["radical", s(&s3)]);
    assert_eq!(r["radical"]["order"], 6);
}
