use std::path::PathBuf;
use std::process::{Command, Output};

fn tamecalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tamecalc"))
        .args(args)
        .env("TAMECALC_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn scenario(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "scenarios", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poly_golden() {
    let o = tamecalc(&["poly", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "ν20 ρ² + (ν10 + 2 ν11) ρ\n");
    let o = tamecalc(&["poly", "4"]);
    assert_eq!(
        stdout(&o),
        "ν40 ρ⁴ + (6 ν30 + 4 ν31) ρ³ + (7 ν20 + 12 ν21 + 6 ν22) ρ² + (ν10 + 4 ν11 + 6 ν12 + 4 ν13) ρ\n"
    );
}

#[test]
fn poly_out_of_range() {
    assert_eq!(tamecalc(&["poly", "13"]).status.code(), Some(2));
    assert_eq!(tamecalc(&["poly", "x"]).status.code(), Some(2));
}

#[test]
fn constants() {
    let o = tamecalc(&["constants", "S", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.19947114020071632).abs() < 1e-15, "{v}");
    assert_eq!(tamecalc(&["constants", "U", "1", "2", "1"]).status.code(), Some(2));
    assert_eq!(tamecalc(&["constants", "Q", "1"]).status.code(), Some(2));
}

#[test]
fn bound_exit_codes() {
    assert_eq!(tamecalc(&["bound", &scenario("explicit_norms.toml")]).status.code(), Some(0));
    let o = tamecalc(&["bound", &scenario("ball_violation.toml")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ball"));
    assert_eq!(tamecalc(&["bound", "/nonexistent.toml"]).status.code(), Some(2));
}

#[test]
fn bound_weak_and_freeze_u() {
    let path = scenario("explicit_norms.toml");
    let parse = |args: &[&str]| -> serde_json::Value { serde_json::from_str(&stdout(&tamecalc(args))).unwrap() };
    let strong = parse(&["bound", &path]);
    let weak = parse(&["bound", &path, "--weak"]);
    let frozen = parse(&["bound", &path, "--freeze-u"]);
    assert_eq!(weak["form"], "weak");
    assert!(weak["rhs"].as_f64().unwrap() >= strong["rhs"].as_f64().unwrap());
    assert_eq!(frozen["freeze_u"], true);
    assert!(frozen["gamma_nd"].as_f64().unwrap() >= strong["gamma_nd"].as_f64().unwrap());
}

#[test]
fn verify_writes_deterministic_report() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let path = scenario("monomial_bessel_2d.toml");
    for out in [&a, &b] {
        let o = tamecalc(&["verify", &path, "--output", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).starts_with("name,lhs,rhs,ratio,pass\n"));
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["records"].as_array().unwrap().len() > 3);
}

#[test]
fn negative_control_fails() {
    let o = tamecalc(&["verify", &scenario("negative_control.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAILED tame"));
}

#[test]
fn verify_json_format_and_bad_tolerance() {
    let path = scenario("appendix.toml");
    let o = tamecalc(&["verify", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 10);
    assert_eq!(tamecalc(&["verify", &path, "--tolerance", "-1"]).status.code(), Some(2));
    assert_eq!(tamecalc(&["verify", &path, "--format", "latex"]).status.code(), Some(2));
}

#[test]
fn unknown_check_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.toml");
    std::fs::write(&p, "checks = [\"nope\"]\n[model]\nkind = \"sinh\"\n[bound]\nn = 1\na = 1\n").unwrap();
    assert_eq!(tamecalc(&["verify", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn bad_thread_count() {
    let o = Command::new(env!("CARGO_BIN_EXE_tamecalc"))
        .args(["poly", "1"])
        .env("TAMECALC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
