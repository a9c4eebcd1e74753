use std::path::Path;
use std::process::{Command, Output};

fn excursion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_excursion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn table(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn header_value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .filter_map(|l| l.strip_prefix("# "))
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["--out", p]);
    let out = excursion(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn eval_nu_grid() {
    let out = excursion(&["eval", "nu", "--model", "ou", "--gamma", "1", "--grid", "0.5:2:0.5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(header_value(&text, "quantity"), Some("nu"));
    assert!(header_value(&text, "tool").unwrap().starts_with("excursion "));
    let rows = table(&text);
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1][0], 1.0);
    assert!((rows[1][1] - 0.516_284_362_302_378).abs() < 1e-12);
}

#[test]
fn eval_delta_has_unit_mass() {
    let out = excursion(&["eval", "delta", "--alpha", "1", "--grid", "0.001:20:0.001"]);
    assert!(out.status.success());
    let rows = table(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 20_000);
    let h = 0.001;
    let trapezoid: f64 = rows.windows(2).map(|w| 0.5 * h * (w[0][1] + w[1][1])).sum();
    // the density behaves like c/√a at 0, so ∫_0^h ≈ 2h f(h)
    let head = 2.0 * h * rows[0][1];
    assert!((trapezoid + head - 1.0).abs() < 1e-3, "{}", trapezoid + head);
}

#[test]
fn eval_phi_brownian() {
    let out = excursion(&["eval", "phi", "--model", "bm", "--grid", "1:2:1"]);
    let rows = table(&String::from_utf8(out.stdout).unwrap());
    assert!((rows[1][1] - 2.0).abs() < 1e-14);
}

#[test]
fn eval_json() {
    let out = excursion(&["eval", "p00", "--grid", "1:2:1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["columns"][1], "p00");
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["provenance"]["model"], "ou gamma=1");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(excursion(&["eval", "nu", "--grid", "2:1:1"]).status.code(), Some(2));
    assert_eq!(excursion(&["eval", "nonsense"]).status.code(), Some(2));
    assert_eq!(excursion(&["eval", "nu", "--alpha", "0"]).status.code(), Some(2));
    assert_eq!(excursion(&["eval", "delta", "--grid", "0:1:0.5"]).status.code(), Some(2));
    assert_eq!(excursion(&["mc", "straddle_euler", "--dt", "0.1", "--samples", "10"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let ou = excursion(&["verify", "--model", "ou", "--gamma", "1", "--alpha", "1"]);
    assert_eq!(ou.status.code(), Some(0), "{}", String::from_utf8_lossy(&ou.stdout));
    let bm = excursion(&["verify", "--model", "bm", "--alpha", "1"]);
    assert_eq!(bm.status.code(), Some(0));
    let text = String::from_utf8(bm.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("stationary_delta,") && l.ends_with(",unavailable")));
    assert!(header_value(&text, "summary").unwrap().contains("unavailable=5"));
    let broken = excursion(&["verify", "--corrupt-tolerance"]);
    assert_eq!(broken.status.code(), Some(1));
    let perturbed = excursion(&["verify", "--perturb-nu", "1.01"]);
    assert_eq!(perturbed.status.code(), Some(1));
}

#[test]
fn verify_json_report() {
    let out = excursion(&["verify", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["failed"], 0);
    assert!(v["report"]["reports"].as_array().unwrap().len() > 100);
}

#[test]
fn mc_straddle_exact_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["mc", "straddle_exact", "--samples", "100000", "--seed", "5"];
    let a = run_to(dir.path(), "a.csv", &args);
    let b = run_to(dir.path(), "b.csv", &args);
    assert_eq!(a, b);
    let rows = table(&a);
    assert_eq!(rows.len(), 4);
    for r in &rows {
        assert!(r[3] <= 0.01, "KS {r:?}");
    }
    let c = run_to(dir.path(), "c.csv", &["mc", "straddle_exact", "--samples", "1000", "--seed", "6"]);
    assert_ne!(table(&c), table(&run_to(dir.path(), "d.csv", &["mc", "straddle_exact", "--samples", "1000", "--seed", "7"])));
}

#[test]
fn mc_excursion_max() {
    let out = excursion(&["mc", "excursion_max", "--level", "1", "--horizon", "10000", "--dt", "1e-4"]);
    assert!(out.status.success());
    let rows = table(&String::from_utf8(out.stdout).unwrap());
    let (estimate, target) = (rows[0][2], rows[0][3]);
    assert!((target - 1.0 / 1.462_651_745_907_181_6).abs() < 1e-12);
    assert!((estimate / target - 1.0).abs() < 0.1, "{estimate} vs {target}");
}

#[test]
fn mc_williams() {
    let out = excursion(&["mc", "williams", "--level", "1", "--samples", "500", "--dt", "1e-4"]);
    assert!(out.status.success());
    let rows = table(&String::from_utf8(out.stdout).unwrap());
    let (mean, se, oracle) = (rows[0][1], rows[0][2], rows[0][3]);
    assert!((mean - oracle).abs() < 4.0 * se + 0.02 * oracle, "{mean} ± {se} vs {oracle}");
}

#[test]
fn krein_dumps() {
    let out = excursion(&["krein", "--model", "ou", "--atoms", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = table(&text);
    let want = [(1.0, std::f64::consts::FRAC_2_SQRT_PI), (3.0, 1.692_569), (5.0, 2.115_711)];
    for (r, (z, w)) in rows.iter().zip(want) {
        assert_eq!(r[1], z);
        assert!((r[2] - w).abs() < 1e-6);
    }
    let residual: f64 = header_value(&text, "nu_reconstruction_residual_t1").unwrap().parse().unwrap();
    assert!(residual <= 1e-8);
    let bm = excursion(&["krein", "--model", "bm", "--grid", "2:3:1"]);
    let rows = table(&String::from_utf8(bm.stdout).unwrap());
    assert!((rows[0][1] - 2.0 / std::f64::consts::PI).abs() < 1e-15);
}

#[test]
fn threads_env_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_excursion"))
        .args(["eval", "nu"])
        .env("EXCURSION_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_excursion"))
        .args(["mc", "straddle_exact", "--samples", "5000"])
        .env("EXCURSION_THREADS", "1")
        .output()
        .unwrap();
    let single = out.stdout;
    let multi = excursion(&["mc", "straddle_exact", "--samples", "5000", "--threads", "4"]).stdout;
    assert_eq!(single, multi);
}
