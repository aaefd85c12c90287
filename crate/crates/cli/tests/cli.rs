use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectralrec"))
        .args(args)
        .env_remove("SPECTRALREC_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn max_order(v: &serde_json::Value) -> u64 {
    v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|t| t["forms"].as_array().unwrap().iter().map(|f| f["order"].as_u64().unwrap()))
        .max()
        .unwrap()
}

#[test]
fn omega_pole_orders() {
    for (g, n, want) in [("1", "1", 4), ("0", "3", 2), ("2", "1", 10)] {
        let v = json(&["omega", "--g", g, "--n", n]);
        assert_eq!(max_order(&v), want, "({g},{n})");
        let slots = v["terms"][0]["forms"].as_array().unwrap().len();
        assert_eq!(slots.to_string(), n);
    }
}

#[test]
fn omega_budget() {
    assert_eq!(run(&["omega", "--g", "4", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["omega", "--g", "0", "--n", "9"]).status.code(), Some(2));
    assert_eq!(run(&["omega", "--g", "0", "--n", "2"]).status.code(), Some(2));
    let o = run(&["omega", "--g", "4", "--n", "1"]);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn gw_values() {
    let v = json(&["gw", "--g", "1", "--b", "2", "--oracle", "all"]);
    assert_eq!(v["agree"], true);
    let vals = v["values"].as_array().unwrap();
    assert_eq!(vals.len(), 3);
    assert!(vals.iter().all(|x| x["value"] == "1/24"));

    let v = json(&["gw", "--g", "0", "--b", "0,0,0"]);
    assert_eq!(v["value"], "1");
    assert_eq!(v["oracle"], "plancherel");
    assert_eq!(v["insertions"][0]["class"], "point");
    assert_eq!(v["insertions"].as_array().unwrap().len(), 3);

    let v = json(&["gw", "--g", "2", "--b", "4", "--oracle", "plancherel"]);
    assert_eq!(v["value"], "1/1920");

    let v = json(&["gw", "--g", "0", "--b", "0,0,0,0,0,2", "--oracle", "closed"]);
    assert_eq!(v["value"], "8");
}

#[test]
fn gw_unsupported() {
    assert_eq!(run(&["gw", "--g", "2", "--b", "4", "--oracle", "toprec"]).status.code(), Some(2));
    assert_eq!(run(&["gw", "--g", "1", "--b", "1,2", "--oracle", "closed"]).status.code(), Some(2));
    assert_eq!(run(&["gw", "--g", "1", "--b", "2", "--oracle", "nope"]).status.code(), Some(2));
}

#[test]
fn gw_text() {
    let o = run(&["gw", "--g", "1", "--b", "2", "--oracle", "all"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.contains("= 1/24")).count(), 3);
    assert_eq!(s.lines().last(), Some("agree=true"));
}

#[test]
fn table7_rows() {
    let o = run(&["table7", "--g", "1", "--n", "2", "--k", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("m (g,n,k)=(1,2,2) ok: 1/48*b1^2 + 1/48*b1*b2 + 1/48*b2^2 - 1/12*b1 - 1/12*b2 + 5/48"));

    let v = json(&["table7"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2 * (4 + 2 + 5 + 3 + 4 + 2 + 2));
    assert!(rows.iter().all(|r| r["matches"] == true));
    assert_eq!(v["families"]["passed"], true);
    let r = rows
        .iter()
        .find(|r| r["g"] == 3 && r["k"] == 1 && r["form"] == "m")
        .unwrap();
    assert!(r["computed"].as_str().unwrap().starts_with("1/1327104*b1^7"));
}

#[test]
fn table7_latex_layout() {
    let o = run(&["table7", "--g", "1", "--n", "1", "--format", "latex"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("1 & 1 & 1 & $\\frac{1}{48} b_1^{2} - \\frac{1}{16}$ & $\\frac{1}{24} b_1 - \\frac{1}{12}$ \\\\"), "{s}");
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "exceptional"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("PASS")).count(), 2);

    let v = json(&["verify", "theorem2"]);
    assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));

    let o = run(&["verify", "theorem1", "--max-weight", "5", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("suite,case,status,checks,failure\n"));

    assert_eq!(run(&["verify", "nothing"]).status.code(), Some(2));
}

#[test]
fn output_independent_of_workers() {
    let args = ["omega", "--g", "1", "--n", "3", "--format", "json"];
    let a = run(&[&args[..], &["--jobs", "1"]].concat());
    let b = run(&[&args[..], &["--jobs", "4"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let c = Command::new(env!("CARGO_BIN_EXE_spectralrec"))
        .args(["gw", "--g", "1", "--b", "3,3", "--oracle", "all", "--format", "json"])
        .env("SPECTRALREC_JOBS", "3")
        .output()
        .unwrap();
    let d = run(&["gw", "--g", "1", "--b", "3,3", "--oracle", "all", "--format", "json", "--jobs", "1"]);
    assert!(c.status.success());
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn truncation_override_keeps_results() {
    let a = run(&["omega", "--g", "1", "--n", "1", "--format", "json"]);
    let b = run(&["omega", "--g", "1", "--n", "1", "--format", "json", "--trunc", "6"]);
    assert_eq!(a.stdout, b.stdout);
}
