use std::process::{Command, Output};

use pslet::record::RunRecord;

fn pslet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pslet")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_json_round_trips() {
    let o = pslet(&["solve", "--potential", "-1/(r+10)", "--state", "4s", "--order", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rec = RunRecord::from_json(&text).unwrap();
    assert_eq!(RunRecord::from_json(&rec.to_json()).unwrap(), rec);
    assert_eq!(rec.input.order, 20);
    assert_eq!(rec.partials.len(), 21);
    let e20: f64 = rec.partials[20].parse().unwrap();
    assert!((e20 + 0.011638).abs() < 1e-6);
    let best: f64 = rec.pade.best.unwrap().parse().unwrap();
    assert!((best + 0.011638).abs() < 1e-6);
}

#[test]
fn coulomb_partials_are_exact() {
    let o = pslet(&["solve", "--potential", "-1/r", "--ell", "0", "--nr", "5", "--order", "5", "--format", "json"]);
    let rec = RunRecord::from_json(&stdout(&o)).unwrap();
    for p in &rec.partials {
        assert!((p.parse::<f64>().unwrap() + 1.0 / 72.0).abs() < 1e-16);
    }
}

#[test]
fn harmonic_with_oracle() {
    let o = pslet(&["solve", "--potential", "r^2", "--ell", "0", "--nr", "0", "--oracle", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rec = RunRecord::from_json(&stdout(&o)).unwrap();
    // V = r² is an oscillator with w = √2: E = 3/√2
    let exact = 1.5 * 2f64.sqrt();
    let e0: f64 = rec.leading.c0.parse().unwrap();
    assert!((e0 - exact).abs() < 1e-15);
    let oracle = rec.oracle.unwrap();
    assert!((oracle.energy - exact).abs() < 1e-7);
    assert!(oracle.pade_deviation.unwrap().abs() < 1e-7);
}

#[test]
fn alpha_shorthand_matches_potential() {
    let a = pslet(&["solve", "--alpha", "10", "--state", "6s", "--format", "csv"]);
    let b = pslet(&["solve", "--potential", "-1/(r+10)", "--state", "6s", "--format", "csv"]);
    let strip = |o: &Output| stdout(o).lines().filter(|l| !l.starts_with("oracle")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
    assert!(stdout(&a).starts_with("kind,k,n,m,value"));
}

#[test]
fn reproduce_tables() {
    let o = pslet(&["reproduce", "--table", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let md = stdout(&o);
    assert!(md.contains("| 4s | -0.011638 | E12 | -0.011638 | E[3,3] |"), "{md}");
    assert!(md.contains("| 9s | -0.003721 |"));

    let o = pslet(&["reproduce", "--table", "2", "--format", "csv"]);
    let csv = stdout(&o);
    assert!(csv.starts_with("order,ell_1,ell_3,ell_5,ell_15"));
    let l5: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(
        l5,
        [
            "0.0017446", "0.0017446", "0.0017034", "0.0016809", "0.0016699", "0.0016649", "0.0016629", "0.0016621",
            "0.0016619", "0.0016619"
        ]
    );
    let last = csv.lines().last().unwrap();
    assert!(last.ends_with(",0.00070615"));

    let o = pslet(&["reproduce", "--table", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn precision_does_not_change_printed_tables() {
    for table in ["1", "2"] {
        let at = |bits: &str| {
            
            stdout(&pslet(&["reproduce", "--table", table, "--prec-bits", bits, "--format", "csv"]))
        };
        assert_eq!(at("128"), at("256"), "table {table}");
    }
}

#[test]
fn diverge_demo() {
    let o = pslet(&["diverge-demo", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rec = RunRecord::from_json(&stdout(&o)).unwrap();
    assert!(rec.diagnostics.diverging);
    assert!(rec.diagnostics.opt_trunc < 20);
    let oracle = rec.oracle.unwrap();
    assert!(oracle.richardson_error <= 1e-7);
    assert!((oracle.energy + 0.3875437).abs() < 1e-6);

    // too few terms to establish divergence
    let o = pslet(&["diverge-demo", "--order", "6", "--format", "json"]);
    let rec = RunRecord::from_json(&stdout(&o)).unwrap();
    assert!(!rec.diagnostics.diverging);
}

#[test]
fn oracle_command() {
    let o = pslet(&["oracle", "--potential", "-1/r", "--state", "3s", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["energy"].as_f64().unwrap() + 1.0 / 18.0).abs() < 1e-7);
    assert_eq!(v["nodes"], 2);

    let o = pslet(&["oracle", "--alpha", "10", "--state", "11s", "--format", "csv"]);
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    let e: f64 = row.split(',').next().unwrap().parse().unwrap();
    assert!((e + 0.0027068).abs() < 5e-6);

    let o = pslet(&["oracle", "--alpha", "10", "--ell", "15", "--nr", "10"]);
    assert!(stdout(&o).starts_with("E = -0.00070615"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| pslet(args).status.code();
    assert_eq!(code(&["solve", "--potential", "r^", "--state", "1s"]), Some(2));
    assert_eq!(code(&["solve", "--potential", "-1/q", "--state", "1s"]), Some(2));
    assert_eq!(code(&["solve", "--potential", "-1/r", "--state", "2x"]), Some(2));
    assert_eq!(code(&["solve", "--potential", "-1/r", "--state", "1s", "--prec-bits", "20"]), Some(2));
    assert_eq!(code(&["solve", "--potential", "-1/r"]), Some(2));
    assert_eq!(code(&["reproduce", "--table", "3"]), Some(2));
    assert_eq!(code(&["bogus"]), Some(2));
    // repulsive: no bound state, a numeric failure
    assert_eq!(code(&["solve", "--potential", "1/r", "--state", "1s"]), Some(3));
    assert_eq!(code(&["solve", "--potential", "-1/r", "--state", "1s", "--order", "1"]), Some(3));
    assert_eq!(code(&["oracle", "--potential", "-1/r", "--state", "11s", "--r-max", "50", "--points", "5000"]), Some(3));
    let err = String::from_utf8(pslet(&["solve", "--potential", "1/r", "--state", "1s"]).stderr).unwrap();
    assert!(err.contains("leading-order"), "{err}");
}
