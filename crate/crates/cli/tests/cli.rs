use std::process::{Command, Output};

use serde_json::Value;

fn xkraw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xkraw")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kraw_coefficients() {
    let o = xkraw(&["kraw", "--n", "3", "--p", "1/2", "--N", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["polynomials"][0]["coefficients"], serde_json::json!(["0", "2", "-3", "1"]));

    let o = xkraw(&["kraw", "--n", "0..2", "--p", "1/2", "--N", "2", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("n,power,coefficient\n0,0,1\n"));
    assert!(text.contains("2,0,1/2\n2,1,-2\n2,2,1\n"));
}

#[test]
fn config_errors_exit_2() {
    for args in [
        &["kraw", "--n", "2", "--p", "0.5", "--N", "2"][..],
        &["kraw", "--n", "2", "--p", "3/2", "--N", "2"],
        &["kraw", "--n", "2", "--p", "1/2"],
        &["xkraw", "--j", "5", "--d", "1", "--p", "1/2", "--N", "2"],
        &["verify", "--suite", "nope"],
        &["verify", "--d-max", "9"],
        &["family22", "--p", "1/3", "--N", "2"],
        &["bogus"],
    ] {
        let o = xkraw(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn xkraw_json_round_trips() {
    let o = xkraw(&["xkraw", "--j", "4", "--d", "1", "--p", "1/3", "--N", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let members = v.as_array().unwrap();
    assert_eq!(members.len(), 5);
    assert_eq!(members[0]["n"], -2);
    assert_eq!(members[0]["poly"], serde_json::json!(["1"]));
    for m in members {
        let coeffs = m["poly"].as_array().unwrap();
        assert_eq!(coeffs.last().unwrap(), "1");
        assert_eq!(coeffs.len() as i64 - 1, m["degree"].as_i64().unwrap());
        for c in coeffs {
            let s = c.as_str().unwrap();
            let q = xkraw_core::algebra::parse_rational(s).unwrap();
            assert_eq!(xkraw_core::algebra::rational::format_rational(&q), s);
        }
    }
}

#[test]
fn verify_reports_added_norm() {
    let o = xkraw(&["verify", "--suite", "orthogonality", "--j", "2", "--d", "2", "--N", "2", "--p", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    let hit = v["cases"].as_array().unwrap().iter().any(|c| {
        c["params"]["n"] == "5" && c["params"]["m"] == "5" && c["lhs"] == "45/32" && c["rhs"] == "45/32"
    });
    assert!(hit);
}

#[test]
fn injected_fault_exits_1_and_names_the_identity() {
    let o = xkraw(&["verify", "--suite", "eigen", "--N", "2", "--p", "1/3", "--inject-fault", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    assert!(err.contains("FAIL forward-casorati") || err.contains("FAIL back-mapping"), "{err}");
    assert!(stdout(&o).contains("FAIL "));
}

#[test]
fn recurrence_csv_for_the_22_family() {
    let o = xkraw(&["recurrence", "--j", "2", "--d", "2", "--N", "5", "--p", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("j,d,n,ell,value,closed_form,comparison"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[6] == "match"));
    for r in &rows {
        let (n, ell): (i64, i64) = (r[2].parse().unwrap(), r[3].parse().unwrap());
        if ell == n + 3 {
            assert_eq!(r[4], "1");
        }
    }
}

#[test]
fn recurrence_csv_type1_d0_is_tridiagonal() {
    let o = xkraw(&["recurrence", "--j", "1", "--d", "0", "--N", "4", "--p", "1/3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let ells: Vec<i64> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert_eq!(ells, vec![1, 2, 3]);
}

#[test]
fn resultant_and_family22_commands() {
    let o = xkraw(&["resultant", "--p", "1/3", "--a", "-1,2,7/2", "--n-max", "4", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failed"));
    let o = xkraw(&["family22", "--p", "1/2", "--N", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("id,params,pass,skipped,lhs,rhs\n"));
    assert!(text.contains("half-symmetric"));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("xkraw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    let o = xkraw(&["kraw", "--n", "1", "--p", "1/3", "--N", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["polynomials"][0]["coefficients"], serde_json::json!(["-1", "1"]));
    std::fs::remove_dir_all(&dir).unwrap();
}
