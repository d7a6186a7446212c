use std::process::{Command, Output};

use serde_json::Value;

const A1: &str = r#"{"kind":"typeA","n":1}"#;
const A2: &str = r#"{"kind":"typeA","n":2}"#;
const A3: &str = r#"{"kind":"typeA","n":3}"#;

fn sodlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sodlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let o = sodlab(args);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn hn_text_for_s3() {
    let o = sodlab(&["hn", "--quiver", A3, "--tstab", "(P1|S2|I2)", "--object", "S3", "--text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[I2[-1]@3, P1@1]");
}

#[test]
fn finest_sods_are_sixteen_records_that_round_trip() {
    let v = ok_json(&["sods", "--quiver", A3, "--finest"]);
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 16);
    for r in records {
        let text = r.to_string();
        let back = ok_json(&["chi", "--quiver", A3, "--inverse", "--sod", &text]);
        let again = ok_json(&["chi", "--quiver", A3, "--seq", back["sequence"].as_str().unwrap()]);
        assert_eq!(&again, r);
    }
}

#[test]
fn trivial_graph_is_empty() {
    let v = ok_json(&["graph", "--quiver", A1]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 0);
    assert_eq!(v["edges"].as_array().unwrap().len(), 0);
}

#[test]
fn a2_graph_dot_has_three_edges() {
    let o = sodlab(&["graph", "--quiver", A2, "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("->").count(), 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["reduce", "--quiver", A3];
    assert_eq!(sodlab(&args).stdout, sodlab(&args).stdout);
    let args = ["wpl2", "graph", "--radius", "3"];
    assert_eq!(sodlab(&args).stdout, sodlab(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(sodlab(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(sodlab(&["hom", "--quiver", A3, "--x", "S7", "--y", "S1"]).status.code(), Some(1));
    assert_eq!(sodlab(&["hom", "--quiver", "{\"kind\":\"typeA\",\"n\":0}", "--x", "S1", "--y", "S1"]).status.code(), Some(1));
    assert_eq!(sodlab(&["eta", "--quiver", A2, "--tstab", "(S2|S1)"]).status.code(), Some(1));
    assert_eq!(sodlab(&["graph", "--quiver", r#"{"kind":"typeA","n":6}"#]).status.code(), Some(2));
    assert_eq!(sodlab(&["graph", "--quiver", A3, "--max-n", "2"]).status.code(), Some(2));
    assert_eq!(
        sodlab(&["wpl2", "seqs", "--seq", "(O(10),O(12),S10)", "--index", "1", "--dir", "left", "--bound", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sodlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn hom_and_mutate() {
    let v = ok_json(&["hom", "--quiver", A2, "--x", "P1", "--y", "S1"]);
    assert_eq!(v["total"], 1);
    let v = ok_json(&["hom", "--quiver", A2, "--x", "S1", "--y", "S2", "--degree", "1"]);
    assert_eq!(v["dim"], 1);
    let v = ok_json(&["mutate", "--quiver", A2, "--seq", "(S1,S2)", "--index", "1", "--dir", "left"]);
    assert_eq!(v["sequence"], "(P1,S1)");
    let v = ok_json(&["mutate", "--quiver", A2, "--sod", "(S1|S2)", "--index", "1", "--dir", "right"]);
    assert_eq!(v["display"], "(<P1>,<S1>)");
}

#[test]
fn checks_report_success() {
    let v = ok_json(&["check-braid", "--quiver", A3]);
    assert_eq!(v["holds"], true);
    let v = ok_json(&["check-criterion", "--quiver", A3]);
    assert_eq!(v["agree"], true);
    assert_eq!(v["connected"], true);
}

#[test]
fn xi_eta_round_trip() {
    let f = ok_json(&["xi", "--quiver", A3, "--sod", "(S1|S2,S3)"]);
    let s = ok_json(&["xi", "--quiver", A3, "--inverse", "--filtration", &f.to_string()]);
    assert_eq!(s["display"], "(<S1>,<S2,P2,S3>)");
    let t = ok_json(&["eta", "--quiver", A3, "--inverse", "--sod", &s.to_string()]);
    let s2 = ok_json(&["eta", "--quiver", A3, "--tstab", &t.to_string()]);
    assert_eq!(s2, s);
}

#[test]
fn wpl2_commands() {
    let v = ok_json(&["wpl2", "hom", "--x", "O", "--y", "O(c)"]);
    assert_eq!(v["total"], 2);
    let v = ok_json(&["wpl2", "seqs", "--seq", "(O(-c),O,S10)"]);
    assert_eq!(v["full"], true);
    let v = ok_json(&["wpl2", "graph", "--radius", "0"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 1);
    assert_eq!(sodlab(&["wpl2", "hom", "--x", "Sx", "--y", "O"]).status.code(), Some(1));
}
