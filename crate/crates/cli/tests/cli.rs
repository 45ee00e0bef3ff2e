//! End-to-end tests driving the compiled binary.

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_glchar"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().expect("exit code"),
    )
}

#[test]
fn char_kw_reports_the_twisted_trivial_value() {
    let (stdout, _, code) = run(&[
        "char", "--m", "1", "--n", "1", "--lambda-rho", "0,0", "--pi", "ed", "--formula", "kw",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["value"]["display"], "1 / (1 + x1^-1*y1^-1)");
    assert_eq!(v["value"]["num"], "1");
    assert_eq!(v["character"], "x1^(1/2)*y1^(1/2)");
    assert_eq!(v["dimension"], "1");
    assert_eq!(v["S"], serde_json::json!([[1, 1]]));
    assert_eq!(v["pi"], "ed");
    assert_eq!(v["lambda_rho"], serde_json::json!([0, 0]));
}

#[test]
fn kl_reports_the_two_path_polynomial() {
    let (stdout, _, code) = run(&[
        "kl",
        "--m",
        "6",
        "--n",
        "4",
        "--lambda-rho",
        "10,9,8,6,5,4,2,4,6,8",
        "--mu-rho",
        "10,9,6,5,4,1,1,2,4,6",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["kl"], "q^5 + q^3");
    assert_eq!(rows[0]["paths"], 2);
}

/// Column positions of the axis numbers, so glyphs can be read off above
/// their right-aligned entries.
fn glyph_over(symbols: &str, axis: &str, value: i64) -> char {
    let token = value.to_string();
    let mut col = 0usize;
    for part in axis.split(' ') {
        if part == token {
            let end = col + part.len() - 1;
            return symbols.as_bytes().get(end).map(|&b| b as char).unwrap_or(' ');
        }
        col += part.len() + 1;
    }
    panic!("axis does not show {value}: {axis:?}");
}

#[test]
fn weight_diagram_glyphs_follow_the_axis() {
    let (stdout, _, code) = run(&[
        "diagram", "--m", "5", "--n", "4", "--lambda-rho", "10,9,7,5,4,1,4,6,7",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    let header = lines.iter().position(|l| l.starts_with("weight diagram")).unwrap();
    let symbols = lines[header + 1];
    let axis = lines[header + 2];
    for (value, glyph) in [
        (1, '<'),
        (4, 'x'),
        (5, '>'),
        (6, '<'),
        (7, 'x'),
        (9, '>'),
        (10, '>'),
    ] {
        assert_eq!(glyph_over(symbols, axis, value), glyph, "glyph over {value}");
    }
    for value in [0, 2, 3, 8] {
        assert_eq!(glyph_over(symbols, axis, value), ' ', "blank over {value}");
    }
    assert!(lines[0].starts_with("arc diagram"));
}

#[test]
fn shorten_ends_in_the_special_shape() {
    let (stdout, _, code) =
        run(&["shorten", "--m", "2", "--n", "1", "--lambda-rho", "3,1,1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("step 0 (eed):"));
    assert!(stdout.contains("special shape: p=1 q=0 r=1 t=0 s=0 z=1"));
}

#[test]
fn verify_sweep_passes_and_is_deterministic() {
    let (stdout, stderr, code) = run(&["verify", "--m", "2", "--n", "1", "--window", "0..5"]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let lines: Vec<&str> = stdout.lines().collect();
    assert!(!lines.is_empty());
    for line in &lines {
        let record: Value = serde_json::from_str(line).unwrap();
        assert_eq!(record["pass"], true, "failing record: {line}");
        assert!(record["identity"].is_string());
        assert!(record["lambda_rho"].is_array());
    }
    assert!(stderr.contains("0 failures"));

    let (again, _, code2) = run(&["verify", "--m", "2", "--n", "1", "--window", "0..5"]);
    assert_eq!(code2, 0);
    assert_eq!(stdout, again);
}

#[test]
fn unshifted_weights_are_normalized_with_a_twist() {
    let (stdout, _, code) = run(&[
        "char", "--m", "1", "--n", "1", "--lambda", "2,-1", "--formula", "kw",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["checks"]["twist"], 1);
    assert_eq!(v["lambda_rho"], serde_json::json!([2, -1]));
}

#[test]
fn json_output_round_trips() {
    let args = [
        "char", "--m", "2", "--n", "1", "--lambda-rho", "3,1,1", "--formula", "su-zhang",
    ];
    let (stdout, _, code) = run(&args);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let reparsed: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, reparsed);
    let (second, _, _) = run(&args);
    assert_eq!(stdout, second);
}

#[test]
fn disconnected_weights_are_rejected_by_special_formulas() {
    for formula in ["determinantal", "su-zhang", "nested"] {
        let (_, stderr, code) = run(&[
            "char", "--m", "2", "--n", "2", "--lambda-rho", "3,1,1,3", "--formula", formula,
        ]);
        assert_eq!(code, 1, "formula {formula}");
        assert!(stderr.contains("totally connected"), "stderr: {stderr}");
    }
}

#[test]
fn usage_errors_exit_one() {
    let (_, _, code) = run(&["char", "--m", "1", "--n", "1", "--formula", "kw"]);
    assert_eq!(code, 1);
    let (_, _, code) = run(&["char", "--m", "nope"]);
    assert_eq!(code, 1);
    let (_, stderr, code) = run(&[
        "char", "--m", "1", "--n", "1", "--lambda-rho", "0,0", "--formula", "bogus",
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown formula"));
}
