use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_h2lyndon")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn lyndon_listing() {
    let v = json(&["lyndon", "--alphabet", "xy", "--n", "3", "--format", "json"]);
    assert_eq!(v["counts"], serde_json::json!([2, 1, 2]));
    assert_eq!(v["total"], 5);
    assert_eq!(v["words"], serde_json::json!(["x", "y", "xy", "xxy", "xyy"]));

    let v = json(&["lyndon", "--alphabet", "x", "--n", "4", "--format", "json"]);
    assert_eq!(v["counts"], serde_json::json!([1, 0, 0, 0]));

    let v = json(&["lyndon", "--alphabet", "xyzt", "--n", "4", "--format", "json"]);
    let words: Vec<&str> = v["words"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
    for w in ["xyzt", "xytz", "xzyt", "xzty", "xtyz", "xtzy"] {
        assert!(words.contains(&w), "{w}");
    }
    assert_eq!(v["counts"][3], 60);

    let text = stdout(&["lyndon", "--alphabet", "xy", "--n", "2"]);
    assert!(text.contains("length 2: 1 (necklace 1): xy"));
    let csv = stdout(&["lyndon", "--alphabet", "xy", "--n", "2", "--format", "csv"]);
    assert_eq!(csv, "length,word\n1,x\n1,y\n2,xy\n");
}

#[test]
fn pairing_matrix_reports() {
    let v = json(&["pairing-matrix", "--p", "3", "--n", "2", "--alphabet", "xy"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["index"], serde_json::json!(["x", "y", "xy"]));
    assert_eq!(v["rows"], serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]]));

    let v = json(&["pairing-matrix", "--p", "3", "--n", "3", "--alphabet", "xyz"]);
    let index: Vec<&str> = v["index"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
    let (i, j) = (index.iter().position(|&w| w == "xyz").unwrap(), index.iter().position(|&w| w == "xzy").unwrap());
    for (r, row) in v["rows"].as_array().unwrap().iter().enumerate() {
        for (c, value) in row.as_array().unwrap().iter().enumerate() {
            let expected = if r == c { 1 } else if (r, c) == (i, j) { 2 } else { 0 };
            assert_eq!(value, expected, "({}, {})", index[r], index[c]);
        }
    }

    let v = json(&["pairing-matrix", "--p", "2", "--n", "4", "--alphabet", "xy"]);
    assert_eq!(v["index"].as_array().unwrap().len(), 8);
    assert_eq!(v["unipotent_upper_triangular"], true);
    assert!(!v["notes"].as_array().unwrap().is_empty());

    let csv = stdout(&["pairing-matrix", "--p", "5", "--n", "1", "--alphabet", "xy", "--format", "csv"]);
    assert_eq!(csv, "w,x,y\nx,1,0\ny,0,1\n");

    let out = run(&["pairing-matrix", "--p", "3", "--n", "4", "--alphabet", "xyzt", "--dim-cap", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn magnus_printouts() {
    let text = stdout(&["magnus", "x^-1", "--deg", "3", "--mod", "8"]);
    assert!(text.contains("1 - x + xx - xxx"), "{text}");
    let text = stdout(&["magnus", "[x,y]", "--deg", "2", "--mod", "9"]);
    assert!(text.contains("1 + xy - yx"), "{text}");
    let text = stdout(&["magnus", "x^4", "--koch", "--n", "2", "--p", "2"]);
    assert!(text.contains("pass"), "{text}");

    let v = json(&["magnus", "[x,y]", "--deg", "2", "--mod", "9", "--coeff", "yx", "--rho", "xy", "--format", "json"]);
    assert_eq!(v["coefficients"][0]["balanced"], -1);
    assert_eq!(v["rho"][0]["matrix"]["entries"], serde_json::json!([[1, 3, 1]]));

    assert_eq!(run(&["magnus", "x^"]).status.code(), Some(2));
    assert_eq!(run(&["magnus", "w", "--alphabet", "xy"]).status.code(), Some(2));
    assert_eq!(run(&["magnus", "x", "--mod", "12"]).status.code(), Some(2));
}

#[test]
fn shuffle_commands() {
    let v = json(&["shuffle", "xy", "xz", "--format", "json"]);
    let total: i64 = v["shuffle"]["terms"].as_array().unwrap().iter().map(|t| t["coeff"].as_i64().unwrap()).sum();
    assert_eq!(total, 6);
    let text = stdout(&["shuffle", "--reduce", "zxy", "--p", "5"]);
    assert!(text.contains("(zxy) = -xyz - xzy"), "{text}");
    let v = json(&["shuffle", "--span", "3", "--p", "5", "--alphabet", "xy", "--format", "json"]);
    assert_eq!(v["span"]["quotient_dimension"], 2);
    assert_eq!(v["span"]["representatives"]["yxx"], serde_json::json!([["xxy", 1]]));
    assert_eq!(run(&["shuffle", "--reduce", "yx", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["shuffle"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--seed", "42", "--cases", "5", "--n", "2"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stdout));
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_single_check() {
    let v = json(&["verify", "--check", "cfl", "--sigma", "x y x^-1", "--alphabet", "xy"]);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["checks"][0]["name"], "cfl");
    assert_eq!(v["sigma"], "x y x^-1");
    assert_eq!(run(&["verify", "--check", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--check", "cfl", "--sigma", "[x"]).status.code(), Some(2));
}

#[test]
fn config_file_and_overrides() {
    let dir = std::env::temp_dir().join(format!("h2lyndon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    let out = dir.join("out.json");
    std::fs::write(&cfg, "# small run\nalphabet = xy\nn = 2\np = 5\nformat = json\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let out_s = out.to_str().unwrap();

    assert!(run(&["pairing-matrix", "--config", cfg_s, "--out", out_s]).status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((v["p"].as_u64(), v["n"].as_u64()), (Some(5), Some(2)));

    let v = json(&["pairing-matrix", "--config", cfg_s, "--p", "7"]);
    assert_eq!(v["p"], 7);

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(run(&["lyndon", "--config", cfg_s]).status.code(), Some(2));
    assert_eq!(run(&["lyndon", "--config", dir.join("missing").to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_configuration_exits_two() {
    for args in [
        &["lyndon", "--p", "4"][..],
        &["lyndon", "--p", "17"],
        &["lyndon", "--n", "0"],
        &["lyndon", "--n", "7"],
        &["lyndon", "--alphabet", "abcde"],
        &["lyndon", "--format", "yaml"],
        &["no-such-command"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
