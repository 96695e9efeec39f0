use std::io::Write;
use std::process::{Command, Output, Stdio};

use polyext_core::graph::{encode_graph6, Graph};
use serde_json::Value;

fn polyext(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polyext"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn assert_schema(name: &str, value: &Value) {
    let path = format!("{}/../../schemas/{name}", env!("CARGO_MANIFEST_DIR"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(value) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{name}: {msgs:?}\n{value:#}");
}

fn g6(n: usize, edges: &[(usize, usize)]) -> String {
    encode_graph6(&Graph::from_edges(n, edges.iter().copied()).unwrap())
}

fn diamond() -> String {
    g6(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
}

fn analyze(graph: &str, x: usize, y: usize, extra: &[&str]) -> Output {
    let (x, y) = (x.to_string(), y.to_string());
    let mut args = vec!["analyze", "--g6", graph, "--x", &x, "--y", &y];
    args.extend(extra);
    polyext(&args, None)
}

#[test]
fn analyze_examples() {
    let out = analyze(&diamond(), 0, 3, &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_schema("extendability_report.schema.json", &r);
    assert_eq!(r["case"], "I");
    assert_eq!((r["beta"].as_u64(), r["gamma"].as_u64()), (Some(1), Some(1)));
    assert_eq!(r["colorRelation"], "ForcedEqual");

    let r = json(&analyze(&g6(3, &[(0, 1), (1, 2), (0, 2)]), 0, 1, &[]));
    assert_schema("extendability_report.schema.json", &r);
    assert_eq!(r["case"], "II");

    let two = g6(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
    let r = json(&analyze(&two, 0, 4, &[]));
    assert_schema("extendability_report.schema.json", &r);
    assert_eq!(r["case"], "III");
    assert_eq!(r["route"], "disconnected");
}

#[test]
fn analyze_methods_agree() {
    // a square with a triangle on one side: x and y on a common face
    let g = g6(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)]);
    for (x, y) in [(4, 2), (4, 3), (0, 2)] {
        let mut cases = Vec::new();
        for m in ["structural", "oracle", "both"] {
            let out = analyze(&g, x, y, &["--method", m]);
            assert_eq!(out.status.code(), Some(0));
            let r = json(&out);
            assert_schema("extendability_report.schema.json", &r);
            cases.push(r["case"].clone());
        }
        assert!(cases.windows(2).all(|w| w[0] == w[1]), "{cases:?}");
    }
    let r = json(&analyze(&g, 0, 2, &["--method", "oracle"]));
    assert_eq!(r["method"], "PolynomialOracle");
}

#[test]
fn analyze_reads_files_and_stdin() {
    let out = polyext(&["analyze", "-", "--x", "0", "--y", "3"], Some("0 1\n0 2\n1 2\n1 3\n2 3\n"));
    assert_eq!(json(&out)["case"], "I");
    let path = std::env::temp_dir().join(format!("polyext-cli-{}.g6", std::process::id()));
    std::fs::write(&path, format!("{}\n", diamond())).unwrap();
    let out = polyext(&["analyze", path.to_str().unwrap(), "--x", "1", "--y", "2"], None);
    std::fs::remove_file(&path).ok();
    assert_eq!(json(&out)["case"], "II");
    let out = analyze(&diamond(), 0, 3, &["--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("case I "), "{text}");
}

#[test]
fn input_errors_exit_1() {
    let k4 = g6(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    assert_eq!(analyze(&k4, 0, 1, &[]).status.code(), Some(1));
    assert_eq!(analyze(&diamond(), 2, 2, &[]).status.code(), Some(1));
    assert_eq!(analyze(&diamond(), 0, 9, &[]).status.code(), Some(1));
    assert_eq!(analyze("not a graph", 0, 1, &[]).status.code(), Some(1));
    assert_eq!(polyext(&["analyze", "--x", "0", "--y", "1"], None).status.code(), Some(1));
    let out = polyext(&["poly", "--g6", &diamond(), "--caps", "1,2"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap sequence"));
}

#[test]
fn poly_examples() {
    let tri = g6(3, &[(0, 1), (1, 2), (0, 2)]);
    let p = json(&polyext(&["poly", "--g6", &tri], None));
    assert_schema("multipoly.schema.json", &p);
    assert_eq!(p["terms"].as_array().unwrap().len(), 6);
    let p = json(&polyext(&["poly", "--g6", &tri, "--caps", "none"], None));
    assert_eq!(p["terms"].as_array().unwrap().len(), 6);
    let p = json(&polyext(&["poly", "--g6", &g6(2, &[(0, 1)])], None));
    assert_eq!(p["terms"].as_array().unwrap().len(), 2);
    let p = json(&polyext(&["poly", "--g6", &tri, "--caps", "1,1,2"], None));
    assert_schema("multipoly.schema.json", &p);
    assert_eq!(p["terms"].as_array().unwrap().len(), 2);

    let f = json(&polyext(&["poly", "--g6", &tri, "--find", "x=0,y=0"], None));
    assert_schema("poly_find.schema.json", &f);
    assert_eq!(f["count"], 0);
    let f = json(&polyext(&["poly", "--g6", &diamond(), "--find", "x=1,y=1,rest<=2", "--x", "0", "--y", "3"], None));
    assert_schema("poly_find.schema.json", &f);
    // the two middle vertices split the remaining degree 3 as 1 + 2 or 2 + 1
    assert_eq!(f["count"], 2);
    assert_eq!(f["terms"][0]["exps"], serde_json::json!([1, 1, 2, 1]));
    assert_eq!(f["terms"][1]["exps"], serde_json::json!([1, 2, 1, 1]));
}

#[test]
fn verify_examples() {
    let out = polyext(&["verify", "--mode", "eta", "--max-n", "10"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_schema("verification_report.schema.json", &r);
    assert_eq!(r["mismatches"].as_array().unwrap().len(), 0);

    let a = polyext(&["verify", "--mode", "trichotomy", "--max-n", "8", "--jobs", "4"], None);
    assert_eq!(a.status.code(), Some(0));
    let b = polyext(&["verify", "--mode", "trichotomy", "--max-n", "8", "--jobs", "1"], None);
    let strip = |o: &Output| {
        let mut v = json(o);
        v.as_object_mut().unwrap().remove("runtimeSeconds");
        v
    };
    assert_schema("verification_report.schema.json", &json(&a));
    assert_eq!(strip(&a), strip(&b));

    assert_eq!(polyext(&["verify", "--mode", "eta", "--max-n", "2"], None).status.code(), Some(1));
    assert_eq!(polyext(&["verify", "--mode", "bogus"], None).status.code(), Some(1));
}

#[test]
fn enumerate_examples() {
    let lines = |args: &[&str]| -> Vec<String> {
        let out = polyext(args, None);
        assert_eq!(out.status.code(), Some(0));
        String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect()
    };
    assert_eq!(lines(&["enumerate", "--class", "triangulations", "--n", "4"]).len(), 2);
    assert_eq!(lines(&["enumerate", "--class", "snakes", "--n", "3"]).len(), 1);
    assert_eq!(lines(&["enumerate", "--class", "outerplanar", "--n", "1"]).len(), 1);
    let a = lines(&["enumerate", "--class", "outerplanar", "--n", "6"]);
    assert_eq!(a, lines(&["enumerate", "--class", "outerplanar", "--n", "6"]));
    assert_eq!(polyext(&["enumerate", "--class", "outerplanar", "--n", "12"], None).status.code(), Some(1));
}
