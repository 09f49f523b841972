use continuant::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("continuant").chain(args.iter().copied()).collect();
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn gen_u_contains_third_term() {
    let (code, out, _) = call(&["gen-u", "--n", "3"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let u3 = &doc["polys"][3]["poly"];
    assert_eq!(u3["vars"], serde_json::json!(["x", "lambda"]));
    let mut terms: Vec<(Vec<u64>, String)> = u3["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let e = t["e"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
            (e, t["c"].as_str().unwrap().to_string())
        })
        .collect();
    terms.sort();
    let mut want: Vec<(Vec<u64>, String)> = [
        ([0, 3], "-20"),
        ([0, 2], "160"),
        ([1, 1], "-12"),
        ([0, 1], "-240"),
        ([1, 0], "40"),
    ]
    .iter()
    .map(|(e, c)| (e.to_vec(), c.to_string()))
    .collect();
    want.sort();
    assert_eq!(terms, want);
}

#[test]
fn verify_reports_are_byte_identical() {
    let args = ["verify", "--suite", "compression", "--n-max", "8", "--samples", "10", "--seed", "7"];
    let (c1, a, _) = call(&args);
    let (c2, b, _) = call(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["totals"]["checks"], 90);
    assert_eq!(doc["params"]["seed"], 7);
}

#[test]
fn integrality_suite_exits_zero() {
    let (code, _, err) = call(&["verify", "--suite", "integrality", "--n-max", "100"]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["gen-u"]).0, 2);
    assert_eq!(call(&["verify", "--suite", "everything"]).0, 2);
    assert_eq!(call(&["solve", "--a2", "1", "--depth", "3", "--tol", "abc"]).0, 2);
    assert_eq!(call(&["coeff-ring", "--n", "2", "--eval"]).0, 2);
    // a² = 3, N = 1: det T_1 = (λ − 1)² only touches zero
    assert_eq!(call(&["solve", "--a2", "3", "--depth", "1"]).0, 3);
    assert_eq!(call(&["solve", "--a2", "1", "--depth", "3"]).0, 0);
}

#[test]
fn certify_and_coeff_ring_outputs() {
    let (code, out, _) = call(&["certify", "--a2", "1", "--lambda", "1", "--n-max", "3"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["entries"], serde_json::json!(["1", "-2", "-4", "-72"]));

    let (code, out, _) = call(&[
        "coeff-ring", "--n", "1", "--eval", "--c", "1/2", "--l", "3", "--pi2", "1", "--provenance", "test constants",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["numeric"][1]["value"], "6/1");
    assert_eq!(doc["constants"]["provenance"], "test constants");
}

#[test]
fn csv_outputs() {
    let (code, out, _) = call(&["verify", "--suite", "degenerate", "--csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("id,pass,witness\n"));
    assert_eq!(out.lines().count(), 7);
    let (_, out, _) = call(&["coeff-ring", "--n", "1", "--csv"]);
    assert_eq!(out, "n,pi2,C,L,coeff\n0,0,0,0,1\n1,0,1,1,4\n");
}
