use jkpencil_cli::docs::{LieDocument, PencilDocument};
use jkpencil_cli::{run, Outcome, EXIT_OK, EXIT_VALIDATION};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn jk(args: &[&str]) -> Outcome {
    run(std::iter::once("jkpencil").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = jk(&all);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stderr.is_empty());
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn jordan_seven_document() {
    let r = json(&["pencil", "analyze", &fixture("pencil_jordan7.json")]);
    assert_eq!(r["schema_version"], 1);
    let rep = &r["report"];
    assert_eq!(rep["char_poly"]["factored"], "(λ - 7)^2");
    assert_eq!(
        rep["char_poly"]["coefficients"],
        serde_json::json!(["49", "-14", "1"])
    );
    let jordan = &rep["jk_invariants"]["jordan"];
    assert_eq!(jordan.as_array().unwrap().len(), 1);
    assert_eq!(jordan[0]["half_sizes"], serde_json::json!([2]));
    assert_eq!(rep["char_poly"]["rational_roots"][0]["root"], "7");
    assert_eq!(
        rep["char_poly"]["rational_roots"][0]["root_a_plus_lambda_b"],
        "-7"
    );
}

#[test]
fn zero_pencil_is_all_trivial_kronecker() {
    let r = json(&["pencil", "analyze", &fixture("pencil_zero3.json")]);
    let rep = &r["report"];
    assert_eq!(
        rep["jk_invariants"]["kronecker"],
        serde_json::json!([1, 1, 1])
    );
    assert_eq!(rep["core"]["dimension"], 3);
    assert_eq!(rep["rank"], 0);
}

#[test]
fn scrambled_pencil_matches_its_source() {
    let a = json(&["pencil", "analyze", &fixture("pencil_mixed_canonical.json")]);
    let b = json(&["pencil", "analyze", &fixture("pencil_mixed_scrambled.json")]);
    for key in ["jk_invariants", "char_poly", "rank"] {
        assert_eq!(a["report"][key], b["report"][key], "{key}");
    }
    assert_eq!(
        a["report"]["jk_invariants"]["kronecker"],
        serde_json::json!([2])
    );
    assert_ne!(a["input_digest"], b["input_digest"]);
}

fn verdicts(name: &str) -> (String, String, Value) {
    let r = json(&["lie", "analyze", &fixture(name)]);
    let rep = r["report"].clone();
    (
        rep["fa_verdict"].as_str().unwrap().to_string(),
        rep["ftilde"]["verdict"].as_str().unwrap().to_string(),
        rep,
    )
}

#[test]
fn lie_fixture_verdicts() {
    let (fa, ft, rep) = verdicts("lie_heisenberg.json");
    assert_eq!((fa.as_str(), ft.as_str()), ("INCOMPLETE", "INCOMPLETE"));
    for p in rep["ftilde"]["points"].as_array().unwrap() {
        assert!(p["witness"]
            .as_array()
            .unwrap()
            .iter()
            .any(|w| w == "dp_0 ∈ K"));
        assert_eq!(p["involution"]["passed"], true);
        assert_eq!(p["eigenvalue_lemma"]["status"], "PASS");
    }
    assert_eq!(rep["semiinvariant"]["polynomial"], "x3");

    let (fa, ft, rep) = verdicts("lie_so3.json");
    assert_eq!((fa.as_str(), ft.as_str()), ("COMPLETE", "COMPLETE"));
    assert_eq!(rep["generic_jk"]["kronecker"], serde_json::json!([2]));

    let (_, ft, _) = verdicts("lie_aff1.json");
    assert_eq!(ft, "COMPLETE");
}

#[test]
fn explicit_points_are_used() {
    let (_, _, rep) = verdicts("lie_heisenberg_points.json");
    let pts: Vec<Value> = rep["ftilde"]["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["point"].clone())
        .collect();
    assert_eq!(
        pts,
        vec![
            serde_json::json!(["1", "2", "3"]),
            serde_json::json!(["-1/2", "4", "5"])
        ]
    );
    let r = json(&[
        "--point",
        "2,-1,7",
        "lie",
        "analyze",
        &fixture("lie_heisenberg.json"),
    ]);
    assert_eq!(
        r["report"]["ftilde"]["points"][0]["point"],
        serde_json::json!(["2", "-1", "7"])
    );
}

#[test]
fn catalog_listing_and_round_trip() {
    let out = jk(&["catalog"]);
    assert_eq!(out.code, EXIT_OK);
    let names: Vec<&str> = out.stdout.lines().collect();
    assert!(names.len() >= 8);
    for name in names {
        let doc = jk(&["catalog", name]);
        assert_eq!(doc.code, EXIT_OK, "{name}");
        let parsed = LieDocument::from_json(&doc.stdout).unwrap();
        parsed.to_algebra().unwrap().ensure_valid().unwrap();
    }
    let e3 = LieDocument::from_json(&jk(&["catalog", "e3"]).stdout).unwrap();
    assert_eq!(e3.dimension, 6);
    let listed = json(&["catalog"]);
    assert!(listed["names"].as_array().unwrap().len() >= 8);
}

#[test]
fn catalog_document_reingests_through_lie_analyze() {
    let dir = std::env::temp_dir().join(format!("jkpencil-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("so3.json");
    std::fs::write(&path, jk(&["catalog", "so3"]).stdout).unwrap();
    let r = json(&["lie", "analyze", path.to_str().unwrap()]);
    assert_eq!(r["report"]["fa_verdict"], "COMPLETE");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validation_failures_exit_two() {
    let out = jk(&["catalog", "nonesuch"]);
    assert_eq!(out.code, EXIT_VALIDATION);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.starts_with("error ["), "{}", out.stderr);

    let out = jk(&["pencil", "analyze", &fixture("pencil_malformed.json")]);
    assert_eq!(out.code, EXIT_VALIDATION);
    assert!(out.stderr.contains("line"), "{}", out.stderr);

    let out = jk(&["lie", "analyze", &fixture("lie_broken.json")]);
    assert_eq!(out.code, EXIT_VALIDATION);
    assert!(out.stderr.contains("JACOBI_VIOLATION"), "{}", out.stderr);
    assert!(out.stderr.contains("[1, 2, 3, 3]"), "{}", out.stderr);

    let out = jk(&["pencil", "analyze", &fixture("missing.json")]);
    assert_eq!(out.code, EXIT_VALIDATION);

    let out = jk(&[
        "--point",
        "1,2",
        "pencil",
        "analyze",
        &fixture("pencil_zero3.json"),
    ]);
    assert_eq!(out.code, EXIT_VALIDATION);

    let out = jk(&["--point", "1,2", "lie", "analyze", &fixture("lie_so3.json")]);
    assert_eq!(out.code, EXIT_VALIDATION);
}

#[test]
fn same_seed_same_bytes() {
    for args in [
        vec!["--format", "json", "lie", "analyze"],
        vec!["--format", "json", "--seed", "99", "lie", "analyze"],
    ] {
        let mut a = args.clone();
        let f = fixture("lie_aff1.json");
        a.push(&f);
        assert_eq!(jk(&a).stdout, jk(&a).stdout);
    }
    let p = fixture("pencil_mixed_scrambled.json");
    let args = ["--format", "json", "pencil", "analyze", &p];
    assert_eq!(jk(&args).stdout, jk(&args).stdout);
}

#[test]
fn help_shows_default_seed() {
    let out = jk(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("1729"));
}

#[test]
fn pencil_document_shape_errors() {
    let doc = PencilDocument::from_json(r#"{"dimension": 3, "A": [["0"]], "B": [["0"]]}"#).unwrap();
    assert!(doc.to_pencil().is_err());
}
