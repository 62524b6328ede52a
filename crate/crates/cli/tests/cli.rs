use std::path::PathBuf;
use std::process::Command;

use spherical_cli::document::{parse_document, serialize_document, DocError};
use spherical_cli::{run, EXIT_INPUT, EXIT_OK, EXIT_USAGE};

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/examples").join(name).display().to_string()
}

fn sphx(args: &[&str]) -> spherical_cli::Outcome {
    run(std::iter::once("sphx").chain(args.iter().copied()))
}

#[test]
fn localized_conics_wp_is_zero() {
    let o = sphx(&["wp", "--skeleton", &example("conics_localized.json")]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "0\n"));
}

#[test]
fn conics_closed_orbit_is_smooth() {
    let o = sphx(&["smooth", "--embedding", &example("conics.json"), "--orbit", "closed"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.lines().next(), Some("smooth (wp_local = 0 < 1)"));
    let by_labels = sphx(&["smooth", "--embedding", &example("conics.json"), "--orbit", "X1,D1"]);
    assert_eq!(by_labels.stdout, o.stdout);
}

#[test]
fn example2_verdicts() {
    let o = sphx(&["toric", "--embedding", &example("example2_completed.json")]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "not toric (wp = 1)\n"));
    let o = sphx(&["smooth", "--embedding", &example("example2.json"), "--orbit", "closed"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.starts_with("not smooth (wp_local = 1 >= 1)"), "{}", o.stdout);
    let o = sphx(&["toric", "--embedding", &example("example2.json")]);
    assert_eq!(o.code, EXIT_INPUT, "an incomplete fan is an input error");
}

#[test]
fn toricness_of_the_conics_fans() {
    let o = sphx(&["toric", "--embedding", &example("conics.json")]);
    assert_eq!(o.stdout, "toric (wp = 0)\n");
    let o = sphx(&["toric", "--embedding", &example("conics_colorless.json")]);
    assert_eq!(o.stdout, "not toric (wp = 3)\n");
}

#[test]
fn every_example_validates_and_round_trips() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/examples");
    let mut names: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    assert!(names.len() >= 5);
    for p in names {
        let text = std::fs::read_to_string(&p).unwrap();
        let once = serialize_document(&parse_document(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display())));
        let twice = serialize_document(&parse_document(&once).unwrap());
        assert_eq!(once, twice, "{}", p.display());
    }
}

#[test]
fn mfs_case_documents_round_trip() {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/mfs/item21.json");
    let text = std::fs::read_to_string(p).unwrap();
    let once = serialize_document(&parse_document(&text).unwrap());
    assert_eq!(once, serialize_document(&parse_document(&once).unwrap()));
    assert!(once.contains("\"kind\": \"mfs-case\""));
}

#[test]
fn bad_rational_is_a_syntax_error_with_position() {
    let text = "{\n  \"kind\": \"skeleton\",\n  \"root_system\": \"A1\",\n  \"sp\": [],\n  \"sigma\": [[\"1/0\"]]\n}\n";
    match parse_document(text) {
        Err(DocError::Syntax { line, column, .. }) => assert_eq!((line, column), (5, 14)),
        other => panic!("{other:?}"),
    }
    match parse_document("{\"kind\": \"skeleton\",}") {
        Err(DocError::Syntax { line: 1, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_color_is_a_schema_violation_at_its_path() {
    let text = std::fs::read_to_string(example("conics.json")).unwrap().replace("\"D1\"]", "\"D9\"]");
    match parse_document(&text) {
        Err(DocError::Schema { path, .. }) => assert_eq!(path, "$.fan.cones[0].colors[0]"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn bare_fan_document() {
    let text = r#"{"kind": "fan", "dim": 2,
        "colors": [{"label": "D", "rho": ["1", "1"]}],
        "cones": [{"rays": [["1", "0"], ["0", "1"]], "colors": ["D"]}],
        "invariant_rays": []}"#;
    let d = parse_document(text).unwrap();
    assert_eq!(d.kind(), "fan");
    let bad = text.replace(r#"["1", "1"]"#, r#"["-1", "1"]"#);
    assert!(matches!(parse_document(&bad), Err(DocError::Semantic(_))));
}

#[test]
fn gorensteinify_writes_a_trace_that_parses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.json");
    let o = sphx(&["gorensteinify", "--embedding", &example("conics_colorless.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("F5 wp = 3"));
    let text = std::fs::read_to_string(&out).unwrap();
    let d = parse_document(&text).unwrap();
    assert_eq!(d.kind(), "trace");
    assert_eq!(serialize_document(&d), text);
}

#[test]
fn verify_mfs_reports_deterministically() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/mfs");
    let d = dir.to_str().unwrap();
    let a = sphx(&["verify-mfs", "--dir", d, "--jobs", "1"]);
    let b = sphx(&["verify-mfs", "--dir", d, "--jobs", "4"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.lines().last().unwrap().ends_with(": pass"), "{}", a.stdout);
    let small = sphx(&["verify-mfs", "--dir", d, "--max-rank", "1"]);
    assert!(small.stdout.lines().all(|l| !l.starts_with("item 5 ")));
}

#[test]
fn empty_corpus_reports_no_cases() {
    let dir = tempfile::tempdir().unwrap();
    let o = sphx(&["verify-mfs", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.trim_end().ends_with("no cases"));
}

#[test]
fn corrupted_case_fails_without_changing_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/mfs/item21.json");
    let text = std::fs::read_to_string(src).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let mut bad = v.clone();
    bad["m"] = serde_json::json!([1, 1, 0]);
    std::fs::write(dir.path().join("bad.json"), serde_json::to_string(&bad).unwrap()).unwrap();
    std::fs::write(dir.path().join("junk.json"), "{").unwrap();
    let o = sphx(&["verify-mfs", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("argmax infeasible"), "{}", o.stdout);
    assert!(o.stdout.contains("error junk.json"));
    assert!(o.stdout.trim_end().ends_with("fail"));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(sphx(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(sphx(&["wp"]).code, EXIT_USAGE);
    assert_eq!(sphx(&["smooth", "--embedding", &example("conics.json"), "--orbit", "nope"]).code, EXIT_USAGE);
    assert_eq!(sphx(&["validate", "/nonexistent/x.json"]).code, EXIT_INPUT);
    assert_eq!(sphx(&["wp", "--skeleton", &example("conics.json")]).code, EXIT_INPUT);
    assert_eq!(sphx(&["--help"]).code, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sphx");
    let ok = Command::new(bin).args(["toric", "--embedding", &example("conics_colorless.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "not toric (wp = 3)\n");
    let usage = Command::new(bin).arg("toric").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"kind\": \"nothing\"}").unwrap();
    let bad = Command::new(bin).args(["validate", p.to_str().unwrap()]).output().unwrap();
    assert_eq!(bad.status.code(), Some(3));
}
