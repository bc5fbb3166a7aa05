use std::path::PathBuf;

use mgstab::io::{
    emit_problem, emit_report, parse_problem, parse_report, run_command, Command, Format, IoError, Mode, PointDoc,
    ReportResult, RunOptions,
};
use mgstab::segment::SegmentError;

fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn load(name: &str) -> Vec<u8> {
    std::fs::read(problems_dir().join(name)).unwrap()
}

fn all_problem_files() -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(problems_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files.into_iter().map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())).collect()
}

const MINIMAL: &str = r#"{"j0":1,"d":1,"volumes":["1"],"target":{"name":"E","rank":"2","hilbert":[["1","2"]]},"candidates":[],"sigma":["1"]}"#;

#[test]
fn minimal_document_parses() {
    let p = parse_problem(MINIMAL.as_bytes()).unwrap();
    assert_eq!(p.j0, 1);
    assert!(matches!(p.mode, Mode::Sigma(_)));
    assert!(!p.has_twists());
}

#[test]
fn zero_sigma_is_a_value_error() {
    let doc = r#"{"j0":2,"d":1,"volumes":["1","1"],"target":{"name":"E","rank":"2","hilbert":[["1","2"],["1","2"]]},"candidates":[],"sigma":["0","0"]}"#;
    match parse_problem(doc.as_bytes()) {
        Err(IoError::Value { path, message }) => {
            assert_eq!(path, "sigma");
            assert!(message.contains("zero"), "{message}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn schema_errors_carry_paths() {
    let unknown = MINIMAL.replace(r#""rank":"2""#, r#""rank":"2","colour":"red""#);
    match parse_problem(unknown.as_bytes()) {
        Err(IoError::Schema { path, message }) => {
            assert!(path.starts_with("target"), "{path}");
            assert!(message.contains("colour"), "{message}");
        }
        other => panic!("{other:?}"),
    }
    let missing = MINIMAL.replace(r#""d":1,"#, "");
    assert!(matches!(parse_problem(missing.as_bytes()), Err(IoError::Schema { .. })));
    let wrong_type = MINIMAL.replace(r#""volumes":["1"]"#, r#""volumes":[1]"#);
    match parse_problem(wrong_type.as_bytes()) {
        Err(IoError::Schema { path, .. }) => assert_eq!(path, "volumes[0]"),
        other => panic!("{other:?}"),
    }
    let two_modes = MINIMAL.replace(r#""sigma":["1"]"#, r#""sigma":["1"],"segment":{"from":["1"],"to":["1"]}"#);
    assert!(matches!(parse_problem(two_modes.as_bytes()), Err(IoError::Schema { .. })));
}

#[test]
fn value_errors() {
    let negative = MINIMAL.replace(r#""volumes":["1"]"#, r#""volumes":["-1"]"#);
    match parse_problem(negative.as_bytes()) {
        Err(IoError::Value { path, .. }) => assert_eq!(path, "volumes[0]"),
        other => panic!("{other:?}"),
    }
    let bad_rational = MINIMAL.replace(r#""rank":"2""#, r#""rank":"2/0""#);
    match parse_problem(bad_rational.as_bytes()) {
        Err(IoError::Value { path, .. }) => assert_eq!(path, "target.rank"),
        other => panic!("{other:?}"),
    }
    let duplicate = MINIMAL.replace(r#""candidates":[]"#, r#""candidates":[{"name":"E","rank":"1","hilbert":[["0","1"]]}]"#);
    assert!(matches!(parse_problem(duplicate.as_bytes()), Err(IoError::Value { .. })));
    let unnormalized = r#"{"j0":1,"d":1,"volumes":["2"],"target":{"name":"E","rank":"1","hilbert":[["1","1"]]},"segment":{"from":["1"],"to":["1"]}}"#;
    assert!(matches!(parse_problem(unnormalized.as_bytes()), Err(IoError::Value { .. })));
}

#[test]
fn unreduced_rationals_are_normalized() {
    let doc = MINIMAL.replace(r#""rank":"2""#, r#""rank":"4/2""#).replace(r#"["1","2"]"#, r#"["2/2","6/3"]"#);
    let p = parse_problem(doc.as_bytes()).unwrap();
    assert_eq!(p, parse_problem(MINIMAL.as_bytes()).unwrap());
    assert!(emit_problem(&p).contains("\"2\""));
}

#[test]
fn every_problem_file_round_trips() {
    for (name, bytes) in all_problem_files() {
        let p = parse_problem(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"));
        let emitted = emit_problem(&p);
        let again = parse_problem(emitted.as_bytes()).unwrap();
        assert_eq!(p, again, "{name}");
        assert_eq!(emitted, emit_problem(&again), "{name}");
    }
}

fn run(name: &str, cmd: Command) -> Result<mgstab::io::Report, IoError> {
    let bytes = load(name);
    let p = parse_problem(&bytes).unwrap();
    run_command(cmd, &p, &bytes, &RunOptions::default())
}

#[test]
fn check_running_example() {
    let report = run("running-example-check.json", Command::Check).unwrap();
    let ReportResult::Check(c) = &report.result else { panic!() };
    assert_eq!(c.verdict.status, "unstable");
    assert_eq!(c.verdict.witnesses, vec!["F".to_string()]);
    assert_eq!(report.provenance.input_digest.len(), 64);
}

#[test]
fn flips_running_example() {
    let report = run("running-example.json", Command::Flips).unwrap();
    let ReportResult::Flips(f) = &report.result else { panic!() };
    assert_eq!(f.flips.len(), 1);
    assert_eq!(f.flips[0].wall.location, PointDoc::Rational { value: "1/4".into() });
    assert_eq!(f.flips[0].flipped[0].candidate, "F");
    assert_eq!(f.flips[0].flipped[0].before.as_deref(), Some("greater"));
    assert_eq!(f.flips[0].flipped[0].after.as_deref(), Some("less"));
}

#[test]
fn uniform_without_twists_fails() {
    let err = run("running-example.json", Command::Uniform).unwrap_err();
    assert!(matches!(err, IoError::Segment(SegmentError::MissingTwistData { .. })), "{err:?}");
}

#[test]
fn mode_mismatch() {
    assert!(matches!(run("running-example-check.json", Command::Flips), Err(IoError::ModeMismatch { .. })));
    assert!(matches!(run("running-example.json", Command::QuiverCheck), Err(IoError::ModeMismatch { .. })));
    let bytes = load("running-example-check.json");
    let p = parse_problem(&bytes).unwrap();
    let opts = RunOptions { grid_oracle: Some(10), ..RunOptions::default() };
    assert!(matches!(run_command(Command::Check, &p, &bytes, &opts), Err(IoError::ModeMismatch { .. })));
}

fn no_floats(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(n) => n.is_u64() || n.is_i64(),
        serde_json::Value::Array(a) => a.iter().all(no_floats),
        serde_json::Value::Object(o) => o.values().all(no_floats),
        _ => true,
    }
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    let mut produced = 0;
    for (name, bytes) in all_problem_files() {
        let p = parse_problem(&bytes).unwrap();
        for cmd in Command::ALL {
            let Ok(report) = run_command(cmd, &p, &bytes, &RunOptions::default()) else { continue };
            let json = emit_report(&report, Format::Json);
            assert_eq!(parse_report(json.as_bytes()).unwrap(), report, "{name} {}", cmd.name());
            let again = emit_report(&run_command(cmd, &p, &bytes, &RunOptions::default()).unwrap(), Format::Json);
            assert_eq!(json, again, "{name} {}", cmd.name());
            assert!(no_floats(&serde_json::from_str(&json).unwrap()), "{name} {}", cmd.name());
            assert!(!emit_report(&report, Format::Text).is_empty());
            produced += 1;
        }
    }
    assert!(produced >= 12, "{produced}");
}

#[test]
fn empty_schedule_says_no_walls() {
    let doc = r#"{"j0":2,"d":1,"volumes":["1","1"],"target":{"name":"E","rank":"2","hilbert":[["1","2"],["1","2"]]},"candidates":[{"name":"F","rank":"1","hilbert":[["1","1"],["-1","1"]]}],"segment":{"from":["1/2","1/2"],"to":["1/2","1/2"]}}"#;
    let p = parse_problem(doc.as_bytes()).unwrap();
    let report = run_command(Command::Flips, &p, doc.as_bytes(), &RunOptions::default()).unwrap();
    assert!(emit_report(&report, Format::Text).contains("no walls"));
}

#[test]
fn irrational_walls_are_recorded_exactly() {
    let report = run("irrational-wall.json", Command::Walls).unwrap();
    let ReportResult::Walls(w) = &report.result else { panic!() };
    match &w.walls[0].location {
        PointDoc::Irrational { poly, interval, discriminant } => {
            assert_eq!(poly, &["3", "-5", "1"]);
            assert_eq!(discriminant.as_deref(), Some("13"));
            assert!(interval.iter().all(|x| !x.contains('.')));
        }
        other => panic!("{other:?}"),
    }
    let json = emit_report(&report, Format::Json);
    for key in ["\"poly\"", "\"interval\"", "\"discriminant\""] {
        assert!(json.contains(key), "{key}");
    }
    assert!(!json.contains("0.69"));
    assert!(emit_report(&report, Format::Text).contains("decimal approximation"));
}

#[test]
fn quiver_commands() {
    let report = run("kronecker.json", Command::QuiverCheck).unwrap();
    let ReportResult::QuiverCheck(q) = &report.result else { panic!() };
    assert_eq!(q.theta, vec!["1", "-1"]);
    assert_eq!(q.representations[0].verdict.status, "semistable");
    assert_eq!(q.representations[1].verdict.status, "unstable");
    assert_eq!(q.representations[1].verdict.witness, Some(vec![1, 0]));

    let report = run("two-row-quiver.json", Command::QuiverProject).unwrap();
    let ReportResult::QuiverProject(q) = &report.result else { panic!() };
    assert!(q.trailing_zero);
    assert_eq!(q.dims_prime, vec![1, 2]);
    assert_eq!(q.representations[0].full.status, "semistable");
    assert_eq!(q.representations[0].truncated.status, "semistable");

    let report = run("two-row-quiver.json", Command::QuiverTheta).unwrap();
    let ReportResult::QuiverTheta(q) = &report.result else { panic!() };
    assert_eq!(q.pairing, "0");
}
