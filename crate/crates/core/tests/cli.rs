use std::process::{Command, Output};

use cxpoisson::cli::problem::{BivectorSpec, BivectorTerm, ChartSpec, ChecksSpec, FormSpec, FormTerm, Number, PipelineSpec};
use cxpoisson::cli::{run_source, Command as Cmd, Options, ProblemFile, Verdict};
use proptest::prelude::*;

fn problem(name: &str) -> String {
    format!("{}/problems/{name}.toml", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cxpoisson")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes_of_bundled_problems() {
    let cases = [
        ("check", "xyz_family", vec![], 0),
        ("check", "xyz_broken", vec![], 1),
        ("check", "zero", vec![], 0),
        ("dirac", "pipelines", vec![], 0),
        ("invariants", "diagonal_plane", vec!["--check", "quasi_real"], 0),
        ("invariants", "twisted_plane", vec!["--check", "gcs"], 0),
        ("invariants", "xyz_family", vec!["--check", "ranks,regular,a_pi,leaf_forms"], 0),
        ("invariants", "xyz_family", vec!["--check", "quasi_real"], 1),
        ("normal-form", "split", vec![], 0),
        ("normal-form", "imaginary_fiber", vec![], 0),
        ("normal-form", "split_opposite", vec![], 2),
        ("normal-form", "weight_zero", vec![], 2),
        ("normal-form", "diagonal_split", vec![], 2),
    ];
    for (cmd, file, extra, code) in cases {
        let path = problem(file);
        let mut args = vec![cmd, path.as_str(), "--grid-size", "6"];
        args.extend(extra.iter());
        let out = run(&args);
        assert_eq!(out.status.code(), Some(code), "{cmd} {file}: {}", stdout(&out));
    }
}

#[test]
fn machine_output_is_json_lines_and_deterministic() {
    let path = problem("xyz_family");
    let args = ["--format", "machine", "invariants", path.as_str(), "--grid-size", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(!text.is_empty());
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        for k in ["check", "inputs", "verdict", "reason", "witnesses", "timing_ms"] {
            assert!(keys.iter().any(|x| x.as_str() == k), "missing {k} in {line}");
        }
        assert!(line.starts_with(r#"{"check":"#));
        assert!(v["timing_ms"].is_null());
    }
}

#[test]
fn timing_only_with_flag() {
    let path = problem("xyz_family");
    let out = stdout(&run(&["--format", "machine", "--timing", "check", path.as_str()]));
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["timing_ms"].is_number());
    }
}

#[test]
fn check_flag_selects_records() {
    let path = problem("xyz_family");
    let out = stdout(&run(&["--format", "machine", "invariants", path.as_str(), "--check", "ranks,gcs", "--grid-size", "3"]));
    let ids: Vec<String> = out
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["check"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids, ["ranks", "gcs"]);
}

#[test]
fn explicit_points_are_used() {
    let path = problem("xyz_family");
    let out = stdout(&run(&["invariants", path.as_str(), "--check", "ranks", "--grid-size", "0", "--points", "1/2,0,3;0,0,0"]));
    assert!(out.contains("(1/2, 0, 3)"), "{out}");
    assert!(out.contains("(0, 0, 0)"), "{out}");
    let bad = run(&["invariants", path.as_str(), "--points", "1,2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn broken_family_reports_witnesses() {
    let path = problem("xyz_broken");
    let out = stdout(&run(&["check", path.as_str()]));
    assert!(out.contains("[π₁, π₁] − [π₂, π₂] = (4*y - 2)"), "{out}");
    assert!(out.contains("re (x, y, z): 2*y - 1"), "{out}");
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = std::env::temp_dir().join(format!("cxpoisson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("syntax.toml", "[chart\nvars = 1"),
        ("unknown_key.toml", "[chart]\nvars = [\"x\"]\ncolour = 3"),
        ("bad_poly.toml", "[chart]\nvars = [\"x\", \"y\"]\n[[bivector]]\nname = \"p\"\nterms = [{ i = 1, j = 2, coeff = \"x^\" }]"),
        ("bad_index.toml", "[chart]\nvars = [\"x\", \"y\"]\n[[bivector]]\nname = \"p\"\nterms = [{ i = 2, j = 1, coeff = \"1\" }]"),
        ("dup.toml", "[chart]\nvars = [\"x\", \"y\"]\n[[bivector]]\nname = \"p\"\n[[form]]\nname = \"p\"\ndegree = 1"),
    ];
    for (name, src) in cases {
        let path = dir.join(name);
        std::fs::write(&path, src).unwrap();
        let out = run(&["check", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(!out.stderr.is_empty(), "{name}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn library_front_end_matches_binary() {
    let src = std::fs::read_to_string(problem("xyz_broken")).unwrap();
    let rep = run_source(Cmd::Check, &src, &Options::default()).unwrap();
    assert_eq!(rep.exit_code(), 1);
    assert!(rep.records.iter().all(|r| r.verdict == Verdict::Fail));
    let out = run(&["--format", "machine", "check", problem("xyz_broken").as_str()]);
    assert_eq!(stdout(&out), rep.machine());
}

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,6}"
}

fn coeff() -> impl Strategy<Value = String> {
    prop_oneof![Just("1".to_string()), Just("x1 + i*x2".to_string()), Just("-3/4*x1^2".to_string()), Just("i".to_string())]
}

fn number() -> impl Strategy<Value = Number> {
    prop_oneof![(-9i64..9).prop_map(Number::Int), (1i64..9, 2i64..9).prop_map(|(a, b)| Number::Text(format!("{a}/{b}")))]
}

prop_compose! {
    fn problem_file()(
        n in 2usize..5,
        bivs in prop::collection::vec((name(), prop::collection::vec((1usize..3, coeff()), 0..3)), 0..3),
        forms in prop::collection::vec((name(), prop::collection::vec(coeff(), 0..3)), 0..2),
        pts in prop::collection::vec(prop::collection::vec(number(), 4), 0..3),
        checks in prop::option::of(prop::collection::vec(name(), 1..3)),
        pipes in prop::collection::vec((name(), prop::collection::vec(Just("graph p".to_string()), 1..3)), 0..2),
    ) -> ProblemFile {
        ProblemFile {
            points: pts.into_iter().map(|p| p[..n].to_vec()).collect(),
            chart: ChartSpec { vars: (1..=n).map(|k| format!("x{k}")).collect() },
            submanifold: None,
            checks: checks.map(|ids| ChecksSpec { ids }),
            normal_form: None,
            bivectors: bivs
                .into_iter()
                .map(|(name, ts)| BivectorSpec {
                    name,
                    terms: ts.into_iter().map(|(i, coeff)| BivectorTerm { i, j: i + 1, coeff }).collect(),
                })
                .collect(),
            forms: forms
                .into_iter()
                .map(|(name, ts)| FormSpec { name, degree: 1, terms: ts.into_iter().enumerate().map(|(k, coeff)| FormTerm { idx: vec![k % n + 1], coeff }).collect() })
                .collect(),
            vectors: Vec::new(),
            pipelines: pipes.into_iter().map(|(name, ops)| PipelineSpec { name, ops }).collect(),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn problem_files_round_trip_through_toml(file in problem_file()) {
        let text = file.to_toml();
        prop_assert_eq!(ProblemFile::parse(&text).unwrap(), file);
    }
}
