use std::path::PathBuf;
use std::process::Command;

use roughmap_cli::run_cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("roughmap").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn docs(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs").join(rel).display().to_string()
}

#[test]
fn replay_paper_passes() {
    let (code, out, _) = run(&["replay-paper"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("six-point instance"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn binary_runs_and_respects_worker_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_roughmap"))
        .args(["falsify", "T41-1", "--max-u", "4", "--max-v", "2"])
        .env("ROUGHMAP_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("minimal counterexample #"), "{text}");
}

#[test]
fn falsify_exit_codes_follow_expected_status() {
    // refuted claim, counterexample in range
    assert_eq!(run(&["falsify", "L31-1-fwd", "--max-u", "4", "--max-v", "2"]).0, 0);
    // refuted claim, bounds too small to contain one
    assert_eq!(run(&["falsify", "L31-1-fwd", "--max-u", "3", "--max-v", "2"]).0, 1);
    // open claim that holds at the bounds
    assert_eq!(run(&["falsify", "T31", "--max-u", "4", "--max-v", "3"]).0, 3);
    // proven claim
    assert_eq!(run(&["falsify", "T42-1", "--max-u", "3"]).0, 0);
    // ill-typed claim
    assert_eq!(run(&["falsify", "L32", "--max-u", "3"]).0, 0);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "T42-2", "--max-u", "3"]).0, 0);
    let (code, out, _) = run(&["verify", "T41-1", "--max-u", "4", "--max-v", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("fails"));
}

#[test]
fn unknown_claim_prints_registry() {
    let (code, _, err) = run(&["verify", "T99", "--max-u", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("T99"));
    assert!(err.contains("L31-3-join"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["falsify", "T31"]).0, 2);
    assert_eq!(run(&["count"]).0, 2);
    assert_eq!(run(&["count", "--partitions", "3", "--subsets", "3"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn too_large_bounds_rejected() {
    let (code, _, err) = run(&["verify", "T31", "--max-u", "40"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn count_matches_formulas() {
    let (code, out, _) = run(&["count", "--partitions", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("877"));
    let (code, out, _) = run(&["count", "--surjections", "6", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("enumerated 62, formula 62"));
    assert_eq!(run(&["count", "--subsets", "5"]).0, 0);
    assert_eq!(run(&["count", "--surjections", "2", "3"]).0, 2);
}

#[test]
fn list_claims_has_every_id() {
    let (code, out, _) = run(&["list-claims"]);
    assert_eq!(code, 0);
    for id in roughmap::claims::ClaimId::ALL {
        assert!(out.contains(id.as_str()), "{id}");
    }
}

#[test]
fn eval_instance_documents() {
    let (code, out, err) = run(&["eval", "--input", &docs("instances/six-point.json")]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("f(R1) = {(a, a), (b, b), (a, b), (b, a)}"), "{out}");
    assert!(out.contains("f(R2) = {(a, a), (b, b)}"));
    assert!(out.contains("L31-1-fwd   fails"));
    assert!(out.contains("L32         ill-typed (difference-not-reflexive)"));

    let (code, out, _) = run(&["eval", "--input", &docs("instances/four-point.json"), "--show", "approx"]);
    assert_eq!(code, 0);
    assert!(out.contains("lower_f(R) f(X) = ∅, upper_f(R) f(X) = {a, b}"), "{out}");
    assert!(!out.contains("D([x]"));

    let (code, _, err) = run(&["eval", "--input", &docs("instances/four-point.json"), "--claim", "L32"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn eval_rejects_bad_documents() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"schema":"roughmap/instance-v1","universe_u":3,"universe_v":2,"map":[0,1,1],
            "partitions":[{"blocks":[[0,1],[1,2]]}]}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["eval", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("overlap"), "{err}");
    let (code, _, _) = run(&["eval", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn falsify_json_report_revalidates_through_eval() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["falsify", "T43-2", "--max-u", "4", "--max-v", "3", "--json", p]).0, 0);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema"], "roughmap/report-v1");
    assert_eq!(doc["first_counterexample"]["ordinal"], 1052);
    let (code, out, _) = run(&["eval", "--input", p]);
    assert_eq!(code, 0, "{out}");

    // corrupt the witness: re-validation must now fail
    let mut bad = doc.clone();
    bad["first_counterexample"]["witness"]["description"] = "tampered".into();
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    assert_eq!(run(&["eval", "--input", p]).0, 1);
}

#[test]
fn status_page_matches_committed_copy() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("status.md");
    let (code, _, err) = run(&["status", "--out", path.to_str().unwrap(), "--workers", "2"]);
    assert_eq!(code, 0, "{err}");
    let fresh = std::fs::read_to_string(&path).unwrap();
    let committed = std::fs::read_to_string(docs("claim-status.md")).unwrap();
    assert_eq!(fresh, committed);
}
