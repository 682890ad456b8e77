use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tensorloci::exactnum::q;
use tensorloci::game::replay;
use tensorloci::game::Move;
use tensorloci::normal_forms::w_state;
use tensorloci::tensorcore::RankOneTensor;
use tensorloci_cli::{parse_tensor, run_command};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["tensorloci".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (status, out) = run_command(argv);
    (status, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn classify_rank_five_orbit() {
    let (status, v) = run(&["classify", &fixture("t21.json")]);
    assert_eq!(status, 0);
    assert_eq!(v["orbit"], 21);
    assert_eq!(v["rank"], 5);
    assert_eq!(v["border_rank"], 4);
}

#[test]
fn locus_on_pairing_hyperplane_is_forbidden() {
    for strategy in ["generic", "specialized", "closed-form"] {
        let (status, v) =
            run(&["locus", &fixture("t9.json"), "--rank-one", &fixture("p_e1e1e2.json"), "--strategy", strategy]);
        assert_eq!(status, 0, "{strategy}: {v}");
        assert_eq!(v["status"], "forbidden", "{strategy}");
        assert_eq!(v["strategy"], strategy);
    }
}

#[test]
fn closed_form_needs_the_normal_form() {
    let (status, v) =
        run(&["locus", &fixture("w3.json"), "--rank-one", &fixture("p_sum.json"), "--strategy", "closed-form"]);
    assert_eq!(status, 2);
    assert_eq!(v["code"], "NotNormalForm");
}

#[test]
fn w_state_document_and_decomposition() {
    let text = std::fs::read(fixture("w3.json")).unwrap();
    assert_eq!(parse_tensor(&text).unwrap(), w_state(3));
    let (status, v) = run(&["decompose", &fixture("w3.json"), "--through", &fixture("p_sum.json")]);
    assert_eq!(status, 0);
    assert_eq!(v["length"], 3);
    let (_, lv) = run(&["locus", &fixture("w3.json"), "--rank-one", &fixture("p_sum.json")]);
    assert_eq!(lv["status"], "in_decomposition");
}

#[test]
fn error_codes_and_exit_status() {
    let (status, v) = run(&["classify", &fixture("duplicate.json")]);
    assert_eq!((status, v["code"].as_str()), (1, Some("DuplicateEntry")));
    let (status, v) = run(&["classify", &fixture("cube3.json")]);
    assert_eq!((status, v["code"].as_str()), (2, Some("UnsupportedShape")));
    let (status, v) = run(&["classify", &fixture("missing.json")]);
    assert_eq!((status, v["code"].as_str()), (1, Some("IoError")));
    let (status, v) = run(&["locus", &fixture("t9.json")]);
    assert_eq!((status, v["code"].as_str()), (1, Some("UsageError")));
    let (status, v) = run(&["locus", &fixture("t9.json"), "--rank-one", &fixture("t9.json")]);
    assert_eq!((status, v["code"].as_str()), (2, Some("NotRankOne")));
}

fn moves_of(v: &Value) -> Vec<Move> {
    let rat = |s: &Value| tensorloci::exactnum::parse_rational(s.as_str().unwrap()).unwrap();
    v["moves"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| Move {
            lambda: rat(&m["lambda"]),
            term: RankOneTensor::new(
                m["factors"].as_array().unwrap().iter().map(|f| f.as_array().unwrap().iter().map(rat).collect()).collect(),
            )
            .unwrap(),
        })
        .collect()
}

#[test]
fn game_transcript_replays() {
    let (status, v) = run(&["game", &fixture("t21.json"), "--seed", "3"]);
    assert_eq!(status, 0);
    assert_eq!(v["initial_rank"], 5);
    assert_eq!(v["final_rank"], 0);
    let t = parse_tensor(&std::fs::read(fixture("t21.json")).unwrap()).unwrap();
    let end = replay(&t, &moves_of(&v)).unwrap();
    assert!(end.current.is_zero_tensor());
    assert_eq!(end.moves.len(), 5);
    assert!(end.moves.iter().all(|m| m.lambda != q(0)));
}

#[test]
fn binary_output_is_byte_stable() {
    let bin = env!("CARGO_BIN_EXE_tensorloci");
    let go = |seed: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(["game", &fixture("t9.json")]);
        match seed {
            Some(s) => c.env(tensorloci_cli::SEED_VAR, s),
            None => c.env_remove(tensorloci_cli::SEED_VAR),
        };
        let out = c.output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        String::from_utf8(out.stdout).unwrap()
    };
    assert_eq!(go(None), go(None));
    let seeded = go(Some("99"));
    assert_eq!(seeded, go(Some("99")));
    let v: Value = serde_json::from_str(&seeded).unwrap();
    assert_eq!(v["seed"], 99);
    let out = Command::new(bin).args(["classify", &fixture("duplicate.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_tangential_orbit() {
    let (status, v) = run(&["selftest", "--orbit", "5"]);
    assert_eq!(status, 0, "{v}");
    assert_eq!(v["pass"], true);
    let checks = v["orbits"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "tangency_point_forbidden_w_state"));
    assert!(checks.iter().all(|c| c["pass"] == true));
}
