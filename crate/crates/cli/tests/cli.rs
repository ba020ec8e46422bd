use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_klein4"))
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn make(spec: &[&str]) -> String {
    let mut args = vec!["make"];
    args.extend_from_slice(spec);
    ok(&args, "")
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

const FAMILIES: &[(&str, &[&str])] = &[
    ("free", &["free"]),
    ("trivial", &["trivial"]),
    ("band_x_1", &["band", "--poly", "x", "--power", "1"]),
    ("band_x2x1_1", &["band", "--poly", "x^2+x+1", "--power", "1"]),
    ("band_x1_2", &["band", "--poly", "x+1", "--power", "2"]),
    ("zeroband_3", &["zeroband", "-n", "3"]),
    ("syzygy_2", &["syzygy", "-n", "2"]),
    ("cosyzygy_2", &["cosyzygy", "-n", "2"]),
];

#[test]
fn make_output_matches_fixtures() {
    for (name, spec) in FAMILIES {
        assert_eq!(make(spec), fixture(&format!("{name}.json")), "{name}");
    }
}

#[test]
fn diagrams_match_fixtures() {
    for (name, spec) in FAMILIES {
        let module = make(spec);
        assert_eq!(ok(&["diagram", "--format", "ascii"], &module), fixture(&format!("{name}.txt")), "{name}");
        assert_eq!(ok(&["diagram", "--format", "dot"], &module), fixture(&format!("{name}.dot")), "{name}");
    }
}

#[test]
fn make_round_trips_byte_for_byte() {
    let specs: &[&[&str]] = &[
        &["band", "--poly", "x2+x+1", "--power", "2"],
        &["band", "--poly", "x^3+x+1", "--power", "1", "--field", "2"],
        &["zeroband", "-n", "4", "--field", "3"],
        &["syzygy", "-n", "5"],
        &["cosyzygy", "-n", "3", "--field", "4"],
    ];
    for spec in specs {
        let module = make(spec);
        assert_eq!(ok(&["validate"], &module), module, "{spec:?}");
    }
}

#[test]
fn make_writes_to_file() {
    let dir = std::env::temp_dir().join(format!("klein4-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("free.json");
    ok(&["make", "free", "-o", path.to_str().unwrap()], "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), fixture("free.json"));
    assert_eq!(ok(&["validate", path.to_str().unwrap()], ""), fixture("free.json"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn info_of_first_syzygy() {
    let doc: Value = serde_json::from_str(&ok(&["info"], &make(&["syzygy", "-n", "1"]))).unwrap();
    assert_eq!(doc["dim"], 3);
    assert_eq!(doc["socle"], 1);
    assert_eq!(doc["radical"], 1);
    assert_eq!(doc["free_rank"], 0);
    assert!(doc["pencil"].get("determinant").is_none());
}

#[test]
fn info_reports_determinant_for_square_pencils() {
    let doc: Value = serde_json::from_str(&ok(&["info"], &make(&["band", "--poly", "x^2+x+1"]))).unwrap();
    assert_eq!(doc["pencil"]["determinant"], "x^2+x+1");
}

#[test]
fn band_of_x_draws_one_b_edge() {
    let text = ok(&["diagram", "--format", "ascii"], &make(&["band", "--poly", "x", "--power", "1"]));
    assert_eq!(text.matches('*').count(), 2);
    assert_eq!(text.matches('\\').count(), 1);
    assert_eq!(text.matches('/').count(), 0);
}

#[test]
fn enumerate_dimension_two_has_three_classes() {
    let doc: Value = serde_json::from_str(&ok(&["enumerate", "--dim", "2"], "")).unwrap();
    assert_eq!(doc["dims"][0]["classes"], 1);
    assert_eq!(doc["dims"][1]["classes"], 3);
    assert_eq!(doc["dims"][1]["unlabeled"], 0);
}

#[test]
fn decompose_omits_witness_unless_asked() {
    let module = make(&["free"]);
    let plain: Value = serde_json::from_str(&ok(&["decompose"], &module)).unwrap();
    assert!(plain.get("witness").is_none());
    assert_eq!(plain["summands"][0]["label"]["kind"], "Free");
    let full: Value = serde_json::from_str(&ok(&["decompose", "--witness"], &module)).unwrap();
    assert_eq!(full["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn omega_and_dual_agree_on_trivial() {
    let trivial = make(&["trivial"]);
    let pos = ok(&["omega", "-n", "2"], &trivial);
    let neg = ok(&["omega", "-n", "-2"], &trivial);
    assert_eq!(ok(&["dual"], &pos).len(), neg.len());
    let label: Value = serde_json::from_str(&ok(&["decompose"], &neg)).unwrap();
    assert_eq!(label["summands"][0]["label"]["kind"], "SyzygyNeg");
    assert_eq!(label["summands"][0]["label"]["n"], 2);
}

#[test]
fn iso_finds_self_duality_of_free() {
    let dir = std::env::temp_dir().join(format!("klein4-iso-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("free.json");
    let b = dir.join("dual.json");
    std::fs::write(&a, make(&["free"])).unwrap();
    std::fs::write(&b, ok(&["dual"], &make(&["free"]))).unwrap();
    let doc: Value = serde_json::from_str(&ok(&["iso", a.to_str().unwrap(), b.to_str().unwrap()], "")).unwrap();
    assert_eq!(doc["isomorphic"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ar_sequence_dimensions_add_up() {
    // 0 -> Omega^2 k -> E -> k -> 0 with dims 5 and 1.
    let doc: Value = serde_json::from_str(&ok(&["ar", "-l", "0"], "")).unwrap();
    assert_eq!(doc["left"]["dim"], 5);
    assert_eq!(doc["right"]["dim"], 1);
    assert_eq!(doc["middle"]["dim"], 6);
}

#[test]
fn invalid_input_exits_one_with_error_name() {
    let bad = r#"{"field":{"degree":1},"dim":1,"A":[[1]],"B":[[0]]}"#;
    let out = run(&["validate"], bad);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"], "NotSquareZeroA");

    let out = run(&["make", "band", "--poly", "x^2+1"], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("InvalidLabel"));

    let out = run(&["make", "band", "--poly", "x^2+y"], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`y`"));
}

#[test]
fn argument_errors_exit_one() {
    let out = run(&["ar", "-l", "40"], "");
    assert_eq!(out.status.code(), Some(1), "out-of-range is an input error");
    let out = run(&["diagram", "--format", "ascii"], r#"{"field":{"degree":2},"dim":2,"A":[[0,0],[2,0]],"B":[[0,0],[0,0]]}"#);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotDiagrammable"));
}

#[test]
fn check_passes_on_small_grid() {
    let text = ok(&["check", "--max-dim", "5"], "");
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().all(|l| l.starts_with("[PASS]")), "{text}");
}

/// Runs every `$ klein4 ...` transcript in the guide's command-line chapter
/// and compares the printed output.
#[test]
fn guide_transcripts_are_current() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../book/src/command_line.md");
    let text = std::fs::read_to_string(path).unwrap();
    let mut checked = 0;
    for block in text.split("```text\n").skip(1).filter_map(|b| b.split("```").next()) {
        for session in block.split("\n\n").filter(|s| s.starts_with("$ ")) {
            let (command, expected) = session.split_once('\n').unwrap_or((session, ""));
            let mut piped = String::new();
            for stage in command.trim_start_matches("$ ").split(" | ") {
                let args: Vec<&str> = stage.split_whitespace().skip(1).collect();
                piped = ok(&args, &piped);
            }
            assert_eq!(piped.trim_end(), expected.trim_end(), "{command}");
            checked += 1;
        }
    }
    assert_eq!(checked, 4);
}
