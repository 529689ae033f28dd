use std::path::PathBuf;
use std::process::{Command, Output};

use ainfty::instance::Document;
use serde_json::Value;

const NAMES: [&str; 10] = [
    "pt",
    "dual0",
    "dual_t",
    "curved",
    "sph_1",
    "sph_2",
    "sph_3",
    "a2",
    "rank_jump",
    "mc_solvable",
];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ainfty"))
        .args(args)
        .env_remove("AINFTY_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn corpus_file(name: &str) -> String {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "core",
        "corpus",
        &format!("{name}.json"),
    ]
    .iter()
    .collect();
    p.to_string_lossy().into_owned()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    std::fs::read_to_string(p).unwrap()
}

fn temp_file(name: &str, contents: &str) -> String {
    let p = std::env::temp_dir().join(format!("ainfty-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_pt_file() {
    let o = run(&["validate", &corpus_file("pt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid"));
}

#[test]
fn invalid_instance_is_a_verdict() {
    let text = std::fs::read_to_string(corpus_file("sph_2")).unwrap();
    let broken = text.replacen("\"coeff\":\"1\"", "\"coeff\":\"2\"", 1);
    assert_ne!(broken, text);
    let path = temp_file("broken.json", &broken);
    let r = report(&["--json", "validate", &path]);
    assert_eq!(r["result"]["valid"], false);
    assert!(!r["result"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn hh_lists_the_dual_numbers_class() {
    let r = report(&[
        "hh",
        &corpus_file("dual0"),
        "--degree",
        "2",
        "--length",
        "3",
        "--json",
    ]);
    assert!(r["result"]["dim"].as_u64().unwrap() >= 1);
    let classes = r["result"]["classes"].as_array().unwrap();
    let wanted = classes.iter().any(|c| {
        let entries = c.as_array().unwrap();
        entries.len() == 1
            && entries[0]["inputs"] == serde_json::json!(["x", "x"])
            && entries[0]["output"] == "e"
    });
    assert!(wanted, "{classes:?}");
}

#[test]
fn e1_and_bound() {
    let o = run(&[
        "e1",
        "--betti-m",
        "0:1,2:3",
        "--betti-bd",
        "0:1",
        "--p",
        "0",
        "--q",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3");
    let o = run(&[
        "e1",
        "--betti-m",
        "0:1,2:3",
        "--betti-bd",
        "0:1,2:4",
        "--p",
        "-1",
        "--q",
        "5",
    ]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = run(&["e1", "--betti-m", "0:1,2:3", "--p", "1", "--q", "-1"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = run(&["sh2-bound", "--b2-m", "3", "--b0-bd", "1"]);
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["validate", "/no/such/file.json"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["hh", "pt", "--degree", "x"]).status.code(), Some(1));
    assert_eq!(
        run(&["e1", "--betti-m", "0:1,0:2", "--p", "0", "--q", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["hh", "dual_t"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    // resource limits
    assert_eq!(
        run(&[
            "generate",
            "a2",
            "--target",
            "Ca",
            "--generators",
            "X",
            "--budget",
            "3"
        ])
        .status
        .code(),
        Some(2)
    );
    let o = run(&[
        "quasi-iso",
        "sph_2",
        "--source",
        "S",
        "--target",
        "S",
        "--budget",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    // mathematical failures are data
    let r = report(&["--json", "egl", "curved"]);
    assert_eq!(r["result"]["flat"], false);
}

#[test]
fn reports_are_deterministic() {
    let runs = [
        vec!["--json", "validate", "sph_3"],
        vec!["--json", "h0", "a2"],
        vec![
            "--json",
            "quasi-iso",
            "a2",
            "--source",
            "Ca",
            "--target",
            "Ca",
            "--seed",
            "9",
        ],
        vec![
            "--json",
            "generate",
            "a2",
            "--target",
            "Ca",
            "--generators",
            "X,Y",
        ],
        vec!["--json", "mc-solve", "mc_solvable"],
        vec![
            "--json",
            "iso-laurent",
            "rank_jump",
            "--source",
            "X0",
            "--target",
            "Y0",
        ],
        vec!["--json", "defclass", "dual_t"],
    ];
    for args in runs {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ainfty"))
        .args(["--json", "validate", "pt"])
        .env("AINFTY_SEED", "7")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["seed"], 7);
    assert_eq!(
        report(&["--json", "validate", "pt", "--seed", "3"])["seed"],
        3
    );
}

#[test]
fn hash_ignores_formatting() {
    let text = std::fs::read_to_string(corpus_file("dual0")).unwrap();
    let compact: Value = serde_json::from_str(&text).unwrap();
    let path = temp_file("dual0-compact.json", &compact.to_string());
    let a = report(&["--json", "validate", &corpus_file("dual0")]);
    let b = report(&["--json", "validate", &path]);
    assert_eq!(a["instance_hash"], b["instance_hash"]);
    let c = report(&["--json", "validate", "dual_t"]);
    assert_ne!(a["instance_hash"], c["instance_hash"]);
}

#[test]
fn expected_reports() {
    for name in NAMES {
        let r = run(&["--json", "validate", name]);
        assert_eq!(
            stdout(&r),
            fixture(&format!("{name}.validate.json")),
            "{name}"
        );
    }
    for name in ["pt", "dual0", "sph_1", "sph_2", "sph_3", "a2"] {
        assert_eq!(
            stdout(&run(&["--json", "h0", name])),
            fixture(&format!("{name}.h0.json")),
            "{name}"
        );
    }
    for name in ["dual_t", "curved", "rank_jump", "mc_solvable"] {
        assert_eq!(
            stdout(&run(&["--json", "mc-solve", name])),
            fixture(&format!("{name}.mc-solve.json")),
            "{name}"
        );
    }
}

#[test]
fn deformation_commands() {
    let r = report(&["--json", "mc-solve", "curved"]);
    assert_eq!(r["result"]["objects"][0]["status"], "obstructed");
    assert_eq!(r["result"]["objects"][0]["order"], 1);
    let r = report(&["--json", "mc-solve", "mc_solvable", "--object", "X"]);
    assert_eq!(r["result"]["objects"][0]["status"], "solved");

    let r = report(&[
        "--json",
        "iso-laurent",
        "rank_jump",
        "--source",
        "X0",
        "--target",
        "Y0",
    ]);
    assert_eq!(r["result"]["witness"]["valuation"], -1);
    let r = report(&[
        "--json",
        "iso-laurent",
        "rank_jump",
        "--source",
        "X0",
        "--target",
        "Y0",
        "--window",
        "0:0",
    ]);
    assert_eq!(r["result"]["found"], false);

    let r = report(&[
        "--json",
        "gen-fibre",
        "rank_jump",
        "--source",
        "Z0",
        "--target",
        "W0",
    ]);
    assert_eq!(r["result"]["generic"], serde_json::json!({}));
    assert_eq!(r["result"]["special"], serde_json::json!({"0": 1, "1": 1}));
    assert_eq!(r["result"]["semicontinuous"], true);

    let r = report(&["--json", "defclass", "dual_t", "--compare", "dual_t"]);
    assert_eq!(r["result"]["nonzero"], true);
    assert_eq!(r["result"]["first_order"]["equivalent"], true);

    let r = report(&["--json", "egl", "mc_solvable", "--connections", "Xb"]);
    assert_eq!(r["result"]["valid"], true);
}

#[test]
fn reparametrized_instance_round_trips() {
    let o = run(&["--json", "reparam", "dual_t", "--f", r#"[[1,"2"],[2,"1"]]"#]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["result"]["valid"], true);
    let doc: Document = serde_json::from_value(r["result"]["instance"].clone()).unwrap();
    let path = temp_file("reparam.json", &doc.to_canonical_string().unwrap());
    let c = report(&["--json", "defclass", &path]);
    assert_eq!(c["result"]["coords"], serde_json::json!(["2"]));
    assert_eq!(
        run(&["reparam", "dual_t", "--f", r#"[[0,"1"]]"#])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn twisted_complex_commands() {
    let r = report(&["--json", "cone", "a2", "--morphism", "a"]);
    assert_eq!(r["result"]["maurer_cartan"]["valid"], true);
    let r = report(&["--json", "hom", "a2", "--source", "X", "--target", "Y"]);
    assert_eq!(r["result"]["dims"], serde_json::json!({"0": 1}));
    let r = report(&["--json", "twist", "sph_2", "--sphere", "S", "--object", "S"]);
    assert_eq!(r["result"]["maurer_cartan"]["valid"], true);
    let r = report(&[
        "--json",
        "generate",
        "a2",
        "--target",
        "Ca",
        "--generators",
        "X,Y",
    ]);
    assert_eq!(r["result"]["found"], true);
    assert_eq!(r["result"]["depth"], 1);
    let r = report(&[
        "--json",
        "karoubi",
        "a2",
        "--complex",
        "X",
        "--idempotent",
        "idX",
    ]);
    assert_eq!(r["result"]["splits"][0]["verified"], true);
}
