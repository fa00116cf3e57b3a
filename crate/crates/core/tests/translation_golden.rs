use std::fs;
use std::path::Path;

use dlqs_core::parser::parse_kb;
use dlqs_core::pipeline::{prepare, Config};
use dlqs_core::translate::sexpr;

const CASES: [&str; 3] = ["family", "roles", "data"];

/// Compares the printed translation with `<name>.phi`. Set `UPDATE_GOLDEN=1`
/// to rewrite the expected files.
#[test]
fn translations_match_golden_files() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    for name in CASES {
        let kb = parse_kb(&fs::read_to_string(dir.join(format!("{name}.dlkb"))).unwrap()).unwrap();
        let got = sexpr::phi(&prepare(&kb, &Config::default()).unwrap().phi);
        let path = dir.join(format!("{name}.phi"));
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn golden_knowledge_bases_are_consistent() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    for name in CASES {
        let kb = parse_kb(&fs::read_to_string(dir.join(format!("{name}.dlkb"))).unwrap()).unwrap();
        let cfg = Config::default();
        assert!(prepare(&kb, &cfg).unwrap().check(&cfg).unwrap().is_satisfiable(), "{name}");
    }
}
