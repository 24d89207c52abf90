//! Round trip and golden JSON output for every session in `tests/corpus`.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the golden files after an intended
//! change of output.

use std::fs;
use std::path::{Path, PathBuf};

use analogic::session::{parse_ast, parse_session, print_ast, run, Command};

const COMMANDS: [(Command, &str); 6] = [
    (Command::Check, "check"),
    (Command::Classify, "classify"),
    (Command::Report, "report"),
    (Command::Best, "best"),
    (Command::Entail, "entail"),
    (Command::Score, "score"),
];

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ana"))
        .collect();
    files.sort();
    files
}

#[test]
fn corpus_is_large_enough() {
    assert!(corpus().len() >= 10);
}

#[test]
fn print_then_parse_is_identity() {
    for path in corpus() {
        let text = fs::read_to_string(&path).unwrap();
        let ast = parse_ast(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let printed = print_ast(&ast);
        let again = parse_ast(&printed).unwrap();
        assert_eq!(ast, again, "{}", path.display());
        assert_eq!(print_ast(&again), printed, "{}", path.display());
    }
}

#[test]
fn every_session_validates() {
    for path in corpus() {
        let text = fs::read_to_string(&path).unwrap();
        parse_session(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn golden_json() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for path in corpus() {
        let stem = path.file_stem().unwrap().to_str().unwrap();
        let session = parse_session(&fs::read_to_string(&path).unwrap()).unwrap();
        for (cmd, name) in COMMANDS {
            let first = run(&session, cmd).json;
            let second = run(
                &parse_session(&fs::read_to_string(&path).unwrap()).unwrap(),
                cmd,
            )
            .json;
            assert_eq!(first, second, "{stem} {name}: output differs between runs");
            let file = golden.join(format!("{stem}.{name}.json"));
            if update {
                fs::create_dir_all(&golden).unwrap();
                fs::write(&file, &first).unwrap();
            } else {
                let expected =
                    fs::read_to_string(&file).unwrap_or_else(|e| panic!("{}: {e}", file.display()));
                assert_eq!(first, expected, "{}", file.display());
            }
        }
    }
}
