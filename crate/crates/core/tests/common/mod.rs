#![allow(dead_code)]

pub mod criteria;

use std::path::PathBuf;

use stratcalc::elaborate::elaborate_program;
use stratcalc::frontend::parse_term;
use stratcalc::prelude::parse_with_prelude;
use stratcalc::{Program, Term};

pub fn programs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("programs")
}

pub fn read_program(name: &str) -> String {
    let path = programs_dir().join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Parses `programs/<name>` with the prelude.
pub fn load(name: &str) -> Program {
    parse_with_prelude(&read_program(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn load_elaborated(name: &str) -> Program {
    elaborate_program(&load(name)).unwrap_or_else(|e| panic!("{name}: {e:?}"))
}

pub fn term(p: &Program, text: &str) -> Term {
    parse_term(text, &p.context).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Peano numeral `succ^n(zero)`.
pub fn peano(n: usize) -> String {
    let mut s = "zero".to_string();
    for _ in 0..n {
        s = format!("succ({s})");
    }
    s
}

/// The generator signature with `main` replaced.
pub fn with_main(main: &str) -> Program {
    let text = gen::BASE.replace("main = id;", &format!("main = {main};"));
    parse_with_prelude(&text).unwrap_or_else(|e| panic!("{main}: {e}"))
}

/// Runs main of the elaborated program on `input`, rendering the reduct.
pub fn run_main(p: &Program, input: &str, fuel: Option<u64>) -> Result<String, stratcalc::EngineError> {
    let e = elaborate_program(p).unwrap_or_else(|d| panic!("{d:?}"));
    let t = term(&e, input);
    let cfg = stratcalc::EvalConfig { fuel, trace: false };
    stratcalc::run_program(&e, &t, cfg).outcome.map(|r| r.to_string())
}

pub fn eval(main: &str, input: &str) -> String {
    run_main(&with_main(main), input, Some(100_000)).unwrap_or_else(|e| panic!("{main} @ {input}: {e}"))
}
