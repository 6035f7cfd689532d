//! Browser bindings: each export takes plain strings and returns a text report.

use geomcas::io::{self, InputError};
use wasm_bindgen::prelude::*;

fn report(r: Result<io::Report, InputError>) -> Result<String, JsError> {
    r.map(|r| r.to_text()).map_err(|e| JsError::new(&e.to_string()))
}

/// Full analysis of a geometry file (chart metric or Lie algebra).
#[wasm_bindgen]
pub fn analyze(text: &str, kmax: usize) -> Result<String, JsError> {
    report(io::analyze(text, kmax, Some(0)))
}

/// Report of the generated two-symmetric family. `h` is one expression per
/// line; `f` has one row per line with entries separated by whitespace.
#[wasm_bindgen]
pub fn two_symmetric(h: &str, f: &str) -> Result<String, JsError> {
    let (h, f) = parse_family(h, f);
    report(io::run_builtin("two-sym-n", 3, Some(&h), Some(&f)).map(|o| o.report))
}

/// Homogeneous-space report of a bundled case, with optional `name=value` overrides.
#[wasm_bindgen]
pub fn homogeneous(name: &str, overrides: &str) -> Result<String, JsError> {
    let b = io::builtin(name).ok_or_else(|| JsError::new(&format!("unknown case `{name}`")))?;
    let source = b
        .source
        .ok_or_else(|| JsError::new(&format!("`{name}` has no bundled file")))?;
    let overrides = parse_overrides(overrides).map_err(|e| JsError::new(&e))?;
    report(io::hom(source, &overrides, 3))
}

/// Newline-separated `name<TAB>description` list of the bundled cases.
#[wasm_bindgen]
pub fn builtins() -> String {
    io::builtins()
        .iter()
        .map(|b| format!("{}\t{}\n", b.name, b.description))
        .collect()
}

/// Bundled geometry file of a case, or the empty string.
#[wasm_bindgen]
pub fn builtin_source(name: &str) -> String {
    io::builtin(name).and_then(|b| b.source).unwrap_or("").to_string()
}

fn parse_family(h: &str, f: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let h = h
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect();
    let f = f
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect();
    (h, f)
}

fn parse_overrides(s: &str) -> Result<Vec<(String, String)>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| format!("expected name=value, got `{p}`"))
        })
        .collect()
}
