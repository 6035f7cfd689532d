//! Registry of bundled cases.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::InputError;

#[derive(Clone, Copy, Debug)]
pub struct Builtin {
    pub name: &'static str,
    pub description: &'static str,
    /// Bundled geometry file; `None` for generated families.
    pub source: Option<&'static str>,
}

const REGISTRY: &[Builtin] = &[
    Builtin {
        name: "two-sym4",
        description: "four-dimensional two-symmetric pp-wave with parameters a, b, p, q, s",
        source: Some(include_str!("../../data/two_sym4.geom")),
    },
    Builtin {
        name: "two-sym-n",
        description: "two-symmetric pp-wave in dimension n+2 from a diagonal H and a symmetric F",
        source: None,
    },
    Builtin {
        name: "as-case1",
        description: "candidate homogeneous structure on the a = p = q = 0 slice",
        source: Some(include_str!("../../data/as_case1.geom")),
    },
    Builtin {
        name: "a1-homogeneous",
        description: "non-reductive homogeneous space of type A1 (five-dimensional algebra)",
        source: Some(include_str!("../../data/a1_homogeneous.geom")),
    },
    Builtin {
        name: "komrakov-1-4-1-9",
        description: "Komrakov type 1.4^1:9 with mu = -5/2, lambda = 3/4, d = -9a",
        source: Some(include_str!("../../data/komrakov_1_4_1_9.geom")),
    },
];

pub fn builtins() -> &'static [Builtin] {
    REGISTRY
}

pub fn builtin(name: &str) -> Option<&'static Builtin> {
    REGISTRY.iter().find(|b| b.name == name)
}

fn identifiers(s: &str, out: &mut BTreeSet<String>) {
    let mut cur = String::new();
    for c in s.chars().chain(std::iter::once(' ')) {
        if c.is_alphanumeric() || c == '_' {
            cur.push(c);
        } else {
            if cur.starts_with(|c: char| c.is_alphabetic() || c == '_') {
                out.insert(cur.clone());
            }
            cur.clear();
        }
    }
}

/// Geometry file for `g = 2 dv du + Σ (dx^i)² + Σ (H_ij u + F_ij) x^i x^j du²`
/// on coordinates `(v, x1..xn, u)`. `h` is the diagonal of H, `f` the full
/// symmetric F; entries are expressions whose identifiers become parameters.
pub fn two_sym_n(h: &[String], f: &[Vec<String>]) -> Result<String, InputError> {
    let n = h.len();
    if n == 0 || f.len() != n || f.iter().any(|r| r.len() != n) {
        return Err(InputError::Invalid(format!(
            "H has {n} diagonal entries; F must be {n}x{n}"
        )));
    }
    for i in 0..n {
        for j in 0..i {
            if f[i][j].trim() != f[j][i].trim() {
                return Err(InputError::Invalid(format!(
                    "F is not symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    if n + 2 > crate::chart::MAX_DIM {
        return Err(InputError::Invalid(format!("n = {n} exceeds the supported dimension")));
    }
    let mut params = BTreeSet::new();
    for e in h.iter().chain(f.iter().flatten()) {
        identifiers(e, &mut params);
    }
    let coords: Vec<String> = std::iter::once("v".to_string())
        .chain((1..=n).map(|i| format!("x{i}")))
        .chain(std::iter::once("u".to_string()))
        .collect();
    if let Some(clash) = params.iter().find(|p| coords.contains(p)) {
        return Err(InputError::Invalid(format!("`{clash}` clashes with a coordinate name")));
    }
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let h_ij = if i == j { format!("({})*u", h[i]) } else { "0".into() };
            terms.push(format!("({h_ij} + ({}))*x{}*x{}", f[i][j], i + 1, j + 1));
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "[chart]\n{}", coords.join(" "));
    if !params.is_empty() {
        let _ = writeln!(
            out,
            "[params]\n{}",
            params.iter().cloned().collect::<Vec<_>>().join(" ")
        );
    }
    let _ = writeln!(out, "[metric]\n1 {} = 1", n + 2);
    for i in 2..=n + 1 {
        let _ = writeln!(out, "{i} {i} = 1");
    }
    let _ = writeln!(out, "{0} {0} = {1}", n + 2, terms.join(" + "));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::GeometryFile;

    #[test]
    fn bundled_files_parse() {
        for b in builtins() {
            if let Some(src) = b.source {
                GeometryFile::parse(src).unwrap_or_else(|e| panic!("{}: {e}", b.name));
            }
        }
    }

    #[test]
    fn generated_family() {
        let text = two_sym_n(
            &["a".into(), "b".into()],
            &[vec!["p".into(), "q".into()], vec!["q".into(), "s".into()]],
        )
        .unwrap();
        let f = GeometryFile::parse(&text).unwrap();
        assert_eq!(f.coords.len(), 4);
        assert_eq!(f.params, vec!["a", "b", "p", "q", "s"]);
        assert!(two_sym_n(&["1".into()], &[vec!["1".into(), "2".into()]]).is_err());
    }
}
