//! Lie algebra definitions by structure constants, with validation, a small
//! built-in catalog, and a JSON file format.
//!
//! Indices are 0-based in memory and 1-based in files and reports.

use crate::rational::{fmt_q, parse_q, q, Q, RationalParseError};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraDef {
    pub name: String,
    pub dim: usize,
    /// (lambda, mu, nu) -> C^lambda_{mu nu}, zero entries omitted.
    constants: BTreeMap<(usize, usize, usize), Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("antisymmetry violation at ({0},{1},{2})")]
    Antisymmetry(usize, usize, usize),
    #[error("Jacobi violation at (mu,nu,tau,sigma) = ({0},{1},{2},{3})")]
    Jacobi(usize, usize, usize, usize),
}

#[derive(Debug, Error)]
pub enum LieError {
    #[error("unknown algebra {0:?}")]
    UnknownName(String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("parse error in {field}: {source}")]
    Field { field: String, source: RationalParseError },
    #[error("parse error in {field}: {msg}")]
    Shape { field: String, msg: String },
    #[error("invalid algebra: {0}")]
    Invalid(#[from] Violation),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

impl LieAlgebraDef {
    /// Builds a definition from raw entries without validating.
    pub fn from_entries(
        name: &str,
        dim: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), Q)>,
    ) -> Self {
        let mut constants: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
        for (k, v) in entries {
            *constants.entry(k).or_insert_with(Q::zero) += v;
        }
        constants.retain(|_, v| !v.is_zero());
        LieAlgebraDef { name: name.to_string(), dim, constants }
    }

    /// C^lambda_{mu nu}.
    pub fn c(&self, lambda: usize, mu: usize, nu: usize) -> Q {
        self.constants.get(&(lambda, mu, nu)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Q)> {
        self.constants.iter()
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// True when every trace C^rho_{mu rho} vanishes.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|mu| {
            (0..self.dim)
                .map(|r| self.c(r, mu, r))
                .fold(Q::zero(), |a, b| a + b)
                .is_zero()
        })
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.dim;
        for l in 0..n {
            for m in 0..n {
                for v in 0..n {
                    if self.c(l, m, v) != -self.c(l, v, m) {
                        return Err(Violation::Antisymmetry(l + 1, m + 1, v + 1));
                    }
                }
            }
        }
        for m in 0..n {
            for v in 0..n {
                for t in 0..n {
                    for s in 0..n {
                        let mut acc = Q::zero();
                        for r in 0..n {
                            acc += self.c(r, m, v) * self.c(s, r, t)
                                + self.c(r, v, t) * self.c(s, r, m)
                                + self.c(r, t, m) * self.c(s, r, v);
                        }
                        if !acc.is_zero() {
                            return Err(Violation::Jacobi(m + 1, v + 1, t + 1, s + 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Serializes with only the mu < nu entries and the antisymmetrize flag set.
    pub fn to_json(&self) -> String {
        let mut c = Vec::new();
        for (&(l, m, v), val) in &self.constants {
            if m < v {
                c.push((l + 1, m + 1, v + 1, fmt_q(val)));
            }
        }
        let file = AlgebraFile { name: self.name.clone(), dim: self.dim, antisymmetrize: true, c };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    name: String,
    dim: usize,
    antisymmetrize: bool,
    #[serde(rename = "C")]
    c: Vec<(usize, usize, usize, String)>,
}

/// Parses and validates the JSON algebra format.
pub fn load_str(text: &str) -> Result<LieAlgebraDef, LieError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| LieError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    if file.dim == 0 {
        return Err(LieError::Shape { field: "dim".into(), msg: "dimension must be at least 1".into() });
    }
    let mut entries = Vec::new();
    for (i, (l, m, v, s)) in file.c.iter().enumerate() {
        let field = format!("C[{i}]");
        for (name, idx) in [("lambda", l), ("mu", m), ("nu", v)] {
            if *idx < 1 || *idx > file.dim {
                return Err(LieError::Shape {
                    field: field.clone(),
                    msg: format!("{name} index {idx} outside 1..={}", file.dim),
                });
            }
        }
        let val = parse_q(s).map_err(|source| LieError::Field { field: format!("{field}[3]"), source })?;
        let (l, m, v) = (l - 1, m - 1, v - 1);
        if file.antisymmetrize {
            entries.push(((l, v, m), -val.clone()));
        }
        entries.push(((l, m, v), val));
    }
    let def = LieAlgebraDef::from_entries(&file.name, file.dim, entries);
    def.validate()?;
    Ok(def)
}

pub fn load_path(path: &Path) -> Result<LieAlgebraDef, LieError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LieError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    load_str(&text)
}

/// Built-in algebras: `abelian(n)`, `heisenberg3`, `su2`, `kappa(n)`.
pub fn catalog(name: &str) -> Result<LieAlgebraDef, LieError> {
    let unknown = || LieError::UnknownName(name.to_string());
    let param = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
    };
    let mut e: Vec<((usize, usize, usize), Q)> = Vec::new();
    let mut bracket = |l: usize, m: usize, v: usize| {
        e.push(((l, m, v), q(1)));
        e.push(((l, v, m), q(-1)));
    };
    let dim = if name == "heisenberg3" {
        bracket(2, 0, 1);
        3
    } else if name == "su2" {
        bracket(2, 0, 1);
        bracket(0, 1, 2);
        bracket(1, 2, 0);
        3
    } else if let Some(n) = param("abelian") {
        if n == 0 {
            return Err(unknown());
        }
        n
    } else if let Some(n) = param("kappa") {
        if n < 2 {
            return Err(unknown());
        }
        for i in 1..n {
            bracket(i, 0, i);
        }
        n
    } else {
        return Err(unknown());
    };
    Ok(LieAlgebraDef::from_entries(name, dim, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn catalog_entries() {
        let su2 = catalog("su2").unwrap();
        assert_eq!(su2.c(2, 0, 1), q(1));
        assert_eq!(su2.c(0, 1, 2), q(1));
        assert_eq!(su2.c(1, 2, 0), q(1));
        assert_eq!(su2.c(1, 0, 2), q(-1));
        let k = catalog("kappa(2)").unwrap();
        assert_eq!(k.dim, 2);
        assert_eq!(k.c(1, 0, 1), q(1));
        assert_eq!(k.c(1, 1, 0), q(-1));
        let a = catalog("abelian(3)").unwrap();
        assert!(a.is_abelian() && a.dim == 3);
        assert!(catalog("sl3").is_err());
        assert!(catalog("abelian(0)").is_err());
    }

    #[test]
    fn catalog_validates() {
        for name in ["abelian(2)", "heisenberg3", "su2", "kappa(2)", "kappa(4)"] {
            assert_eq!(catalog(name).unwrap().validate(), Ok(()), "{name}");
        }
    }

    #[test]
    fn unimodularity() {
        assert!(catalog("su2").unwrap().is_unimodular());
        assert!(catalog("heisenberg3").unwrap().is_unimodular());
        assert!(!catalog("kappa(2)").unwrap().is_unimodular());
    }

    #[test]
    fn antisymmetry_violation_reported() {
        let bad = LieAlgebraDef::from_entries("bad", 2, [((0, 0, 1), q(1))]);
        assert_eq!(bad.validate(), Err(Violation::Antisymmetry(1, 1, 2)));
    }

    #[test]
    fn jacobi_violation_reported() {
        // [x1,x2] = x1, [x1,x3] = x2: the cyclic sum is x2
        let bad = LieAlgebraDef::from_entries(
            "bad",
            3,
            [((0, 0, 1), q(1)), ((0, 1, 0), q(-1)), ((1, 0, 2), q(1)), ((1, 2, 0), q(-1))],
        );
        assert!(matches!(bad.validate(), Err(Violation::Jacobi(..))));
    }

    #[test]
    fn load_heisenberg_file() {
        let text = r#"{"name": "h", "dim": 3, "antisymmetrize": true, "C": [[3, 1, 2, "1"]]}"#;
        let h = load_str(text).unwrap();
        assert_eq!(h.c(2, 0, 1), q(1));
        assert_eq!(h.c(2, 1, 0), q(-1));
        let half = r#"{"name": "h", "dim": 3, "antisymmetrize": true, "C": [[3, 1, 2, "1/2"]]}"#;
        assert_eq!(load_str(half).unwrap().c(2, 0, 1), qr(1, 2));
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let text = r#"{"name": "h", "dim": 3, "antisymmetrize": true, "C": [[3, 1, 2, "1/0"]]}"#;
        let err = load_str(text).unwrap_err();
        assert!(err.to_string().contains("zero denominator"), "{err}");
        assert!(err.to_string().contains("C[0]"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = load_str("{\n \"name\": }").unwrap_err();
        assert!(matches!(err, LieError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn unflagged_files_must_be_antisymmetric() {
        let text = r#"{"name": "h", "dim": 3, "antisymmetrize": false, "C": [[3, 1, 2, "1"]]}"#;
        assert!(matches!(load_str(text), Err(LieError::Invalid(Violation::Antisymmetry(3, 1, 2)))));
    }

    #[test]
    fn round_trip() {
        for name in ["abelian(2)", "heisenberg3", "su2", "kappa(3)"] {
            let def = catalog(name).unwrap();
            assert_eq!(load_str(&def.to_json()).unwrap(), def);
        }
    }
}
