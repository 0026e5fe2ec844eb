use std::collections::BTreeMap;

use num_traits::Zero;

use super::dsl::{parse_with, ParseError};
use crate::hopf::HopfTower;
use crate::ore::scalar::parse_scalar;
use crate::ore::Scalar;

pub const HEISENBERG: &str = r#"# Coordinate ring of the 3-dimensional Heisenberg group.
algebra "heisenberg"
gen y
gen z
gen x {
  w: y ox z
}
"#;

pub const SOLV2_DER: &str = r#"# U of the 2-dimensional solvable Lie algebra [y, x] = x, as k[x][y; delta].
algebra "solv2-der"
gen x
gen y {
  delta: x -> x
}
"#;

pub const SOLV2_AUTO: &str = r#"# The same algebra as k[y][x; sigma] with sigma(y) = y - 1.
algebra "solv2-auto"
gen y
gen x {
  sigma: y -> y - 1
  sigma_inv: y -> y + 1
}
"#;

pub const USL2: &str = r#"# U(sl2) = k[h][e; sigma_2][f; sigma_3, delta_3].
algebra "usl2"
gen h
gen e {
  sigma: h -> h - 2
  sigma_inv: h -> h + 2
}
gen f {
  sigma: h -> h + 2; e -> e
  sigma_inv: h -> h - 2; e -> e
  delta: e -> -h
}
"#;

pub const A_FAMILY: &str = r#"# [X, Y] = 0, [Z, X] = l1*X - alpha*Y, [Z, Y] = l2*Y.
algebra "A"
param l1
param l2
param alpha
gen Y
gen X
gen Z {
  delta: X -> l1*X - alpha*Y; Y -> l2*Y
  w: X ox Y - Y ox X
}
"#;

pub const B_FAMILY: &str = r#"# [X, Y] = Y, Z X = (X - 1) Z + lambda*Y, [Z, Y] = 0.
algebra "B"
param lambda
gen Y
gen X {
  delta: Y -> Y
}
gen Z {
  sigma: Y -> Y; X -> X - 1
  sigma_inv: Y -> Y; X -> X + 1
  delta: X -> lambda*Y
  w: X ox Y - Y ox X
}
"#;

/// The named examples shipped with the tool.
pub const BUILTIN_NAMES: [&str; 11] = [
    "heisenberg",
    "solv2-der",
    "solv2-auto",
    "usl2",
    "A(0,0,0)",
    "A(0,0,1)",
    "A(1,1,1)",
    "A(1,1,0)",
    "B(0)",
    "B(1)",
    "B(1/2)",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuiltinError {
    #[error("unknown builtin `{0}`")]
    Unknown(String),
    #[error("illegal parameters for `{name}`: {reason}")]
    IllegalParameters { name: String, reason: String },
    #[error("builtin source failed to parse: {0}")]
    Parse(#[from] ParseError),
}

fn arguments(name: &str, head: &str, count: usize) -> Option<Result<Vec<Scalar>, BuiltinError>> {
    let inner = name.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    let illegal = |reason: String| BuiltinError::IllegalParameters {
        name: name.to_string(),
        reason,
    };
    if parts.len() != count {
        return Some(Err(illegal(format!(
            "expected {count} arguments, found {}",
            parts.len()
        ))));
    }
    Some(
        parts
            .iter()
            .map(|p| parse_scalar(p).ok_or_else(|| illegal(format!("`{p}` is not a rational"))))
            .collect(),
    )
}

/// Source text and parameter bindings for a builtin name.
pub fn builtin_source(name: &str) -> Result<(&'static str, BTreeMap<String, Scalar>), BuiltinError> {
    let bind = |keys: &[&str], values: Vec<Scalar>| keys.iter().map(|k| k.to_string()).zip(values).collect();
    match name {
        "heisenberg" => return Ok((HEISENBERG, BTreeMap::new())),
        "solv2-der" => return Ok((SOLV2_DER, BTreeMap::new())),
        "solv2-auto" => return Ok((SOLV2_AUTO, BTreeMap::new())),
        "usl2" => return Ok((USL2, BTreeMap::new())),
        _ => {}
    }
    if let Some(args) = arguments(name, "A", 3) {
        let args = args?;
        if !args[2].is_zero() && args[0] != args[1] {
            return Err(BuiltinError::IllegalParameters {
                name: name.to_string(),
                reason: "alpha must be 0 unless l1 = l2".into(),
            });
        }
        return Ok((A_FAMILY, bind(&["l1", "l2", "alpha"], args)));
    }
    if let Some(args) = arguments(name, "B", 1) {
        return Ok((B_FAMILY, bind(&["lambda"], args?)));
    }
    Err(BuiltinError::Unknown(name.to_string()))
}

/// Canonical display name, such as `A(1,1,0)` or `B(1/2)`.
fn display_name(name: &str, bindings: &BTreeMap<String, Scalar>) -> String {
    let get = |k: &str| bindings[k].to_string();
    if bindings.contains_key("alpha") {
        format!("A({},{},{})", get("l1"), get("l2"), get("alpha"))
    } else if bindings.contains_key("lambda") {
        format!("B({})", get("lambda"))
    } else {
        name.to_string()
    }
}

pub fn builtin(name: &str) -> Result<HopfTower, BuiltinError> {
    builtin_with_budget(name, None)
}

pub fn builtin_with_budget(name: &str, budget: Option<u64>) -> Result<HopfTower, BuiltinError> {
    let (source, bindings) = builtin_source(name)?;
    let ht = parse_with(source, &bindings, budget)?;
    let display = display_name(name, &bindings);
    Ok(ht.renamed(display))
}
