//! Exact computation in iterated Hopf Ore extensions: normal forms, Hopf
//! structure checks, characters and windings, and the classical subgroup.

#![allow(clippy::needless_range_loop)]

pub mod check;
pub mod classic;
pub mod cpoly;
pub mod error;
pub mod frontend;
pub mod hopf;
pub mod linalg;
pub mod ore;
pub mod sample;
pub mod tensor;
pub mod winding;

pub use check::{AxiomReport, Check, CheckReport, Residual, Status, ValidationReport};
pub use error::{Error, Result};
pub use hopf::HopfTower;
pub use ore::{normal_form, Expr, Monomial, NcPoly, Scalar, Step, Tower};
pub use tensor::{Tensor2, Tensor3};

/// Serializes a rational as its canonical `p/q` text.
pub(crate) fn serde_scalar<S: serde::Serializer>(value: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}
