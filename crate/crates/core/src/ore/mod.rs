//! Exact normal-form engine for iterated Ore extensions.

pub mod expr;
pub mod monomial;
pub mod poly;
pub mod scalar;
pub mod tower;
pub mod validate;

pub use expr::{normal_form, Expr};
pub use monomial::Monomial;
pub use poly::NcPoly;
pub use scalar::Scalar;
pub use tower::{Step, Tower, DEFAULT_REWRITE_BUDGET};
pub use validate::validate_tower;
