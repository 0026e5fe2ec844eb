//! Presentation files, builtin examples and reports.

pub mod builtins;
pub mod cli;
pub mod dsl;
pub mod report;
pub mod serialize;

pub use builtins::{builtin, builtin_source, BuiltinError, BUILTIN_NAMES};
pub use dsl::{parse, parse_expr, parse_tensor, parse_tensor3, parse_with, ParseError, ParseErrorKind};
pub use report::Report;
pub use serialize::serialize;
