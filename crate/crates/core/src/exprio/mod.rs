//! Expression parsing and printing, germ conversion, serialization and
//! session settings.

pub mod ast;
pub mod config;
pub mod convert;
pub mod format;
pub mod parse;

pub use ast::Expr;
pub use config::SessionConfig;
pub use convert::{linear_factors, to_germ, to_polynomial};
pub use parse::{max_variable_index, parse_expr};
