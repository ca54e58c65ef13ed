//! Text front end: expressions, descriptors, reports and the command line.

pub mod cli;
pub mod descriptor;
pub mod expr;
pub mod lower;
pub mod report;

pub use descriptor::{parse_matrix, AlgebraSpec};
pub use expr::{parse, Expr, ParseError};
pub use lower::{parse_laurent, parse_polynomial, parse_quotient, parse_word, LowerError};
pub use report::Report;
