//! The weighted boolean query IR: construction, the inner-dialect parser and
//! printer, weight scaling and canonical simplification.

mod expr;
mod parse;
mod print;
mod simplify;

pub use expr::{QueryExpr, Term};
pub use parse::{parse, ParseError};
pub use print::{format_weight, print};
pub use simplify::{scale, simplify};
