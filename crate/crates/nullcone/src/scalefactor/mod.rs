//! Scale factors `a(t)` of conformal time: a small expression language plus presets.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = primary [ "^" unary ] ;
//! primary = number | "t" | "pi" | func "(" expr ")" | "(" expr ")" ;
//! func    = "sin" | "cos" | "tan" | "sinh" | "cosh" | "tanh" | "exp" | "ln"
//!         | "sqrt" | "csc" | "csch" | "sech" | "cot" | "coth" ;
//! ```
//!
//! `^` binds tighter than unary minus and associates to the right.

mod expr;
mod parser;
mod presets;

pub use expr::{Expr, Func, ScaleExpr};
pub use parser::parse_scale_factor;
pub use presets::Preset;
