//! A small formula language over a loaded space.

pub mod ast;
pub mod eval;
pub mod lexer;
pub mod parser;

pub use ast::{Formula, Sort};
pub use eval::{eval, Env, Evaluator, Value};
pub use parser::{parse, parse_with};
