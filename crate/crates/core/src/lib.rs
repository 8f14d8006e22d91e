//! Finite-model evaluation of fuzzifying topology under Łukasiewicz semantics.

pub mod carrier;
pub mod checker;
pub mod compact;
pub mod degree;
pub mod dsl;
pub mod error;
pub mod family;
pub mod io;
pub mod maps;
pub mod nets;
pub mod par;
pub mod preopen;
pub mod product;
pub mod quantify;
pub mod search;
pub mod separation;
pub mod space;

pub use carrier::{Carrier, SubsetId};
pub use degree::Degree;
pub use error::{Error, Result};
pub use family::{FuzzyFamily, FuzzyPointSet};
pub use par::Exec;
pub use preopen::PreopenStructure;
pub use space::FuzzySpace;
