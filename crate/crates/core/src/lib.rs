pub mod algebra;
pub mod error;
pub mod fox;
pub mod lie;
pub mod loci;
pub mod obstruction;
pub mod presentation;

pub use error::{Error, ParseError, Result};
