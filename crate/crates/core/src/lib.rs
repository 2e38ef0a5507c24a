pub mod algebra;
pub mod bounds;
pub mod cli;
pub mod construct;
pub mod error;

pub use error::{Error, Result};
pub mod diagonal;
pub mod rank;
pub mod taylor;
