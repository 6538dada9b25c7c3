pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod exponent;
pub mod formats;
pub mod spaces;
pub mod special;

pub use error::{Error, Result};
pub use exponent::Exponent;
