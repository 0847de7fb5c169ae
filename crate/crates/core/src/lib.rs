pub mod blowup;
pub mod cli;
pub mod complex;
pub mod corpus;
pub mod cupi;
pub mod error;
pub mod filtered;
pub mod gf2;
pub mod pullback;
pub mod squares;
pub mod verify;

pub use error::{Error, Result};
