pub mod algebra;
pub mod audit;
pub mod cli;
pub mod error;
pub mod fiedler;
pub mod hill;
pub mod simplex;
pub mod trig;

pub use error::{Error, Result};
