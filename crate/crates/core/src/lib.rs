pub mod analysis;
pub mod cli;
pub mod counting;
pub mod currents;
pub mod error;
pub mod killing;
pub mod linalg;
pub mod poly;
pub mod solutions;
pub mod spinor;

pub use error::{Error, Result};
