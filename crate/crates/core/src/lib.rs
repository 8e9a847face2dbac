pub mod cli;
pub mod config;
pub mod dual;
pub mod error;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod nichols;
pub mod qls;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod twist;

pub use error::{Error, Result};
pub use scalar::Cyclotomic;
