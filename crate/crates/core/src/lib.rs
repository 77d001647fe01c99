pub mod commands;
pub mod data;
pub mod error;
pub mod io;
pub mod loss;
pub mod quadrature;
pub mod randist;
pub mod sampler;
pub mod simbench;
pub mod specfun;

pub use data::Dataset;
pub use error::{Error, Result};
