pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod expr;
pub mod presentation;
pub mod reduction;
pub mod rng;
pub mod schema;
pub mod universal;
pub mod words;

pub use error::{Error, Result};
