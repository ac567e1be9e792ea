//! Exact computations with recognizable noncommutative power series and the
//! tensor categories of decorated one-dimensional cobordisms they evaluate.

pub mod cli;
pub mod cobordism;
pub mod error;
pub mod exactlinalg;
pub mod fixtures;
pub mod gligible;
pub mod recognition;
pub mod series;
pub mod skein;
pub mod syntactic;
pub mod words;

pub use error::{Error, Result};
