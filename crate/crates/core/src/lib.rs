//! Differential forms, Cartier operators and Brauer classes in characteristic p.

pub mod bm;
pub mod brauer_local;
pub mod cartier;
pub mod cli;
pub mod error;
pub mod ff;
pub mod global;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod series;
pub mod witt;

pub use error::{Error, Result};
