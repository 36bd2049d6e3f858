//! Edge-coloring toolkit for graphs whose core has maximum degree at most two.

pub mod coloring;
pub mod error;
pub mod fan;
pub mod graph;
pub mod harness;
pub mod oracle;

pub use error::{Error, Result};
