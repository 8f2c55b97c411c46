//! File formats, experiment harness and command-line front end for
//! [`bembed_core`].

pub mod bench;
pub mod cli;
mod error;
pub mod io;
pub mod pipeline;
pub mod report;
pub mod svg;

pub use error::{Error, Result};
