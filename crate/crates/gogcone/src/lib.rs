//! File formats, bundled instances, the acceptance suite and the command
//! line driver built on [`gogcone_core`].

pub mod acceptance;
pub mod bundled;
pub mod cli;
mod error;
pub mod format;
pub mod literal;
pub mod oracle;
pub mod sample;

pub use error::{Error, Result};
