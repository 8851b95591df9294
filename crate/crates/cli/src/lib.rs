//! Batch front end for the learning, game and order-algebra library, with
//! stable JSON formats for every input and output.

pub mod commands;
pub mod error;
pub mod formats;

pub use commands::{run, Cli};
pub use error::CliError;
