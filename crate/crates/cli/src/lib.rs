//! Library surface of the command-line front end, exposed so integration
//! tests can exercise config parsing and artifact writing directly.

pub mod config;
pub mod output;
