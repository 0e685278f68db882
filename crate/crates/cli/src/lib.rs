//! File formats, JSON output and the `kahler` command-line front end.

mod app;
pub mod error;
pub mod files;
pub mod json;

pub use app::run;
pub use error::CliError;
