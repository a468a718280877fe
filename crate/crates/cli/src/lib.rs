//! Scenario language for corrclass: parse `.ccs` files, resolve them into
//! core objects, run their directives and report the results.

pub mod ast;
pub mod error;
pub mod parser;
pub mod printer;
pub mod random;
pub mod report;
pub mod resolve;
pub mod run;

pub use error::DslError;
pub use parser::parse_scenario;
pub use random::{random_scenario, Counts};
pub use report::Report;
pub use resolve::{resolve, Program};
pub use run::run;

/// Parse, resolve and run `text` under `seed`, adding the built-in suites
/// named in `extra_suites`.
pub fn check_text(text: &str, seed: u64, extra_suites: &[String]) -> Result<Report, DslError> {
    let program = resolve(&parse_scenario(text)?)?;
    Ok(run(&program, seed, extra_suites))
}
