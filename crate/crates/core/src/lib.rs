//! GASP polynomial codes for secure distributed matrix multiplication.
//!
//! - [`degree_table`]: outer sums of exponent vectors and their term sets.
//! - [`schemes`]: the GASP constructions, closed-form server counts, rates
//!   and the fixed-budget optimizer.
//! - [`gf`]: prime-field arithmetic and exact linear algebra.
//! - [`codec`]: evaluation plans, encoding, server evaluation, decoding.
//! - [`harness`]: end-to-end simulation and privacy audits.
//! - [`cli`]: the `gasp` command-line front end.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example <name>`.

pub mod cli;
pub mod codec;
pub mod degree_table;
pub mod error;
pub mod gf;
pub mod harness;
pub mod schemes;

pub use error::{Error, Result};
