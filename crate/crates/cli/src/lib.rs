//! Implementation of the `semiq` command line tool. The binary in
//! `main.rs` is a thin shell around [`run::execute`] so that tests can
//! drive every command in process and assert on the exit-code contract.

pub mod args;
pub mod output;
pub mod record;
pub mod run;
