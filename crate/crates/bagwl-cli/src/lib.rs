//! Library side of the `bagwl` binary.
//!
//! [`input`] resolves command-line graph arguments (inline generator specs
//! or edge-list files), [`report`] defines the versioned JSON report types,
//! and [`suite`] holds the verification checks shared by the `reproduce`
//! subcommand and the acceptance tests.

pub mod input;
pub mod report;
pub mod suite;
