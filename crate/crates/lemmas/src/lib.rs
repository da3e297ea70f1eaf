//! Executable checks of the k-orbit lemmas, run over catalog groups.
//!
//! Every check enumerates instances (a group plus JSON parameters),
//! evaluates a hypothesis and then a conclusion, and emits one row per
//! instance. Rows carry enough data for [`verify_witness`] to rebuild the
//! verdict from scratch.

mod checks;
mod config;
mod context;
mod descriptor;
mod error;
mod row;
mod suite;
mod verify;

pub use config::{Convention, SuiteConfig};
pub use context::GroupContext;
pub use descriptor::{CheckDescriptor, CheckId, DESCRIPTORS};
pub use error::LabError;
pub use row::{instance_id, CheckRow, Status, StatusCounts, SuiteSummary};
pub use suite::{run_check, run_suite, SuiteReport};
pub use verify::verify_witness;
