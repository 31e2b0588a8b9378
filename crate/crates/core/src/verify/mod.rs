//! Identity verification: side construction, comparison and reporting.

pub mod compare;
pub mod expr;
pub mod recursion;
pub mod registry;
pub mod report;
pub mod suite;

pub use compare::{build_cleared, clear_sides, clear_with, compare_to, Cleared};
pub use registry::{find, parse_params, registry, verify_identity, verify_identity_unchecked, IdentityEntry, Params};
pub use report::{MismatchRecord, ResultRecord, Status, SuiteReport, VerificationReport};
pub use suite::{run_suite, suite_report};
