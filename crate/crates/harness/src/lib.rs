//! Ring description files, the bundled example corpus, the check registry,
//! counterexample search and report emission for `gradnil`.

pub mod checks;
pub mod corpus;
pub mod instance;
pub mod report;
pub mod search;
pub mod spec;

pub use checks::{run_check, run_checks, REGISTRY};
pub use instance::{Instance, Provenance};
pub use report::{emit, exit_code, CheckReport, Format, Status};
pub use search::{search, SearchReport, Target};
pub use spec::{build, export, load, parse, SpecError, SpecFile};
