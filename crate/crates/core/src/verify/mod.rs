//! Exact checks of the counting inequalities on concrete graphs, and
//! exhaustive sweeps over small labeled graphs.
//!
//! Every check returns [`Report`]s whose verdict is decided by exact rational
//! arithmetic. Bounds with irrational constants are checked through an
//! all-rational intermediate form; the closed form rides along as advisory
//! floats.

mod checks;
mod report;
mod sweep;

pub use checks::*;
pub use report::{AdvisoryFloat, Claim, Relation, Report, Summary, Verdict};
pub use sweep::{in_scope, reports_for_graph, sweep, SweepConfig, SWEEP_MAX_N};
