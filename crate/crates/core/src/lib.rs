//! Exact homomorphism counting into fixed small targets (proper colorings,
//! independent sets, Widom-Rowlinson configurations), exact verification of
//! the associated edge-ratio and Sidorenko-type inequalities, and a seeded
//! search for weighted targets violating edge monotonicity.

pub mod count;
pub mod error;
pub mod format;
pub mod graph;
pub mod num;
pub mod search;
pub mod spectral;
pub mod target;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Bipartition, Graph};
pub use num::{Count, Rat};
pub use target::TargetGraph;
