//! Spectra of bipartite quantum states with uniform margins: partitions,
//! Littlewood–Richardson and Kronecker coefficients, strip-type derived
//! partitions, and explicit constructions of states with prescribed rank.

pub mod error;
pub mod exec;
pub mod kronecker;
pub mod lr;
pub mod partition;
pub mod quantum;
pub mod strip_type;
pub mod sweep;

pub use error::{Error, Result};
pub use exec::Execution;
pub use partition::{Partition, RationalSpectrum};
