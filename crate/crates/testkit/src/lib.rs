//! Test support: exact rational oracles and small model generators.
//!
//! Nothing here is used by the library itself. The oracles recompute
//! geometric facts with big rationals, by methods independent of the
//! filtered predicates they check.

pub mod models;
pub mod rational;
pub mod suite;
