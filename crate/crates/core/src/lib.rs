//! Exact arithmetic for restricted lattice walks and their generating functions.
//!
//! Everything here is computed over exact rationals and arbitrary-precision
//! integers; there is no floating point anywhere in the crate.
//!
//! The crate is organized in layers:
//!
//! - [`series`]: truncated formal power series with exact rational
//!   coefficients — the value type every generating function lives in.
//! - [`lattice`]: step sets, exhaustive path enumeration, and the
//!   dynamic-programming grids that count walks to each lattice point.
//! - [`families`]: the named sequence families (Catalan, large and small
//!   Schröder, Motzkin, and their n-colored level-step variants), each
//!   computable by two independent routes.
//! - [`riordan`]: Riordan pairs, their materialization as lower-triangular
//!   integer matrices, and the fundamental product.
//! - [`verify`]: a catalog of machine-checkable identities tying the layers
//!   together, with first-mismatch reporting on failure.

pub mod families;
pub mod lattice;
pub mod riordan;
pub mod series;
pub mod verify;

pub use families::{Family, FamilyId};
pub use lattice::{PathGrid, Step, StepSet};
pub use riordan::{RiordanPair, TriMatrix};
pub use series::{Series, Valuation};
pub use verify::{CheckParams, CheckResult, IdentityCheck};
