//! Exact chain-level calculator for involutive local equivalence classes
//! over F2[U].
//!
//! The crate is organized bottom-up:
//!
//! * [`grading`], [`gf2`], [`monomial`]: exact rational gradings, dense F2
//!   linear algebra, and sparse monomial matrices.
//! * [`complex`]: free finitely generated complexes over F2[U], their exact
//!   homology, duals, tensor products, and mapping cones.
//! * [`iota`]: complexes with a homotopy involution and the standard model
//!   families used as comparison targets.
//! * [`local`]: existence decisions and certificates for local maps, plus a
//!   brute-force cross-check enumerator.
//! * [`knot`]: combinatorial knot-level input data (formal knot expressions,
//!   Alexander polynomials, staircase models, lattice complexes).
//! * [`surgery`]: surgery formula packaging, comparison witnesses, and the
//!   concordance-style reports built from them.
//! * [`cobordism`], [`tangle`]: the definite-form search and the rational
//!   tangle bookkeeping used to declare satellite patterns.

pub mod cobordism;
pub mod complex;
pub mod gf2;
pub mod grading;
pub mod iota;
pub mod knot;
pub mod local;
pub mod monomial;
pub mod surgery;
pub mod tangle;
