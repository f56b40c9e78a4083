//! Outer bounds on the capacity region of multi-source network coding.
//!
//! The crate is organised around functional dependence graphs built from a
//! communication network. Enumerating their maximal irreducible sets yields
//! easily computable outer bounds which are compared here against the
//! classical cut-set, network sharing and progressive d-separation bounds,
//! and against an exact-rational linear program over the polymatroid cone.
//!
//! Modules:
//!
//! * [`model`] — the network data model (nodes, capacitated edges, sessions)
//!   plus parsing, validation and the three-layer view.
//! * [`fdg`] — functional dependence graphs, determination (closure)
//!   procedures and d-/fd-separation.
//! * [`maxsets`] — recursive enumeration of maximal irreducible sets with a
//!   brute-force oracle.
//! * [`bounds`] — rate regions derived from maximal irreducible sets, cuts,
//!   permutation edge-sets and progressive d-separation, plus comparison.
//! * [`polylp`] — elemental/Ingleton inequality generators and an exact
//!   rational simplex solver for the polymatroid LP bounds.
//! * [`rankoracle`] — linear network codes over GF(q) whose subset ranks act
//!   as an independent oracle for every determination claim.
//! * [`cli`] — the scriptable command-line front end.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share across threads.

pub mod bitset;
pub mod bounds;
pub mod cli;
pub mod fdg;
pub mod maxsets;
pub mod model;
pub mod polylp;
pub mod rankoracle;
pub mod rational;
#[cfg(test)]
pub mod testutil;

pub use bitset::NodeSet;
pub use model::Network;
