//! Exact isotypical decomposition of polarized symplectic lattices with a
//! finite group action, and degree bounds for the associated Abel-Prym maps.
//!
//! The lattice `Z^(2g)` with the standard alternating form models the first
//! homology of a Jacobian with its principal polarization. A group action by
//! symplectic integer matrices, together with a character table, determines
//! the isotypical components; for each one the crate computes the induced
//! polarization type, exponent, representation kernel, and quotient genus,
//! and feeds those numbers to the degree calculus in [`bounds`].

pub mod bounds;
pub mod catalog;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod matrix;
pub mod normal_form;
pub mod rep_theory;
pub mod report;
pub mod schema;
pub mod symplectic;

pub use error::{Error, ErrorKind, Result};
