//! Exact computation of metaplectic Langlands dual data.
//!
//! Starting from a based root datum and a ℚ/ℤ-valued quadratic form on its
//! coweight lattice, this crate builds the modified root datum on the
//! radical of the form, the dual group together with its sign character,
//! the classification census over a complete curve, and the parity data
//! attached to Levi subgroups. All arithmetic is exact.

pub mod census;
pub mod error;
pub mod exact;

pub mod metaplectic;
pub mod quad_form;
pub mod root_datum;

pub use error::{Error, ErrorClass, Result};
