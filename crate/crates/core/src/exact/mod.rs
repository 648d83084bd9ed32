//! Exact arithmetic: ℚ/ℤ values, integer and rational matrices, normal
//! forms, and finitely generated abelian groups.

pub mod abelian;
pub mod lattice;
pub mod matrix;
pub mod qmodz;

pub use abelian::{ext_group, hom_group, AbHom, FinGenAb};
pub use lattice::{
    congruence_kernel, dual_lattice, hermite_normal_form, lattice_coordinates, lattice_quotient,
    left_kernel, smith_normal_form, Quotient, SnfResult,
};
pub use matrix::{dot, int_vec, solve_in_span, IntMatrix, RatMatrix};
pub use qmodz::QmodZ;
