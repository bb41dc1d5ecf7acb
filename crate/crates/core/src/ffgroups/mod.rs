//! Finite fields and matrix groups realized as permutation groups.

mod field;
mod matrix;

pub use field::{FiniteField, MAX_F, MAX_Q};
pub use matrix::{
    affine_group, generators, matrix_group, order_formula_gl, realize, realize_with_cap,
    theoretical_order, Matrix, MatrixGroupSpec, MatrixKind,
};
