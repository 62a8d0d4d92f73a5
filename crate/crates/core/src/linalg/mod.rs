//! Exact integer linear algebra: Smith normal form, Diophantine systems and
//! cokernel invariants. Everything above this module reduces to these calls.

mod diophantine;
mod matrix;
mod smith;

pub use diophantine::{is_unimodular, kernel_basis, solve_diophantine, unimodular_inverse, DiophantineSolution};
pub use matrix::IntMatrix;
pub use smith::{cokernel_invariants, smith_decompose, SmithDecomposition};
