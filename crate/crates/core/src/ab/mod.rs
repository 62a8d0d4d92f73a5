//! The symmetric monoidal category of finitely generated abelian groups,
//! in a skeletal model: objects are their invariant factors.

mod construct;
mod dual;
mod hom;
mod morphism;
mod object;

pub use construct::{
    associator, associator_inv, direct_sum, left_unitor, normalize_orders, normalize_presentation, pentagon_holds,
    right_unitor, sum_mor, symmetry, tensor, tensor_mor, BasisChange, DirectSum, Presentation, TensorProduct,
};
pub use dual::{check_triangle_identities, dual_obstruction, refute_dual, try_dual, DualAudit, DualityWitness};
pub use hom::{hom_group, HomGroup};
pub use morphism::{compose, AbMorphism};
pub use object::AbObject;
