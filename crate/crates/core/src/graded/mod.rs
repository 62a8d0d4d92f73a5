//! Graded abelian groups and chain complexes.

mod chain;
mod comonad;
mod dual;
mod fusion;
mod object;
mod sigma;
mod tensor;

pub use chain::{ChainComplex, DifferentialFamily};
pub use comonad::{
    check_dg_coalgebra, check_dg_comonad, cofree_chain, complex_coalgebra_roundtrip, delta, differential_from_gamma,
    epsilon, eta, g_mor, g_object, gamma, mu, transpose, verify_cofree_adjunction, AxiomResult, Cofree,
    DgCoalgebraCheck,
};
pub use dual::{
    check_creation_corollary, check_graded_triangles, corollary_instance, create_dual_chain, dual_graded,
    graded_dual_obstruction, summarize_corollary, CorollaryInstance, CorollaryReport, CreatedDual, CreationChecks,
    GradedDualityWitness,
};
pub use fusion::{check_fusion_compat, fusion, fusion_forward, FusionCompat, FusionWitness};
pub use object::{compose_graded, GradedMorphism, GradedObject};
pub use sigma::{
    check_grading_coalgebra, hopf_map_sigma, sigma, sigma_mor, GradingCheck, GradingCoalgebra, SigmaHopfWitness,
};
pub use tensor::{graded_associator, koszul_family, tensor_chain, tensor_graded, tensor_graded_mor, GradedTensor};
