//! Finite tabulated monoidal categories with monoidal comonads.

mod category;
mod comonad;
mod em;
pub mod fixtures;
mod instance;
mod kan;

pub use category::{check_monoidal, CategoryJson, FiniteMonoidalCategory, Morphism};
pub use comonad::{check_comonad, ComonadData, ComonadJson};
pub use em::{
    build_em, check_em, check_em_adjunction, check_hopf, coalgebras, fusion_map, is_coalgebra, is_coalgebra_morphism,
    tensor_coalgebras, Coalgebra, EmCategory, EmSummary,
};
pub use instance::InstanceJson;
pub use kan::{
    find_lan, find_ran, has_right_adjoint, is_lan, is_ran, residuals, verify_create_kan, AdjointData, CreateKanReport,
    Factorization, KanExtensionResult, PairReport,
};
