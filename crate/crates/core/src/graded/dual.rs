//! Duals of graded groups and chain complexes.
//!
//! A graded group has a dual iff every component is free; `(a*)_n = (a_{−n})*`.
//! For a complex `x`, the dual is created from the graded one: with
//! `κ: ℤ → k ⊗ x` and `e: x ⊗ k → ℤ`, the coaction on `k` is
//! `γ_k = (1 ⊗ e) ∘ α ∘ (φ ⊗ 1)` where `φ = v⁻¹ ∘ Gκ ∘ γ_ℤ`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::chain::{is_chain_map_family, ChainComplex, DifferentialFamily};
use super::comonad::{cg, differential_from_gamma, epsilon, g_mor, gamma, Cofree};
use super::fusion::fusion;
use super::object::{GradedMorphism, GradedObject};
use super::tensor::{graded_associator, koszul_family, tensor_chain, tensor_graded_mor, GradedTensor};
use crate::ab::{dual_obstruction, try_dual, AbMorphism, AbObject};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{solve_diophantine, IntMatrix};

/// `ev: a* ⊗ a → ℤ`, `coev: ℤ → a ⊗ a*`, both concentrated in degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDualityWitness {
    pub object: GradedObject,
    pub dual_object: GradedObject,
    pub ev: GradedMorphism,
    pub coev: GradedMorphism,
}

/// First torsion component of `a`, as a reason for the absence of a dual.
pub fn graded_dual_obstruction(a: &GradedObject) -> Option<String> {
    a.components()
        .iter()
        .find_map(|(n, c)| dual_obstruction(c).map(|why| format!("{why} in degree {n}")))
}

fn dual_components(a: &GradedObject) -> Option<GradedObject> {
    a.is_free()
        .then(|| GradedObject::from_pairs(a.components().iter().map(|(&n, c)| (-n, c.clone()))))
}

/// `ℤ → l ⊗ r` in degree 0 with block `block(i)` into the summand of left degree `i`.
fn from_unit(l: &GradedObject, r: &GradedObject, block: impl Fn(i64) -> AbMorphism) -> GradedMorphism {
    let t = GradedTensor::cached(l, r);
    let unit = GradedObject::unit();
    let mut maps = BTreeMap::new();
    if let Some(deg) = t.degree(0) {
        let parts: Vec<AbMorphism> = deg.lefts.iter().map(|&i| block(i)).collect();
        let refs: Vec<(usize, &AbMorphism)> = parts.iter().enumerate().collect();
        maps.insert(0, deg.sum.assemble_into(&AbObject::unit(), &refs).expect("typed"));
    }
    GradedMorphism::from_parts(unit, t.object().clone(), maps)
}

/// `l ⊗ r → ℤ` in degree 0 with block `block(i)` out of the summand of left degree `i`.
fn to_unit(l: &GradedObject, r: &GradedObject, block: impl Fn(i64) -> AbMorphism) -> GradedMorphism {
    let t = GradedTensor::cached(l, r);
    let unit = GradedObject::unit();
    let mut maps = BTreeMap::new();
    if let Some(deg) = t.degree(0) {
        let parts: Vec<AbMorphism> = deg.lefts.iter().map(|&i| block(i)).collect();
        let refs: Vec<(usize, &AbMorphism)> = parts.iter().enumerate().collect();
        maps.insert(0, deg.sum.assemble_from(&AbObject::unit(), &refs).expect("typed"));
    }
    GradedMorphism::from_parts(t.object().clone(), unit, maps)
}

// For a free group the dual is the group itself with the standard pairing, so
// the same matrices serve for `a* ⊗ a` and `a ⊗ a*`.
fn std_ev(a: &AbObject) -> AbMorphism {
    try_dual(a).expect("free component").ev
}

fn std_coev(a: &AbObject) -> AbMorphism {
    try_dual(a).expect("free component").coev
}

/// Dual of a graded group, or `None` if some component has torsion.
pub fn dual_graded(a: &GradedObject) -> Option<GradedDualityWitness> {
    let d = dual_components(a)?;
    let ev = to_unit(&d, a, |i| std_ev(a.get(-i)));
    let coev = from_unit(a, &d, |i| std_coev(a.get(i)));
    Some(GradedDualityWitness {
        object: a.clone(),
        dual_object: d,
        ev,
        coev,
    })
}

/// Both snake composites of a graded witness are identities.
pub fn check_graded_triangles(w: &GradedDualityWitness) -> Result<bool> {
    let (a, d) = (&w.object, &w.dual_object);
    let unit = GradedObject::unit();
    let typed = w.ev.source() == &GradedTensor::cached(d, a).object().clone()
        && w.ev.target() == &unit
        && w.coev.source() == &unit
        && w.coev.target() == GradedTensor::cached(a, d).object();
    if !typed {
        return Err(Error::Shape(
            "graded witness is not typed as ev: a*⊗a → ℤ, coev: ℤ → a⊗a*".into(),
        ));
    }
    let (ia, id) = (GradedMorphism::identity(a), GradedMorphism::identity(d));
    let first = cg(
        &tensor_graded_mor(&ia, &w.ev),
        &cg(&graded_associator(a, d, a), &tensor_graded_mor(&w.coev, &ia)),
    );
    let alpha_inv = graded_associator(d, a, d)
        .inverse()
        .ok_or_else(|| Error::Internal("associator not invertible".into()))?;
    let second = cg(
        &tensor_graded_mor(&w.ev, &id),
        &cg(&alpha_inv, &tensor_graded_mor(&id, &w.coev)),
    );
    Ok(first.is_identity() && second.is_identity())
}

/// The individual certificates of a created dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CreationChecks {
    /// `ε ∘ γ_k = 1`.
    pub counit: bool,
    /// `d_k² = 0`.
    pub square_zero: bool,
    /// `κ` and `e` commute with differentials.
    pub structure_maps_chain: bool,
    /// Both snake composites are the identity.
    pub snakes: bool,
    /// `U(k) = dual_graded(Ux)`.
    pub matches_graded: bool,
    /// No other differential on `k` makes `κ` a chain map.
    pub unique: bool,
}

impl CreationChecks {
    pub fn all_pass(&self) -> bool {
        self.counit
            && self.square_zero
            && self.structure_maps_chain
            && self.snakes
            && self.matches_graded
            && self.unique
    }
}

/// The created dual `k` of a complex `x` with `κ: ℤ → k ⊗ x` and `e: x ⊗ k → ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CreatedDual {
    pub dual_complex: ChainComplex,
    pub kappa: GradedMorphism,
    pub counit: GradedMorphism,
    pub created_gamma: GradedMorphism,
    pub checks: CreationChecks,
}

/// `d ∘ κ` on `k ⊗ x`, where `k` carries the trial family `dk`.
fn kappa_defect(dk: &DifferentialFamily, x: &DifferentialFamily, kappa: &GradedMorphism) -> IntMatrix {
    let t = koszul_family(dk, x);
    let d0 = t.d(0);
    let k0 = kappa.component(0);
    crate::ab::compose(&d0, &k0).expect("typed").into_matrix()
}

/// Slots of an unknown degree −1 map on `k`: `(n, rows, cols)` for `k_n → k_{n−1}`.
fn differential_slots(k: &GradedObject) -> Vec<(i64, usize, usize)> {
    k.support()
        .filter(|&n| !k.get(n - 1).is_zero())
        .map(|n| (n, k.get(n - 1).gens(), k.get(n).gens()))
        .collect()
}

fn family_from_vector(k: &GradedObject, slots: &[(i64, usize, usize)], v: &[Int]) -> DifferentialFamily {
    let mut at = 0;
    let mut mats = BTreeMap::new();
    for &(n, r, c) in slots {
        let m = IntMatrix::new(r, c, v[at..at + r * c].to_vec()).expect("sized");
        at += r * c;
        mats.insert(n, m);
    }
    DifferentialFamily::from_matrices(k.clone(), mats).expect("free components")
}

/// Every differential on `k` making `κ` a chain map equals `dk`. The defect
/// `d ∘ κ` is affine in the unknown entries; the solution set must be `{dk}`.
fn uniqueness(k: &GradedObject, x: &DifferentialFamily, kappa: &GradedMorphism, dk: &DifferentialFamily) -> bool {
    let slots = differential_slots(k);
    let nvars: usize = slots.iter().map(|&(_, r, c)| r * c).sum();
    let zero = vec![Int::ZERO; nvars];
    let c0 = kappa_defect(&family_from_vector(k, &slots, &zero), x, kappa);
    let neqs = c0.rows();
    let mut a = IntMatrix::zeros(neqs, nvars);
    for t in 0..nvars {
        let mut e = zero.clone();
        e[t] = Int::ONE;
        let col = kappa_defect(&family_from_vector(k, &slots, &e), x, kappa)
            .sub(&c0)
            .expect("same shape");
        for r in 0..neqs {
            a.set(r, t, col.get(r, 0).clone());
        }
    }
    let b = c0.neg();
    let Ok(Some(sol)) = solve_diophantine(&a, &b) else {
        return false;
    };
    if sol.kernel.cols() > 0 {
        return false;
    }
    let v: Vec<Int> = (0..nvars).map(|i| sol.particular.get(i, 0).clone()).collect();
    family_from_vector(k, &slots, &v) == *dk
}

/// Creates the dual of `x` from the dual of its underlying graded group.
/// `None` exactly when `Ux` has no dual.
pub fn create_dual_chain(x: &ChainComplex) -> Result<Option<CreatedDual>> {
    let ux = x.underlying();
    let Some(k) = dual_components(ux) else {
        return Ok(None);
    };
    let unit = GradedObject::unit();
    let kappa = from_unit(&k, ux, |i| std_coev(k.get(i)));
    let counit = to_unit(ux, &k, |i| std_ev(ux.get(i)));

    let gk = Cofree::cached(&k);
    let w = fusion(&k, x)?;
    let gamma_unit = gamma(ChainComplex::unit().family());
    let phi = cg(&w.inverse, &cg(&g_mor(&kappa), &gamma_unit));
    let alpha = graded_associator(gk.object(), ux, &k);
    let id_k = GradedMorphism::identity(&k);
    let created_gamma = cg(
        &tensor_graded_mor(&GradedMorphism::identity(gk.object()), &counit),
        &cg(&alpha, &tensor_graded_mor(&phi, &id_k)),
    );
    let counit_ok = cg(&epsilon(&k), &created_gamma).is_identity();
    let family = differential_from_gamma(&created_gamma)?;
    let square_zero = family.square_defects().is_empty();
    let unique = uniqueness(&k, x.family(), &kappa, &family);
    let dual_complex = if square_zero {
        ChainComplex::try_from(family.clone())?
    } else {
        return Err(Error::Internal("created differential does not square to zero".into()));
    };

    let kx = tensor_chain(&dual_complex, x)?;
    let xk = tensor_chain(x, &dual_complex)?;
    let structure_maps_chain = is_chain_map_family(ChainComplex::unit().family(), kx.family(), &kappa)
        && is_chain_map_family(xk.family(), ChainComplex::unit().family(), &counit);

    let id_x = GradedMorphism::identity(ux);
    // x → x⊗(k⊗x) → (x⊗k)⊗x → x ;  k → (k⊗x)⊗k → k⊗(x⊗k) → k
    let alpha_inv = graded_associator(ux, &k, ux)
        .inverse()
        .ok_or_else(|| Error::Internal("associator not invertible".into()))?;
    let snake_x = cg(
        &tensor_graded_mor(&counit, &id_x),
        &cg(&alpha_inv, &tensor_graded_mor(&id_x, &kappa)),
    );
    let snake_k = cg(
        &tensor_graded_mor(&id_k, &counit),
        &cg(&graded_associator(&k, ux, &k), &tensor_graded_mor(&kappa, &id_k)),
    );
    let snakes = snake_x.is_identity()
        && snake_k.is_identity()
        && x.is_chain_map(x, &snake_x)
        && dual_complex.is_chain_map(&dual_complex, &snake_k);
    let matches_graded = dual_graded(ux).is_some_and(|g| &g.dual_object == dual_complex.underlying());
    debug_assert_eq!(kappa.source(), &unit);

    Ok(Some(CreatedDual {
        dual_complex,
        kappa,
        counit,
        created_gamma,
        checks: CreationChecks {
            counit: counit_ok,
            square_zero,
            structure_maps_chain,
            snakes,
            matches_graded,
            unique,
        },
    }))
}

/// Per-complex outcome of the creation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryInstance {
    pub chain_dual: bool,
    pub graded_dual: bool,
    /// `U(dual x) = dual(Ux)`; `None` unless both exist.
    pub agree: Option<bool>,
    /// All certificates of the created dual; `None` unless it exists.
    pub certified: Option<bool>,
}

impl CorollaryInstance {
    pub fn holds(&self) -> bool {
        self.chain_dual == self.graded_dual && self.agree.unwrap_or(true) && self.certified.unwrap_or(true)
    }
}

pub fn corollary_instance(x: &ChainComplex) -> Result<CorollaryInstance> {
    let graded = dual_graded(x.underlying());
    let created = create_dual_chain(x)?;
    let agree = match (&created, &graded) {
        (Some(c), Some(g)) => Some(c.dual_complex.underlying() == &g.dual_object && check_graded_triangles(g)?),
        _ => None,
    };
    Ok(CorollaryInstance {
        chain_dual: created.is_some(),
        graded_dual: graded.is_some(),
        agree,
        certified: created.as_ref().map(|c| c.checks.all_pass()),
    })
}

/// Aggregate of [`check_creation_corollary`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub total: usize,
    pub both: usize,
    pub neither: usize,
    /// Indices of complexes where the equivalence or a certificate failed.
    pub failures: Vec<usize>,
}

impl CorollaryReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_creation_corollary(corpus: &[ChainComplex]) -> Result<CorollaryReport> {
    let results = crate::sweep::try_map(crate::sweep::ExecMode::default(), corpus, corollary_instance)?;
    Ok(summarize_corollary(&results))
}

pub fn summarize_corollary(results: &[CorollaryInstance]) -> CorollaryReport {
    let mut r = CorollaryReport {
        total: results.len(),
        ..Default::default()
    };
    for (i, c) in results.iter().enumerate() {
        match (c.chain_dual, c.graded_dual) {
            (true, true) => r.both += 1,
            (false, false) => r.neither += 1,
            _ => {}
        }
        if !c.holds() {
            r.failures.push(i);
        }
    }
    r
}
