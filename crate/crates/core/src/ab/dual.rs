use serde::{Deserialize, Serialize};

use super::construct::{associator, associator_inv, tensor, tensor_mor};
use super::hom::hom_group;
use super::morphism::{compose, AbMorphism};
use super::object::AbObject;
use crate::error::{shape, Error, Result};
use crate::int::Int;
use crate::linalg::{solve_diophantine, IntMatrix};

/// `ev: dual ⊗ object → ℤ`, `coev: ℤ → object ⊗ dual`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityWitness {
    pub object: AbObject,
    pub dual_object: AbObject,
    pub ev: AbMorphism,
    pub coev: AbMorphism,
}

/// Dual of a free group with the standard pairing; `None` as soon as there is torsion.
pub fn try_dual(a: &AbObject) -> Option<DualityWitness> {
    if !a.is_free() {
        return None;
    }
    let r = a.free_rank();
    let unit = AbObject::unit();
    let pairs = AbObject::free(r * r);
    let mut ev = IntMatrix::zeros(1, r * r);
    let mut coev = IntMatrix::zeros(r * r, 1);
    for i in 0..r {
        ev.set(0, i * r + i, Int::ONE);
        coev.set(i * r + i, 0, Int::ONE);
    }
    Some(DualityWitness {
        object: a.clone(),
        dual_object: a.clone(),
        ev: AbMorphism::from_raw(pairs.clone(), unit.clone(), ev),
        coev: AbMorphism::from_raw(unit, pairs, coev),
    })
}

/// Human-readable reason why `a` has no dual, if it has none.
pub fn dual_obstruction(a: &AbObject) -> Option<String> {
    a.torsion().first().map(|t| format!("component ℤ/{t} not projective"))
}

fn snake_composites(w: &DualityWitness) -> Result<(AbMorphism, AbMorphism)> {
    let (a, d) = (&w.object, &w.dual_object);
    let unit = AbObject::unit();
    if w.ev.source() != &tensor(d, a) || w.ev.target() != &unit {
        return Err(shape(format!("ev must be {d} ⊗ {a} -> ℤ, got {:?}", w.ev)));
    }
    if w.coev.source() != &unit || w.coev.target() != &tensor(a, d) {
        return Err(shape(format!("coev must be ℤ -> {a} ⊗ {d}, got {:?}", w.coev)));
    }
    let id_a = AbMorphism::identity(a);
    let id_d = AbMorphism::identity(d);
    // a = ℤ⊗a -> (a⊗d)⊗a -> a⊗(d⊗a) -> a⊗ℤ = a
    let first = compose(
        &tensor_mor(&id_a, &w.ev),
        &compose(&associator(a, d, a), &tensor_mor(&w.coev, &id_a))?,
    )?;
    // d = d⊗ℤ -> d⊗(a⊗d) -> (d⊗a)⊗d -> ℤ⊗d = d
    let second = compose(
        &tensor_mor(&w.ev, &id_d),
        &compose(&associator_inv(d, a, d), &tensor_mor(&id_d, &w.coev))?,
    )?;
    Ok((first, second))
}

/// Both snake composites are identities. Errors only when the maps are not typed as a witness.
pub fn check_triangle_identities(w: &DualityWitness) -> Result<bool> {
    let (first, second) = snake_composites(w)?;
    Ok(first.is_identity() && second.is_identity())
}

/// Outcome of [`refute_dual`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualAudit {
    Found(DualityWitness),
    /// No `(ev, coev)` exists with `ev` in the searched box. `exhaustive` means the
    /// box covered all of `hom(candidate ⊗ a, ℤ)`.
    Refuted {
        exhaustive: bool,
        ev_tried: u64,
    },
}

/// Audit mode: searches for a duality between `a` and `candidate`.
///
/// `ev` ranges over integer combinations of the generators of
/// `hom(candidate ⊗ a, ℤ)` with coefficients in `[-bound, bound]`; for each,
/// the snake equations are linear in `coev` and are solved exactly.
pub fn refute_dual(a: &AbObject, candidate: &AbObject, bound: u32) -> Result<DualAudit> {
    let unit = AbObject::unit();
    let evs = hom_group(&tensor(candidate, a), &unit);
    let s = evs.generators.len();
    let span = 2 * bound as u64 + 1;
    let total = span
        .checked_pow(s as u32)
        .filter(|&n| n <= 1_000_000)
        .ok_or_else(|| Error::TooLarge(format!("{span}^{s} ev candidates exceed the audit limit of 10^6")))?;
    let total = if s == 0 { 1 } else { total };
    let pairs = tensor(a, candidate);
    let mut digits = vec![-(bound as i64); s];
    for _ in 0..total {
        let coeffs: Vec<Int> = digits.iter().map(|&x| Int::from(x)).collect();
        let ev = evs.element(&coeffs)?;
        if let Some(w) = solve_coev(a, candidate, &pairs, ev)? {
            return Ok(DualAudit::Found(w));
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d <= bound as i64 {
                break;
            }
            *d = -(bound as i64);
        }
    }
    Ok(DualAudit::Refuted {
        exhaustive: s == 0,
        ev_tried: total,
    })
}

fn solve_coev(a: &AbObject, d: &AbObject, pairs: &AbObject, ev: AbMorphism) -> Result<Option<DualityWitness>> {
    let unit = AbObject::unit();
    let n = pairs.gens();
    let mut composites = Vec::with_capacity(n);
    for m in 0..n {
        let mut e = IntMatrix::zeros(n, 1);
        e.set(m, 0, Int::ONE);
        let w = DualityWitness {
            object: a.clone(),
            dual_object: d.clone(),
            ev: ev.clone(),
            coev: AbMorphism::from_raw(unit.clone(), pairs.clone(), e),
        };
        composites.push(snake_composites(&w)?);
    }
    // one equation per matrix entry of each snake composite
    let mut rows: Vec<(Vec<Int>, Int, Int)> = Vec::new();
    for (obj, pick) in [(a, 0usize), (d, 1usize)] {
        for p in 0..obj.gens() {
            for q in 0..obj.gens() {
                let coeffs = composites
                    .iter()
                    .map(|c| if pick == 0 { &c.0 } else { &c.1 }.matrix().get(p, q).clone())
                    .collect();
                let rhs = if p == q { Int::ONE } else { Int::ZERO };
                rows.push((coeffs, rhs, obj.order(p).clone()));
            }
        }
    }
    let slack: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].2.is_zero()).collect();
    let mut sys = IntMatrix::zeros(rows.len(), n + slack.len());
    let mut rhs = IntMatrix::zeros(rows.len(), 1);
    for (r, (coeffs, b, _)) in rows.iter().enumerate() {
        for (m, c) in coeffs.iter().enumerate() {
            sys.set(r, m, c.clone());
        }
        rhs.set(r, 0, b.clone());
    }
    for (k, &r) in slack.iter().enumerate() {
        sys.set(r, n + k, rows[r].2.clone());
    }
    let Some(sol) = solve_diophantine(&sys, &rhs)? else {
        return Ok(None);
    };
    let coev = IntMatrix::column((0..n).map(|m| sol.particular.get(m, 0).clone()).collect());
    let w = DualityWitness {
        object: a.clone(),
        dual_object: d.clone(),
        ev,
        coev: AbMorphism::from_raw(unit, pairs.clone(), coev),
    };
    if !check_triangle_identities(&w)? {
        return Err(Error::Internal("solved coevaluation fails the snake identities".into()));
    }
    Ok(Some(w))
}
