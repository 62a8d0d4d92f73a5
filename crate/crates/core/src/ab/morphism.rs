use std::fmt;

use serde::{Deserialize, Serialize};

use super::object::AbObject;
use crate::error::{invalid, shape, Error, Result};
use crate::int::Int;
use crate::linalg::{solve_diophantine, unimodular_inverse, IntMatrix};

/// A homomorphism between canonical groups.
///
/// Column `j` is the image of source generator `j`. Entries in a torsion row
/// of the target are stored as residues in `[0, order)`, so equality of
/// morphisms is equality of values.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MorphismJson", into = "MorphismJson")]
pub struct AbMorphism {
    source: AbObject,
    target: AbObject,
    matrix: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct MorphismJson {
    source: AbObject,
    target: AbObject,
    matrix: IntMatrix,
}

impl TryFrom<MorphismJson> for AbMorphism {
    type Error = Error;

    fn try_from(j: MorphismJson) -> Result<Self> {
        AbMorphism::new(j.source, j.target, j.matrix)
    }
}

impl From<AbMorphism> for MorphismJson {
    fn from(m: AbMorphism) -> Self {
        MorphismJson {
            source: m.source,
            target: m.target,
            matrix: m.matrix,
        }
    }
}

fn reduce(target: &AbObject, matrix: &mut IntMatrix) {
    for (i, t) in target.torsion().iter().enumerate() {
        for j in 0..matrix.cols() {
            let v = matrix.get(i, j);
            if v.is_zero() || (!v.is_negative() && v < t) {
                continue;
            }
            let r = v.residue(t);
            matrix.set(i, j, r);
        }
    }
}

/// Whether `matrix` sends every relation of `source` into the relations of `target`.
pub(crate) fn respects_relations(source: &AbObject, target: &AbObject, matrix: &IntMatrix) -> bool {
    for (j, o) in source.torsion().iter().enumerate() {
        for i in 0..target.gens() {
            let v = matrix.get(i, j);
            if v.is_zero() {
                continue;
            }
            let t = target.order(i);
            if !t.divides(&(o * v)) {
                return false;
            }
        }
    }
    true
}

impl AbMorphism {
    pub fn new(source: AbObject, target: AbObject, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(shape(format!(
                "a map {source} -> {target} needs a {}x{} matrix, got {}x{}",
                target.gens(),
                source.gens(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !respects_relations(&source, &target, &matrix) {
            return Err(invalid(format!(
                "matrix does not descend to a homomorphism {source} -> {target}"
            )));
        }
        Ok(Self::from_raw(source, target, matrix))
    }

    /// Wraps a matrix already known to be well defined, reducing it to residue form.
    pub(crate) fn from_raw(source: AbObject, target: AbObject, mut matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.gens());
        debug_assert_eq!(matrix.cols(), source.gens());
        debug_assert!(respects_relations(&source, &target, &matrix));
        reduce(&target, &mut matrix);
        AbMorphism { source, target, matrix }
    }

    pub fn identity(a: &AbObject) -> Self {
        AbMorphism {
            source: a.clone(),
            target: a.clone(),
            matrix: IntMatrix::identity(a.gens()),
        }
    }

    pub fn zero(source: &AbObject, target: &AbObject) -> Self {
        AbMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.gens(), source.gens()),
        }
    }

    /// Multiplication by `k` on `Z`.
    pub fn scalar(k: i64) -> Self {
        AbMorphism::from_raw(AbObject::unit(), AbObject::unit(), IntMatrix::from_i64_rows(&[&[k]]))
    }

    pub fn source(&self) -> &AbObject {
        &self.source
    }

    pub fn target(&self) -> &AbObject {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix.is_identity()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &AbMorphism) -> Result<AbMorphism> {
        compose(self, f)
    }

    pub fn add(&self, other: &AbMorphism) -> Result<AbMorphism> {
        self.check_parallel(other)?;
        let m = self.matrix.add(&other.matrix)?;
        Ok(Self::from_raw(self.source.clone(), self.target.clone(), m))
    }

    pub fn sub(&self, other: &AbMorphism) -> Result<AbMorphism> {
        self.check_parallel(other)?;
        let m = self.matrix.sub(&other.matrix)?;
        Ok(Self::from_raw(self.source.clone(), self.target.clone(), m))
    }

    pub fn scale(&self, c: &Int) -> AbMorphism {
        Self::from_raw(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    pub fn neg(&self) -> AbMorphism {
        self.scale(&Int::from(-1))
    }

    fn check_parallel(&self, other: &AbMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ObjectMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    /// Two-sided inverse, when this map is an isomorphism.
    ///
    /// Free square maps go through exact unimodular inversion; otherwise a
    /// right inverse is solved column by column as a Diophantine system
    /// modulo the target relations and then checked on both sides.
    pub fn inverse(&self) -> Option<AbMorphism> {
        if self.source != self.target {
            // skeletal model: isomorphic objects are equal
            return None;
        }
        let a = &self.source;
        let n = a.gens();
        if a.is_free() {
            let inv = unimodular_inverse(&self.matrix).ok()??;
            return Some(AbMorphism::from_raw(a.clone(), a.clone(), inv));
        }
        let torsion_rows = a.torsion().len();
        // [F | diag(torsion of target)] · [g; s] = e_k
        let mut system = IntMatrix::zeros(n, n + torsion_rows);
        system.set_block(0, 0, &self.matrix);
        for (i, t) in a.torsion().iter().enumerate() {
            system.set(i, n + i, t.clone());
        }
        let mut g = IntMatrix::zeros(n, n);
        for k in 0..n {
            let mut rhs = IntMatrix::zeros(n, 1);
            rhs.set(k, 0, Int::ONE);
            let sol = solve_diophantine(&system, &rhs).ok()??;
            for r in 0..n {
                g.set(r, k, sol.particular.get(r, 0).clone());
            }
        }
        if !respects_relations(a, a, &g) {
            return None;
        }
        let candidate = AbMorphism::from_raw(a.clone(), a.clone(), g);
        let left = compose(&candidate, self).ok()?;
        let right = compose(self, &candidate).ok()?;
        (left.is_identity() && right.is_identity()).then_some(candidate)
    }
}

/// `g ∘ f`.
pub fn compose(g: &AbMorphism, f: &AbMorphism) -> Result<AbMorphism> {
    if f.target != g.source {
        return Err(Error::ObjectMismatch(format!(
            "cannot compose: target {} of the first map is not the source {} of the second",
            f.target, g.source
        )));
    }
    let m = g.matrix.mul_unchecked(&f.matrix);
    Ok(AbMorphism::from_raw(f.source.clone(), g.target.clone(), m))
}

impl fmt::Debug for AbMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {:?}", self.source, self.target, self.matrix)
    }
}
