//! Tensor products of graded objects and chain complexes.
//!
//! `(a ⊗ b)_n = ⊕_{i+j=n} a_i ⊗ b_j`, summands ordered by increasing `i`;
//! only pairs with both factors nonzero are listed. The differential follows
//! the Koszul rule `d(x ⊗ y) = dx ⊗ y + (−1)^{|x|} x ⊗ dy`.

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::memo::Memo;

use super::chain::{ChainComplex, DifferentialFamily};
use super::object::{GradedMorphism, GradedObject};
use crate::ab::{associator, compose, tensor_mor, AbMorphism, DirectSum};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct TensorDegree {
    pub(crate) sum: DirectSum,
    /// left degree of each summand
    pub(crate) lefts: Vec<i64>,
    index: BTreeMap<i64, usize>,
}

/// `a ⊗ b` with its summand decomposition in each degree.
#[derive(Clone, Debug)]
pub struct GradedTensor {
    left: GradedObject,
    right: GradedObject,
    object: GradedObject,
    degrees: BTreeMap<i64, TensorDegree>,
}

pub(crate) fn sign(i: i64) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

thread_local! {
    static TENSOR: Memo<(GradedObject, GradedObject), GradedTensor> = Memo::new();
}

impl GradedTensor {
    /// Shared copy of `GradedTensor::new(left, right)`, memoized per thread.
    pub fn cached(left: &GradedObject, right: &GradedObject) -> Rc<GradedTensor> {
        TENSOR.with(|m| m.get_or(&(left.clone(), right.clone()), || GradedTensor::new(left, right)))
    }

    pub fn new(left: &GradedObject, right: &GradedObject) -> Self {
        let mut per: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for i in left.support() {
            for j in right.support() {
                per.entry(i + j).or_default().push(i);
            }
        }
        let mut degrees = BTreeMap::new();
        for (n, lefts) in per {
            let sum = DirectSum::new(
                lefts
                    .iter()
                    .map(|&i| crate::ab::tensor(left.get(i), right.get(n - i)))
                    .collect(),
            );
            let index = lefts.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            degrees.insert(n, TensorDegree { sum, lefts, index });
        }
        let object = GradedObject::from_pairs(degrees.iter().map(|(&n, d)| (n, d.sum.object().clone())));
        GradedTensor {
            left: left.clone(),
            right: right.clone(),
            object,
            degrees,
        }
    }

    pub fn object(&self) -> &GradedObject {
        &self.object
    }

    pub fn left(&self) -> &GradedObject {
        &self.left
    }

    pub fn right(&self) -> &GradedObject {
        &self.right
    }

    pub(crate) fn degree(&self, n: i64) -> Option<&TensorDegree> {
        self.degrees.get(&n)
    }

    /// `a_i ⊗ b_{n−i} → (a ⊗ b)_n`.
    pub fn injection(&self, n: i64, i: i64) -> Option<AbMorphism> {
        let d = self.degrees.get(&n)?;
        Some(d.sum.injection(*d.index.get(&i)?))
    }

    /// `(a ⊗ b)_n → a_i ⊗ b_{n−i}`.
    pub fn projection(&self, n: i64, i: i64) -> Option<AbMorphism> {
        let d = self.degrees.get(&n)?;
        Some(d.sum.projection(*d.index.get(&i)?))
    }

    /// Assembles a map `source_{ns} → self_{nt}` from blocks
    /// `(target left degree, source left degree, map between the summands)`.
    /// Blocks touching an absent summand must be zero and are dropped.
    pub(crate) fn assemble(
        &self,
        nt: i64,
        source: &GradedTensor,
        ns: i64,
        blocks: &[(i64, i64, AbMorphism)],
    ) -> AbMorphism {
        let t_obj = self.object.get(nt);
        let s_obj = source.object.get(ns);
        let (Some(td), Some(sd)) = (self.degrees.get(&nt), source.degrees.get(&ns)) else {
            return AbMorphism::zero(s_obj, t_obj);
        };
        let mut refs = Vec::with_capacity(blocks.len());
        for (ti, si, m) in blocks {
            match (td.index.get(ti), sd.index.get(si)) {
                (Some(&t), Some(&s)) => refs.push((t, s, m)),
                _ => debug_assert!(m.is_zero(), "dropped a nonzero block"),
            }
        }
        td.sum
            .assemble_between(&sd.sum, &refs)
            .expect("blocks typed by construction")
    }
}

pub fn tensor_graded(a: &GradedObject, b: &GradedObject) -> GradedObject {
    GradedTensor::cached(a, b).object.clone()
}

/// `f ⊗ g` between the given tensor structures.
pub(crate) fn tensor_graded_mor_with(
    target: &GradedTensor,
    source: &GradedTensor,
    f: &GradedMorphism,
    g: &GradedMorphism,
) -> GradedMorphism {
    let mut maps = BTreeMap::new();
    for (&n, d) in &source.degrees {
        if target.object.get(n).is_zero() {
            continue;
        }
        let blocks: Vec<_> = d
            .lefts
            .iter()
            .map(|&i| (i, i, tensor_mor(&f.component(i), &g.component(n - i))))
            .collect();
        maps.insert(n, target.assemble(n, source, n, &blocks));
    }
    GradedMorphism::from_parts(source.object.clone(), target.object.clone(), maps)
}

/// `f ⊗ g` for graded maps.
pub fn tensor_graded_mor(f: &GradedMorphism, g: &GradedMorphism) -> GradedMorphism {
    let source = GradedTensor::cached(f.source(), g.source());
    let target = GradedTensor::cached(f.target(), g.target());
    tensor_graded_mor_with(&target, &source, f, g)
}

/// Koszul differential on `x ⊗ y`, without checking `d² = 0`.
pub fn koszul_family(x: &DifferentialFamily, y: &DifferentialFamily) -> DifferentialFamily {
    let t = GradedTensor::cached(x.underlying(), y.underlying());
    koszul_family_with(&t, x, y)
}

pub(crate) fn koszul_family_with(
    t: &GradedTensor,
    x: &DifferentialFamily,
    y: &DifferentialFamily,
) -> DifferentialFamily {
    let mut maps = BTreeMap::new();
    for (&n, d) in &t.degrees {
        if t.object.get(n - 1).is_zero() {
            continue;
        }
        let mut blocks = Vec::new();
        for &i in &d.lefts {
            let j = n - i;
            let (xi, yj) = (x.underlying().get(i), y.underlying().get(j));
            if !x.underlying().get(i - 1).is_zero() {
                let dx = x.d(i);
                if !dx.is_zero() {
                    blocks.push((i - 1, i, tensor_mor(&dx, &AbMorphism::identity(yj))));
                }
            }
            if !y.underlying().get(j - 1).is_zero() {
                let dy = y.d(j);
                if !dy.is_zero() {
                    let m = tensor_mor(&AbMorphism::identity(xi), &dy);
                    blocks.push((i, i, if sign(i) < 0 { m.neg() } else { m }));
                }
            }
        }
        maps.insert(n, t.assemble(n - 1, t, n, &blocks));
    }
    DifferentialFamily::new(t.object.clone(), maps).expect("typed by construction")
}

/// `x ⊗ y` as a chain complex. The Koszul differential squares to zero; this
/// is verified, and a failure is reported as an internal error.
pub fn tensor_chain(x: &ChainComplex, y: &ChainComplex) -> Result<ChainComplex> {
    let fam = koszul_family(x.family(), y.family());
    ChainComplex::try_from(fam).map_err(|e| Error::Internal(format!("Koszul differential: {e}")))
}

/// `(a ⊗ b) ⊗ c → a ⊗ (b ⊗ c)`.
pub fn graded_associator(a: &GradedObject, b: &GradedObject, c: &GradedObject) -> GradedMorphism {
    let ab = GradedTensor::cached(a, b);
    let bc = GradedTensor::cached(b, c);
    let left = GradedTensor::cached(ab.object(), c);
    let right = GradedTensor::cached(a, bc.object());
    let mut maps = BTreeMap::new();
    for (&n, d) in &left.degrees {
        let mut blocks = Vec::new();
        for &p in &d.lefts {
            let k = n - p;
            let abd = ab.degrees.get(&p).expect("p in support of a ⊗ b");
            for &i in &abd.lefts {
                let j = p - i;
                let q = j + k;
                let (ai, bj, ck) = (a.get(i), b.get(j), c.get(k));
                let proj = tensor_mor(&ab.projection(p, i).unwrap(), &AbMorphism::identity(ck));
                let Some(inj_bc) = bc.injection(q, j) else {
                    continue;
                };
                let inj = tensor_mor(&AbMorphism::identity(ai), &inj_bc);
                let m = compose(&inj, &compose(&associator(ai, bj, ck), &proj).unwrap()).unwrap();
                blocks.push((i, p, m));
            }
        }
        maps.insert(n, right.assemble(n, &left, n, &blocks));
    }
    GradedMorphism::from_parts(left.object.clone(), right.object.clone(), maps)
}
