use std::collections::BTreeMap;

use serde::Serialize;

use super::chain::{ChainComplex, DifferentialFamily};
use super::comonad::{c, cg, delta, epsilon, g_mor, gamma, Cofree};
use super::object::{GradedMorphism, GradedObject};
use super::tensor::{koszul_family, sign, tensor_graded_mor, GradedTensor};
use crate::ab::{tensor_mor, AbMorphism, AbObject};
use crate::error::{Error, Result};
use crate::memo::Memo;

/// The fusion map `μ ∘ (1 ⊗ γ_v): Gv' ⊗ Uv → G(v' ⊗ Uv)` with a certified inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionWitness {
    pub vprime: GradedObject,
    pub v: ChainComplex,
    pub forward: GradedMorphism,
    pub inverse: GradedMorphism,
}

/// Structure-only pieces of the fusion map for fixed `(v', Ux)`: the
/// forward map is `base + Σ ± left ∘ (1 ⊗ d_j) ∘ right`.
///
/// `base` is invertible and the correction `N` only sees `x'` and only hits
/// `y`, so `(base⁻¹ N)² = 0` and the inverse is `base⁻¹ − base⁻¹ N base⁻¹`.
struct FusionFrame {
    source: GradedObject,
    target: GradedObject,
    base: BTreeMap<i64, AbMorphism>,
    base_inv: BTreeMap<i64, AbMorphism>,
    terms: BTreeMap<i64, Vec<FrameTerm>>,
}

struct FrameTerm {
    j: i64,
    negate: bool,
    vi: AbObject,
    /// `v'_i ⊗ x_{j−1} → G(v' ⊗ x)_n`
    left: AbMorphism,
    /// `(Gv' ⊗ x)_n → v'_i ⊗ x_j`
    right: AbMorphism,
}

thread_local! {
    static FRAMES: Memo<(GradedObject, GradedObject), FusionFrame> = Memo::new();
}

impl FusionFrame {
    fn new(vprime: &GradedObject, x: &GradedObject) -> Self {
        let gp = Cofree::cached(vprime);
        let src = GradedTensor::cached(gp.object(), x);
        let inner = GradedTensor::cached(vprime, x);
        let tgt = Cofree::cached(inner.object());
        let mut base = BTreeMap::new();
        let mut terms = BTreeMap::new();
        for n in src.object().support() {
            let deg = src.degree(n).expect("degree in support");
            let target = tgt.object().get(n);
            let mut b = AbMorphism::zero(src.object().get(n), target);
            let mut ts = Vec::new();
            for (k, &i) in deg.lefts.iter().enumerate() {
                let j = n - i;
                let xj = x.get(j);
                let pk = deg.sum.projection(k);
                // x' ⊗ a ↦ (x' ⊗ a, ·)
                if let Some(inj) = inner.injection(n, i) {
                    let t = tensor_mor(&gp.proj_x(i), &AbMorphism::identity(xj));
                    b = b.add(&c(&tgt.inj_x(n), &c(&inj, &c(&t, &pk)))).unwrap();
                }
                // y' ⊗ a ↦ (0, y' ⊗ a)
                if let Some(inj) = inner.injection(n - 1, i - 1) {
                    let t = tensor_mor(&gp.proj_y(i), &AbMorphism::identity(xj));
                    b = b.add(&c(&tgt.inj_y(n), &c(&inj, &c(&t, &pk)))).unwrap();
                }
                // x' ⊗ a ↦ (·, (−1)^i x' ⊗ da)
                if let Some(inj) = inner.injection(n - 1, i) {
                    let t = tensor_mor(&gp.proj_x(i), &AbMorphism::identity(xj));
                    ts.push(FrameTerm {
                        j,
                        negate: sign(i) < 0,
                        vi: vprime.get(i).clone(),
                        left: c(&tgt.inj_y(n), &inj),
                        right: c(&t, &pk),
                    });
                }
            }
            base.insert(n, b);
            terms.insert(n, ts);
        }
        let base_inv = base
            .iter()
            .map(|(&n, b)| (n, b.inverse().expect("Gv' ⊗ x ≅ G(v' ⊗ x) degreewise")))
            .collect();
        FusionFrame {
            source: src.object().clone(),
            target: tgt.object().clone(),
            base,
            base_inv,
            terms,
        }
    }

    fn inverse(&self, forward: &GradedMorphism) -> GradedMorphism {
        let maps = self
            .base_inv
            .iter()
            .map(|(&n, bi)| {
                let nil = forward.component(n).sub(&self.base[&n]).expect("parallel");
                (n, bi.sub(&c(bi, &c(&nil, bi))).expect("parallel"))
            })
            .collect();
        GradedMorphism::from_parts(self.target.clone(), self.source.clone(), maps)
    }

    fn forward(&self, v: &DifferentialFamily) -> GradedMorphism {
        let mut maps = BTreeMap::new();
        for (&n, b) in &self.base {
            let mut m = b.clone();
            for t in &self.terms[&n] {
                let Some(d) = v.maps().get(&t.j) else { continue };
                let w = c(&t.left, &c(&tensor_mor(&AbMorphism::identity(&t.vi), d), &t.right));
                m = m.add(&if t.negate { w.neg() } else { w }).unwrap();
            }
            maps.insert(n, m);
        }
        GradedMorphism::from_parts(self.source.clone(), self.target.clone(), maps)
    }
}

fn frame(vprime: &GradedObject, x: &GradedObject) -> std::rc::Rc<FusionFrame> {
    FRAMES.with(|f| f.get_or(&(vprime.clone(), x.clone()), || FusionFrame::new(vprime, x)))
}

/// `(x', y') ⊗ a ↦ (x' ⊗ a, y' ⊗ a + (−1)^{|x'|} x' ⊗ da)`, assembled block by block.
pub fn fusion_forward(vprime: &GradedObject, v: &DifferentialFamily) -> GradedMorphism {
    frame(vprime, v.underlying()).forward(v)
}

fn fusion_family(vprime: &GradedObject, v: &DifferentialFamily) -> Result<(GradedMorphism, GradedMorphism)> {
    let f = frame(vprime, v.underlying());
    let forward = f.forward(v);
    let inverse = f.inverse(&forward);
    if !cg(&forward, &inverse).is_identity() {
        return Err(Error::Internal(format!(
            "fusion map for v' = {vprime} and v = {v:?} is not invertible; this comonad is Hopf"
        )));
    }
    Ok((forward, inverse))
}

/// Fusion witness for `(v', v)`. The comonad is Hopf, so failure to invert is an internal error.
pub fn fusion(vprime: &GradedObject, v: &ChainComplex) -> Result<FusionWitness> {
    let (forward, inverse) = fusion_family(vprime, v.family())?;
    Ok(FusionWitness {
        vprime: vprime.clone(),
        v: v.clone(),
        forward,
        inverse,
    })
}

/// Outcome of [`check_fusion_compat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FusionCompat {
    /// `forward ∘ inverse = id` and `inverse ∘ forward = id`.
    pub inverse_exact: bool,
    /// `(ε ⊗ 1) ∘ v⁻¹ = ε`.
    pub me1: bool,
    /// `(δ ⊗ 1) ∘ v⁻¹ = v⁻¹_{Gv',v} ∘ G(v⁻¹) ∘ δ`.
    pub me2: bool,
    /// `v⁻¹ ∘ γ_{v' ⊗ v} = γ_{v'} ⊗ 1`, when a coalgebra structure on `v'` is supplied.
    pub me3: Option<bool>,
}

impl FusionCompat {
    pub fn all_pass(&self) -> bool {
        self.inverse_exact && self.me1 && self.me2 && self.me3.unwrap_or(true)
    }
}

/// Structure maps of the compatibility diagrams for fixed `(v', Ux)`.
struct CompatFrame {
    eps_t: GradedMorphism,
    delta_t: GradedMorphism,
    eps_inner: GradedMorphism,
    delta_inner: GradedMorphism,
}

thread_local! {
    static COMPAT: Memo<(GradedObject, GradedObject), CompatFrame> = Memo::new();
}

impl CompatFrame {
    fn new(vp: &GradedObject, x: &GradedObject) -> Self {
        let id_x = GradedMorphism::identity(x);
        let inner = GradedTensor::cached(vp, x);
        CompatFrame {
            eps_t: tensor_graded_mor(&epsilon(vp), &id_x),
            delta_t: tensor_graded_mor(&delta(vp), &id_x),
            eps_inner: epsilon(inner.object()),
            delta_inner: delta(inner.object()),
        }
    }
}

/// Checks the compatibility diagrams of the inverse fusion map. `vprime_structure`
/// is an optional differential on `v'` (a coalgebra structure) for the third diagram.
pub fn check_fusion_compat(w: &FusionWitness, vprime_structure: Option<&ChainComplex>) -> Result<FusionCompat> {
    let vp = &w.vprime;
    let x = w.v.underlying();
    let gvp = Cofree::cached(vp);
    let src = GradedTensor::cached(gvp.object(), x);
    let inner = GradedTensor::cached(vp, x);
    let g_inner = Cofree::cached(inner.object());
    for (name, f) in [("forward", &w.forward), ("inverse", &w.inverse)] {
        let ok = match name {
            "forward" => f.source() == src.object() && f.target() == g_inner.object(),
            _ => f.source() == g_inner.object() && f.target() == src.object(),
        };
        if !ok {
            return Err(Error::Shape(format!("{name} map does not match Gv' ⊗ v ↔ G(v' ⊗ v)")));
        }
    }
    if let Some(s) = vprime_structure {
        if s.underlying() != vp {
            return Err(Error::Shape("coalgebra structure is not on v'".into()));
        }
    }
    let vinv = &w.inverse;
    let inverse_exact = cg(&w.forward, vinv).is_identity() && cg(vinv, &w.forward).is_identity();
    let frame = COMPAT.with(|m| m.get_or(&(vp.clone(), x.clone()), || CompatFrame::new(vp, x)));

    let me1 = cg(&frame.eps_t, vinv) == frame.eps_inner;

    // v_{Gv',v} is invertible, so composing both sides with it is equivalent
    // and saves inverting the larger fusion map
    let fwd_g = fusion_forward(gvp.object(), w.v.family());
    let lhs = cg(&fwd_g, &cg(&frame.delta_t, vinv));
    let rhs = cg(&g_mor(vinv), &frame.delta_inner);
    let me2 = lhs == rhs;

    let me3 = vprime_structure.map(|s| {
        let tensor = koszul_family(s.family(), w.v.family());
        let id_x = GradedMorphism::identity(x);
        cg(vinv, &gamma(&tensor)) == tensor_graded_mor(&gamma(s.family()), &id_x)
    });
    Ok(FusionCompat {
        inverse_exact,
        me1,
        me2,
        me3,
    })
}
