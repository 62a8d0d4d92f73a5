//! The sum functor `Σ: GAb → Ab` and its comonad `𝒢 = ΣC`, `𝒢A = ⊕_{n∈ℤ} A`.
//!
//! `𝒢A` is never built. A coalgebra `γ: A → ⊕_n A` out of a finitely
//! generated carrier has only finitely many nonzero components `p_n`, so it
//! is stored as that finite family.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::object::{GradedMorphism, GradedObject};
use crate::ab::{compose, normalize_presentation, tensor, tensor_mor, AbMorphism, AbObject, DirectSum};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

fn components_sum(a: &GradedObject) -> DirectSum {
    DirectSum::new(a.components().values().cloned().collect())
}

/// `Σa = ⊕_n a_n`, components in increasing degree.
pub fn sigma(a: &GradedObject) -> AbObject {
    components_sum(a).object().clone()
}

/// `Σf`.
pub fn sigma_mor(f: &GradedMorphism) -> AbMorphism {
    let s = components_sum(f.source());
    let t = components_sum(f.target());
    let s_idx: BTreeMap<i64, usize> = f.source().support().enumerate().map(|(k, n)| (n, k)).collect();
    let t_idx: BTreeMap<i64, usize> = f.target().support().enumerate().map(|(k, n)| (n, k)).collect();
    let blocks: Vec<(usize, usize, &AbMorphism)> = f.maps().iter().map(|(n, m)| (t_idx[n], s_idx[n], m)).collect();
    t.assemble_between(&s, &blocks).expect("typed by construction")
}

/// A `𝒢`-coalgebra: a carrier with its finitely many projections `p_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GradingJson", into = "GradingJson")]
pub struct GradingCoalgebra {
    pub carrier: AbObject,
    pub projections: BTreeMap<i64, AbMorphism>,
}

#[derive(Serialize, Deserialize)]
struct GradingJson {
    carrier: AbObject,
    projections: BTreeMap<i64, IntMatrix>,
}

impl TryFrom<GradingJson> for GradingCoalgebra {
    type Error = Error;

    fn try_from(j: GradingJson) -> Result<Self> {
        let projections = j
            .projections
            .into_iter()
            .map(|(n, m)| Ok((n, AbMorphism::new(j.carrier.clone(), j.carrier.clone(), m)?)))
            .collect::<Result<_>>()?;
        Ok(GradingCoalgebra {
            carrier: j.carrier,
            projections,
        })
    }
}

impl From<GradingCoalgebra> for GradingJson {
    fn from(c: GradingCoalgebra) -> Self {
        GradingJson {
            carrier: c.carrier,
            projections: c.projections.into_iter().map(|(n, m)| (n, m.into_matrix())).collect(),
        }
    }
}

impl GradingCoalgebra {
    /// The coalgebra `Σa` with projections onto its components.
    pub fn from_graded(a: &GradedObject) -> Self {
        let s = components_sum(a);
        let projections = a
            .support()
            .enumerate()
            .map(|(k, n)| (n, compose(&s.injection(k), &s.projection(k)).expect("typed")))
            .collect();
        GradingCoalgebra {
            carrier: s.object().clone(),
            projections,
        }
    }

    fn check_types(&self) -> Result<()> {
        for (n, p) in &self.projections {
            if p.source() != &self.carrier || p.target() != &self.carrier {
                return Err(Error::ObjectMismatch(format!(
                    "projection {n} must be an endomorphism of {}, got {} -> {}",
                    self.carrier,
                    p.source(),
                    p.target()
                )));
            }
        }
        Ok(())
    }
}

/// Image of an idempotent `p` with its inclusion into the carrier.
pub(crate) fn idempotent_image(p: &AbMorphism) -> (AbObject, AbMorphism) {
    let a = p.source();
    let n = a.gens();
    // im p ≅ A / im(1 − p)
    let one_minus = AbMorphism::identity(a).sub(p).expect("parallel");
    let torsion: Vec<usize> = (0..n).filter(|&i| !a.order(i).is_zero()).collect();
    let mut rel = IntMatrix::zeros(n, torsion.len() + n);
    for (k, &i) in torsion.iter().enumerate() {
        rel.set(i, k, a.order(i).clone());
    }
    rel.set_block(0, torsion.len(), one_minus.matrix());
    let pres = normalize_presentation(&rel);
    let from = pres.change.from_canonical(n);
    let section = AbMorphism::new(pres.object.clone(), a.clone(), p.matrix().mul(&from).expect("shapes"))
        .expect("p kills the relations of its image");
    (pres.object, section)
}

/// Result of [`check_grading_coalgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingCheck {
    pub valid: bool,
    pub diagnostics: Vec<String>,
    /// Image decomposition, when valid.
    pub graded: Option<GradedObject>,
    /// `Σ(graded) = carrier`, when valid.
    pub roundtrip: Option<bool>,
}

/// Valid iff the projections are pairwise orthogonal idempotents summing to the identity.
pub fn check_grading_coalgebra(c: &GradingCoalgebra) -> Result<GradingCheck> {
    c.check_types()?;
    let mut diagnostics = Vec::new();
    let mut total = AbMorphism::zero(&c.carrier, &c.carrier);
    for (&m, pm) in &c.projections {
        total = total.add(pm)?;
        for (&n, pn) in &c.projections {
            let prod = compose(pm, pn)?;
            if m == n && prod != *pm {
                diagnostics.push(format!("p_{m} is not idempotent"));
            }
            if m != n && !prod.is_zero() {
                diagnostics.push(format!("p_{m} ∘ p_{n} ≠ 0"));
            }
        }
    }
    if !total.is_identity() {
        diagnostics.push("projections do not sum to the identity".into());
    }
    if !diagnostics.is_empty() {
        return Ok(GradingCheck {
            valid: false,
            diagnostics,
            graded: None,
            roundtrip: None,
        });
    }
    let graded = GradedObject::from_pairs(c.projections.iter().map(|(&n, p)| (n, idempotent_image(p).0)));
    let roundtrip = sigma(&graded) == c.carrier;
    Ok(GradingCheck {
        valid: true,
        diagnostics,
        graded: Some(graded),
        roundtrip: Some(roundtrip),
    })
}

/// The Hopf map `Cv' ⊗ v → C(v' ⊗ Σv)`. In every degree it is the distributivity
/// map `⊕_j v' ⊗ im p_j → v' ⊗ carrier`, so one matrix pair certifies all degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaHopfWitness {
    pub vprime: AbObject,
    pub coalgebra: GradingCoalgebra,
    /// Degrees of the grading whose image is nonzero, in order of the source summands.
    pub degrees: Vec<i64>,
    pub forward: AbMorphism,
    pub inverse: AbMorphism,
}

pub fn hopf_map_sigma(vprime: &AbObject, v: &GradingCoalgebra) -> Result<SigmaHopfWitness> {
    let chk = check_grading_coalgebra(v)?;
    if !chk.valid {
        return Err(Error::Invalid(format!(
            "not a grading coalgebra: {}",
            chk.diagnostics.join("; ")
        )));
    }
    let mut degrees = Vec::new();
    let mut pieces = Vec::new();
    for (&n, p) in &v.projections {
        let (img, incl) = idempotent_image(p);
        if img.is_zero() {
            continue;
        }
        degrees.push(n);
        pieces.push((img, incl));
    }
    let src = DirectSum::new(pieces.iter().map(|(img, _)| tensor(vprime, img)).collect());
    let target = tensor(vprime, &v.carrier);
    let id = AbMorphism::identity(vprime);
    let parts: Vec<AbMorphism> = pieces.iter().map(|(_, incl)| tensor_mor(&id, incl)).collect();
    let refs: Vec<(usize, &AbMorphism)> = parts.iter().enumerate().collect();
    let forward = src.assemble_from(&target, &refs)?;
    let inverse = forward
        .inverse()
        .ok_or_else(|| Error::Internal("distributivity map is not invertible".into()))?;
    Ok(SigmaHopfWitness {
        vprime: vprime.clone(),
        coalgebra: v.clone(),
        degrees,
        forward,
        inverse,
    })
}
