use std::collections::HashMap;

use serde::Serialize;

use super::category::{check_monoidal, FiniteMonoidalCategory, Morphism};
use super::comonad::{check_comonad, ComonadData};
use crate::error::{Error, Result};
use crate::report::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coalgebra {
    pub carrier: usize,
    pub gamma: usize,
}

/// `ε ∘ γ = id` and `δ ∘ γ = Gγ ∘ γ`.
pub fn is_coalgebra(c: &FiniteMonoidalCategory, g: &ComonadData, a: usize, gamma: usize) -> bool {
    c.src(gamma) == a
        && c.tgt(gamma) == g.ob(a)
        && c.comp(g.epsilon(a), gamma) == Some(c.id(a))
        && c.comp(g.delta(a), gamma) == c.comp(g.mor(gamma), gamma)
}

/// All coalgebras, carriers and structure maps in canonical order.
pub fn coalgebras(c: &FiniteMonoidalCategory, g: &ComonadData) -> Vec<Coalgebra> {
    c.objects_canonical()
        .iter()
        .flat_map(|&a| {
            c.hom(a, g.ob(a))
                .iter()
                .filter(move |&&gamma| is_coalgebra(c, g, a, gamma))
                .map(move |&gamma| Coalgebra { carrier: a, gamma })
        })
        .collect()
}

/// `γ_y ∘ f = Gf ∘ γ_x`.
pub fn is_coalgebra_morphism(
    c: &FiniteMonoidalCategory,
    g: &ComonadData,
    x: Coalgebra,
    y: Coalgebra,
    f: usize,
) -> bool {
    c.src(f) == x.carrier && c.tgt(f) == y.carrier && c.comp(y.gamma, f) == c.comp(g.mor(f), x.gamma)
}

/// `(a, γ) ⊗ (b, γ') = (a ⊗ b, μ ∘ (γ ⊗ γ'))`.
pub fn tensor_coalgebras(c: &FiniteMonoidalCategory, g: &ComonadData, x: Coalgebra, y: Coalgebra) -> Coalgebra {
    let gamma = c
        .comp(g.mu(x.carrier, y.carrier), c.tensor_mor(x.gamma, y.gamma))
        .expect("typed");
    Coalgebra {
        carrier: c.tensor_ob(x.carrier, y.carrier),
        gamma,
    }
}

/// The Eilenberg–Moore category with its forgetful functor and cofree coalgebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmCategory {
    pub category: FiniteMonoidalCategory,
    /// Object `i` of `category` is `coalgebras[i]`.
    pub coalgebras: Vec<Coalgebra>,
    /// Underlying morphism of each EM morphism.
    pub base: Vec<usize>,
    /// EM object of the cofree coalgebra `(Ga, δ_a)`, per object `a`.
    pub cofree: Vec<usize>,
}

impl EmCategory {
    pub fn find_object(&self, x: Coalgebra) -> Option<usize> {
        self.coalgebras.iter().position(|&y| y == x)
    }

    /// The EM morphism `x → y` over `f`.
    pub fn lift(&self, x: usize, y: usize, f: usize) -> Option<usize> {
        self.category.hom(x, y).iter().copied().find(|&h| self.base[h] == f)
    }
}

#[derive(Serialize)]
pub struct EmSummary {
    pub coalgebras: Vec<(String, String)>,
    pub morphisms: usize,
    pub cofree: Vec<(String, String)>,
    pub category: super::category::CategoryJson,
}

impl EmCategory {
    pub fn summary(&self, c: &FiniteMonoidalCategory) -> EmSummary {
        EmSummary {
            coalgebras: self
                .coalgebras
                .iter()
                .map(|x| {
                    (
                        c.object_label(x.carrier).to_string(),
                        c.morphism_label(x.gamma).to_string(),
                    )
                })
                .collect(),
            morphisms: self.category.n_morphisms(),
            cofree: self
                .cofree
                .iter()
                .enumerate()
                .map(|(a, &x)| (c.object_label(a).to_string(), self.category.object_label(x).to_string()))
                .collect(),
            category: self.category.to_json(),
        }
    }
}

pub fn build_em(c: &FiniteMonoidalCategory, g: &ComonadData) -> Result<EmCategory> {
    let chk = check_comonad(c, g);
    if !chk.passed() {
        return Err(Error::Invalid(format!(
            "not a monoidal comonad: {}",
            chk.details.join("; ")
        )));
    }
    let coalgs = coalgebras(c, g);
    let index: HashMap<Coalgebra, usize> = coalgs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let labels: Vec<String> = coalgs
        .iter()
        .map(|x| format!("({}, {})", c.object_label(x.carrier), c.morphism_label(x.gamma)))
        .collect();
    let mut morphisms = Vec::new();
    let mut base = Vec::new();
    let mut lifts: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (i, &x) in coalgs.iter().enumerate() {
        for (j, &y) in coalgs.iter().enumerate() {
            for &f in c.hom(x.carrier, y.carrier) {
                if is_coalgebra_morphism(c, g, x, y, f) {
                    lifts.insert((i, j, f), morphisms.len());
                    base.push(f);
                    morphisms.push(Morphism {
                        label: format!("{}: {} -> {}", c.morphism_label(f), labels[i], labels[j]),
                        source: i,
                        target: j,
                    });
                }
            }
        }
    }
    let missing = |what: String| Error::Internal(format!("EM category not closed: {what}"));
    let m = morphisms.len();
    let mut compose = vec![vec![None; m]; m];
    for f in 0..m {
        for h in 0..m {
            if morphisms[f].target == morphisms[h].source {
                let b = c.comp(base[h], base[f]).expect("composable");
                let key = (morphisms[f].source, morphisms[h].target, b);
                compose[h][f] = Some(*lifts.get(&key).ok_or_else(|| {
                    missing(format!(
                        "composite of {} and {}",
                        morphisms[h].label, morphisms[f].label
                    ))
                })?);
            }
        }
    }
    let n = coalgs.len();
    let mut tensor_ob = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let t = tensor_coalgebras(c, g, coalgs[i], coalgs[j]);
            tensor_ob[i][j] = *index
                .get(&t)
                .ok_or_else(|| missing(format!("tensor of {} and {}", labels[i], labels[j])))?;
        }
    }
    let mut tensor_mor = vec![vec![0; m]; m];
    for f in 0..m {
        for h in 0..m {
            let key = (
                tensor_ob[morphisms[f].source][morphisms[h].source],
                tensor_ob[morphisms[f].target][morphisms[h].target],
                c.tensor_mor(base[f], base[h]),
            );
            tensor_mor[f][h] = *lifts
                .get(&key)
                .ok_or_else(|| missing(format!("tensor of {} and {}", morphisms[f].label, morphisms[h].label)))?;
        }
    }
    let unit_coalg = Coalgebra {
        carrier: c.unit(),
        gamma: g.eta(),
    };
    let unit = *index.get(&unit_coalg).ok_or_else(|| missing("unit coalgebra".into()))?;
    let identity = (0..n)
        .map(|i| {
            lifts
                .get(&(i, i, c.id(coalgs[i].carrier)))
                .copied()
                .ok_or_else(|| missing("identity".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let cofree = (0..c.n_objects())
        .map(|a| {
            index
                .get(&Coalgebra {
                    carrier: g.ob(a),
                    gamma: g.delta(a),
                })
                .copied()
                .ok_or_else(|| missing(format!("cofree coalgebra on {}", c.object_label(a))))
        })
        .collect::<Result<Vec<_>>>()?;
    let category =
        FiniteMonoidalCategory::from_tables(labels, morphisms, Some(identity), compose, tensor_ob, tensor_mor, unit)?;
    Ok(EmCategory {
        category,
        coalgebras: coalgs,
        base,
        cofree,
    })
}

/// `U ⊣ R` on the nose: the forgetful functor is strict monoidal, and
/// `h ↦ ε ∘ Uh` and `f ↦ Gf ∘ γ` are mutually inverse and natural.
pub fn check_em_adjunction(c: &FiniteMonoidalCategory, g: &ComonadData, em: &EmCategory) -> Verdict {
    let mut v = Verdict::new("em_adjunction");
    let e = &em.category;
    let ux = |x: usize| em.coalgebras[x].carrier;
    let el = |x: usize| e.object_label(x).to_string();
    let ol = |a: usize| c.object_label(a).to_string();

    v.expect(ux(e.unit()) == c.unit(), || "U does not preserve the unit".into());
    for x in 0..e.n_objects() {
        for y in 0..e.n_objects() {
            v.expect(ux(e.tensor_ob(x, y)) == c.tensor_ob(ux(x), ux(y)), || {
                format!("U does not preserve {} ⊗ {}", el(x), el(y))
            });
        }
    }
    for f in 0..e.n_morphisms() {
        for h in 0..e.n_morphisms() {
            v.expect(
                em.base[e.tensor_mor(f, h)] == c.tensor_mor(em.base[f], em.base[h]),
                || format!("U does not preserve {} ⊗ {}", e.morphism_label(f), e.morphism_label(h)),
            );
        }
    }
    for a in 0..c.n_objects() {
        v.expect(em.coalgebras[em.cofree[a]].carrier == g.ob(a), || {
            format!("U R {} ≠ G {}", ol(a), ol(a))
        });
    }

    // Φ(h) = ε_a ∘ Uh, Ψ(f) = lift of Gf ∘ γ_x
    let phi = |a: usize, h: usize| c.comp(g.epsilon(a), em.base[h]).expect("typed");
    let psi = |x: usize, a: usize, f: usize| -> Option<usize> {
        let b = c.comp(g.mor(f), em.coalgebras[x].gamma)?;
        em.lift(x, em.cofree[a], b)
    };
    for x in 0..e.n_objects() {
        for a in 0..c.n_objects() {
            let ra = em.cofree[a];
            for &h in e.hom(x, ra) {
                v.expect(psi(x, a, phi(a, h)) == Some(h), || {
                    format!("Ψ ∘ Φ ≠ id at {} for ({}, {})", e.morphism_label(h), el(x), ol(a))
                });
            }
            for &f in c.hom(ux(x), a) {
                let ok = psi(x, a, f).map(|h| phi(a, h)) == Some(f);
                v.expect(ok, || {
                    format!("Φ ∘ Ψ ≠ id at {} for ({}, {})", c.morphism_label(f), el(x), ol(a))
                });
            }
            v.count("hom_pairs", 1);
            // naturality in a: Φ(R f ∘ h) = f ∘ Φ(h)
            for b in 0..c.n_objects() {
                for &f in c.hom(a, b) {
                    let Some(rf) = em.lift(ra, em.cofree[b], g.mor(f)) else {
                        v.fail(format!("R {} is not a coalgebra morphism", c.morphism_label(f)));
                        continue;
                    };
                    for &h in e.hom(x, ra) {
                        let lhs = e.comp(rf, h).map(|k| phi(b, k));
                        v.expect(lhs == c.comp(f, phi(a, h)), || {
                            format!("Φ not natural in {} at {}", c.morphism_label(f), e.morphism_label(h))
                        });
                    }
                }
            }
            // naturality in x: Φ(h ∘ k) = Φ(h) ∘ Uk
            for y in 0..e.n_objects() {
                for &k in e.hom(y, x) {
                    for &h in e.hom(x, ra) {
                        let lhs = e.comp(h, k).map(|hk| phi(a, hk));
                        v.expect(lhs == c.comp(phi(a, h), em.base[k]), || {
                            format!("Φ not natural in {} at {}", e.morphism_label(k), e.morphism_label(h))
                        });
                    }
                }
            }
        }
    }
    v
}

/// `v_{v', (c, γ)} = μ_{v', c} ∘ (1 ⊗ γ): Gv' ⊗ c → G(v' ⊗ c)`.
pub fn fusion_map(c: &FiniteMonoidalCategory, g: &ComonadData, vprime: usize, v: Coalgebra) -> usize {
    c.comp(g.mu(vprime, v.carrier), c.tensor_mor(c.id(g.ob(vprime)), v.gamma))
        .expect("typed")
}

/// Searches an inverse of every fusion map.
pub fn check_hopf(c: &FiniteMonoidalCategory, g: &ComonadData) -> Verdict {
    let mut v = Verdict::new("check_hopf");
    let chk = check_comonad(c, g);
    if !chk.passed() {
        v.absorb("comonad", &chk);
        return v;
    }
    for x in coalgebras(c, g) {
        for &a in c.objects_canonical() {
            let f = fusion_map(c, g, a, x);
            v.expect(c.inverse(f).is_some(), || {
                format!(
                    "fusion map {} at ({}, ({}, {})) is not invertible",
                    c.morphism_label(f),
                    c.object_label(a),
                    c.object_label(x.carrier),
                    c.morphism_label(x.gamma)
                )
            });
        }
    }
    v
}

/// `check_monoidal` on the EM category plus [`check_em_adjunction`].
pub fn check_em(c: &FiniteMonoidalCategory, g: &ComonadData, em: &EmCategory) -> Verdict {
    let mut v = Verdict::new("build_em");
    v.absorb("monoidal", &check_monoidal(&em.category));
    v.absorb("adjunction", &check_em_adjunction(c, g, em));
    v
}
