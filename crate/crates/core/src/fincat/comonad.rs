use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::category::{check_monoidal, FiniteMonoidalCategory};
use crate::error::{Error, Result};
use crate::report::Verdict;

/// A monoidal comonad on a tabulated category. Absent components are `None`;
/// they make [`check_comonad`] fail rather than the load.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComonadData {
    pub object_map: Vec<Option<usize>>,
    pub morphism_map: Vec<Option<usize>>,
    /// `μ_{a,b}: Ga ⊗ Gb → G(a ⊗ b)`.
    pub mu: Vec<Vec<Option<usize>>>,
    /// `η: I → GI`.
    pub eta: Option<usize>,
    /// `δ_a: Ga → GGa`.
    pub delta: Vec<Option<usize>>,
    /// `ε_a: Ga → a`.
    pub epsilon: Vec<Option<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComonadJson {
    pub object_map: BTreeMap<String, String>,
    pub morphism_map: BTreeMap<String, String>,
    #[serde(default)]
    pub mu: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub eta: Option<String>,
    #[serde(default)]
    pub delta: BTreeMap<String, String>,
    #[serde(default)]
    pub epsilon: BTreeMap<String, String>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

impl ComonadData {
    pub fn identity(c: &FiniteMonoidalCategory) -> Self {
        let n = c.n_objects();
        ComonadData {
            object_map: (0..n).map(Some).collect(),
            morphism_map: (0..c.n_morphisms()).map(Some).collect(),
            mu: (0..n)
                .map(|a| (0..n).map(|b| Some(c.id(c.tensor_ob(a, b)))).collect())
                .collect(),
            eta: Some(c.id(c.unit())),
            delta: (0..n).map(|a| Some(c.id(a))).collect(),
            epsilon: (0..n).map(|a| Some(c.id(a))).collect(),
        }
    }

    /// On a thin category every component is the unique arrow of its type, if any.
    pub fn thin(c: &FiniteMonoidalCategory, object_map: &[usize]) -> Result<Self> {
        if !c.is_thin() {
            return Err(Error::Invalid("category is not thin".into()));
        }
        if object_map.len() != c.n_objects() || object_map.iter().any(|&a| a >= c.n_objects()) {
            return Err(malformed("object map must send every object to an object"));
        }
        let n = c.n_objects();
        let g = |a: usize| object_map[a];
        let arrow = |a: usize, b: usize| c.hom(a, b).first().copied();
        Ok(ComonadData {
            object_map: object_map.iter().map(|&a| Some(a)).collect(),
            morphism_map: (0..c.n_morphisms()).map(|f| arrow(g(c.src(f)), g(c.tgt(f)))).collect(),
            mu: (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| arrow(c.tensor_ob(g(a), g(b)), g(c.tensor_ob(a, b))))
                        .collect()
                })
                .collect(),
            eta: arrow(c.unit(), g(c.unit())),
            delta: (0..n).map(|a| arrow(g(a), g(g(a)))).collect(),
            epsilon: (0..n).map(|a| arrow(g(a), a)).collect(),
        })
    }

    pub fn from_json(c: &FiniteMonoidalCategory, j: &ComonadJson) -> Result<Self> {
        let ob = |l: &str| c.object_id(l).ok_or_else(|| malformed(format!("unknown object {l:?}")));
        let mo = |l: &str| {
            c.morphism_id(l)
                .ok_or_else(|| malformed(format!("unknown morphism {l:?}")))
        };
        let (n, m) = (c.n_objects(), c.n_morphisms());
        let mut g = ComonadData {
            object_map: vec![None; n],
            morphism_map: vec![None; m],
            mu: vec![vec![None; n]; n],
            eta: j.eta.as_deref().map(mo).transpose()?,
            delta: vec![None; n],
            epsilon: vec![None; n],
        };
        for (a, b) in &j.object_map {
            g.object_map[ob(a)?] = Some(ob(b)?);
        }
        for (f, h) in &j.morphism_map {
            g.morphism_map[mo(f)?] = Some(mo(h)?);
        }
        for (a, row) in &j.mu {
            for (b, f) in row {
                g.mu[ob(a)?][ob(b)?] = Some(mo(f)?);
            }
        }
        for (a, f) in &j.delta {
            g.delta[ob(a)?] = Some(mo(f)?);
        }
        for (a, f) in &j.epsilon {
            g.epsilon[ob(a)?] = Some(mo(f)?);
        }
        Ok(g)
    }

    pub fn to_json(&self, c: &FiniteMonoidalCategory) -> ComonadJson {
        let ol = |a: usize| c.object_label(a).to_string();
        let ml = |f: usize| c.morphism_label(f).to_string();
        let per_object = |v: &[Option<usize>]| -> BTreeMap<String, String> {
            v.iter()
                .enumerate()
                .filter_map(|(a, f)| f.map(|f| (ol(a), ml(f))))
                .collect()
        };
        ComonadJson {
            object_map: self
                .object_map
                .iter()
                .enumerate()
                .filter_map(|(a, b)| b.map(|b| (ol(a), ol(b))))
                .collect(),
            morphism_map: self
                .morphism_map
                .iter()
                .enumerate()
                .filter_map(|(f, h)| h.map(|h| (ml(f), ml(h))))
                .collect(),
            mu: self
                .mu
                .iter()
                .enumerate()
                .map(|(a, row)| (ol(a), per_object(row)))
                .filter(|(_, r)| !r.is_empty())
                .collect(),
            eta: self.eta.map(ml),
            delta: per_object(&self.delta),
            epsilon: per_object(&self.epsilon),
        }
    }

    /// `G` on objects; panics on a partial map, so only call after [`check_comonad`].
    pub fn ob(&self, a: usize) -> usize {
        self.object_map[a].expect("checked comonad")
    }

    pub fn mor(&self, f: usize) -> usize {
        self.morphism_map[f].expect("checked comonad")
    }

    pub fn mu(&self, a: usize, b: usize) -> usize {
        self.mu[a][b].expect("checked comonad")
    }

    pub fn eta(&self) -> usize {
        self.eta.expect("checked comonad")
    }

    pub fn delta(&self, a: usize) -> usize {
        self.delta[a].expect("checked comonad")
    }

    pub fn epsilon(&self, a: usize) -> usize {
        self.epsilon[a].expect("checked comonad")
    }
}

/// Functoriality, naturality of `ε, δ, μ`, the comonoid laws, and the monoidal
/// compatibilities of `μ, η` with themselves and with `ε, δ`.
pub fn check_comonad(c: &FiniteMonoidalCategory, g: &ComonadData) -> Verdict {
    let mut v = Verdict::new("check_comonad");
    let cat = check_monoidal(c);
    if !cat.passed() {
        v.absorb("category", &cat);
        return v;
    }
    let (n, m) = (c.n_objects(), c.n_morphisms());
    if g.object_map.len() != n
        || g.morphism_map.len() != m
        || g.mu.len() != n
        || g.delta.len() != n
        || g.epsilon.len() != n
    {
        v.fail("comonad tables have the wrong size");
        return v;
    }
    let ol = |a: usize| c.object_label(a).to_string();
    let ml = |f: usize| c.morphism_label(f).to_string();
    for a in 0..n {
        v.expect(g.object_map[a].is_some(), || {
            format!("object map undefined at {}", ol(a))
        });
    }
    for f in 0..m {
        v.expect(g.morphism_map[f].is_some(), || {
            format!("morphism map undefined at {}", ml(f))
        });
    }
    if !v.passed() {
        return v;
    }
    let go = |a: usize| g.ob(a);
    let gm = |f: usize| g.mor(f);
    let typed = |f: usize, a: usize, b: usize| c.src(f) == a && c.tgt(f) == b;

    // functor
    for f in 0..m {
        v.expect(typed(gm(f), go(c.src(f)), go(c.tgt(f))), || {
            format!("G{} has the wrong type", ml(f))
        });
    }
    for a in 0..n {
        v.expect(gm(c.id(a)) == c.id(go(a)), || {
            format!("G does not preserve id_{}", ol(a))
        });
    }
    for f in 0..m {
        for h in 0..m {
            if let Some(hf) = c.comp(h, f) {
                v.expect(c.comp(gm(h), gm(f)) == Some(gm(hf)), || {
                    format!("G does not preserve {} ∘ {}", ml(h), ml(f))
                });
            }
        }
    }
    if !v.passed() {
        return v;
    }

    // components present and typed
    let mut component = |name: &str, f: Option<usize>, a: usize, b: usize, at: String| -> Option<usize> {
        match f {
            None => {
                v.fail(format!("{name} missing at {at}"));
                None
            }
            Some(f) if !typed(f, a, b) => {
                v.fail(format!("{name} at {at} is {} and has the wrong type", ml(f)));
                None
            }
            Some(f) => {
                v.count("checked", 1);
                Some(f)
            }
        }
    };
    let eps: Vec<Option<usize>> = (0..n)
        .map(|a| component("epsilon", g.epsilon[a], go(a), a, ol(a)))
        .collect();
    let del: Vec<Option<usize>> = (0..n)
        .map(|a| component("delta", g.delta[a], go(a), go(go(a)), ol(a)))
        .collect();
    let mu: Vec<Vec<Option<usize>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    component(
                        "mu",
                        g.mu[a][b],
                        c.tensor_ob(go(a), go(b)),
                        go(c.tensor_ob(a, b)),
                        format!("({}, {})", ol(a), ol(b)),
                    )
                })
                .collect()
        })
        .collect();
    let u = c.unit();
    let eta = component("eta", g.eta, u, go(u), "the unit".into());

    // an equation between two composites; skipped when a side involves a missing component
    let mut eq = |lhs: Option<usize>, rhs: Option<usize>, what: &dyn Fn() -> String| {
        if let (Some(l), Some(r)) = (lhs, rhs) {
            v.expect(l == r, || format!("{} ({} ≠ {})", what(), ml(l), ml(r)));
        }
    };
    let path = |fs: &[Option<usize>]| -> Option<usize> {
        let fs: Option<Vec<usize>> = fs.iter().copied().collect();
        c.path(&fs?)
    };
    let t = |f: Option<usize>, h: Option<usize>| Some(c.tensor_mor(f?, h?));

    for f in 0..m {
        let (a, b) = (c.src(f), c.tgt(f));
        eq(path(&[eps[a], Some(f)]), path(&[Some(gm(f)), eps[b]]), &|| {
            format!("epsilon not natural at {}", ml(f))
        });
        eq(path(&[del[a], Some(gm(gm(f)))]), path(&[Some(gm(f)), del[b]]), &|| {
            format!("delta not natural at {}", ml(f))
        });
    }
    for f in 0..m {
        for h in 0..m {
            let (a, b, a2, b2) = (c.src(f), c.tgt(f), c.src(h), c.tgt(h));
            eq(
                path(&[mu[a][a2], Some(gm(c.tensor_mor(f, h)))]),
                path(&[Some(c.tensor_mor(gm(f), gm(h))), mu[b][b2]]),
                &|| format!("mu not natural at ({}, {})", ml(f), ml(h)),
            );
        }
    }
    for a in 0..n {
        let ga = go(a);
        let id_ga = Some(c.id(ga));
        eq(path(&[del[a], eps[ga]]), id_ga, &|| {
            format!("counit law ε_G ∘ δ = id fails at {}", ol(a))
        });
        eq(path(&[del[a], eps[a].map(gm)]), id_ga, &|| {
            format!("counit law Gε ∘ δ = id fails at {}", ol(a))
        });
        eq(path(&[del[a], del[ga]]), path(&[del[a], del[a].map(gm)]), &|| {
            format!("coassociativity fails at {}", ol(a))
        });
    }
    for a in 0..n {
        let ida = Some(c.id(go(a)));
        eq(path(&[t(eta, ida), mu[u][a]]), ida, &|| {
            format!("left unit law of mu fails at {}", ol(a))
        });
        eq(path(&[t(ida, eta), mu[a][u]]), ida, &|| {
            format!("right unit law of mu fails at {}", ol(a))
        });
        for b in 0..n {
            let ab = c.tensor_ob(a, b);
            for d in 0..n {
                let bd = c.tensor_ob(b, d);
                eq(
                    path(&[t(mu[a][b], Some(c.id(go(d)))), mu[ab][d]]),
                    path(&[t(ida, mu[b][d]), mu[a][bd]]),
                    &|| format!("associativity of mu fails at ({}, {}, {})", ol(a), ol(b), ol(d)),
                );
            }
            eq(path(&[mu[a][b], eps[ab]]), t(eps[a], eps[b]), &|| {
                format!("epsilon not monoidal at ({}, {})", ol(a), ol(b))
            });
            let (ga, gb) = (go(a), go(b));
            eq(
                path(&[mu[a][b], del[ab]]),
                path(&[t(del[a], del[b]), mu[ga][gb], mu[a][b].map(gm)]),
                &|| format!("delta not monoidal at ({}, {})", ol(a), ol(b)),
            );
        }
    }
    eq(path(&[eta, eps[u]]), Some(c.id(u)), &|| {
        "epsilon not monoidal at the unit".into()
    });
    eq(path(&[eta, del[u]]), path(&[eta, eta.map(gm)]), &|| {
        "delta not monoidal at the unit".into()
    });
    v
}
