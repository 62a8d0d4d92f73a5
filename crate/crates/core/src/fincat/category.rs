use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Morphism {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite strict monoidal category given by tables.
///
/// `compose[g][f]` is `g ∘ f` (or `None` when not composable); objects and
/// morphisms are referred to by index, labels only matter for I/O and for the
/// canonical search order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoidalCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    compose: Vec<Vec<Option<usize>>>,
    identity: Vec<usize>,
    tensor_ob: Vec<Vec<usize>>,
    tensor_mor: Vec<Vec<usize>>,
    unit: usize,
    hom: Vec<Vec<Vec<usize>>>,
    canonical: Vec<usize>,
    object_ids: HashMap<String, usize>,
    morphism_ids: HashMap<String, usize>,
}

/// The JSON form. `identity` may be omitted and is then inferred from `compose`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    /// `[label, source, target]`.
    pub morphisms: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<BTreeMap<String, String>>,
    pub compose: Vec<Vec<Option<String>>>,
    pub tensor_ob: Vec<Vec<String>>,
    pub tensor_mor: Vec<Vec<String>>,
    pub unit: String,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn index_labels(kind: &str, labels: impl Iterator<Item = String>) -> Result<HashMap<String, usize>> {
    let mut ids = HashMap::new();
    for (i, l) in labels.enumerate() {
        if ids.insert(l.clone(), i).is_some() {
            return Err(malformed(format!("duplicate {kind} label {l:?}")));
        }
    }
    Ok(ids)
}

fn square<T>(name: &str, t: &[Vec<T>], n: usize) -> Result<()> {
    if t.len() != n || t.iter().any(|r| r.len() != n) {
        return Err(malformed(format!("{name} must be a {n}×{n} table")));
    }
    Ok(())
}

impl FiniteMonoidalCategory {
    /// Builds from index tables. `identity = None` infers identities from `compose`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Option<Vec<usize>>,
        compose: Vec<Vec<Option<usize>>>,
        tensor_ob: Vec<Vec<usize>>,
        tensor_mor: Vec<Vec<usize>>,
        unit: usize,
    ) -> Result<Self> {
        let (n, m) = (objects.len(), morphisms.len());
        let object_ids = index_labels("object", objects.iter().cloned())?;
        let morphism_ids = index_labels("morphism", morphisms.iter().map(|f| f.label.clone()))?;
        square("compose", &compose, m)?;
        square("tensor_ob", &tensor_ob, n)?;
        square("tensor_mor", &tensor_mor, m)?;
        if unit >= n {
            return Err(malformed("unit is not an object"));
        }
        if morphisms.iter().any(|f| f.source >= n || f.target >= n)
            || tensor_ob.iter().flatten().any(|&a| a >= n)
            || tensor_mor.iter().flatten().any(|&f| f >= m)
            || compose.iter().flatten().flatten().any(|&f| f >= m)
        {
            return Err(malformed("table entry out of range"));
        }
        let identity = match identity {
            Some(id) => {
                if id.len() != n || id.iter().any(|&i| i >= m) {
                    return Err(malformed("identity table must name one morphism per object"));
                }
                id
            }
            None => (0..n)
                .map(|a| {
                    (0..m)
                        .find(|&i| {
                            morphisms[i].source == a
                                && morphisms[i].target == a
                                && (0..m).all(|f| {
                                    (morphisms[f].target != a || compose[i][f] == Some(f))
                                        && (morphisms[f].source != a || compose[f][i] == Some(f))
                                })
                        })
                        .ok_or_else(|| malformed(format!("no identity on object {:?}", objects[a])))
                })
                .collect::<Result<_>>()?,
        };
        let mut hom = vec![vec![Vec::new(); n]; n];
        for (i, f) in morphisms.iter().enumerate() {
            hom[f.source][f.target].push(i);
        }
        for row in &mut hom {
            for h in row {
                h.sort_by(|&x, &y| morphisms[x].label.cmp(&morphisms[y].label));
            }
        }
        let mut canonical: Vec<usize> = (0..n).collect();
        canonical.sort_by(|&x, &y| objects[x].cmp(&objects[y]));
        Ok(FiniteMonoidalCategory {
            objects,
            morphisms,
            compose,
            identity,
            tensor_ob,
            tensor_mor,
            unit,
            hom,
            canonical,
            object_ids,
            morphism_ids,
        })
    }

    pub fn from_json(j: &CategoryJson) -> Result<Self> {
        let oid = index_labels("object", j.objects.iter().cloned())?;
        let ob = |l: &String| {
            oid.get(l)
                .copied()
                .ok_or_else(|| malformed(format!("unknown object {l:?}")))
        };
        let morphisms: Vec<Morphism> = j
            .morphisms
            .iter()
            .map(|(l, s, t)| {
                Ok(Morphism {
                    label: l.clone(),
                    source: ob(s)?,
                    target: ob(t)?,
                })
            })
            .collect::<Result<_>>()?;
        let mid = index_labels("morphism", morphisms.iter().map(|f| f.label.clone()))?;
        let mo = |l: &String| {
            mid.get(l)
                .copied()
                .ok_or_else(|| malformed(format!("unknown morphism {l:?}")))
        };
        let compose = j
            .compose
            .iter()
            .map(|r| r.iter().map(|e| e.as_ref().map(mo).transpose()).collect())
            .collect::<Result<_>>()?;
        let tensor_ob = j
            .tensor_ob
            .iter()
            .map(|r| r.iter().map(ob).collect())
            .collect::<Result<_>>()?;
        let tensor_mor = j
            .tensor_mor
            .iter()
            .map(|r| r.iter().map(mo).collect())
            .collect::<Result<_>>()?;
        let identity = match &j.identity {
            None => None,
            Some(map) => {
                let mut id = vec![usize::MAX; j.objects.len()];
                for (a, f) in map {
                    id[ob(a)?] = mo(f)?;
                }
                if let Some(a) = id.iter().position(|&i| i == usize::MAX) {
                    return Err(malformed(format!("identity missing for object {:?}", j.objects[a])));
                }
                Some(id)
            }
        };
        Self::from_tables(
            j.objects.clone(),
            morphisms,
            identity,
            compose,
            tensor_ob,
            tensor_mor,
            ob(&j.unit)?,
        )
    }

    pub fn to_json(&self) -> CategoryJson {
        let ml = |f: usize| self.morphisms[f].label.clone();
        let ol = |a: usize| self.objects[a].clone();
        CategoryJson {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|f| (f.label.clone(), ol(f.source), ol(f.target)))
                .collect(),
            identity: Some(self.identity.iter().enumerate().map(|(a, &f)| (ol(a), ml(f))).collect()),
            compose: self
                .compose
                .iter()
                .map(|r| r.iter().map(|e| e.map(ml)).collect())
                .collect(),
            tensor_ob: self
                .tensor_ob
                .iter()
                .map(|r| r.iter().map(|&a| ol(a)).collect())
                .collect(),
            tensor_mor: self
                .tensor_mor
                .iter()
                .map(|r| r.iter().map(|&f| ml(f)).collect())
                .collect(),
            unit: ol(self.unit),
        }
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_label(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn morphism_label(&self, f: usize) -> &str {
        &self.morphisms[f].label
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn object_id(&self, label: &str) -> Option<usize> {
        self.object_ids.get(label).copied()
    }

    pub fn morphism_id(&self, label: &str) -> Option<usize> {
        self.morphism_ids.get(label).copied()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].source
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].target
    }

    pub fn id(&self, a: usize) -> usize {
        self.identity[a]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// `g ∘ f`, if the table defines it.
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// Composite of a path given in application order (`fs[0]` first).
    pub fn path(&self, fs: &[usize]) -> Option<usize> {
        let (&first, rest) = fs.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.comp(g, acc))
    }

    pub fn tensor_ob(&self, a: usize, b: usize) -> usize {
        self.tensor_ob[a][b]
    }

    pub fn tensor_mor(&self, f: usize, g: usize) -> usize {
        self.tensor_mor[f][g]
    }

    /// Morphisms `a → b` in label order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// Objects in label order.
    pub fn objects_canonical(&self) -> &[usize] {
        &self.canonical
    }

    pub fn is_thin(&self) -> bool {
        self.hom.iter().flatten().all(|h| h.len() <= 1)
    }

    /// `f` is invertible.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.comp(g, f) == Some(self.id(a)) && self.comp(f, g) == Some(self.id(b)))
    }

    pub fn isomorphic(&self, a: usize, b: usize) -> bool {
        self.hom(a, b).iter().any(|&f| self.inverse(f).is_some())
    }

    fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.n_morphisms();
        let mut out = Vec::new();
        for f in 0..m {
            for g in 0..m {
                if self.tgt(f) == self.src(g) {
                    out.push((f, g));
                }
            }
        }
        out
    }
}

/// All category and strict-monoidal axioms, each failure naming its witnesses.
pub fn check_monoidal(c: &FiniteMonoidalCategory) -> Verdict {
    let mut v = Verdict::new("check_monoidal");
    let (n, m) = (c.n_objects(), c.n_morphisms());
    let ml = |f: usize| c.morphism_label(f).to_string();
    let ol = |a: usize| c.object_label(a).to_string();

    for f in 0..m {
        for g in 0..m {
            let composable = c.tgt(f) == c.src(g);
            match c.comp(g, f) {
                None => {
                    v.expect(!composable, || format!("composite {} ∘ {} undefined", ml(g), ml(f)));
                }
                Some(h) => {
                    if v.expect(composable, || {
                        format!("composite {} ∘ {} defined but not composable", ml(g), ml(f))
                    }) {
                        v.expect(c.src(h) == c.src(f) && c.tgt(h) == c.tgt(g), || {
                            format!("composite {} ∘ {} = {} has the wrong type", ml(g), ml(f), ml(h))
                        });
                    }
                }
            }
        }
    }
    for a in 0..n {
        let i = c.id(a);
        v.expect(c.src(i) == a && c.tgt(i) == a, || {
            format!("identity {} is not an endomorphism of {}", ml(i), ol(a))
        });
    }
    for f in 0..m {
        v.expect(
            c.comp(c.id(c.tgt(f)), f) == Some(f) && c.comp(f, c.id(c.src(f))) == Some(f),
            || format!("identities are not neutral for {}", ml(f)),
        );
    }
    let pairs = c.composable_pairs();
    for &(f, g) in &pairs {
        for h in c.hom[c.tgt(g)].iter().flatten().copied() {
            let left = c.comp(g, f).and_then(|gf| c.comp(h, gf));
            let right = c.comp(h, g).and_then(|hg| c.comp(hg, f));
            v.expect(left == right, || {
                format!("associativity fails on ({}, {}, {})", ml(f), ml(g), ml(h))
            });
        }
    }

    let t = |a, b| c.tensor_ob(a, b);
    let u = c.unit();
    for a in 0..n {
        v.expect(t(u, a) == a && t(a, u) == a, || {
            format!("unit is not neutral for object {}", ol(a))
        });
        for b in 0..n {
            for d in 0..n {
                v.expect(t(t(a, b), d) == t(a, t(b, d)), || {
                    format!(
                        "tensor associativity fails on objects ({}, {}, {})",
                        ol(a),
                        ol(b),
                        ol(d)
                    )
                });
            }
        }
    }
    let tm = |f, g| c.tensor_mor(f, g);
    for f in 0..m {
        for g in 0..m {
            let h = tm(f, g);
            v.expect(
                c.src(h) == t(c.src(f), c.src(g)) && c.tgt(h) == t(c.tgt(f), c.tgt(g)),
                || format!("{} ⊗ {} = {} has the wrong type", ml(f), ml(g), ml(h)),
            );
        }
    }
    let iu = c.id(u);
    for f in 0..m {
        v.expect(tm(iu, f) == f && tm(f, iu) == f, || {
            format!("id_unit is not neutral for {}", ml(f))
        });
        for g in 0..m {
            for h in 0..m {
                v.expect(tm(tm(f, g), h) == tm(f, tm(g, h)), || {
                    format!("tensor associativity fails on ({}, {}, {})", ml(f), ml(g), ml(h))
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            v.expect(tm(c.id(a), c.id(b)) == c.id(t(a, b)), || {
                format!("id_{} ⊗ id_{} is not an identity", ol(a), ol(b))
            });
        }
    }
    for &(f, g) in &pairs {
        for &(f2, g2) in &pairs {
            let left = match (c.comp(g, f), c.comp(g2, f2)) {
                (Some(x), Some(y)) => Some(tm(x, y)),
                _ => None,
            };
            let right = c.comp(tm(g, g2), tm(f, f2));
            v.expect(left == right, || {
                format!(
                    "interchange fails on ({} ∘ {}) ⊗ ({} ∘ {})",
                    ml(g),
                    ml(f),
                    ml(g2),
                    ml(f2)
                )
            });
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures;
    use crate::report::Status;

    #[test]
    fn fixtures_pass() {
        for (name, c) in fixtures::shipped_categories() {
            let v = check_monoidal(&c);
            assert!(v.passed(), "{name}: {:?}", v.details);
        }
    }

    #[test]
    fn trivial_category() {
        let c = fixtures::trivial();
        assert_eq!((c.n_objects(), c.n_morphisms()), (1, 1));
        assert_eq!(check_monoidal(&c).status, Status::Pass);
    }

    #[test]
    fn broken_associativity_is_named() {
        let mut j = fixtures::cyclic_monoid(3).to_json();
        // r^1 ∘ r^2 = r^0 in ℤ/3; break it on one triple
        j.compose[1][2] = Some("r^1".into());
        let c = FiniteMonoidalCategory::from_json(&j).unwrap();
        let v = check_monoidal(&c);
        assert_eq!(v.status, Status::Fail);
        assert!(
            v.details.iter().any(|d| d.starts_with("associativity fails on")),
            "{:?}",
            v.details
        );
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let c = fixtures::powerset(2);
        let j = c.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: CategoryJson = serde_json::from_str(&text).unwrap();
        assert_eq!(FiniteMonoidalCategory::from_json(&back).unwrap(), c);
        let mut no_id = j.clone();
        no_id.identity = None;
        assert_eq!(FiniteMonoidalCategory::from_json(&no_id).unwrap(), c);
        let mut bad = j.clone();
        bad.unit = "nowhere".into();
        assert!(matches!(
            FiniteMonoidalCategory::from_json(&bad),
            Err(Error::Malformed(_))
        ));
        let mut bad = j;
        bad.tensor_ob.pop();
        assert!(matches!(
            FiniteMonoidalCategory::from_json(&bad),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn powerset_sizes() {
        let c = fixtures::powerset(2);
        assert_eq!((c.n_objects(), c.n_morphisms()), (4, 9));
        assert!(c.is_thin());
        let c = fixtures::powerset(3);
        assert_eq!((c.n_objects(), c.n_morphisms()), (8, 27));
    }
}
