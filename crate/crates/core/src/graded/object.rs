use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ab::{compose, AbMorphism, AbObject};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A finitely supported ℤ-graded abelian group. Zero components are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "GradedJson", into = "GradedJson")]
pub struct GradedObject {
    // shared: graded objects are cloned into every morphism built on them
    components: Arc<BTreeMap<i64, AbObject>>,
}

#[derive(Serialize, Deserialize)]
struct GradedJson {
    components: BTreeMap<i64, AbObject>,
}

impl From<GradedJson> for GradedObject {
    fn from(j: GradedJson) -> Self {
        GradedObject::new(j.components)
    }
}

impl From<GradedObject> for GradedJson {
    fn from(g: GradedObject) -> Self {
        GradedJson {
            components: Arc::unwrap_or_clone(g.components),
        }
    }
}

static ZERO: std::sync::OnceLock<AbObject> = std::sync::OnceLock::new();

fn zero_object() -> &'static AbObject {
    ZERO.get_or_init(AbObject::zero)
}

impl GradedObject {
    pub fn new(components: BTreeMap<i64, AbObject>) -> Self {
        GradedObject {
            components: Arc::new(components.into_iter().filter(|(_, a)| !a.is_zero()).collect()),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `ℤ` in degree 0.
    pub fn unit() -> Self {
        Self::concentrated(0, AbObject::unit())
    }

    pub fn concentrated(degree: i64, a: AbObject) -> Self {
        Self::new(BTreeMap::from([(degree, a)]))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, AbObject)>) -> Self {
        Self::new(pairs.into_iter().collect())
    }

    pub fn get(&self, n: i64) -> &AbObject {
        self.components.get(&n).unwrap_or_else(|| zero_object())
    }

    pub fn components(&self) -> &BTreeMap<i64, AbObject> {
        &self.components
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.components.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.components.values().all(AbObject::is_free)
    }

    /// Smallest and largest degree of the support.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        Some((*self.components.keys().next()?, *self.components.keys().next_back()?))
    }

    /// Degree shift: `(a[s])_n = a_{n-s}`.
    pub fn shift(&self, s: i64) -> Self {
        GradedObject {
            components: Arc::new(self.components.iter().map(|(&n, a)| (n + s, a.clone())).collect()),
        }
    }
}

impl fmt::Display for GradedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.components.iter().map(|(n, a)| format!("{n}: {a}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for GradedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A degree-0 map of graded groups. Zero components are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GradedMorphismJson", into = "GradedMorphismJson")]
pub struct GradedMorphism {
    source: GradedObject,
    target: GradedObject,
    maps: BTreeMap<i64, AbMorphism>,
}

#[derive(Serialize, Deserialize)]
struct GradedMorphismJson {
    source: GradedObject,
    target: GradedObject,
    #[serde(default)]
    maps: BTreeMap<i64, IntMatrix>,
}

impl TryFrom<GradedMorphismJson> for GradedMorphism {
    type Error = Error;

    fn try_from(j: GradedMorphismJson) -> Result<Self> {
        let mut maps = BTreeMap::new();
        for (n, m) in j.maps {
            maps.insert(n, AbMorphism::new(j.source.get(n).clone(), j.target.get(n).clone(), m)?);
        }
        GradedMorphism::new(j.source, j.target, maps)
    }
}

impl From<GradedMorphism> for GradedMorphismJson {
    fn from(f: GradedMorphism) -> Self {
        GradedMorphismJson {
            maps: f.maps.into_iter().map(|(n, m)| (n, m.into_matrix())).collect(),
            source: f.source,
            target: f.target,
        }
    }
}

impl GradedMorphism {
    pub fn new(source: GradedObject, target: GradedObject, maps: BTreeMap<i64, AbMorphism>) -> Result<Self> {
        for (n, m) in &maps {
            if m.source() != source.get(*n) || m.target() != target.get(*n) {
                return Err(Error::ObjectMismatch(format!(
                    "degree {n}: component must be {} -> {}, got {} -> {}",
                    source.get(*n),
                    target.get(*n),
                    m.source(),
                    m.target()
                )));
            }
        }
        Ok(Self::from_parts(source, target, maps))
    }

    pub(crate) fn from_parts(source: GradedObject, target: GradedObject, maps: BTreeMap<i64, AbMorphism>) -> Self {
        GradedMorphism {
            source,
            target,
            maps: maps.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
        }
    }

    pub fn identity(a: &GradedObject) -> Self {
        GradedMorphism {
            source: a.clone(),
            target: a.clone(),
            maps: a
                .components()
                .iter()
                .map(|(&n, x)| (n, AbMorphism::identity(x)))
                .collect(),
        }
    }

    pub fn zero(source: &GradedObject, target: &GradedObject) -> Self {
        GradedMorphism {
            source: source.clone(),
            target: target.clone(),
            maps: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &GradedObject {
        &self.source
    }

    pub fn target(&self) -> &GradedObject {
        &self.target
    }

    pub fn maps(&self) -> &BTreeMap<i64, AbMorphism> {
        &self.maps
    }

    /// Component in degree `n`, zero when absent.
    pub fn component(&self, n: i64) -> AbMorphism {
        self.maps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| AbMorphism::zero(self.source.get(n), self.target.get(n)))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.maps.len() == self.source.components().len()
            && self.maps.values().all(AbMorphism::is_identity)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn add(&self, other: &GradedMorphism) -> Result<GradedMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ObjectMismatch("graded maps are not parallel".into()));
        }
        let mut maps = self.maps.clone();
        for (n, m) in &other.maps {
            let sum = match maps.get(n) {
                Some(x) => x.add(m)?,
                None => m.clone(),
            };
            maps.insert(*n, sum);
        }
        Ok(Self::from_parts(self.source.clone(), self.target.clone(), maps))
    }

    pub fn neg(&self) -> GradedMorphism {
        GradedMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|(&n, m)| (n, m.neg())).collect(),
        }
    }

    /// Degreewise two-sided inverse.
    pub fn inverse(&self) -> Option<GradedMorphism> {
        if self.source != self.target {
            return None;
        }
        let mut maps = BTreeMap::new();
        for (&n, a) in self.source.components() {
            let inv = self.component(n).inverse()?;
            debug_assert_eq!(inv.source(), a);
            maps.insert(n, inv);
        }
        Some(Self::from_parts(self.source.clone(), self.target.clone(), maps))
    }
}

/// `g ∘ f` for graded maps.
pub fn compose_graded(g: &GradedMorphism, f: &GradedMorphism) -> Result<GradedMorphism> {
    if f.target != g.source {
        return Err(Error::ObjectMismatch(format!(
            "cannot compose graded maps: {} vs {}",
            f.target, g.source
        )));
    }
    let mut maps = BTreeMap::new();
    for (n, fm) in &f.maps {
        if let Some(gm) = g.maps.get(n) {
            maps.insert(*n, compose(gm, fm)?);
        }
    }
    Ok(GradedMorphism::from_parts(f.source.clone(), g.target.clone(), maps))
}

impl fmt::Debug for GradedMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {:?}", self.source, self.target, self.maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_strings() {
        let g = GradedObject::from_pairs([(0, AbObject::free(2)), (-3, AbObject::cyclic(2)), (4, AbObject::zero())]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"components":{"-3":{"rank":0,"torsion":[2]},"0":{"rank":2,"torsion":[]}}}"#
        );
        let back: GradedObject = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert_eq!(g.support().collect::<Vec<_>>(), vec![-3, 0]);
    }

    #[test]
    fn morphism_roundtrip() {
        let a = GradedObject::from_pairs([(1, AbObject::unit()), (0, AbObject::cyclic(4))]);
        let f = GradedMorphism::identity(&a);
        let s = serde_json::to_string(&f).unwrap();
        let back: GradedMorphism = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(compose_graded(&f, &f).unwrap().is_identity());
        assert!(f.add(&f.neg()).unwrap().is_zero());
    }
}
