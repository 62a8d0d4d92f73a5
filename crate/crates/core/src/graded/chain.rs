use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::object::{GradedMorphism, GradedObject};
use crate::ab::{compose, AbMorphism, DirectSum};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A graded group with degree −1 maps `d_n: A_n → A_{n−1}`, not yet known to square to zero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ChainJson", into = "ChainJson")]
pub struct DifferentialFamily {
    underlying: GradedObject,
    maps: BTreeMap<i64, AbMorphism>,
}

impl DifferentialFamily {
    pub fn new(underlying: GradedObject, maps: BTreeMap<i64, AbMorphism>) -> Result<Self> {
        for (&n, d) in &maps {
            if d.source() != underlying.get(n) || d.target() != underlying.get(n - 1) {
                return Err(Error::ObjectMismatch(format!(
                    "d_{n} must be {} -> {}, got {} -> {}",
                    underlying.get(n),
                    underlying.get(n - 1),
                    d.source(),
                    d.target()
                )));
            }
        }
        let maps = maps.into_iter().filter(|(_, d)| !d.is_zero()).collect();
        Ok(DifferentialFamily { underlying, maps })
    }

    /// Parses matrices against the underlying object.
    pub fn from_matrices(underlying: GradedObject, matrices: BTreeMap<i64, IntMatrix>) -> Result<Self> {
        let mut maps = BTreeMap::new();
        for (n, m) in matrices {
            let d = AbMorphism::new(underlying.get(n).clone(), underlying.get(n - 1).clone(), m)
                .map_err(|e| Error::Invalid(format!("differential {n}: {e}")))?;
            maps.insert(n, d);
        }
        Self::new(underlying, maps)
    }

    pub fn underlying(&self) -> &GradedObject {
        &self.underlying
    }

    pub fn maps(&self) -> &BTreeMap<i64, AbMorphism> {
        &self.maps
    }

    pub fn d(&self, n: i64) -> AbMorphism {
        self.maps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| AbMorphism::zero(self.underlying.get(n), self.underlying.get(n - 1)))
    }

    /// Degrees `n` with `d_{n−1} ∘ d_n ≠ 0`.
    pub fn square_defects(&self) -> Vec<i64> {
        self.maps
            .iter()
            .filter(|(&n, d)| {
                self.maps
                    .get(&(n - 1))
                    .is_some_and(|e| !compose(e, d).expect("typed by construction").is_zero())
            })
            .map(|(&n, _)| n)
            .collect()
    }
}

/// A bounded chain complex, homological grading.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ChainJson", into = "ChainJson")]
pub struct ChainComplex {
    family: DifferentialFamily,
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
    components: BTreeMap<i64, crate::ab::AbObject>,
    #[serde(default)]
    differentials: BTreeMap<i64, IntMatrix>,
}

impl TryFrom<ChainJson> for ChainComplex {
    type Error = Error;

    fn try_from(j: ChainJson) -> Result<Self> {
        ChainComplex::try_from(DifferentialFamily::try_from(j)?)
    }
}

impl From<ChainComplex> for ChainJson {
    fn from(c: ChainComplex) -> Self {
        c.family.into()
    }
}

impl TryFrom<ChainJson> for DifferentialFamily {
    type Error = Error;

    fn try_from(j: ChainJson) -> Result<Self> {
        DifferentialFamily::from_matrices(GradedObject::new(j.components), j.differentials)
    }
}

impl From<DifferentialFamily> for ChainJson {
    fn from(f: DifferentialFamily) -> Self {
        ChainJson {
            components: f.underlying.components().clone(),
            differentials: f.maps.into_iter().map(|(n, d)| (n, d.into_matrix())).collect(),
        }
    }
}

impl TryFrom<DifferentialFamily> for ChainComplex {
    type Error = Error;

    fn try_from(family: DifferentialFamily) -> Result<Self> {
        let bad = family.square_defects();
        if let Some(n) = bad.first() {
            return Err(Error::Invalid(format!("d_{} ∘ d_{n} ≠ 0", n - 1)));
        }
        Ok(ChainComplex { family })
    }
}

impl ChainComplex {
    pub fn new(underlying: GradedObject, differentials: BTreeMap<i64, AbMorphism>) -> Result<Self> {
        Self::try_from(DifferentialFamily::new(underlying, differentials)?)
    }

    /// Zero differential.
    pub fn trivial(underlying: GradedObject) -> Self {
        ChainComplex {
            family: DifferentialFamily {
                underlying,
                maps: BTreeMap::new(),
            },
        }
    }

    pub fn zero() -> Self {
        Self::trivial(GradedObject::zero())
    }

    pub fn unit() -> Self {
        Self::trivial(GradedObject::unit())
    }

    pub fn underlying(&self) -> &GradedObject {
        &self.family.underlying
    }

    pub fn differentials(&self) -> &BTreeMap<i64, AbMorphism> {
        &self.family.maps
    }

    pub fn d(&self, n: i64) -> AbMorphism {
        self.family.d(n)
    }

    pub fn family(&self) -> &DifferentialFamily {
        &self.family
    }

    pub fn into_family(self) -> DifferentialFamily {
        self.family
    }

    /// `x ⊕ y`, degreewise.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let degrees: std::collections::BTreeSet<i64> = self
            .underlying()
            .support()
            .chain(other.underlying().support())
            .collect();
        let sums: BTreeMap<i64, DirectSum> = degrees
            .iter()
            .map(|&n| {
                (
                    n,
                    DirectSum::new(vec![
                        self.underlying().get(n).clone(),
                        other.underlying().get(n).clone(),
                    ]),
                )
            })
            .collect();
        let underlying = GradedObject::from_pairs(sums.iter().map(|(&n, s)| (n, s.object().clone())));
        let mut maps = BTreeMap::new();
        for (&n, s) in &sums {
            let Some(t) = sums.get(&(n - 1)) else { continue };
            let (d0, d1) = (self.d(n), other.d(n));
            let m = t
                .assemble_between(s, &[(0, 0, &d0), (1, 1, &d1)])
                .expect("blocks typed");
            maps.insert(n, m);
        }
        ChainComplex::new(underlying, maps).expect("sum of complexes is a complex")
    }

    /// Whether `f: self → other` (a graded map of underlying objects) commutes with differentials.
    pub fn is_chain_map(&self, other: &ChainComplex, f: &GradedMorphism) -> bool {
        is_chain_map_family(self.family(), other.family(), f)
    }
}

pub(crate) fn is_chain_map_family(x: &DifferentialFamily, y: &DifferentialFamily, f: &GradedMorphism) -> bool {
    if f.source() != x.underlying() || f.target() != y.underlying() {
        return false;
    }
    let degrees: std::collections::BTreeSet<i64> = x.underlying().support().collect();
    degrees.into_iter().all(|n| {
        let lhs = compose(&y.d(n), &f.component(n)).expect("typed");
        let rhs = compose(&f.component(n - 1), &x.d(n)).expect("typed");
        lhs == rhs
    })
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} with d = {:?}", self.family.underlying, self.family.maps)
    }
}

impl fmt::Debug for DifferentialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} with d = {:?}", self.underlying, self.maps)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ab::AbObject;

    pub(crate) fn times(k: i64) -> ChainComplex {
        let g = GradedObject::from_pairs([(1, AbObject::unit()), (0, AbObject::unit())]);
        ChainComplex::new(g, BTreeMap::from([(1, AbMorphism::scalar(k))])).unwrap()
    }

    #[test]
    fn json_roundtrip() {
        let x = times(2);
        let s = serde_json::to_string(&x).unwrap();
        assert!(
            s.contains(r#""differentials":{"1":{"rows":1,"cols":1,"entries":[[2]]}}"#),
            "{s}"
        );
        let back: ChainComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn rejects_nonzero_square() {
        let g = GradedObject::from_pairs([(2, AbObject::unit()), (1, AbObject::unit()), (0, AbObject::unit())]);
        let fam = DifferentialFamily::new(
            g,
            BTreeMap::from([(2, AbMorphism::scalar(1)), (1, AbMorphism::scalar(1))]),
        )
        .unwrap();
        assert_eq!(fam.square_defects(), vec![2]);
        assert!(ChainComplex::try_from(fam).is_err());
    }

    #[test]
    fn sums() {
        let x = times(2).direct_sum(&times(3));
        assert_eq!(x.underlying().get(1), &AbObject::free(2));
        assert!(!x.d(1).is_zero());
    }
}
