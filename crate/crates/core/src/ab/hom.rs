use super::construct::normalize_orders;
use super::morphism::AbMorphism;
use super::object::AbObject;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::IntMatrix;

/// `hom(source, target)` as a canonical group together with a generator
/// morphism for each of its canonical generators.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub source: AbObject,
    pub target: AbObject,
    pub object: AbObject,
    pub generators: Vec<AbMorphism>,
}

/// Closed form: `hom(Z/o, Z/t) = Z/gcd(o,t)` generated by `t/gcd`, `hom(Z/o, Z) = 0`,
/// `hom(Z, Z/t) = Z/t`, `hom(Z, Z) = Z`, summed over generator pairs and normalised.
pub fn hom_group(source: &AbObject, target: &AbObject) -> HomGroup {
    // raw generator: (target row, source column, scalar, order)
    let mut raw: Vec<(usize, usize, Int, Int)> = Vec::new();
    for i in 0..target.gens() {
        let t = target.order(i);
        for j in 0..source.gens() {
            let o = source.order(j);
            match (o.is_zero(), t.is_zero()) {
                (true, _) => raw.push((i, j, Int::ONE, t.clone())),
                (false, true) => {}
                (false, false) => {
                    let g = o.gcd(t);
                    raw.push((i, j, t.div_floor(&g), g));
                }
            }
        }
    }
    let orders: Vec<Int> = raw.iter().map(|r| r.3.clone()).collect();
    let p = normalize_orders(&orders);
    let from = p.change.from_canonical(raw.len());
    let generators = (0..p.object.gens())
        .map(|k| {
            let mut m = IntMatrix::zeros(target.gens(), source.gens());
            for (r, (i, j, s, _)) in raw.iter().enumerate() {
                let c = from.get(r, k);
                if !c.is_zero() {
                    m.get_mut(*i, *j).add_mul(c, s);
                }
            }
            AbMorphism::from_raw(source.clone(), target.clone(), m)
        })
        .collect();
    HomGroup {
        source: source.clone(),
        target: target.clone(),
        object: p.object,
        generators,
    }
}

impl HomGroup {
    /// `Σ coeffs[k] · generators[k]`.
    pub fn element(&self, coeffs: &[Int]) -> Result<AbMorphism> {
        if coeffs.len() != self.generators.len() {
            return Err(Error::Shape(format!(
                "hom group has {} generators, got {} coefficients",
                self.generators.len(),
                coeffs.len()
            )));
        }
        let mut m = IntMatrix::zeros(self.target.gens(), self.source.gens());
        for (c, g) in coeffs.iter().zip(&self.generators) {
            if !c.is_zero() {
                m = m.add(&g.matrix().scale(c))?;
            }
        }
        Ok(AbMorphism::from_raw(self.source.clone(), self.target.clone(), m))
    }

    pub fn is_finite(&self) -> bool {
        self.object.free_rank() == 0
    }

    /// Number of elements, if finite and small enough to count in `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.object
            .torsion()
            .iter()
            .try_fold(1u64, |acc, t| acc.checked_mul(t.to_i64()? as u64))
    }

    /// All elements of a finite hom group, in lexicographic coefficient order.
    pub fn enumerate(&self, limit: u64) -> Result<Vec<AbMorphism>> {
        let n = self
            .cardinality()
            .ok_or_else(|| Error::TooLarge(format!("hom({}, {}) is infinite", self.source, self.target)))?;
        if n > limit {
            return Err(Error::TooLarge(format!(
                "hom({}, {}) has {n} elements, limit is {limit}",
                self.source, self.target
            )));
        }
        let orders: Vec<i64> = self.object.torsion().iter().map(|t| t.to_i64().unwrap()).collect();
        let mut out = Vec::with_capacity(n as usize);
        let mut digits = vec![0i64; orders.len()];
        loop {
            let coeffs: Vec<Int> = digits.iter().map(|&d| Int::from(d)).collect();
            out.push(self.element(&coeffs)?);
            let mut pos = orders.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < orders[pos] {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ab::morphism::respects_relations;

    /// Brute-force oracle: all matrices with entries in a box that descend to maps.
    fn brute_count(a: &AbObject, b: &AbObject, bound: i64) -> usize {
        let cells = a.gens() * b.gens();
        let span = (2 * bound + 1) as usize;
        let mut seen = std::collections::BTreeSet::new();
        for code in 0..span.pow(cells as u32) {
            let mut c = code;
            let mut m = IntMatrix::zeros(b.gens(), a.gens());
            for i in 0..b.gens() {
                for j in 0..a.gens() {
                    m.set(i, j, Int::from((c % span) as i64 - bound));
                    c /= span;
                }
            }
            if respects_relations(a, b, &m) {
                seen.insert(format!("{:?}", AbMorphism::new(a.clone(), b.clone(), m).unwrap()));
            }
        }
        seen.len()
    }

    #[test]
    fn closed_form_examples() {
        let h = hom_group(&AbObject::cyclic(4), &AbObject::cyclic(6));
        assert_eq!(h.object, AbObject::cyclic(2));
        assert_eq!(h.generators[0].matrix().get(0, 0), &Int::from(3));
        assert!(hom_group(&AbObject::cyclic(5), &AbObject::unit()).object.is_zero());
        assert_eq!(
            hom_group(&AbObject::unit(), &AbObject::cyclic(7)).object,
            AbObject::cyclic(7)
        );
        assert_eq!(
            hom_group(&AbObject::free(2), &AbObject::free(3)).object,
            AbObject::free(6)
        );
    }

    #[test]
    fn matches_brute_force() {
        let objs = [
            AbObject::cyclic(2),
            AbObject::cyclic(4),
            AbObject::cyclic(6),
            AbObject::new(0, vec![Int::from(2), Int::from(2)]).unwrap(),
        ];
        for a in &objs {
            for b in &objs {
                let h = hom_group(a, b);
                let n = h.cardinality().unwrap() as usize;
                assert_eq!(n, brute_count(a, b, 3), "{a} -> {b}");
                let all = h.enumerate(1000).unwrap();
                let distinct: std::collections::BTreeSet<_> = all.iter().map(|f| format!("{f:?}")).collect();
                assert_eq!(distinct.len(), n);
            }
        }
    }
}
