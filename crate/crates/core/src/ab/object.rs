use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::int::Int;

/// A finitely generated abelian group in invariant-factor form
/// `Z/d1 ⊕ … ⊕ Z/dk ⊕ Z^r` with `1 < d1 | d2 | … | dk`.
///
/// Generators are ordered torsion first, then free. Two groups are
/// isomorphic iff they are equal as values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "AbObjectJson", into = "AbObjectJson")]
pub struct AbObject {
    torsion: Vec<Int>,
    free_rank: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AbObjectJson {
    rank: usize,
    #[serde(default)]
    torsion: Vec<Int>,
}

impl TryFrom<AbObjectJson> for AbObject {
    type Error = Error;

    fn try_from(j: AbObjectJson) -> Result<Self> {
        AbObject::new(j.rank, j.torsion)
    }
}

impl From<AbObject> for AbObjectJson {
    fn from(a: AbObject) -> Self {
        AbObjectJson {
            rank: a.free_rank,
            torsion: a.torsion,
        }
    }
}

impl AbObject {
    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Result<Self> {
        if let Some(t) = torsion.iter().find(|t| **t <= Int::ONE) {
            return Err(invalid(format!("torsion coefficient {t} must be > 1")));
        }
        if let Some(w) = torsion.windows(2).find(|w| !w[0].divides(&w[1])) {
            return Err(invalid(format!(
                "torsion coefficients must form a divisor chain, but {} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(AbObject { torsion, free_rank })
    }

    pub fn zero() -> Self {
        AbObject {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    /// The monoidal unit `Z`.
    pub fn unit() -> Self {
        Self::free(1)
    }

    pub fn free(rank: usize) -> Self {
        AbObject {
            torsion: Vec::new(),
            free_rank: rank,
        }
    }

    /// `Z/n`, with `Z/0 = Z` and `Z/±1 = 0`.
    pub fn cyclic(n: i64) -> Self {
        match n.unsigned_abs() {
            0 => Self::free(1),
            1 => Self::zero(),
            m => AbObject {
                torsion: vec![Int::from(m)],
                free_rank: 0,
            },
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    /// Number of canonical generators.
    #[inline]
    pub fn gens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of generator `i`, `0` for free generators.
    #[inline]
    pub fn order(&self, i: usize) -> &Int {
        self.torsion.get(i).unwrap_or(&Int::ZERO)
    }

    pub fn orders(&self) -> Vec<Int> {
        (0..self.gens()).map(|i| self.order(i).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.gens() == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Whether a list of generator orders is already in canonical layout.
    pub(crate) fn orders_are_canonical(orders: &[Int]) -> bool {
        let k = orders.iter().take_while(|o| !o.is_zero()).count();
        orders[k..].iter().all(Int::is_zero)
            && orders[..k].iter().all(|o| *o > Int::ONE)
            && orders[..k].windows(2).all(|w| w[0].divides(&w[1]))
    }

    /// Builds the object from an order list already known to be canonical.
    pub(crate) fn from_canonical_orders(orders: &[Int]) -> Self {
        debug_assert!(Self::orders_are_canonical(orders));
        let k = orders.iter().take_while(|o| !o.is_zero()).count();
        AbObject {
            torsion: orders[..k].to_vec(),
            free_rank: orders.len() - k,
        }
    }
}

impl fmt::Display for AbObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("ℤ/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".into()),
            r => parts.push(format!("ℤ^{r}")),
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl fmt::Debug for AbObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
