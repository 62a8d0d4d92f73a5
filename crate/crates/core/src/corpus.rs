//! Deterministic instance corpora for the sweeps and acceptance checks.
//!
//! Exhaustive families are enumerated in a fixed order; random ones come from
//! a seeded ChaCha stream, so equal seeds give equal corpora.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ab::AbObject;
use crate::error::{Error, Result};
use crate::graded::{ChainComplex, DifferentialFamily, GradedObject};
use crate::int::Int;
use crate::linalg::IntMatrix;

pub const DEFAULT_SEED: u64 = 0x6b61_6e66;

/// `KANFORGE_SEED` if set and parseable, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("KANFORGE_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bounds for exhaustive free-complex enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplexBounds {
    /// Allowed degrees.
    pub degrees: Vec<i64>,
    pub max_rank: usize,
    pub max_entry: i64,
    /// Every listed degree carries a nonzero component (ranks start at 1).
    pub exact_support: bool,
}

impl FreeComplexBounds {
    fn rank_range(&self) -> std::ops::RangeInclusive<usize> {
        (if self.exact_support { 1 } else { 0 })..=self.max_rank
    }

    fn rank_assignments(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in &self.degrees {
            out = out
                .into_iter()
                .flat_map(|p| {
                    self.rank_range().map(move |r| {
                        let mut q = p.clone();
                        q.push(r);
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn degrees_sorted(&self) -> Vec<i64> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Number of candidate differential families before the `d² = 0` filter.
    pub fn estimate(&self) -> u128 {
        let degs = self.degrees_sorted();
        let base = (2 * self.max_entry.unsigned_abs() as u128) + 1;
        let b = FreeComplexBounds {
            degrees: degs.clone(),
            ..self.clone()
        };
        b.rank_assignments()
            .iter()
            .map(|ranks| {
                let r: BTreeMap<i64, usize> = degs.iter().copied().zip(ranks.iter().copied()).collect();
                let cells: u32 = degs
                    .iter()
                    .map(|n| (r[n] * r.get(&(n - 1)).copied().unwrap_or(0)) as u32)
                    .sum();
                base.saturating_pow(cells)
            })
            .fold(0u128, |a, b| a.saturating_add(b))
    }
}

fn all_matrices(rows: usize, cols: usize, bound: i64) -> Vec<IntMatrix> {
    let n = rows * cols;
    let mut out = Vec::new();
    let mut cur = vec![-bound; n];
    loop {
        out.push(IntMatrix::new(rows, cols, cur.iter().map(|&v| Int::from(v)).collect()).expect("sized"));
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            if cur[k] < bound {
                cur[k] += 1;
                break;
            }
            cur[k] = -bound;
            k += 1;
        }
    }
}

/// All free complexes within `b` with `d² = 0`. Refuses when the candidate count exceeds `max_size`.
pub fn free_complexes(b: &FreeComplexBounds, max_size: u128) -> Result<Vec<ChainComplex>> {
    let est = b.estimate();
    if est > max_size {
        return Err(Error::TooLarge(format!(
            "about {est} candidate complexes exceed the limit of {max_size}"
        )));
    }
    let degs = b.degrees_sorted();
    let mut out = Vec::new();
    let bb = FreeComplexBounds {
        degrees: degs.clone(),
        ..b.clone()
    };
    for ranks in bb.rank_assignments() {
        let g = GradedObject::from_pairs(degs.iter().copied().zip(ranks.iter().map(|&r| AbObject::free(r))));
        // differentials between consecutive nonzero degrees
        let slots: Vec<(i64, usize, usize)> = g
            .support()
            .filter(|&n| !g.get(n - 1).is_zero())
            .map(|n| (n, g.get(n - 1).gens(), g.get(n).gens()))
            .collect();
        let mut families: Vec<BTreeMap<i64, IntMatrix>> = vec![BTreeMap::new()];
        for &(n, r, c) in &slots {
            let ms = all_matrices(r, c, b.max_entry);
            families = families
                .into_iter()
                .flat_map(|f| {
                    ms.iter().map(move |m| {
                        let mut f = f.clone();
                        f.insert(n, m.clone());
                        f
                    })
                })
                .collect();
        }
        for f in families {
            let fam = DifferentialFamily::from_matrices(g.clone(), f)?;
            if fam.square_defects().is_empty() {
                out.push(ChainComplex::try_from(fam)?);
            }
        }
    }
    Ok(out)
}

/// All free graded objects with components of rank `0..=max_rank` in the given degrees.
pub fn free_graded(degrees: &[i64], max_rank: usize) -> Vec<GradedObject> {
    let b = FreeComplexBounds {
        degrees: degrees.to_vec(),
        max_rank,
        max_entry: 0,
        exact_support: false,
    };
    let degs = b.degrees_sorted();
    FreeComplexBounds {
        degrees: degs.clone(),
        ..b
    }
    .rank_assignments()
    .into_iter()
    .map(|ranks| GradedObject::from_pairs(degs.iter().copied().zip(ranks.into_iter().map(AbObject::free))))
    .collect()
}

/// `x ⊕ (ℤ/3 in the lowest degree of x, or 0)`: a variant whose underlying group has no dual.
pub fn torsion_variant(x: &ChainComplex) -> ChainComplex {
    let n = x.underlying().bounds().map_or(0, |(lo, _)| lo);
    x.direct_sum(&ChainComplex::trivial(GradedObject::concentrated(
        n,
        AbObject::cyclic(3),
    )))
}

/// `ℤ/3 --1--> ℤ/3` in degrees `(n, n−1)`, the smallest acyclic torsion complex.
pub fn torsion_line(n: i64) -> ChainComplex {
    let g = GradedObject::from_pairs([(n, AbObject::cyclic(3)), (n - 1, AbObject::cyclic(3))]);
    ChainComplex::try_from(
        DifferentialFamily::from_matrices(g, BTreeMap::from([(n, IntMatrix::identity(1))])).expect("typed"),
    )
    .expect("single differential")
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::new(
        rows,
        cols,
        (0..rows * cols)
            .map(|_| Int::from(rng.gen_range(-bound..=bound)))
            .collect(),
    )
    .expect("sized")
}

/// A random free differential family on degrees `0..len` (not necessarily `d² = 0`).
/// Roughly half of them are built to satisfy `d² = 0`.
pub fn random_family(rng: &mut ChaCha8Rng, len: usize, max_rank: usize, bound: i64) -> DifferentialFamily {
    let ranks: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=max_rank)).collect();
    let g = GradedObject::from_pairs(ranks.iter().enumerate().map(|(n, &r)| (n as i64, AbObject::free(r))));
    let exact = rng.gen_bool(0.5);
    let mut mats = BTreeMap::new();
    for n in 1..len {
        let (r, c) = (ranks[n - 1], ranks[n]);
        let m = if exact && n >= 2 {
            // d_n = K·M where the columns of K span ker d_{n−1}
            let prev: &IntMatrix = &mats[&((n - 1) as i64)];
            let kernel = crate::linalg::kernel_basis(prev);
            let coeffs = random_matrix(rng, kernel.cols(), c, bound);
            kernel.mul(&coeffs).expect("shapes")
        } else {
            random_matrix(rng, r, c, bound)
        };
        mats.insert(n as i64, m);
    }
    DifferentialFamily::from_matrices(g, mats).expect("free components")
}
