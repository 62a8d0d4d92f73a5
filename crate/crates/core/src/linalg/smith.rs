//! Smith normal form with unimodular transforms.
//!
//! Pivoting is deterministic: the smallest nonzero absolute value in the
//! active submatrix, ties broken by lowest row and then lowest column. The
//! transforms are accumulated together with their inverses, so callers never
//! need to invert a unimodular matrix separately.

use serde::Serialize;

use super::matrix::IntMatrix;
use crate::int::Int;

/// `u · a · v = d`, with `u`, `v` unimodular and `d` diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    #[serde(skip)]
    pub u_inv: IntMatrix,
    #[serde(skip)]
    pub v_inv: IntMatrix,
    /// Nonzero diagonal of `d`, positive, each dividing the next.
    pub invariants: Vec<Int>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

struct Reducer {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[target] += c * row[src]
    fn row_op(&mut self, target: usize, src: usize, c: &Int) {
        self.d.add_row_multiple(target, src, c);
        self.u.add_row_multiple(target, src, c);
        self.u_inv.add_col_multiple(src, target, &-c);
    }

    /// col[target] += c * col[src]
    fn col_op(&mut self, target: usize, src: usize, c: &Int) {
        self.d.add_col_multiple(target, src, c);
        self.v.add_col_multiple(target, src, c);
        self.v_inv.add_row_multiple(src, target, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = self.d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn smith_decompose(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut r = Reducer {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = r.pivot(t) else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        let p = r.d.get(t, t).clone();
        for i in t + 1..m {
            let x = r.d.get(i, t);
            if !x.is_zero() {
                let q = x.div_floor(&p);
                r.row_op(i, t, &-q);
            }
        }
        for j in t + 1..n {
            let x = r.d.get(t, j);
            if !x.is_zero() {
                let q = x.div_floor(&p);
                r.col_op(j, t, &-q);
            }
        }
        let cleared = (t + 1..m).all(|i| r.d.get(i, t).is_zero()) && (t + 1..n).all(|j| r.d.get(t, j).is_zero());
        if !cleared {
            // remainders are strictly smaller than the pivot; search again
            continue;
        }
        let offender = (t + 1..m)
            .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !p.divides(r.d.get(i, j)));
        if let Some((i, _)) = offender {
            r.row_op(t, i, &Int::ONE);
            continue;
        }
        if p.is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }
    let invariants = r.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect();
    SmithDecomposition {
        u: r.u,
        d: r.d,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
        invariants,
    }
}

/// Free rank and torsion divisors of `coker(a: Z^cols -> Z^rows)`.
pub fn cokernel_invariants(a: &IntMatrix) -> (usize, Vec<Int>) {
    let snf = smith_decompose(a);
    let free_rank = a.rows() - snf.rank();
    let torsion = snf.invariants.into_iter().filter(|x| !x.is_one()).collect();
    (free_rank, torsion)
}
