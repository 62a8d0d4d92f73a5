use serde::Serialize;

use super::matrix::IntMatrix;
use super::smith::smith_decompose;
use crate::error::{shape, Result};

/// All integer solutions of `a·x = b`: `particular + kernel · t` for integer `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiophantineSolution {
    /// Column vector with `a.cols()` rows.
    pub particular: IntMatrix,
    /// `a.cols()` rows; its columns are a basis of the integer kernel of `a`.
    pub kernel: IntMatrix,
}

/// Solves `a·x = b` over the integers. `Ok(None)` means there is no integer solution.
pub fn solve_diophantine(a: &IntMatrix, b: &IntMatrix) -> Result<Option<DiophantineSolution>> {
    if b.cols() != 1 || b.rows() != a.rows() {
        return Err(shape(format!(
            "right-hand side must be a {}x1 column, got {}x{}",
            a.rows(),
            b.rows(),
            b.cols()
        )));
    }
    let snf = smith_decompose(a);
    let c = snf.u.mul_unchecked(b);
    let rank = snf.rank();
    let mut y = IntMatrix::zeros(a.cols(), 1);
    for i in 0..rank {
        let di = snf.d.get(i, i);
        let ci = c.get(i, 0);
        if !di.divides(ci) {
            return Ok(None);
        }
        y.set(i, 0, ci.div_floor(di));
    }
    if (rank..a.rows()).any(|i| !c.get(i, 0).is_zero()) {
        return Ok(None);
    }
    let particular = snf.v.mul_unchecked(&y);
    let kernel_cols: Vec<usize> = (rank..a.cols()).collect();
    let kernel = snf.v.select_cols(&kernel_cols);
    Ok(Some(DiophantineSolution { particular, kernel }))
}

/// Basis of the integer kernel of `a`, as columns.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_decompose(a);
    let cols: Vec<usize> = (snf.rank()..a.cols()).collect();
    snf.v.select_cols(&cols)
}

/// Exact inverse of a square integer matrix when its determinant is ±1.
///
/// Uses unimodular row reduction only; every pivot of the echelon form must
/// be a unit for the determinant to be ±1.
pub fn unimodular_inverse(a: &IntMatrix) -> Result<Option<IntMatrix>> {
    if !a.is_square() {
        return Err(shape(format!(
            "unimodularity needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut w = a.clone();
    let mut inv = IntMatrix::identity(n);
    for c in 0..n {
        loop {
            let pivot = (c..n)
                .filter(|&r| !w.get(r, c).is_zero())
                .min_by(|&x, &y| w.get(x, c).abs().cmp(&w.get(y, c).abs()).then(x.cmp(&y)));
            let Some(p) = pivot else { return Ok(None) };
            w.swap_rows(c, p);
            inv.swap_rows(c, p);
            let pv = w.get(c, c).clone();
            let mut done = true;
            for r in c + 1..n {
                let x = w.get(r, c);
                if x.is_zero() {
                    continue;
                }
                let q = -x.div_floor(&pv);
                w.add_row_multiple(r, c, &q);
                inv.add_row_multiple(r, c, &q);
                if !w.get(r, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        let pv = w.get(c, c);
        if !pv.abs().is_one() {
            return Ok(None);
        }
        if pv.is_negative() {
            w.negate_row(c);
            inv.negate_row(c);
        }
    }
    for c in (0..n).rev() {
        for r in 0..c {
            let x = w.get(r, c);
            if x.is_zero() {
                continue;
            }
            let q = -x;
            w.add_row_multiple(r, c, &q);
            inv.add_row_multiple(r, c, &q);
        }
    }
    debug_assert!(w.is_identity());
    Ok(Some(inv))
}

pub fn is_unimodular(a: &IntMatrix) -> Result<bool> {
    Ok(unimodular_inverse(a)?.is_some())
}
