//! Smith normal form over the integers with unimodular transforms.
//!
//! The cokernel `Z^k / A Z^k` is `⊕ Z/d_i` for the diagonal entries `d_i`,
//! which is what the coset-counting oracles use.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::IntMatrix;

/// `left * A * right = diag(diagonal)` with `d_1 | d_2 | ... ` and any
/// zeros at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Order of the cokernel, or `None` when it is infinite.
    pub fn cokernel_order(&self, rows: usize) -> Option<BigInt> {
        if self.diagonal.len() < rows || self.diagonal.iter().any(Zero::is_zero) {
            return None;
        }
        Some(self.diagonal.iter().product())
    }

    /// Solves `A w = b` over the integers. Returns `None` when `b` is not
    /// in the image lattice. Only valid for square nonsingular `A`.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let u = self.left.mul_vec(b);
        let mut y = Vec::with_capacity(u.len());
        for (ui, di) in u.iter().zip(&self.diagonal) {
            if di.is_zero() {
                return None;
            }
            let (q, r) = ui.div_rem(di);
            if !r.is_zero() {
                return None;
            }
            y.push(q);
        }
        Some(self.right.mul_vec(&y))
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// row[dst] += q * row[src]
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let v = &m[(src, j)] * q;
        m[(dst, j)] += v;
    }
}

/// col[dst] += q * col[src]
fn add_col(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let v = &m[(i, src)] * q;
        m[(i, dst)] += v;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if w[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| w[(i, j)].abs() < w[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(w, left, right);
            };
            swap_rows(&mut w, t, pi);
            swap_rows(&mut left, t, pi);
            swap_cols(&mut w, t, pj);
            swap_cols(&mut right, t, pj);

            let pivot = w[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if w[(i, t)].is_zero() {
                    continue;
                }
                let q = -w[(i, t)].div_floor(&pivot);
                add_row(&mut w, i, t, &q);
                add_row(&mut left, i, t, &q);
                dirty |= !w[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if w[(t, j)].is_zero() {
                    continue;
                }
                let q = -w[(t, j)].div_floor(&pivot);
                add_col(&mut w, j, t, &q);
                add_col(&mut right, j, t, &q);
                dirty |= !w[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    add_row(&mut w, t, i, &BigInt::one());
                    add_row(&mut left, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if w[(t, t)].is_negative() {
            let minus = BigInt::from(-1);
            for j in 0..cols {
                w[(t, j)] *= &minus;
            }
            for j in 0..rows {
                left[(t, j)] *= &minus;
            }
        }
    }
    finish(w, left, right)
}

fn finish(w: IntMatrix, left: IntMatrix, right: IntMatrix) -> SmithForm {
    let diagonal = (0..w.rows().min(w.cols()))
        .map(|i| w[(i, i)].clone())
        .collect();
    SmithForm {
        diagonal,
        left,
        right,
    }
}
