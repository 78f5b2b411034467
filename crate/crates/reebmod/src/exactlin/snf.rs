//! Smith normal form over the integers with tracked transforms.
//!
//! `smith_normal_form(a)` returns unimodular `u`, `v` and a diagonal `d`
//! with `d = u * a * v`, nonnegative diagonal entries and each nonzero
//! entry dividing the next. The inverse of `v` is tracked alongside so
//! quotient generators can be read off without a separate inversion.
//!
//! Pivot choice is deterministic: the entry of smallest nonzero absolute
//! value in the remaining submatrix, ties broken in row-major order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMat;

#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

impl Smith {
    /// Nonzero diagonal entries in order, including any leading ones.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.at(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Checks every postcondition against the original matrix: the product
    /// identity, unimodularity of both transforms, `v * v_inv = 1`,
    /// diagonality with trailing zeros, nonnegative entries and the
    /// divisibility chain. This is the independent oracle the test suites
    /// run against random matrices.
    pub fn verify(&self, a: &IntMat) -> bool {
        let m = a.rows();
        let n = a.cols();
        if self.u.rows() != m || self.u.cols() != m {
            return false;
        }
        if self.v.rows() != n || self.v.cols() != n {
            return false;
        }
        if self.d != self.u.mul(a).mul(&self.v) {
            return false;
        }
        if !self.u.is_unimodular() || !self.v.is_unimodular() {
            return false;
        }
        if self.v.mul(&self.v_inv) != IntMat::identity(n) {
            return false;
        }
        for i in 0..m {
            for j in 0..n {
                if i != j && !self.d.at(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag: Vec<BigInt> = (0..m.min(n)).map(|i| self.d.at(i, i).clone()).collect();
        if diag.iter().any(|x| x.is_negative()) {
            return false;
        }
        let mut seen_zero = false;
        for w in diag.windows(2) {
            if w[0].is_zero() {
                seen_zero = true;
            }
            if seen_zero && !w[1].is_zero() {
                return false;
            }
            if !w[0].is_zero() && !w[1].is_zero() && !w[1].is_multiple_of(&w[0]) {
                return false;
            }
        }
        true
    }
}

/// Smallest nonzero |entry| in `d[k.., k..]`, ties in row-major order.
fn find_pivot(d: &IntMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let x = d.at(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some(b) => {
                    if x.abs() < d.at(b.0, b.1).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// First entry of the trailing submatrix not divisible by the pivot.
fn find_nondivisible(d: &IntMat, k: usize) -> Option<(usize, usize)> {
    let p = d.at(k, k);
    for i in k + 1..d.rows() {
        for j in k + 1..d.cols() {
            if !d.at(i, j).is_multiple_of(p) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn smith_normal_form(a: &IntMat) -> Smith {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMat::identity(m);
    let mut v = IntMat::identity(n);
    let mut v_inv = IntMat::identity(n);
    // Column operation on d and v, with the inverse operation applied to
    // v_inv from the left so that v * v_inv stays the identity.
    let mut k = 0;
    while k < m.min(n) {
        let Some((pi, pj)) = find_pivot(&d, k) else {
            break;
        };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);
        v_inv.swap_rows(k, pj);
        if d.at(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        // Clear column k by row operations; leftover remainders mean a
        // strictly smaller pivot exists, so re-select.
        let mut dirty = false;
        for i in 0..m {
            if i == k || d.at(i, k).is_zero() {
                continue;
            }
            let q = d.at(i, k).div_floor(d.at(k, k));
            if !q.is_zero() {
                let f = -q;
                d.add_multiple_of_row(i, k, &f);
                u.add_multiple_of_row(i, k, &f);
            }
            if !d.at(i, k).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // Column k is clean, so these column operations touch no other row.
        for j in 0..n {
            if j == k || d.at(k, j).is_zero() {
                continue;
            }
            let q = d.at(k, j).div_floor(d.at(k, k));
            if !q.is_zero() {
                let f = -&q;
                d.add_multiple_of_col(j, k, &f);
                v.add_multiple_of_col(j, k, &f);
                v_inv.add_multiple_of_row(k, j, &q);
            }
            if !d.at(k, j).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // Fold a nondivisible trailing entry into the pivot row so the
        // next elimination round replaces the pivot by a gcd.
        if let Some((i, _)) = find_nondivisible(&d, k) {
            let one = BigInt::from(1);
            d.add_multiple_of_row(k, i, &one);
            u.add_multiple_of_row(k, i, &one);
            continue;
        }
        k += 1;
    }
    Smith { u, d, v, v_inv }
}
