use num::{BigInt, Integer, Signed, Zero};

use super::{IntMatrix, Subspace};

/// Smith normal form `left * a * right = diag(d)` with unimodular transforms
/// and `d[0] | d[1] | ...`. Zero invariant factors come last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Position of the nonzero entry of least absolute value in the block
/// `[t.., t..]`.
fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut a = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            // Clear column t below the pivot.
            let mut dirty = false;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            // Clear row t right of the pivot.
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                // A remainder smaller than the pivot survived; make it the pivot.
                let (pi, pj) = smallest_in_cross(&a, t);
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
                a.swap_cols(t, pj);
                right.swap_cols(t, pj);
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(&a[(i, j)] % &a[(t, t)]).is_zero())
            });
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            let minus = BigInt::from(-1);
            a.scale_row(t, &minus);
            left.scale_row(t, &minus);
        }
    }

    let d = (0..m.min(n)).map(|i| a[(i, i)].clone()).collect();
    SnfResult { d, left, right }
}

/// Smallest nonzero entry in row t or column t (from the pivot onward).
fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let x = &a[(i, j)];
        if !x.is_zero() && x.abs() < a[*best].abs() {
            *best = (i, j);
        }
    };
    for i in t..a.rows() {
        consider(i, t, &mut best);
    }
    for j in t..a.cols() {
        consider(t, j, &mut best);
    }
    best
}

/// Unimodular `A` with `A * v = span{e_1, ..., e_dim(v)}`.
///
/// The first `dim(v)` columns of `A^-1` form a basis of the saturated
/// lattice `v ∩ Z^n`.
pub fn complete_to_unimodular(v: &Subspace) -> IntMatrix {
    let n = v.ambient();
    let basis = v.integer_basis();
    let b = IntMatrix::from_cols(n, basis).expect("basis vectors have ambient length");
    snf(&b).left
}
