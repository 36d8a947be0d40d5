use num::{BigInt, One, Zero};

use super::{primitive, rat_vec, Rat, RatMatrix};
use crate::error::{Error, Result};

/// A rationally defined linear subspace of `Q^n`, stored as the nonzero rows
/// of its reduced row-echelon form. Two subspaces are equal as sets iff they
/// are equal as values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
}

/// Row-reduces `rows` in place and returns the pivot columns. Zero rows are
/// dropped; the remaining rows are in canonical RREF.
fn reduce(ambient: usize, rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ambient {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Canonical row space of a rational matrix.
pub fn rref(m: &RatMatrix) -> Subspace {
    let mut rows = m.to_rows();
    reduce(m.cols(), &mut rows);
    Subspace {
        ambient: m.cols(),
        basis: rows,
    }
}

/// `{x in Q^n : <x, g> = 0 for every g in gens}`.
pub fn rational_kernel(ambient: usize, gens: &[Vec<BigInt>]) -> Result<Subspace> {
    let rows = gens
        .iter()
        .map(|g| check_len(ambient, g.len()).map(|_| rat_vec(g)))
        .collect::<Result<Vec<_>>>()?;
    Ok(kernel_of_rows(ambient, rows))
}

fn kernel_of_rows(ambient: usize, mut rows: Vec<Vec<Rat>>) -> Subspace {
    let pivots = reduce(ambient, &mut rows);
    let mut kernel = Vec::new();
    for free in (0..ambient).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); ambient];
        v[free] = Rat::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        kernel.push(v);
    }
    reduce(ambient, &mut kernel);
    Subspace {
        ambient,
        basis: kernel,
    }
}

/// Some solution `x` of `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let n = a.cols();
    let mut rows: Vec<Vec<Rat>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = reduce(n + 1, &mut rows);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::AmbientMismatch { expected, found })
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = Rat::one();
                v
            })
            .collect();
        Subspace { ambient, basis }
    }

    /// Span of rational vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Result<Self> {
        for v in vectors {
            check_len(ambient, v.len())?;
        }
        let mut rows = vectors.to_vec();
        reduce(ambient, &mut rows);
        Ok(Subspace {
            ambient,
            basis: rows,
        })
    }

    /// Span of integer vectors.
    pub fn span_int(ambient: usize, vectors: &[Vec<BigInt>]) -> Result<Self> {
        let rows: Vec<Vec<Rat>> = vectors.iter().map(|v| rat_vec(v)).collect();
        Self::span(ambient, &rows)
    }

    /// Coordinate subspace spanned by the listed standard basis vectors.
    pub fn coordinate(ambient: usize, axes: &[usize]) -> Self {
        let rows: Vec<Vec<Rat>> = axes
            .iter()
            .map(|&i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = Rat::one();
                v
            })
            .collect();
        Self::span(ambient, &rows).expect("axis index within ambient")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Basis rows scaled to primitive integer vectors.
    pub fn integer_basis(&self) -> Vec<Vec<BigInt>> {
        self.basis.iter().map(|r| primitive(r)).collect()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length must match ambient");
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        self.contains(&rat_vec(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Orthogonal complement with respect to the standard pairing.
    pub fn orthogonal(&self) -> Subspace {
        kernel_of_rows(self.ambient, self.basis.clone())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        check_len(self.ambient, other.ambient)?;
        let mut rows = self.orthogonal().basis;
        rows.extend(other.orthogonal().basis);
        Ok(kernel_of_rows(self.ambient, rows))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_len(self.ambient, other.ambient)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        reduce(self.ambient, &mut rows);
        Ok(Subspace {
            ambient: self.ambient,
            basis: rows,
        })
    }

    /// Preimage `{y in Q^c : param * y in self}` under an injective linear
    /// map `param: Q^c -> Q^n` given as an `n x c` matrix.
    pub fn preimage(&self, param: &RatMatrix) -> Result<Subspace> {
        check_len(self.ambient, param.rows())?;
        let perp = self.orthogonal();
        let rows: Vec<Vec<Rat>> = perp
            .basis
            .iter()
            .map(|p| {
                (0..param.cols())
                    .map(|j| {
                        p.iter()
                            .enumerate()
                            .fold(Rat::zero(), |acc, (i, x)| acc + x * &param[(i, j)])
                    })
                    .collect()
            })
            .collect();
        Ok(kernel_of_rows(param.cols(), rows))
    }

    /// Image under a linear map given as an `m x n` matrix acting on columns.
    pub fn image(&self, map: &RatMatrix) -> Result<Subspace> {
        check_len(self.ambient, map.cols())?;
        let rows: Vec<Vec<Rat>> = self.basis.iter().map(|v| map.mul_vec(v)).collect();
        Subspace::span(map.rows(), &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int_vec, rat_vec_i64, IntMatrix};

    fn sub(n: usize, rows: &[&[i64]]) -> Subspace {
        let rows: Vec<Vec<Rat>> = rows.iter().map(|r| rat_vec_i64(r)).collect();
        Subspace::span(n, &rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]).to_rat();
        assert_eq!(rref(&m), Subspace::full(2));

        let m = IntMatrix::from_i64(&[&[1, 1, 0], &[2, 2, 0]]).to_rat();
        assert_eq!(rref(&m).basis(), &[rat_vec_i64(&[1, 1, 0])]);

        let empty = RatMatrix::zeros(0, 3);
        let s = rref(&empty);
        assert_eq!(s.dim(), 0);
        assert_eq!(s.ambient(), 3);
    }

    #[test]
    fn intersect_examples() {
        let a = sub(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = sub(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), sub(3, &[&[0, 1, 0]]));
        assert_eq!(a.intersect(&a).unwrap(), a);

        // x = s(1,0,1,0) + t(0,1,0,1) lies in span{e1,e2} only if s = t = 0.
        let c = sub(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let d = sub(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert!(c.intersect(&d).unwrap().is_zero());

        assert!(matches!(
            a.intersect(&Subspace::full(4)),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn kernel_examples() {
        let k = rational_kernel(3, &[int_vec(&[1, 1, 0])]).unwrap();
        assert_eq!(k, sub(3, &[&[1, -1, 0], &[0, 0, 1]]));
        assert_eq!(rational_kernel(3, &[]).unwrap(), Subspace::full(3));
        let all = rational_kernel(2, &[int_vec(&[1, 2]), int_vec(&[3, 4])]).unwrap();
        assert!(all.is_zero());
    }

    #[test]
    fn preimage_of_coordinate_plane() {
        // param = [e2 e3 e4]; preimage of span{e1,e2} is the first axis of Q^3.
        let param = IntMatrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let p = sub(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(p.preimage(&param.to_rat()).unwrap(), sub(3, &[&[1, 0, 0]]));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = IntMatrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]).to_rat();
        assert_eq!(solve(&a, &rat_vec_i64(&[2, 3, 5])), Some(rat_vec_i64(&[2, 3])));
        assert_eq!(solve(&a, &rat_vec_i64(&[2, 3, 4])), None);
    }
}
