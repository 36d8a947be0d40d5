use num::{BigInt, One};

use super::{Rat, Subspace};
use crate::error::{Error, Result};

fn moment_vector(n: usize, t: u64) -> Vec<Rat> {
    let t = BigInt::from(t);
    let mut v = Vec::with_capacity(n);
    let mut p = BigInt::one();
    for _ in 0..n {
        v.push(Rat::from_integer(p.clone()));
        p *= &t;
    }
    v
}

/// A vector outside every piece.
///
/// Scans the moment curve `(1, t, t^2, ..., t^(n-1))` for `t = 0, 1, 2, ...`.
/// Any `n` distinct points of the curve are linearly independent, so a proper
/// subspace contains at most `n - 1` of them and the scan stops after at most
/// `(n - 1) * pieces.len() + 1` candidates.
pub fn vector_avoiding(ambient: usize, pieces: &[Subspace]) -> Result<Vec<Rat>> {
    for p in pieces {
        if p.ambient() != ambient {
            return Err(Error::AmbientMismatch {
                expected: ambient,
                found: p.ambient(),
            });
        }
        if p.is_full() {
            return Err(Error::FullPiece);
        }
    }
    let bound = (ambient.saturating_sub(1) * pieces.len() + 1) as u64;
    (0..bound)
        .map(|t| moment_vector(ambient, t))
        .find(|v| pieces.iter().all(|p| !p.contains(v)))
        .ok_or_else(|| Error::Internal("moment curve scan exhausted".into()))
}

/// A rational subspace of maximal dimension meeting every piece only in
/// zero and containing none of the given rays.
///
/// The dimension is `n - max(max piece dim, 1 if rays are present)`. The
/// subspace is grown one vector at a time, each chosen outside
/// `piece + current span` for every piece (rays count as lines).
pub fn subspace_avoiding(
    ambient: usize,
    pieces: &[Subspace],
    rays: &[Vec<Rat>],
) -> Result<Subspace> {
    let mut obstacles: Vec<Subspace> = pieces.to_vec();
    for r in rays {
        obstacles.push(Subspace::span(ambient, std::slice::from_ref(r))?);
    }
    for p in &obstacles {
        if p.ambient() != ambient {
            return Err(Error::AmbientMismatch {
                expected: ambient,
                found: p.ambient(),
            });
        }
    }
    let blocked = obstacles.iter().map(Subspace::dim).max().unwrap_or(0);
    let target = ambient - blocked.min(ambient);
    if obstacles.is_empty() {
        return Ok(Subspace::full(ambient));
    }

    let mut current = Subspace::zero(ambient);
    while current.dim() < target {
        let shifted = obstacles
            .iter()
            .map(|p| p.sum(&current))
            .collect::<Result<Vec<_>>>()?;
        let v = vector_avoiding(ambient, &shifted)?;
        current = current.sum(&Subspace::span(ambient, &[v])?)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat_vec_i64;

    fn sub(n: usize, rows: &[&[i64]]) -> Subspace {
        let rows: Vec<Vec<Rat>> = rows.iter().map(|r| rat_vec_i64(r)).collect();
        Subspace::span(n, &rows).unwrap()
    }

    #[test]
    fn vector_avoiding_examples() {
        let x0 = sub(2, &[&[0, 1]]);
        let y0 = sub(2, &[&[1, 0]]);
        assert_eq!(vector_avoiding(2, &[x0, y0]).unwrap(), rat_vec_i64(&[1, 1]));
        assert_eq!(vector_avoiding(3, &[]).unwrap(), rat_vec_i64(&[1, 0, 0]));

        let a = sub(4, &[&[1, 2, 0, 1], &[0, 1, 3, -1]]);
        let b = sub(4, &[&[2, 0, 1, 1], &[1, 1, 1, 0]]);
        let v = vector_avoiding(4, &[a.clone(), b.clone()]).unwrap();
        assert!(!a.contains(&v) && !b.contains(&v));

        assert_eq!(
            vector_avoiding(2, &[Subspace::full(2)]),
            Err(Error::FullPiece)
        );
    }

    #[test]
    fn subspace_avoiding_examples() {
        let p = sub(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let q = sub(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let v = subspace_avoiding(4, &[p.clone(), q.clone()], &[]).unwrap();
        assert_eq!(v.dim(), 2);
        assert!(v.intersect(&p).unwrap().is_zero());
        assert!(v.intersect(&q).unwrap().is_zero());

        assert_eq!(subspace_avoiding(3, &[], &[]).unwrap(), Subspace::full(3));

        let rays = vec![rat_vec_i64(&[-1, 2]), rat_vec_i64(&[1, -2])];
        let line = subspace_avoiding(2, &[], &rays).unwrap();
        assert_eq!(line.dim(), 1);
        assert!(rays.iter().all(|r| !line.contains(r)));
    }
}
