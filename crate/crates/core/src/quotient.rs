//! Lattice bookkeeping for a normal subgroup `G' <= N <= G`, given by the
//! image of `N` in `Z^n = G/G'` modulo torsion.

use num::{BigInt, One};

use crate::error::{Error, Result};
use crate::lattice::{snf, IntMatrix, RatMatrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientDatum {
    ambient_rank: usize,
    n_gens: Vec<Vec<BigInt>>,
    projection: IntMatrix,
    torsion: Vec<BigInt>,
}

impl QuotientDatum {
    /// Builds the datum from generators of the image of `N`.
    ///
    /// The projection `pi: Z^n -> Z^c` consists of the last `c` rows of the
    /// left Smith transform of the generator matrix, so its kernel is the
    /// saturation of the generated lattice and it maps `Z^n` onto `Z^c`.
    pub fn new(ambient_rank: usize, n_gens: Vec<Vec<BigInt>>) -> Result<Self> {
        for g in &n_gens {
            if g.len() != ambient_rank {
                return Err(Error::AmbientMismatch {
                    expected: ambient_rank,
                    found: g.len(),
                });
            }
        }
        let gens = IntMatrix::from_cols(ambient_rank, n_gens.clone())?;
        let s = snf(&gens);
        let rank = s.rank();
        let projection = s.left.row_block(rank, ambient_rank);
        let torsion = s
            .d
            .iter()
            .filter(|d| !d.is_one() && *d > &BigInt::from(0))
            .cloned()
            .collect();
        Ok(QuotientDatum {
            ambient_rank,
            n_gens,
            projection,
            torsion,
        })
    }

    /// `N = G'`: the quotient is all of `G/G'` mod torsion.
    pub fn commutator(ambient_rank: usize) -> Self {
        Self::new(ambient_rank, Vec::new()).expect("no generators to validate")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn n_gens(&self) -> &[Vec<BigInt>] {
        &self.n_gens
    }

    pub fn corank(&self) -> usize {
        self.projection.rows()
    }

    /// `c x n` integer matrix onto the quotient lattice.
    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    /// `n x c` parametrization of the character subspace `S(G, N)`:
    /// a quotient character `y` is the character `param * y` of `G`.
    pub fn param(&self) -> IntMatrix {
        self.projection.transpose()
    }

    pub fn param_rat(&self) -> RatMatrix {
        self.param().to_rat()
    }

    /// Invariant factors of `sqrt(N)/N`; reported only, never consulted.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Characters of `G` vanishing on `N`, in `G/G'` coordinates.
    pub fn character_space(&self) -> Subspace {
        Subspace::span_int(
            self.ambient_rank,
            &self.projection.to_rows(),
        )
        .expect("projection rows have ambient length")
    }

    /// Coordinates, in the quotient character space, of the characters
    /// vanishing on the subgroup generated by `N` and `extra`.
    pub fn sub_character_space(&self, extra: &[Vec<BigInt>]) -> Result<Subspace> {
        let space = crate::lattice::rational_kernel(self.ambient_rank, extra)?;
        space.preimage(&self.param_rat())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int_dot, int_vec};

    #[test]
    fn projection_kills_generators() {
        let gens = vec![int_vec(&[2, 4, 0]), int_vec(&[0, 0, 3])];
        let q = QuotientDatum::new(3, gens.clone()).unwrap();
        assert_eq!(q.corank(), 1);
        for g in &gens {
            assert!(q.projection().mul_vec(g).iter().all(|x| x == &BigInt::from(0)));
        }
        // (1,2,0) is in the saturation but not in the lattice itself.
        assert!(q.projection().mul_vec(&int_vec(&[1, 2, 0])).iter().all(|x| x == &BigInt::from(0)));
        assert_eq!(q.torsion(), &[BigInt::from(6)]);
        let row = q.projection().row(0).to_vec();
        assert_eq!(int_dot(&row, &int_vec(&[1, 2, 0])), BigInt::from(0));
    }

    #[test]
    fn commutator_datum_is_identity() {
        let q = QuotientDatum::commutator(3);
        assert_eq!(q.corank(), 3);
        assert_eq!(q.param(), IntMatrix::identity(3));
        assert!(q.torsion().is_empty());
    }

    #[test]
    fn whole_group_has_corank_zero() {
        let q = QuotientDatum::new(2, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]).unwrap();
        assert_eq!(q.corank(), 0);
        assert!(q.character_space().is_zero());
    }
}
