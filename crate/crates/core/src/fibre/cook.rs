use num::{BigInt, One};

use super::{fp_check, max_fg_corank, Answer, TwistMatrix, Verdict};
use crate::error::{Error, Result};
use crate::lattice::{complete_to_unimodular, IntMatrix, Subspace};
use crate::quotient::QuotientDatum;
use crate::sigma::SigmaResult;
use crate::sphere::SphereSet;

/// Number of doublings tried before giving up.
const MAX_DOUBLINGS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CookResult {
    pub twist: TwistMatrix,
    /// Shear parameter of the accepted block matrix; `None` when the
    /// identity already works.
    pub alpha: Option<BigInt>,
    /// Whether the factors were exchanged to get `k <= m`.
    pub swapped: bool,
    /// Co-ranks of `K1` and `K2`.
    pub m: usize,
    pub k: usize,
    pub verdict: Verdict,
}

/// `[[I_k, 0, a I_k], [0, I_{m-k}, 0], [0, 0, I_k]]`, acting on characters.
fn shear_block(m: usize, k: usize, alpha: &BigInt) -> IntMatrix {
    let mut phi = IntMatrix::identity(m + k);
    for i in 0..k {
        phi[(i, m + i)] = alpha.clone();
    }
    phi
}

fn misses(r2: &SphereSet, phi: &IntMatrix, r1_neg: &SphereSet) -> Result<bool> {
    r2.map(&phi.to_rat())?.is_disjoint_from(r1_neg)
}

/// Searches for `mu*` on restricted complements `r1`, `r2` given the
/// character spaces `w` (dim `m`) of `K1` and `u` (dim `k`) of `K2`,
/// assuming `k <= m`.
fn search(r1: &SphereSet, w: &Subspace, r2: &SphereSet, u: &Subspace) -> Result<(IntMatrix, Option<BigInt>)> {
    let c = r1.rank();
    let (m, k) = (w.dim(), u.dim());
    let r1_neg = r1.negate();
    if m == c {
        let id = IntMatrix::identity(c);
        if !misses(r2, &id, &r1_neg)? {
            return Err(Error::Internal("identity fails although the first complement is empty".into()));
        }
        return Ok((id, None));
    }
    let a1 = complete_to_unimodular(w);
    let a1_inv = a1.inverse_unimodular()?;
    let a2 = complete_to_unimodular(u);
    let mut alpha = BigInt::one();
    for _ in 0..MAX_DOUBLINGS {
        let phi = &(&a1_inv * &shear_block(m, k, &alpha)) * &a2;
        if misses(r2, &phi, &r1_neg)? {
            return Ok((phi, Some(alpha)));
        }
        alpha *= 2;
    }
    Err(Error::Internal(format!(
        "no shear up to 2^{} separates the complements",
        MAX_DOUBLINGS - 1
    )))
}

fn sphere_of(s: &Subspace) -> SphereSet {
    SphereSet::from_subspaces(s.ambient(), vec![s.clone()]).expect("one subspace")
}

/// Builds `mu*` making `H_mu` finitely presented from finitely generated
/// overgroups `N_i <= K_i` whose co-ranks add up to the co-rank of the
/// `N_i`. `k_gens1`, `k_gens2` generate the images of `K_i` modulo `N_i`.
///
/// Warned directions are treated as part of the complements, so the result
/// holds however they are resolved.
pub fn cook_mu(
    c1: &SigmaResult,
    q1: &QuotientDatum,
    k_gens1: &[Vec<BigInt>],
    c2: &SigmaResult,
    q2: &QuotientDatum,
    k_gens2: &[Vec<BigInt>],
) -> Result<CookResult> {
    let c = q1.corank();
    if q2.corank() != c {
        return Err(Error::CorankMismatch(format!(
            "factor 1 has co-rank {c}, factor 2 has co-rank {}",
            q2.corank()
        )));
    }
    let r1 = c1.upper().restrict(q1)?;
    let r2 = c2.upper().restrict(q2)?;
    let w = q1.sub_character_space(k_gens1)?;
    let u = q2.sub_character_space(k_gens2)?;
    let (m, k) = (w.dim(), u.dim());
    if m + k != c {
        return Err(Error::Hypothesis(format!(
            "co-ranks of K1 and K2 are {m} and {k}, which do not add up to {c}"
        )));
    }
    if let Some((_, p)) = sphere_of(&w).first_meeting(&r1)? {
        return Err(Error::Hypothesis(format!(
            "K1 is not finitely generated: its character sphere meets the complement piece {p:?}"
        )));
    }
    if let Some((_, p)) = sphere_of(&u).first_meeting(&r2)? {
        return Err(Error::Hypothesis(format!(
            "K2 is not finitely generated: its character sphere meets the complement piece {p:?}"
        )));
    }

    let swapped = k > m;
    let (mu_star, alpha) = if swapped {
        let (phi, alpha) = search(&r2, &u, &r1, &w)?;
        (phi.inverse_unimodular()?, alpha)
    } else {
        search(&r1, &w, &r2, &u)?
    };
    let twist = TwistMatrix::from_mu_star(mu_star)?;
    let verdict = fp_check(c1, q1, c2, q2, &twist)?;
    if verdict.answer != Answer::Fp {
        return Err(Error::Internal(format!(
            "constructed twist does not verify (got {})",
            verdict.answer
        )));
    }
    Ok(CookResult {
        twist,
        alpha,
        swapped,
        m,
        k,
        verdict,
    })
}

/// A co-rank `n` plan for `G1 x G2`: subgroups `N_i` and finitely generated
/// overgroups `K_i`, given by generators of their images in the
/// abelianizations, and a twist making the fibre product finitely presented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub n: usize,
    /// Largest co-ranks of finitely generated subgroups containing `G_i'`.
    pub m: usize,
    pub k: usize,
    pub n_gens1: Vec<Vec<BigInt>>,
    pub n_gens2: Vec<Vec<BigInt>>,
    pub k_gens1: Vec<Vec<BigInt>>,
    pub k_gens2: Vec<Vec<BigInt>>,
    pub cook: CookResult,
}

fn max_corank_of(c: &SphereSet) -> Result<(usize, Subspace)> {
    let r = max_fg_corank(c, &QuotientDatum::commutator(c.rank()))?;
    Ok((r.k, r.witness))
}

/// Subspace spanned by the first `dim` basis vectors of `v`.
fn truncate(v: &Subspace, dim: usize) -> Result<Subspace> {
    let basis = v.integer_basis();
    Subspace::span_int(v.ambient(), &basis[..dim])
}

/// Extends `v` by standard basis vectors up to dimension `dim`.
fn extend(v: &Subspace, dim: usize) -> Result<Subspace> {
    let mut out = v.clone();
    let n = v.ambient();
    for i in 0..n {
        if out.dim() >= dim {
            break;
        }
        let e = Subspace::coordinate(n, &[i]);
        let bigger = out.sum(&e)?;
        if bigger.dim() > out.dim() {
            out = bigger;
        }
    }
    Ok(out)
}

/// The largest co-rank of a finitely presented normal fibre product in
/// `G1 x G2`, namely `min(m + k, n1, n2)`, with an explicit construction
/// re-verified by the containment check.
pub fn plan_max_corank(c1: &SigmaResult, c2: &SigmaResult) -> Result<Plan> {
    let (n1, n2) = (c1.rank(), c2.rank());
    let (m, v1) = max_corank_of(&c1.upper())?;
    let (k, v2) = max_corank_of(&c2.upper())?;
    let (m_lo, _) = max_corank_of(&c1.lower())?;
    let (k_lo, _) = max_corank_of(&c2.lower())?;
    let n = (m + k).min(n1).min(n2);
    if (m_lo + k_lo).min(n1).min(n2) != n {
        return Err(Error::Degenerate(
            "the maximal co-rank depends on how the warned directions are resolved".into(),
        ));
    }

    let m_used = m.min(n);
    let k_used = n - m_used;
    let v1 = truncate(&v1, m_used)?;
    let v2 = truncate(&v2, k_used)?;
    let x1 = extend(&v1, n)?;
    let x2 = extend(&v2, n)?;
    let n_gens1 = x1.orthogonal().integer_basis();
    let n_gens2 = x2.orthogonal().integer_basis();
    let k_gens1 = v1.orthogonal().integer_basis();
    let k_gens2 = v2.orthogonal().integer_basis();
    let q1 = QuotientDatum::new(n1, n_gens1.clone())?;
    let q2 = QuotientDatum::new(n2, n_gens2.clone())?;
    let cook = cook_mu(c1, &q1, &k_gens1, c2, &q2, &k_gens2)?;
    Ok(Plan {
        n,
        m,
        k,
        n_gens1,
        n_gens2,
        k_gens1,
        k_gens2,
        cook,
    })
}
