use num::{BigInt, Signed};

use super::{
    canonical_orientation, decide, fp_check, untwisted_check, Answer, Certificate, Corank1Case,
    Corank1Witness, Verdict,
};
use crate::error::{Error, Result};
use crate::grouplang::SimplicialGraph;
use crate::lattice::{int_dot, subspace_avoiding, IntMatrix, Subspace};
use crate::quotient::QuotientDatum;
use crate::sigma::{raag_sigma_complement, SigmaResult};
use crate::sphere::{arrangement_samples, Ray, SphereSet};

/// Largest co-rank of a finitely generated subgroup between `N` and `G`,
/// with the character subspace of such a subgroup as witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgCorank {
    pub k: usize,
    /// Rational subspace of the quotient character space whose sphere
    /// misses the restricted complement.
    pub witness: Subspace,
}

pub fn max_fg_corank(c: &SphereSet, q: &QuotientDatum) -> Result<FgCorank> {
    let r = c.restrict(q)?;
    let n = q.corank();
    let witness = if r.is_empty() {
        Subspace::full(n)
    } else if r.is_whole() {
        Subspace::zero(n)
    } else if !r.arcs().is_empty() {
        match r.find_ray_outside(true) {
            Some(ray) => Subspace::span_int(n, &[ray.dir().to_vec()])?,
            None => Subspace::zero(n),
        }
    } else {
        let rays: Vec<_> = r.rays().iter().map(Ray::to_rat).collect();
        subspace_avoiding(n, r.subspaces(), &rays)?
    };
    let sphere = SphereSet::from_subspaces(n, vec![witness.clone()])?;
    if !sphere.is_disjoint_from(&r)? {
        return Err(Error::Internal(
            "finitely generated witness meets the complement".into(),
        ));
    }
    Ok(FgCorank {
        k: witness.dim(),
        witness,
    })
}

/// A line `+-r` missing the set.
fn fg_line(c: &SphereSet) -> Option<Ray> {
    c.find_ray_outside(true)
}

/// A ray of the set whose antipode lies outside it.
fn single_point_line(c: &SphereSet) -> Option<Ray> {
    let candidates: Vec<Ray> = match c.rank() {
        0 => Vec::new(),
        1 => vec![Ray::from_i64(&[1]), Ray::from_i64(&[-1])],
        2 => {
            let mut boundary = c.boundary_rays();
            boundary.extend(c.negate().boundary_rays());
            arrangement_samples(boundary)
        }
        _ => c.rays().to_vec(),
    };
    candidates
        .into_iter()
        .find(|r| c.contains_ray(r) && !c.contains_ray(&r.neg()))
}

/// Generators of the corank-1 lattice `ker chi`, and the sign relating the
/// resulting quotient coordinate to `chi`.
fn line_datum(chi: &Ray) -> Result<(Vec<Vec<BigInt>>, QuotientDatum, BigInt)> {
    let n = chi.ambient();
    let gens = Subspace::span_int(n, &[chi.dir().to_vec()])?
        .orthogonal()
        .integer_basis();
    let q = QuotientDatum::new(n, gens.clone())?;
    let w = q.param().col(0);
    let sign = int_dot(&w, chi.dir()).signum();
    Ok((gens, q, sign))
}

/// Existence of a finitely presented normal fibre product of co-rank 1 in
/// `G1 x G2`.
pub fn corank1_existence(c1: &SigmaResult, c2: &SigmaResult) -> Result<Verdict> {
    decide(&[("factor1", c1), ("factor2", c2)], |sets| {
        let (s1, s2) = (&sets[0], &sets[1]);
        if s1.rank() == 0 || s2.rank() == 0 {
            return Ok((Answer::NotExists, None));
        }
        let any_line = |rank: usize| {
            let mut v = vec![0i64; rank];
            v[0] = 1;
            Ray::from_i64(&v)
        };
        let (case, chi1, chi2) = if let Some(r) = fg_line(s1) {
            (Corank1Case::FirstFg, r, any_line(s2.rank()))
        } else if let Some(r) = fg_line(s2) {
            (Corank1Case::SecondFg, any_line(s1.rank()), r)
        } else {
            match (single_point_line(s1), single_point_line(s2)) {
                (Some(a), Some(b)) => (Corank1Case::Ascending, a, b),
                _ => return Ok((Answer::NotExists, None)),
            }
        };
        let (chi1, pos1) = canonical_orientation(&chi1);
        let (chi2, pos2) = canonical_orientation(&chi2);
        let (n_gens1, q1, sign1) = line_datum(&chi1)?;
        let (n_gens2, q2, sign2) = line_datum(&chi2)?;
        // In canonical coordinates mu* must send the complement ray of the
        // second factor to the complement ray of the first.
        let orient = if case == Corank1Case::Ascending && pos1 != pos2 {
            BigInt::from(-1)
        } else {
            BigInt::from(1)
        };
        let mu_star = IntMatrix::from_rows(1, vec![vec![sign1 * sign2 * &orient]])?;
        let twist = super::TwistMatrix::from_mu_star(mu_star.clone())?;
        let check = fp_check(
            &SigmaResult::definite(s1.clone()),
            &q1,
            &SigmaResult::definite(s2.clone()),
            &q2,
            &twist,
        )?;
        if check.answer != Answer::Fp {
            return Err(Error::Internal(format!(
                "co-rank 1 witness (case {}) fails the containment check",
                case.as_str()
            )));
        }
        let witness = Corank1Witness {
            case,
            chi1,
            chi2,
            n_gens1,
            n_gens2,
            mu_star,
            t_inverted: (case == Corank1Case::Ascending).then(|| orient.is_negative()),
        };
        Ok((Answer::Exists, Some(Certificate::Corank1(Box::new(witness)))))
    })
}

/// Existence of a finitely presented normal `N`-fibre product in `G x G`
/// when `N` has co-rank 2: a discrete character `chi` vanishing on `N` with
/// both `chi` and `-chi` outside the complement.
pub fn corank2_existence(c: &SigmaResult, q: &QuotientDatum) -> Result<Verdict> {
    if q.corank() != 2 {
        return Err(Error::CorankMismatch(format!(
            "co-rank 2 test needs co-rank 2, got {}",
            q.corank()
        )));
    }
    if c.rank() != q.ambient_rank() {
        return Err(Error::AmbientMismatch {
            expected: c.rank(),
            found: q.ambient_rank(),
        });
    }
    decide(&[("factor", c)], |sets| {
        let r = sets[0].restrict(q)?;
        Ok(match r.find_ray_outside(true) {
            Some(ray) => {
                if r.contains_ray(&ray) || r.contains_ray(&ray.neg()) {
                    return Err(Error::Internal("witness ray lies in the complement".into()));
                }
                (Answer::Exists, Some(Certificate::Ray(ray)))
            }
            None => (Answer::NotExists, None),
        })
    })
}

/// Existence of a finitely presented `G'`-fibre product in `G x G` when the
/// complement is a finite union of great subspheres: every piece must have
/// dimension at most half the rank.
pub fn greatsph_existence(c: &SigmaResult) -> Result<Verdict> {
    let set = &c.complement;
    if !set.rays().is_empty() || !set.arcs().is_empty() || !c.warnings.is_empty() {
        return Err(Error::Unsupported(
            "the subsphere criterion needs a complement made of subspaces only".into(),
        ));
    }
    let n = set.rank();
    if let Some(big) = set.subspaces().iter().find(|s| 2 * s.dim() > n) {
        return Ok(Verdict::new(
            Answer::NotExists,
            Some(Certificate::Subspace(big.clone())),
        ));
    }
    let v = subspace_avoiding(n, set.subspaces(), &[])?;
    let sphere = SphereSet::from_subspaces(n, vec![v.clone()])?;
    if 2 * v.dim() < n || !sphere.is_disjoint_from(set)? {
        return Err(Error::Internal("avoiding subspace fails verification".into()));
    }
    Ok(Verdict::new(Answer::Exists, Some(Certificate::Subspace(v))))
}

/// Untwisted and twisted `G'`-fibre products in `G x G` for the
/// right-angled Artin group of `g`.
pub fn artin_check(g: &SimplicialGraph) -> Result<(Verdict, Verdict)> {
    let n = g.len();
    let names = |s: &[usize]| s.iter().map(|&v| g.names()[v].clone()).collect::<Vec<_>>();
    let seps = g.minimal_separators();
    let sigma = raag_sigma_complement(g);

    let untwisted = if g.is_complete() {
        Verdict::new(
            Answer::Fp,
            Some(Certificate::Twist(super::TwistMatrix::identity(n))),
        )
    } else {
        let s = seps.first().ok_or_else(|| {
            Error::Internal("a non-complete graph must have a separator".into())
        })?;
        Verdict::new(Answer::NotFp, Some(Certificate::Separator(names(s))))
    };
    let cross = untwisted_check(&sigma, &QuotientDatum::commutator(n))?;
    if cross.answer != untwisted.answer {
        return Err(Error::Internal(format!(
            "graph test says {} but the sphere test says {}",
            untwisted.answer, cross.answer
        )));
    }

    let twisted = match seps.iter().find(|s| n > 2 * s.len()) {
        Some(s) => Verdict::new(Answer::NotExists, Some(Certificate::Separator(names(s)))),
        None => {
            let sub = greatsph_existence(&sigma)?;
            Verdict::new(Answer::Exists, sub.certificate)
        }
    };
    let cross = greatsph_existence(&sigma)?;
    if cross.answer != twisted.answer {
        return Err(Error::Internal(format!(
            "separator bound says {} but the subsphere criterion says {}",
            twisted.answer, cross.answer
        )));
    }
    Ok((untwisted, twisted))
}
