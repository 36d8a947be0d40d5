//! Decision procedures for finite presentability of normal fibre products
//! `H_mu <= G1 x G2`, phrased as containment questions between closed
//! subsets of character spheres.
//!
//! Every predicate here only gets harder to satisfy as a complement grows.
//! Warned directions are therefore handled by evaluating each question twice,
//! once with all of them left out and once with all of them added; when the
//! two answers differ the verdict is `UNKNOWN`.

mod checks;
mod cook;
mod existence;

use std::fmt;

use num::Signed;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::sigma::SigmaResult;
use crate::sphere::{Piece, Ray, SphereSet};

pub use checks::{fp_check, minus_id_check, untwisted_check};
pub use cook::{cook_mu, plan_max_corank, CookResult, Plan};
pub use existence::{
    artin_check, corank1_existence, corank2_existence, greatsph_existence, max_fg_corank,
    FgCorank,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Answer {
    Fp,
    NotFp,
    Exists,
    NotExists,
    Unknown,
}

impl Answer {
    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Fp => "FP",
            Answer::NotFp => "NOT_FP",
            Answer::Exists => "EXISTS",
            Answer::NotExists => "NOT_EXISTS",
            Answer::Unknown => "UNKNOWN",
        }
    }

    pub fn parse(s: &str) -> Option<Answer> {
        [
            Answer::Fp,
            Answer::NotFp,
            Answer::Exists,
            Answer::NotExists,
            Answer::Unknown,
        ]
        .into_iter()
        .find(|a| a.as_str() == s)
    }

    fn is_positive(self) -> bool {
        matches!(self, Answer::Fp | Answer::Exists)
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The matrix `b` of an automorphism `mu` of `Z^c` (column convention) and
/// its dual `mu* = b^T` acting on quotient character coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistMatrix {
    b: IntMatrix,
}

impl TwistMatrix {
    pub fn new(b: IntMatrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::Dimension(format!(
                "twist matrix must be square, got {}x{}",
                b.rows(),
                b.cols()
            )));
        }
        if !b.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        Ok(TwistMatrix { b })
    }

    pub fn from_mu_star(mu_star: IntMatrix) -> Result<Self> {
        Self::new(mu_star.transpose())
    }

    pub fn identity(c: usize) -> Self {
        TwistMatrix {
            b: IntMatrix::identity(c),
        }
    }

    pub fn minus_identity(c: usize) -> Self {
        let mut b = IntMatrix::identity(c);
        for i in 0..c {
            b[(i, i)] = -b[(i, i)].clone();
        }
        TwistMatrix { b }
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn mu_star(&self) -> IntMatrix {
        self.b.transpose()
    }

    pub fn inverse(&self) -> TwistMatrix {
        TwistMatrix {
            b: self.b.inverse_unimodular().expect("unimodular by construction"),
        }
    }
}

/// Which clause of the co-rank 1 classification produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corank1Case {
    /// A finitely generated co-rank 1 subgroup of the first factor.
    FirstFg,
    /// A finitely generated co-rank 1 subgroup of the second factor.
    SecondFg,
    /// Both factors have a co-rank 1 line meeting the complement in a
    /// single ray.
    Ascending,
}

impl Corank1Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Corank1Case::FirstFg => "i",
            Corank1Case::SecondFg => "ii",
            Corank1Case::Ascending => "iii",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "i" => Some(Corank1Case::FirstFg),
            "ii" => Some(Corank1Case::SecondFg),
            "iii" => Some(Corank1Case::Ascending),
            _ => None,
        }
    }
}

/// Witness for a co-rank 1 fibre product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corank1Witness {
    pub case: Corank1Case,
    /// Characters defining `N_i = ker chi_i`, oriented with first nonzero
    /// coordinate positive.
    pub chi1: Ray,
    pub chi2: Ray,
    /// Generators of the images of `N_1`, `N_2` in the abelianizations.
    pub n_gens1: Vec<Vec<num::BigInt>>,
    pub n_gens2: Vec<Vec<num::BigInt>>,
    /// The twist in the quotient coordinates of those generators.
    pub mu_star: IntMatrix,
    /// Case iii only: whether `mu` must send `t1` to `t2^-1` rather than
    /// `t2`, where `chi_i(t_i) = 1`.
    pub t_inverted: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A piece of `mu*(restricted second complement)` meeting a piece of the
    /// negated restricted first complement.
    Meeting { image: Piece, target: Piece },
    Twist(TwistMatrix),
    Ray(Ray),
    Subspace(crate::lattice::Subspace),
    Separator(Vec<String>),
    Corank1(Box<Corank1Witness>),
}

/// A warned direction together with the input it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub source: String,
    pub ray: Ray,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub certificate: Option<Certificate>,
    pub warnings: Vec<Warning>,
}

impl Verdict {
    pub fn new(answer: Answer, certificate: Option<Certificate>) -> Self {
        Verdict {
            answer,
            certificate,
            warnings: Vec::new(),
        }
    }
}

type Outcome = (Answer, Option<Certificate>);

/// Runs `f` on the complements with warned rays excluded and, if there are
/// any, again with them included.
fn decide<F>(inputs: &[(&str, &SigmaResult)], f: F) -> Result<Verdict>
where
    F: Fn(&[SphereSet]) -> Result<Outcome>,
{
    let warnings: Vec<Warning> = inputs
        .iter()
        .flat_map(|(name, s)| {
            s.warnings.iter().map(move |r| Warning {
                source: name.to_string(),
                ray: r.clone(),
            })
        })
        .collect();
    let lower: Vec<SphereSet> = inputs.iter().map(|(_, s)| s.lower()).collect();
    let (lo, lo_cert) = f(&lower)?;
    if warnings.is_empty() {
        return Ok(Verdict::new(lo, lo_cert));
    }
    let upper: Vec<SphereSet> = inputs.iter().map(|(_, s)| s.upper()).collect();
    let (hi, hi_cert) = f(&upper)?;
    let (answer, certificate) = if lo != hi {
        (Answer::Unknown, None)
    } else if lo.is_positive() {
        (hi, hi_cert)
    } else {
        (lo, lo_cert)
    };
    Ok(Verdict {
        answer,
        certificate,
        warnings,
    })
}

/// The orientation of the line through `r` whose first nonzero coordinate
/// is positive, and whether `r` agrees with it.
fn canonical_orientation(r: &Ray) -> (Ray, bool) {
    let first = r
        .dir()
        .iter()
        .find(|x| !num::Zero::is_zero(*x))
        .expect("rays are nonzero");
    if first.is_positive() {
        (r.clone(), true)
    } else {
        (r.neg(), false)
    }
}
