//! Complements of the BNS invariant for two-generator one-relator groups
//! (via the prefix walk of the relator) and for right-angled Artin groups
//! (via minimal vertex separators).

use std::fmt;
use std::str::FromStr;

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::grouplang::{OneRelatorPresentation, SimplicialGraph};
use crate::lattice::{int_vec, primitive_int, Subspace};
use crate::sphere::{arrangement_samples, Arc, Ray, SphereSet};

/// A computed complement together with the directions the criterion does
/// not decide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaResult {
    pub complement: SphereSet,
    /// Rays with a zero coordinate that are neither asserted in nor out of
    /// the complement.
    pub warnings: Vec<Ray>,
}

/// How undecided directions are treated when a verdict is needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DegenerateMode {
    /// Keep them as warnings; verdicts that depend on them are `UNKNOWN`.
    #[default]
    Warn,
    /// Treat them as outside the complement.
    Exclude,
    /// Treat them as inside the complement.
    Include,
}

impl FromStr for DegenerateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "warn" => Ok(DegenerateMode::Warn),
            "exclude" => Ok(DegenerateMode::Exclude),
            "include" => Ok(DegenerateMode::Include),
            other => Err(Error::validation(
                "degenerate",
                format!("expected warn, exclude or include, got {other:?}"),
            )),
        }
    }
}

impl fmt::Display for DegenerateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegenerateMode::Warn => "warn",
            DegenerateMode::Exclude => "exclude",
            DegenerateMode::Include => "include",
        })
    }
}

impl SigmaResult {
    pub fn definite(complement: SphereSet) -> Self {
        SigmaResult {
            complement,
            warnings: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.complement.rank()
    }

    /// The complement with every warned ray left out.
    pub fn lower(&self) -> SphereSet {
        self.complement.clone()
    }

    /// The complement with every warned ray added.
    pub fn upper(&self) -> SphereSet {
        self.complement
            .with_rays(&self.warnings)
            .expect("warnings share the complement's rank")
    }

    /// Resolves the warnings according to `mode`; `Warn` leaves them as is.
    pub fn resolve(&self, mode: DegenerateMode) -> SigmaResult {
        match mode {
            DegenerateMode::Warn => self.clone(),
            DegenerateMode::Exclude => SigmaResult::definite(self.lower()),
            DegenerateMode::Include => SigmaResult::definite(self.upper()),
        }
    }
}

/// Values of a character on the walk points.
fn pairings(chi: &[BigInt], points: &[[i64; 2]]) -> Vec<BigInt> {
    points
        .iter()
        .map(|p| &chi[0] * p[0] + &chi[1] * p[1])
        .collect()
}

/// Whether the extreme value over the cyclic walk is attained exactly once.
fn unique_extreme(values: &[BigInt], use_max: bool) -> bool {
    let best = if use_max {
        values.iter().max()
    } else {
        values.iter().min()
    };
    match best {
        Some(b) => values.iter().filter(|v| *v == b).count() == 1,
        None => false,
    }
}

/// Evaluates the criterion at a direction; true means the direction fails
/// it and lies in the complement.
fn fails(chi: &Ray, points: &[[i64; 2]], use_max: bool) -> bool {
    let dir: Vec<BigInt> = if use_max {
        chi.neg().dir().to_vec()
    } else {
        chi.dir().to_vec()
    };
    !unique_extreme(&pairings(&dir, points), use_max)
}

/// Brown's criterion for a two-generator one-relator group: a direction with
/// both coordinates nonzero lies outside the complement iff the minimum of
/// the character over the cyclic prefix walk of the relator is attained
/// exactly once. Directions with a zero coordinate are reported as warnings.
///
/// When the relator's exponent sum `s` is nonzero, only the two directions
/// orthogonal to `s` are characters; the result is still expressed in
/// `R^2` and callers should add `s` to the generators of `N`.
pub fn brown_sigma_complement(p: &OneRelatorPresentation) -> SigmaResult {
    brown_with(p, false)
}

/// The same complement computed from maxima of the negated characters; used
/// to cross-check [`brown_sigma_complement`].
pub fn brown_sigma_complement_dual(p: &OneRelatorPresentation) -> SigmaResult {
    brown_with(p, true)
}

fn brown_with(p: &OneRelatorPresentation, use_max: bool) -> SigmaResult {
    let walk = p.prefix_walk();
    let points = &walk.points;

    if walk.total != [0, 0] {
        let chi0 = Ray::new(&primitive_int(&int_vec(&[-walk.total[1], walk.total[0]])))
            .expect("nonzero exponent sum gives a nonzero normal");
        let mut rays = Vec::new();
        let mut warnings = Vec::new();
        for r in [chi0.clone(), chi0.neg()] {
            if r.has_zero_coordinate() {
                warnings.push(r);
            } else if fails(&r, points, use_max) {
                rays.push(r);
            }
        }
        warnings.sort();
        return SigmaResult {
            complement: SphereSet::from_rays(2, rays).expect("rank-2 rays"),
            warnings,
        };
    }

    // Boundary rays: both directions of every line where two walk points
    // tie, plus the coordinate axes so no open sector holds a degenerate ray.
    let mut boundary: Vec<Ray> = [[1, 0], [0, 1], [-1, 0], [0, -1]]
        .iter()
        .map(|v| Ray::from_i64(v))
        .collect();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = [a[0] - b[0], a[1] - b[1]];
            if d == [0, 0] {
                continue;
            }
            let normal = Ray::new(&int_vec(&[-d[1], d[0]])).expect("nonzero difference");
            boundary.push(normal.neg());
            boundary.push(normal);
        }
    }

    let samples = arrangement_samples(boundary);
    let count = samples.len() / 2;
    let (sectors, sorted) = samples.split_at(count);

    let mut arcs = Vec::new();
    let mut failing_sector = vec![false; count];
    for (i, s) in sectors.iter().enumerate() {
        if fails(s, points, use_max) {
            failing_sector[i] = true;
            let next = &sorted[(i + 1) % count];
            arcs.push(Arc::new(sorted[i].clone(), next.clone()).expect("sectors are within a quadrant"));
        }
    }

    let mut rays = Vec::new();
    let mut warnings = Vec::new();
    for (i, b) in sorted.iter().enumerate() {
        let touches_failing = failing_sector[i] || failing_sector[(i + count - 1) % count];
        if b.has_zero_coordinate() {
            if !touches_failing {
                warnings.push(b.clone());
            }
        } else if fails(b, points, use_max) {
            rays.push(b.clone());
        }
    }
    warnings.sort();
    SigmaResult {
        complement: SphereSet::new(2, Vec::new(), rays, arcs).expect("rank-2 pieces"),
        warnings,
    }
}

/// Generators of the image of the relator in `Z^2`: empty when the exponent
/// sum vanishes, otherwise the exponent sum itself.
pub fn relator_lattice(p: &OneRelatorPresentation) -> Vec<Vec<BigInt>> {
    let total = p.prefix_walk().total;
    if total == [0, 0] {
        Vec::new()
    } else {
        vec![int_vec(&total)]
    }
}

/// Complement for the right-angled Artin group of `g`: one coordinate
/// subspace `{x : x_v = 0 for v in S}` per minimal separator `S`.
pub fn raag_sigma_complement(g: &SimplicialGraph) -> SigmaResult {
    let n = g.len();
    let subspaces = g
        .minimal_separators()
        .iter()
        .map(|sep| {
            let axes: Vec<usize> = (0..n).filter(|v| !sep.contains(v)).collect();
            Subspace::coordinate(n, &axes)
        })
        .collect();
    SigmaResult::definite(SphereSet::from_subspaces(n, subspaces).expect("coordinate subspaces"))
}

/// Checks that every ray in `warnings` has a zero coordinate and the
/// complement's rank.
pub fn check_warnings(rank: usize, warnings: &[Ray]) -> Result<()> {
    for (i, w) in warnings.iter().enumerate() {
        if w.ambient() != rank {
            return Err(Error::validation(
                format!("warnings[{i}]"),
                format!("expected length {rank}, found {}", w.ambient()),
            ));
        }
        if !w.dir().iter().any(Zero::is_zero) {
            return Err(Error::validation(
                format!("warnings[{i}]"),
                "warned rays must have a zero coordinate",
            ));
        }
    }
    Ok(())
}
