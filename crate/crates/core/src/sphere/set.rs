use std::cmp::Ordering;

use num::{BigInt, Signed, Zero};

use super::ray::{angle_cmp, cmp_from, cross, rot90, x_axis, Arc, Ray};
use crate::error::{Error, Result};
use crate::lattice::{solve, vector_avoiding, RatMatrix, Subspace};
use crate::quotient::QuotientDatum;

/// One constituent of a [`SphereSet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    /// The unit subsphere of a rational subspace.
    Subspace(Subspace),
    Ray(Ray),
    Arc(Arc),
}

impl Piece {
    pub fn ambient(&self) -> usize {
        match self {
            Piece::Subspace(s) => s.ambient(),
            Piece::Ray(r) => r.ambient(),
            Piece::Arc(_) => 2,
        }
    }

    pub fn contains_ray(&self, r: &Ray) -> bool {
        match self {
            Piece::Subspace(s) => s.ambient() == r.ambient() && s.contains_int(r.dir()),
            Piece::Ray(q) => q == r,
            Piece::Arc(a) => a.contains(r),
        }
    }
}

/// True iff the two pieces share no point of the sphere.
pub fn disjoint_pieces(p: &Piece, q: &Piece) -> Result<bool> {
    if p.ambient() != q.ambient() {
        return Err(Error::AmbientMismatch {
            expected: p.ambient(),
            found: q.ambient(),
        });
    }
    Ok(match (p, q) {
        (Piece::Subspace(a), Piece::Subspace(b)) => a.intersect(b)?.is_zero(),
        (Piece::Subspace(s), Piece::Ray(r)) | (Piece::Ray(r), Piece::Subspace(s)) => {
            !s.contains_int(r.dir())
        }
        (Piece::Ray(a), Piece::Ray(b)) => a != b,
        (Piece::Arc(a), Piece::Ray(r)) | (Piece::Ray(r), Piece::Arc(a)) => !a.contains(r),
        (Piece::Arc(a), Piece::Arc(b)) => !a.meets(b),
        (Piece::Arc(a), Piece::Subspace(s)) | (Piece::Subspace(s), Piece::Arc(a)) => {
            match s.dim() {
                0 => true,
                1 => {
                    let w = Ray::new(&s.integer_basis()[0])?;
                    !a.contains(&w) && !a.contains(&w.neg())
                }
                _ => false,
            }
        }
    })
}

/// A closed subset of the unit sphere in `R^rank`: a finite union of rational
/// great subspheres, rays, and (rank 2 only) short closed arcs.
///
/// Values are kept normalized: zero subspaces are dropped, a full-rank
/// subspace absorbs everything else, redundant subspaces and rays are pruned,
/// and overlapping arcs are merged and re-split into pieces shorter than a
/// half turn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereSet {
    rank: usize,
    subspaces: Vec<Subspace>,
    rays: Vec<Ray>,
    arcs: Vec<Arc>,
}

impl SphereSet {
    pub fn new(
        rank: usize,
        subspaces: Vec<Subspace>,
        rays: Vec<Ray>,
        arcs: Vec<Arc>,
    ) -> Result<SphereSet> {
        for s in &subspaces {
            check_rank(rank, s.ambient())?;
        }
        for r in &rays {
            check_rank(rank, r.ambient())?;
        }
        if !arcs.is_empty() && rank != 2 {
            return Err(Error::InvalidArc(format!(
                "arcs are only supported in rank 2, not rank {rank}"
            )));
        }
        let mut s = SphereSet {
            rank,
            subspaces,
            rays,
            arcs,
        };
        s.normalize();
        Ok(s)
    }

    pub fn empty(rank: usize) -> SphereSet {
        SphereSet {
            rank,
            subspaces: Vec::new(),
            rays: Vec::new(),
            arcs: Vec::new(),
        }
    }

    pub fn whole(rank: usize) -> SphereSet {
        let mut s = SphereSet::empty(rank);
        s.subspaces.push(Subspace::full(rank));
        s.normalize();
        s
    }

    pub fn from_rays(rank: usize, rays: Vec<Ray>) -> Result<SphereSet> {
        SphereSet::new(rank, Vec::new(), rays, Vec::new())
    }

    pub fn from_subspaces(rank: usize, subspaces: Vec<Subspace>) -> Result<SphereSet> {
        SphereSet::new(rank, subspaces, Vec::new(), Vec::new())
    }

    pub fn from_arcs(arcs: Vec<Arc>) -> Result<SphereSet> {
        SphereSet::new(2, Vec::new(), Vec::new(), arcs)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty() && self.rays.is_empty() && self.arcs.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.rank > 0 && self.subspaces.iter().any(Subspace::is_full)
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let mut out: Vec<Piece> = self.subspaces.iter().cloned().map(Piece::Subspace).collect();
        out.extend(self.rays.iter().cloned().map(Piece::Ray));
        out.extend(self.arcs.iter().cloned().map(Piece::Arc));
        out
    }

    pub fn contains_ray(&self, r: &Ray) -> bool {
        r.ambient() == self.rank
            && (self.subspaces.iter().any(|s| s.contains_int(r.dir()))
                || self.rays.contains(r)
                || self.arcs.iter().any(|a| a.contains(r)))
    }

    pub fn union(&self, other: &SphereSet) -> Result<SphereSet> {
        check_rank(self.rank, other.rank)?;
        SphereSet::new(
            self.rank,
            self.subspaces.iter().chain(&other.subspaces).cloned().collect(),
            self.rays.iter().chain(&other.rays).cloned().collect(),
            self.arcs.iter().chain(&other.arcs).cloned().collect(),
        )
    }

    pub fn with_rays(&self, rays: &[Ray]) -> Result<SphereSet> {
        let mut rs = self.rays.clone();
        rs.extend(rays.iter().cloned());
        SphereSet::new(self.rank, self.subspaces.clone(), rs, self.arcs.clone())
    }

    /// Antipodal image.
    pub fn negate(&self) -> SphereSet {
        let mut s = SphereSet {
            rank: self.rank,
            subspaces: self.subspaces.clone(),
            rays: self.rays.iter().map(Ray::neg).collect(),
            arcs: self.arcs.iter().map(Arc::neg).collect(),
        };
        s.normalize();
        s
    }

    /// Image under an invertible linear map acting on column vectors.
    pub fn map(&self, a: &RatMatrix) -> Result<SphereSet> {
        if a.rows() != self.rank || a.cols() != self.rank {
            return Err(Error::AmbientMismatch {
                expected: self.rank,
                found: if a.rows() != self.rank { a.rows() } else { a.cols() },
            });
        }
        if a.det()?.is_zero() {
            return Err(Error::Singular);
        }
        SphereSet::new(
            self.rank,
            self.subspaces
                .iter()
                .map(|s| s.image(a))
                .collect::<Result<_>>()?,
            self.rays.iter().map(|r| r.map(a)).collect::<Result<_>>()?,
            self.arcs.iter().map(|r| r.map(a)).collect::<Result<_>>()?,
        )
    }

    /// Intersection with the subsphere `S(G, N)`, expressed in the quotient
    /// character coordinates of `q`.
    pub fn restrict(&self, q: &QuotientDatum) -> Result<SphereSet> {
        check_rank(self.rank, q.ambient_rank())?;
        let c = q.corank();
        let param = q.param_rat();

        let subspaces = self
            .subspaces
            .iter()
            .map(|s| s.preimage(&param))
            .collect::<Result<Vec<_>>>()?;

        let mut rays = Vec::new();
        for r in &self.rays {
            if c == 0 {
                break;
            }
            if let Some(y) = solve(&param, &r.to_rat()) {
                rays.push(Ray::from_rat(&y)?);
            }
        }

        let mut arcs = Vec::new();
        match c {
            2 if !self.arcs.is_empty() => {
                let inv = param.inverse()?;
                for a in &self.arcs {
                    arcs.push(a.map(&inv)?);
                }
            }
            1 => {
                let w = Ray::new(&q.param().col(0))?;
                for a in &self.arcs {
                    if a.contains(&w) {
                        rays.push(Ray::from_i64(&[1]));
                    }
                    if a.contains(&w.neg()) {
                        rays.push(Ray::from_i64(&[-1]));
                    }
                }
            }
            _ => {}
        }
        SphereSet::new(c, subspaces, rays, arcs)
    }

    /// First pair of pieces `(mine, theirs)` sharing a point, if any.
    pub fn first_meeting(&self, other: &SphereSet) -> Result<Option<(Piece, Piece)>> {
        check_rank(self.rank, other.rank)?;
        let theirs = other.pieces();
        for p in self.pieces() {
            for q in &theirs {
                if !disjoint_pieces(&p, q)? {
                    return Ok(Some((p, q.clone())));
                }
            }
        }
        Ok(None)
    }

    pub fn is_disjoint_from(&self, other: &SphereSet) -> Result<bool> {
        Ok(self.first_meeting(other)?.is_none())
    }

    /// Boundary rays of the planar arrangement cut out by this set (rank 2).
    pub(crate) fn boundary_rays(&self) -> Vec<Ray> {
        let mut out = Vec::new();
        for s in &self.subspaces {
            if s.dim() == 1 {
                let w = Ray::new(&s.integer_basis()[0]).expect("nonzero basis row");
                out.push(w.neg());
                out.push(w);
            }
        }
        out.extend(self.rays.iter().cloned());
        for a in &self.arcs {
            out.push(a.start().clone());
            out.push(a.end().clone());
        }
        out
    }

    /// A rational ray outside the set (and, when `symmetric`, whose antipode
    /// is outside too), or `None` when no such ray exists.
    pub fn find_ray_outside(&self, symmetric: bool) -> Option<Ray> {
        let target = if symmetric {
            self.union(&self.negate()).expect("same rank")
        } else {
            self.clone()
        };
        let outside = |r: &Ray| !target.contains_ray(r);
        match self.rank {
            0 => None,
            1 => [Ray::from_i64(&[1]), Ray::from_i64(&[-1])]
                .into_iter()
                .find(outside),
            2 => {
                let mut candidates = vec![
                    Ray::from_i64(&[1, 0]),
                    Ray::from_i64(&[0, 1]),
                    Ray::from_i64(&[-1, 0]),
                    Ray::from_i64(&[0, -1]),
                ];
                candidates.extend(arrangement_samples(target.boundary_rays()));
                candidates.into_iter().find(outside)
            }
            n => {
                if target.is_whole() {
                    return None;
                }
                // Only subspaces and rays occur here; avoiding the line
                // through each ray keeps both the ray and its antipode out.
                let mut lines = target.subspaces.clone();
                for r in &target.rays {
                    lines.push(Subspace::span_int(n, std::slice::from_ref(&r.dir().to_vec())).ok()?);
                }
                let v = vector_avoiding(n, &lines).ok()?;
                Ray::from_rat(&v).ok()
            }
        }
    }

    fn normalize(&mut self) {
        let rank = self.rank;
        if rank == 0 {
            self.subspaces.clear();
            self.rays.clear();
            self.arcs.clear();
            return;
        }
        self.subspaces.retain(|s| !s.is_zero());
        if self.subspaces.iter().any(Subspace::is_full) {
            self.subspaces = vec![Subspace::full(rank)];
            self.rays.clear();
            self.arcs.clear();
            return;
        }

        match merge_arcs(std::mem::take(&mut self.arcs)) {
            ArcUnion::Whole => {
                self.subspaces = vec![Subspace::full(rank)];
                self.rays.clear();
                return;
            }
            ArcUnion::Arcs(arcs) => self.arcs = arcs,
        }

        self.subspaces.sort();
        self.subspaces.dedup();
        let subs = self.subspaces.clone();
        self.subspaces = subs
            .iter()
            .enumerate()
            .filter(|(i, s)| {
                !subs
                    .iter()
                    .enumerate()
                    .any(|(j, t)| j != *i && t.dim() > s.dim() && t.contains_subspace(s))
            })
            .map(|(_, s)| s.clone())
            .collect();
        if !self.arcs.is_empty() {
            let arcs = self.arcs.clone();
            self.subspaces.retain(|s| {
                let w = Ray::new(&s.integer_basis()[0]).expect("nonzero basis row");
                let neg = w.neg();
                !(arcs.iter().any(|a| a.contains(&w)) && arcs.iter().any(|a| a.contains(&neg)))
            });
        }

        self.rays.sort();
        self.rays.dedup();
        let subs = &self.subspaces;
        let arcs = &self.arcs;
        self.rays.retain(|r| {
            !subs.iter().any(|s| s.contains_int(r.dir())) && !arcs.iter().any(|a| a.contains(r))
        });
    }
}

fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::AmbientMismatch { expected, found })
    }
}

/// Interior samples of the open sectors between consecutive boundary rays,
/// followed by the boundary rays themselves, in angular order.
pub(crate) fn arrangement_samples(mut boundary: Vec<Ray>) -> Vec<Ray> {
    boundary.sort_by(angle_cmp);
    boundary.dedup();
    let mut out = Vec::new();
    if boundary.is_empty() {
        out.push(x_axis());
        return out;
    }
    for (i, b) in boundary.iter().enumerate() {
        let next = &boundary[(i + 1) % boundary.len()];
        out.push(sector_sample(b, next));
    }
    out.extend(boundary);
    out
}

/// A ray strictly inside the open counterclockwise sector from `a` to `b`
/// (the full circle minus `a` when `a == b`).
pub(crate) fn sector_sample(a: &Ray, b: &Ray) -> Ray {
    if cross(a.dir(), b.dir()).is_positive() {
        let sum: Vec<BigInt> = a.dir().iter().zip(b.dir()).map(|(x, y)| x + y).collect();
        Ray::new(&sum).expect("sum of rays less than a half turn apart is nonzero")
    } else {
        // The sector spans at least a half turn, so the quarter turn is inside.
        rot90(a)
    }
}

enum ArcUnion {
    Whole,
    Arcs(Vec<Arc>),
}

/// Position on the circle cut open at `(1, 0)`: `End` is the far side of the cut.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Pos {
    At(Ray),
    End,
}

fn pos_cmp(a: &Pos, b: &Pos) -> Ordering {
    match (a, b) {
        (Pos::At(x), Pos::At(y)) => angle_cmp(x, y),
        (Pos::At(_), Pos::End) => Ordering::Less,
        (Pos::End, Pos::At(_)) => Ordering::Greater,
        (Pos::End, Pos::End) => Ordering::Equal,
    }
}

fn pos_ray(p: &Pos) -> Ray {
    match p {
        Pos::At(r) => r.clone(),
        Pos::End => x_axis(),
    }
}

/// Union of closed arcs as maximal counterclockwise intervals, each re-split
/// at quarter turns from its start when it reaches a half turn.
fn merge_arcs(arcs: Vec<Arc>) -> ArcUnion {
    if arcs.is_empty() {
        return ArcUnion::Arcs(arcs);
    }
    let zero = x_axis();
    let mut lin: Vec<(Pos, Pos)> = Vec::new();
    for a in arcs {
        if angle_cmp(a.start(), a.end()) == Ordering::Less {
            lin.push((Pos::At(a.start().clone()), Pos::At(a.end().clone())));
        } else {
            lin.push((Pos::At(a.start().clone()), Pos::End));
            lin.push((Pos::At(zero.clone()), Pos::At(a.end().clone())));
        }
    }
    lin.sort_by(|a, b| pos_cmp(&a.0, &b.0).then_with(|| pos_cmp(&a.1, &b.1)));
    let mut merged: Vec<(Pos, Pos)> = Vec::new();
    for (s, e) in lin {
        if let Some(last) = merged.last_mut() {
            if pos_cmp(&s, &last.1) != Ordering::Greater {
                if pos_cmp(&e, &last.1) == Ordering::Greater {
                    last.1 = e;
                }
                continue;
            }
        }
        merged.push((s, e));
    }

    let starts_at_zero = matches!(&merged[0].0, Pos::At(r) if *r == zero);
    let ends_at_end = merged.last().is_some_and(|m| m.1 == Pos::End);
    if starts_at_zero && ends_at_end {
        if merged.len() == 1 {
            return ArcUnion::Whole;
        }
        let first = merged.remove(0);
        let last = merged.last_mut().expect("at least one interval left");
        last.1 = first.1;
    }

    let mut out = Vec::new();
    for (s, e) in merged {
        let (s, e) = (pos_ray(&s), pos_ray(&e));
        if s == e {
            // A lone point can only come from an arc touching the cut, which
            // the wrap-around join above has already absorbed.
            continue;
        }
        let mut cuts = vec![s.clone()];
        let c = cross(s.dir(), e.dir());
        if !c.is_positive() {
            let quarter = rot90(&s);
            let half = s.neg();
            let three = rot90(&half);
            for p in [quarter, half, three] {
                if cmp_from(&s, &p, &e) == Ordering::Less {
                    cuts.push(p);
                }
            }
        }
        cuts.push(e);
        for w in cuts.windows(2) {
            out.push(Arc::new(w[0].clone(), w[1].clone()).expect("cut pieces are short"));
        }
    }
    out.sort();
    ArcUnion::Arcs(out)
}
