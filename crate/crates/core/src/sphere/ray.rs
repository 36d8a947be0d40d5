use std::cmp::Ordering;

use num::{BigInt, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{is_zero_vec, primitive, primitive_int, rat_vec, Rat, RatMatrix};

/// An open ray `{t v : t > 0}` through a rational vector, stored as the
/// unique primitive integer vector on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    dir: Vec<BigInt>,
}

impl Ray {
    pub fn new(v: &[BigInt]) -> Result<Ray> {
        if is_zero_vec(v) {
            return Err(Error::ZeroRay);
        }
        Ok(Ray {
            dir: primitive_int(v),
        })
    }

    pub fn from_rat(v: &[Rat]) -> Result<Ray> {
        if is_zero_vec(v) {
            return Err(Error::ZeroRay);
        }
        Ok(Ray { dir: primitive(v) })
    }

    /// Convenience constructor; panics on the zero vector.
    pub fn from_i64(v: &[i64]) -> Ray {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        Ray::new(&v).expect("nonzero ray literal")
    }

    pub fn dir(&self) -> &[BigInt] {
        &self.dir
    }

    pub fn ambient(&self) -> usize {
        self.dir.len()
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        rat_vec(&self.dir)
    }

    pub fn neg(&self) -> Ray {
        Ray {
            dir: self.dir.iter().map(|x| -x).collect(),
        }
    }

    pub fn has_zero_coordinate(&self) -> bool {
        self.dir.iter().any(Zero::is_zero)
    }

    pub fn map(&self, a: &RatMatrix) -> Result<Ray> {
        Ray::from_rat(&a.mul_vec(&self.to_rat()))
    }
}

// Planar helpers. All of them assume rank-2 vectors.

pub(crate) fn cross(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn dot2(a: &[BigInt], b: &[BigInt]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1]
}

/// 0 for angles in `[0, pi)` measured counterclockwise from `base`, 1 for
/// `[pi, 2 pi)`.
fn half_from(base: &[BigInt], v: &[BigInt]) -> u8 {
    let c = cross(base, v);
    if c.is_positive() || (c.is_zero() && dot2(base, v).is_positive()) {
        0
    } else {
        1
    }
}

/// Compares the counterclockwise angles from `base` to `a` and to `b`.
pub(crate) fn cmp_from(base: &Ray, a: &Ray, b: &Ray) -> Ordering {
    let (ha, hb) = (half_from(&base.dir, &a.dir), half_from(&base.dir, &b.dir));
    ha.cmp(&hb).then_with(|| {
        let c = cross(&a.dir, &b.dir);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

pub(crate) fn x_axis() -> Ray {
    Ray::from_i64(&[1, 0])
}

/// Absolute angle order, starting at `(1, 0)`.
pub(crate) fn angle_cmp(a: &Ray, b: &Ray) -> Ordering {
    cmp_from(&x_axis(), a, b)
}

/// Rotation by a quarter turn counterclockwise.
pub(crate) fn rot90(r: &Ray) -> Ray {
    Ray {
        dir: vec![-r.dir[1].clone(), r.dir[0].clone()],
    }
}

/// A closed arc of the unit circle in rank 2, subtending an angle strictly
/// between 0 and pi, running counterclockwise from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    start: Ray,
    end: Ray,
}

impl Arc {
    /// The short closed arc between two rays. The endpoints may be given in
    /// either order; equal or antipodal endpoints do not determine an arc.
    pub fn new(p: Ray, q: Ray) -> Result<Arc> {
        if p.ambient() != 2 || q.ambient() != 2 {
            return Err(Error::InvalidArc(format!(
                "arcs live in rank 2, got endpoints of rank {} and {}",
                p.ambient(),
                q.ambient()
            )));
        }
        let c = cross(&p.dir, &q.dir);
        if c.is_zero() {
            return Err(Error::InvalidArc(
                "endpoints are equal or antipodal".into(),
            ));
        }
        Ok(if c.is_positive() {
            Arc { start: p, end: q }
        } else {
            Arc { start: q, end: p }
        })
    }

    pub fn from_i64(p: &[i64], q: &[i64]) -> Arc {
        Arc::new(Ray::from_i64(p), Ray::from_i64(q)).expect("valid arc literal")
    }

    pub fn start(&self) -> &Ray {
        &self.start
    }

    pub fn end(&self) -> &Ray {
        &self.end
    }

    /// Closed-cone membership: `r = a start + b end` with `a, b >= 0`.
    pub fn contains(&self, r: &Ray) -> bool {
        r.ambient() == 2
            && !cross(&self.start.dir, &r.dir).is_negative()
            && !cross(&r.dir, &self.end.dir).is_negative()
    }

    pub fn neg(&self) -> Arc {
        Arc {
            start: self.start.neg(),
            end: self.end.neg(),
        }
    }

    /// Image under an invertible linear map; a convex cone maps to a convex
    /// cone, so the image is again a short arc.
    pub fn map(&self, a: &RatMatrix) -> Result<Arc> {
        Arc::new(self.start.map(a)?, self.end.map(a)?)
    }

    pub fn meets(&self, other: &Arc) -> bool {
        self.contains(&other.start)
            || self.contains(&other.end)
            || other.contains(&self.start)
            || other.contains(&self.end)
    }
}

impl PartialOrd for Arc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Arc {
    fn cmp(&self, other: &Self) -> Ordering {
        angle_cmp(&self.start, &other.start).then_with(|| angle_cmp(&self.end, &other.end))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rays_are_primitive() {
        assert_eq!(Ray::from_i64(&[-2, 4]), Ray::from_i64(&[-1, 2]));
        assert_ne!(Ray::from_i64(&[-1, 2]), Ray::from_i64(&[1, -2]));
        assert_eq!(Ray::new(&[BigInt::zero(), BigInt::zero()]), Err(Error::ZeroRay));
    }

    #[test]
    fn arc_membership() {
        let omega = Arc::from_i64(&[-2, 1], &[2, 1]);
        assert_eq!(omega.start(), &Ray::from_i64(&[2, 1]));
        assert!(omega.contains(&Ray::from_i64(&[0, 1])));
        assert!(omega.contains(&Ray::from_i64(&[-2, 1])));
        assert!(!omega.contains(&Ray::from_i64(&[1, 0])));
        assert!(!omega.contains(&Ray::from_i64(&[0, -1])));
        assert!(Arc::new(Ray::from_i64(&[1, 0]), Ray::from_i64(&[-3, 0])).is_err());
    }

    #[test]
    fn angle_order() {
        let order = [[1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1]];
        for w in order.windows(2) {
            assert_eq!(
                angle_cmp(&Ray::from_i64(&w[0]), &Ray::from_i64(&w[1])),
                Ordering::Less
            );
        }
    }
}
