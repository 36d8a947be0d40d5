//! Exact rational and integer linear algebra.

mod avoid;
mod matrix;
mod snf;
mod subspace;

use num::{BigInt, BigRational, Integer, One, Zero};

pub use avoid::{subspace_avoiding, vector_avoiding};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use snf::{complete_to_unimodular, snf, SnfResult};
pub use subspace::{rational_kernel, rref, solve, Subspace};

/// Exact rational scalar; always reduced with a positive denominator.
pub type Rat = BigRational;

pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat_vec(v: &[BigInt]) -> Vec<Rat> {
    v.iter().cloned().map(Rat::from_integer).collect()
}

pub fn rat_vec_i64(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Smallest positive integer multiple of a rational vector with coprime
/// entries. The zero vector maps to the zero vector.
pub fn primitive(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    primitive_int(&ints)
}

/// Divides an integer vector by the gcd of its entries (sign preserved).
pub fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}
