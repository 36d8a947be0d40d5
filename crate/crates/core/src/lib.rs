//! Exact decision procedures for finite presentability of normal fibre
//! products `H_mu <= G1 x G2`, driven by the complements of the
//! Bieri-Neumann-Strebel invariants of the factors.
//!
//! Everything is exact: characters are rational vectors, complements are
//! finite unions of rational great subspheres, rays and (in rank 2) closed
//! arcs, and twisting automorphisms are unimodular integer matrices.
//!
//! Pairing convention: characters are column vectors, `<chi, g>` is the dot
//! product, and the action of `mu` on characters is the transpose of the
//! matrix of `mu` on the quotient lattice.

pub mod error;
pub mod fibre;
pub mod grouplang;
pub mod json;
pub mod lattice;
pub mod quotient;
pub mod sigma;
pub mod sphere;

pub use error::{Error, Result};
