//! Exact free-field realizations of the Lie superalgebra gl(m|n) on a
//! polynomial (x) exterior algebra, and of its level-zero affinization on the
//! mode-indexed version of the same algebra.
//!
//! Everything is computed over Q[mu] with big-integer rationals; there is no
//! floating point anywhere. The crate provides the supercommutative algebra
//! itself (`monomial`, `element`), the gl(m|n) operators with weight theory,
//! singular vectors and character combinatorics (`finite`, `character`), the
//! loop-algebra operators with the derivation and irreducibility certificates
//! (`affine`), and exact linear algebra over Q and Q(mu) (`linalg`).

pub mod affine;
pub mod basis;
pub mod character;
pub mod coeff;
pub mod element;
pub mod error;
pub mod finite;
pub mod linalg;
pub mod monomial;
pub mod report;
pub mod sample;
pub mod text;

pub use coeff::{MuPoly, Rat};
pub use element::Element;
pub use error::{Error, Result};
pub use monomial::{Monomial, Parity, Signature, Variable};
