//! Descent algebra of the symmetric group, the face monoid of set
//! compositions, knapsack numbers, and exact checks of the minimal
//! polynomials of reverse shuffle elements.
//!
//! Everything is generic over an exact [`Scalar`] field; the aliases below
//! fix it to the rationals or to `F_3`.

pub mod bidigare;
pub mod combinatorics;
pub mod error;
pub mod exact_linalg;
pub mod face_monoid;
pub mod group_algebra;
pub mod knapsack;
pub mod scalar;
pub mod theorems;

pub use error::{Error, Result};
pub use scalar::{Fp, Rational, Scalar};

/// `F_3`.
pub type F3 = Fp<3>;

/// `QS_n`.
pub type QGroupAlgebraElement = group_algebra::GroupAlgebraElement<Rational>;
/// `QF`.
pub type QFaceAlgebraElement = face_monoid::FaceAlgebraElement<Rational>;
/// Descent algebra over `Q`, in B-coordinates.
pub type QDescentAlgebraElement = bidigare::DescentAlgebraElement<Rational>;
pub type QMatrix = exact_linalg::ExactMatrix<Rational>;
pub type QPolynomial = exact_linalg::Polynomial<Rational>;
