//! Exact computer algebra for Pythagorean-hodograph (PH) curves and
//! PH-preserving rational maps.
//!
//! The crate is layered bottom-up: [`scalar`] (ℚ and ℚ(i)), [`polynomial`]
//! (sparse multivariate polynomials with gcd, square-free decomposition and
//! square roots), [`ratcalc`] (rational functions, real-square tests, square
//! extraction, Hermite reduction), and the geometric layers [`curve`],
//! [`map`], [`planar`] and [`moebius`]. [`text`] holds the expression parser
//! and the file formats; [`plot`] renders SVG samplings; [`corpus`] holds
//! seeded example collections.

pub mod error;
pub mod scalar;
pub mod univariate;
pub mod polynomial;
pub mod ratcalc;
pub mod curve;
pub mod map;
pub mod planar;
pub mod moebius;
pub mod text;
pub mod plot;
pub mod corpus;
mod linalg;

pub use error::{Error, Result, ScalarError};
pub use polynomial::{MultiPoly, Vars};
pub use ratcalc::{RatFunc, RealSquare};
pub use curve::PHCurve;
pub use map::RationalMap;
pub use scalar::{Field, GaussianRational, Rational};
