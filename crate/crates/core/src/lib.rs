//! Exact invariants of torus knots and links.
//!
//! The exact side (polynomials, resultants, multiplicities, tower orders) is
//! generic over the coefficient ring and instantiated with `BigInt`; the
//! numerical side (root sums, generating functions, Mahler measures) is
//! generic over `f32`/`f64`. The aliases below fix the usual choices.
//!
//! ```
//! use torus_core::alexander::{alexander_poly, cyclotomic_multiplicities};
//! use torus_core::covers::homology_order_cyclic;
//! use torus_core::TorusParams;
//!
//! let trefoil = TorusParams::new(2, 3)?;
//! assert_eq!(alexander_poly(&trefoil).to_string(), "t^2 - t + 1");
//! assert_eq!(cyclotomic_multiplicities(&trefoil).multiplicity(6), 1);
//! assert_eq!(homology_order_cyclic(&trefoil, 2)?, 3.into());
//! # Ok::<(), torus_core::Error>(())
//! ```

pub mod alexander;
pub mod arith;
pub mod covers;
pub mod distribution;
pub mod error;
pub mod iwasawa;
pub mod moments;
pub mod poly;
pub mod resultant;
pub mod roots;
pub mod scalar;

pub use alexander::{AdmissibleVector, CycFactorization, TorusParams};
pub use error::{Error, Result};
pub use scalar::{IntScalar, RealScalar, Ring};

/// Dense polynomial with arbitrary-precision integer coefficients.
pub type IntPolynomial = poly::Poly<num_bigint::BigInt>;
/// Exact rational used for arc endpoints and observed ratios.
pub type Rational = num_rational::BigRational;
/// Double-precision complex number.
pub type Complex64 = num_complex::Complex<f64>;
/// Single-precision complex number.
pub type Complex32 = num_complex::Complex<f32>;
