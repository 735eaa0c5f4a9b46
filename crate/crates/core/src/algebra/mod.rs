//! Exact arithmetic foundation: Gaussian-rational scalars, homogeneous
//! multivariate polynomials, univariate polynomials and rational functions,
//! determinants, parsing, and numeric root extraction.

pub mod affine;
pub mod det;
pub mod gaussian;
pub mod homog;
pub mod homrat;
pub mod parse;
pub mod roots;
pub mod unipoly;
pub mod unirat;

pub use affine::{AffinePolynomial, AffineRational};
pub use det::{determinant_poly, determinant_poly_laplace, determinant_rational};
pub use gaussian::GaussianRational;
pub use homog::HomogeneousPolynomial;
pub use homrat::HomRationalFunction;
pub use parse::{parse_homogeneous, parse_unipoly, ParseError};
pub use roots::{order_at_point, roots_with_multiplicity, PointSpec, Root};
pub use unipoly::UniPolynomial;
pub use unirat::UniRational;
