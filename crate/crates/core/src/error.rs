//! Error types shared across the toolkit. Hypothesis violations of the
//! verified statements are errors, not values: the checks fail fast when a
//! standing assumption does not hold.

use crate::algebra::ParseError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeonevError {
    /// The Jacobian determinant of the basis vanishes identically.
    #[error("singular system: Jacobian determinant vanishes identically")]
    SingularSystem,

    /// A section supplied to a check has the wrong degree.
    #[error("degree mismatch: expected degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    /// Every sampled point fell on the polar locus.
    #[error("sampling failure: all sampled points fall on the polar locus")]
    SamplingFailure,

    /// All curve components vanish identically.
    #[error("zero curve: all components vanish identically")]
    ZeroCurve,

    /// The requested chart cannot host the curve (f_j identically zero).
    #[error("chart {chart} degenerate: component vanishes identically")]
    ChartDegenerate { chart: usize },

    /// The curve image lies inside the polar locus of the connection.
    #[error("curve image inside the polar locus of the connection")]
    PolarLocusCurve,

    /// σ∘f vanishes identically (image inside the divisor).
    #[error("zero pullback: curve image contained in the divisor")]
    ZeroPullback,

    /// A zero of the pullback lies within tolerance of the circle |z| = r.
    #[error("near-singular radius r = {r}: pullback root at distance {dist:.3e}")]
    NearSingularRadius { r: f64, dist: f64 },

    /// Adaptive quadrature exhausted its node budget.
    #[error("quadrature failure: node budget {budget} exhausted (last delta {delta:.3e})")]
    QuadratureFailure { budget: usize, delta: f64 },

    /// Finite-radius map without a user-supplied growth index.
    #[error("missing growth index: finite outer radius requires a user-supplied value")]
    MissingGrowthIndex,

    /// The connection Wronskian of the curve vanishes identically.
    #[error("degenerate curve: connection Wronskian vanishes identically")]
    DegenerateCurve,

    /// The two curves are projectively identical.
    #[error("curves identical as projective curves")]
    CurvesIdentical,

    /// A sharing-set point where the curves disagree.
    #[error("sharing violated at z = {at}: curves differ there")]
    SharingViolated { at: String },

    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, GeonevError>;
