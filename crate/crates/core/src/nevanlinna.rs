//! Disk-theoretic functionals: characteristic T_f(r) by the Cartan max-norm
//! circle average, proximity m_f(r, σ), counting N(r, f*σ) and its
//! truncations in exact closed form, sharing-set counting, and the growth
//! index bookkeeping.

use crate::algebra::{roots_with_multiplicity, HomogeneousPolynomial, UniPolynomial};
use crate::curve::ProjectiveCurve;
use crate::error::{GeonevError, Result};
use num_complex::Complex64;

/// Default quadrature tolerance on circle averages.
pub const QUAD_TOL: f64 = 1e-9;
/// Radius screening tolerance against pullback-root moduli.
pub const RADIUS_SCREEN: f64 = 1e-6;
const QUAD_START: usize = 64;
const QUAD_BUDGET: usize = 1 << 20;

#[derive(Clone, Copy, Debug)]
pub struct QuadratureSettings {
    pub tol: f64,
    pub budget: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            tol: QUAD_TOL,
            budget: QUAD_BUDGET,
        }
    }
}

/// Uniform-node trapezoid average over the circle |z| = r with node
/// doubling; spectrally accurate for smooth periodic integrands.
pub fn circle_average<F: Fn(Complex64) -> f64>(
    f: &F,
    r: f64,
    quad: &QuadratureSettings,
) -> Result<f64> {
    let sample = |n: usize| -> f64 {
        let mut acc = 0.0;
        for j in 0..n {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64);
            acc += f(Complex64::from_polar(r, theta));
        }
        acc / n as f64
    };
    let mut n = QUAD_START;
    let mut prev = sample(n);
    loop {
        n *= 2;
        let cur = sample(n);
        let delta = (cur - prev).abs();
        if delta < quad.tol {
            return Ok(cur);
        }
        if n >= quad.budget {
            return Err(GeonevError::QuadratureFailure { budget: n, delta });
        }
        prev = cur;
    }
}

/// A strictly increasing evaluation grid inside the disk of radius `outer`
/// (None = the whole plane).
#[derive(Clone, Debug)]
pub struct RadiusGrid {
    pub radii: Vec<f64>,
    pub outer: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridSpacing {
    Log,
    Linear,
}

impl RadiusGrid {
    pub fn new(r_min: f64, r_max: f64, count: usize, spacing: GridSpacing) -> Result<Self> {
        if !(r_min > 0.0 && r_max > r_min && count >= 2) {
            return Err(GeonevError::InvalidInput(
                "grid requires 0 < rMin < rMax and count >= 2".into(),
            ));
        }
        let radii = (0..count)
            .map(|i| {
                let t = i as f64 / (count - 1) as f64;
                match spacing {
                    GridSpacing::Log => (r_min.ln() + t * (r_max.ln() - r_min.ln())).exp(),
                    GridSpacing::Linear => r_min + t * (r_max - r_min),
                }
            })
            .collect();
        Ok(Self { radii, outer: None })
    }

    pub fn anchor(&self) -> f64 {
        self.radii[0] / 2.0
    }

    /// Nudges every radius within `RADIUS_SCREEN` of a root modulus by +1e-4.
    pub fn screened_against(&self, moduli: &[f64]) -> Self {
        let radii = self
            .radii
            .iter()
            .map(|&r| {
                let mut r = r;
                while moduli.iter().any(|&m| (m - r).abs() < RADIUS_SCREEN) {
                    r += 1e-4;
                }
                r
            })
            .collect();
        Self {
            radii,
            outer: self.outer,
        }
    }
}

/// A zero of a pullback with exact multiplicity; the origin is tracked
/// exactly, other locations numerically.
#[derive(Clone, Debug)]
pub struct PullbackZeros {
    /// multiplicity at z = 0
    pub at_origin: usize,
    /// (modulus, multiplicity) for zeros away from the origin
    pub moduli: Vec<(f64, usize)>,
}

/// Exact multiplicities via square-free factorization; locations via
/// companion-matrix roots per square-free factor.
pub fn pullback_zeros(pull: &UniPolynomial) -> Result<PullbackZeros> {
    if pull.is_zero() {
        return Err(GeonevError::ZeroPullback);
    }
    let at_origin = pull.order_at_zero().unwrap_or(0);
    let mut reduced = pull.clone();
    for _ in 0..at_origin {
        reduced = reduced.div_rem(&UniPolynomial::monomial(1)).0;
    }
    let mut moduli = Vec::new();
    if reduced.degree().is_some_and(|d| d > 0) {
        for root in roots_with_multiplicity(&reduced) {
            let m = root.location.norm();
            // residual numeric zeros at the origin would double-count
            if m > 1e-12 {
                moduli.push((m, root.multiplicity));
            }
        }
    }
    Ok(PullbackZeros { at_origin, moduli })
}

fn truncate(m: usize, truncation: Option<usize>) -> usize {
    match truncation {
        Some(k) => m.min(k),
        None => m,
    }
}

/// N(r, f*D) (or N_k with `truncation = Some(k)`) in exact closed form:
/// Σ_{0<|a|<r} m̂·log(r/|a|) + m̂₀·log r.
pub fn counting_function(
    pull: &UniPolynomial,
    r: f64,
    truncation: Option<usize>,
) -> Result<f64> {
    assert!(r > 0.0, "radius must be positive");
    let zeros = pullback_zeros(pull)?;
    Ok(counting_from_zeros(&zeros, r, truncation))
}

pub fn counting_from_zeros(zeros: &PullbackZeros, r: f64, truncation: Option<usize>) -> f64 {
    let mut acc = 0.0;
    if zeros.at_origin > 0 {
        acc += truncate(zeros.at_origin, truncation) as f64 * r.ln();
    }
    for &(m, mult) in &zeros.moduli {
        if m < r {
            acc += truncate(mult, truncation) as f64 * (r / m).ln();
        }
    }
    acc
}

/// Unanchored circle average of log‖f‖ with the max norm.
pub fn circle_log_max(
    curve: &ProjectiveCurve,
    r: f64,
    quad: &QuadratureSettings,
) -> Result<f64> {
    let comps = curve.components().to_vec();
    circle_average(
        &|z| {
            comps
                .iter()
                .map(|c| c.evaluate(z).norm())
                .fold(f64::MIN, f64::max)
                .ln()
        },
        r,
        quad,
    )
}

/// Cartan characteristic T_f(r): the circle average of log‖f‖ minus the
/// same average at the anchor radius (fixing the O(1) normalization).
pub fn cartan_characteristic(
    curve: &ProjectiveCurve,
    r: f64,
    anchor: f64,
    quad: &QuadratureSettings,
) -> Result<f64> {
    Ok(circle_log_max(curve, r, quad)? - circle_log_max(curve, anchor, quad)?)
}

/// m_f(r, D) = avg log(‖f‖^d / |σ(f)|) over the circle. Radii too close to
/// a zero of σ∘f are rejected.
pub fn proximity(
    curve: &ProjectiveCurve,
    sigma: &HomogeneousPolynomial,
    r: f64,
    quad: &QuadratureSettings,
) -> Result<f64> {
    let pull = curve.pullback(sigma);
    if pull.is_zero() {
        return Err(GeonevError::ZeroPullback);
    }
    let zeros = pullback_zeros(&pull)?;
    for &(m, _) in &zeros.moduli {
        if (m - r).abs() < RADIUS_SCREEN {
            return Err(GeonevError::NearSingularRadius {
                r,
                dist: (m - r).abs(),
            });
        }
    }
    let d = sigma.degree as f64;
    let comps = curve.components().to_vec();
    let sig = sigma.clone();
    circle_average(
        &|z| {
            let point: Vec<Complex64> = comps.iter().map(|c| c.evaluate(z)).collect();
            let norm = point.iter().map(|w| w.norm()).fold(f64::MIN, f64::max);
            d * norm.ln() - sig.evaluate(&point).norm().ln()
        },
        r,
        quad,
    )
}

/// First Main Theorem residual d·T_f(r) − m_f(r, σ) − N(r, f*σ) per radius;
/// boundedness over the grid is the property under test.
pub fn fmt_residual(
    curve: &ProjectiveCurve,
    sigma: &HomogeneousPolynomial,
    grid: &RadiusGrid,
    quad: &QuadratureSettings,
) -> Result<Vec<f64>> {
    let pull = curve.pullback(sigma);
    if pull.is_zero() {
        return Err(GeonevError::ZeroPullback);
    }
    let zeros = pullback_zeros(&pull)?;
    let grid = grid.screened_against(&zeros.moduli.iter().map(|&(m, _)| m).collect::<Vec<_>>());
    let anchor = grid.anchor();
    let d = sigma.degree as f64;
    let mut out = Vec::with_capacity(grid.radii.len());
    for &r in &grid.radii {
        let t = cartan_characteristic(curve, r, anchor, quad)?;
        let m = proximity(curve, sigma, r, quad)?;
        let n = counting_from_zeros(&zeros, r, None);
        out.push(d * t - m - n);
    }
    Ok(out)
}

/// The deduplicated sharing set S = ∪_j {f⁻¹(σ_j) ∪ g⁻¹(σ_j)}, with
/// multiplicities ignored.
#[derive(Clone, Debug)]
pub struct SharingSet {
    pub contains_origin: bool,
    /// distinct nonzero points
    pub points: Vec<Complex64>,
}

const DEDUP_TOL: f64 = 1e-8;

pub fn sharing_set(
    f: &ProjectiveCurve,
    g: &ProjectiveCurve,
    sigmas: &[HomogeneousPolynomial],
) -> Result<SharingSet> {
    let mut contains_origin = false;
    let mut points: Vec<Complex64> = Vec::new();
    for sigma in sigmas {
        for curve in [f, g] {
            let pull = curve.pullback(sigma);
            if pull.is_zero() {
                return Err(GeonevError::ZeroPullback);
            }
            let zeros = pullback_zeros(&pull)?;
            if zeros.at_origin > 0 {
                contains_origin = true;
            }
            let mut reduced = pull.clone();
            for _ in 0..zeros.at_origin {
                reduced = reduced.div_rem(&UniPolynomial::monomial(1)).0;
            }
            if reduced.degree().is_some_and(|d| d > 0) {
                for root in roots_with_multiplicity(&reduced) {
                    let z = root.location;
                    if z.norm() <= 1e-12 {
                        continue;
                    }
                    if !points.iter().any(|p| (p - z).norm() < DEDUP_TOL) {
                        points.push(z);
                    }
                }
            }
        }
    }
    points.sort_by(|a, b| {
        a.norm()
            .partial_cmp(&b.norm())
            .unwrap()
            .then(a.arg().partial_cmp(&b.arg()).unwrap())
    });
    Ok(SharingSet {
        contains_origin,
        points,
    })
}

impl SharingSet {
    /// N(r, S): every point counts with multiplicity one.
    pub fn counting(&self, r: f64) -> f64 {
        let mut acc = if self.contains_origin { r.ln() } else { 0.0 };
        for p in &self.points {
            let m = p.norm();
            if m < r {
                acc += (r / m).ln();
            }
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.points.len() + usize::from(self.contains_origin)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Growth index c_f: zero on the whole plane; user-supplied on a finite disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthIndex {
    ZeroByTheorem,
    UserSupplied(f64),
}

impl GrowthIndex {
    pub fn value(&self) -> f64 {
        match self {
            GrowthIndex::ZeroByTheorem => 0.0,
            GrowthIndex::UserSupplied(c) => *c,
        }
    }
}

pub fn growth_index(outer_radius: Option<f64>, user_value: Option<f64>) -> Result<GrowthIndex> {
    match outer_radius {
        None => Ok(GrowthIndex::ZeroByTheorem),
        Some(_) => match user_value {
            Some(c) if c >= 0.0 => Ok(GrowthIndex::UserSupplied(c)),
            Some(_) => Err(GeonevError::InvalidInput(
                "growth index must be nonnegative".into(),
            )),
            None => Err(GeonevError::MissingGrowthIndex),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_homogeneous;

    fn quad() -> QuadratureSettings {
        QuadratureSettings::default()
    }

    #[test]
    fn counting_closed_forms() {
        let e = std::f64::consts::E;
        // pull = z, r = e → N = 1
        let n = counting_function(&UniPolynomial::monomial(1), e, None).unwrap();
        assert!((n - 1.0).abs() < 1e-12);
        // pull = z³, truncation 2, r = e → 2
        let n = counting_function(&UniPolynomial::monomial(3), e, Some(2)).unwrap();
        assert!((n - 2.0).abs() < 1e-12);
        // constant → 0
        let n = counting_function(&UniPolynomial::one(), 10.0, None).unwrap();
        assert_eq!(n, 0.0);
        // zero pullback is a hard error
        assert!(matches!(
            counting_function(&UniPolynomial::zero(), 1.0, None),
            Err(GeonevError::ZeroPullback)
        ));
    }

    #[test]
    fn counting_matches_integral_definition() {
        // independent oracle: numerically integrate n(t)/t dt
        let p = UniPolynomial::from_i64(&[-2, 1]) // z − 2
            .mul(&UniPolynomial::from_i64(&[3, 1])) // z + 3
            .mul(&UniPolynomial::from_i64(&[3, 1]));
        let r = 10.0;
        let closed = counting_function(&p, r, None).unwrap();
        let n_of = |t: f64| -> f64 {
            let mut n = 0.0;
            if t > 2.0 {
                n += 1.0;
            }
            if t > 3.0 {
                n += 2.0;
            }
            n
        };
        let steps = 4_000_000;
        let mut integral = 0.0;
        // midpoint rule on [eps, r]
        let a = 1e-9;
        let h = (r - a) / steps as f64;
        for i in 0..steps {
            let t = a + (i as f64 + 0.5) * h;
            integral += n_of(t) / t * h;
        }
        assert!(
            (closed - integral).abs() < 1e-5,
            "closed {closed} vs integral {integral}"
        );
    }

    #[test]
    fn characteristic_of_constant_curve_vanishes() {
        let c = ProjectiveCurve::from_i64(&[&[1], &[5]]).unwrap().reduce();
        let t = cartan_characteristic(&c, 7.0, 1.0, &quad()).unwrap();
        assert!(t.abs() < 1e-9);
    }

    #[test]
    fn characteristic_slope_matches_degree() {
        // f = (1, z^d): T(r) ≈ d log r for r > 1
        for d in [1usize, 3] {
            let f = ProjectiveCurve::new(vec![
                UniPolynomial::one(),
                UniPolynomial::monomial(d),
            ])
            .unwrap()
            .reduce();
            let t = cartan_characteristic(&f, 100.0, 0.5, &quad()).unwrap();
            // ∫ log max(1, r^d) = d·log r for r ≥ 1, 0 at r = 1/2
            assert!(
                (t - d as f64 * 100.0f64.ln()).abs() < 1e-7,
                "d={d}, t={t}"
            );
        }
    }

    #[test]
    fn proximity_direct_integrals() {
        let f = ProjectiveCurve::from_i64(&[&[1], &[0, 1]]).unwrap().reduce();
        // σ = X1 at r = 2: avg log(max(1,2)/|z|) = log 2 − log 2 = 0
        let s = parse_homogeneous("X1", 2).unwrap();
        let m = proximity(&f, &s, 2.0, &quad()).unwrap();
        assert!(m.abs() < 1e-9, "m = {m}");
        // σ = X0 at r = 2: avg log(2/1) = log 2
        let s = parse_homogeneous("X0", 2).unwrap();
        let m = proximity(&f, &s, 2.0, &quad()).unwrap();
        assert!((m - 2.0f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn near_singular_radius_rejected() {
        // σ∘f = z − 1 has a root modulus exactly 1
        let f = ProjectiveCurve::from_i64(&[&[1], &[0, 1]]).unwrap().reduce();
        let s = parse_homogeneous("X1 - X0", 2).unwrap();
        assert!(matches!(
            proximity(&f, &s, 1.0, &quad()),
            Err(GeonevError::NearSingularRadius { .. })
        ));
    }

    #[test]
    fn fmt_residual_flat_for_coordinate_divisor() {
        // f = (1, z), σ = X1: T = log r, N = log r, m = 0 ⇒ residual const
        let f = ProjectiveCurve::from_i64(&[&[1], &[0, 1]]).unwrap().reduce();
        let s = parse_homogeneous("X1", 2).unwrap();
        let grid = RadiusGrid::new(2.0, 100.0, 20, GridSpacing::Log).unwrap();
        let res = fmt_residual(&f, &s, &grid, &quad()).unwrap();
        let spread = res.iter().cloned().fold(f64::MIN, f64::max)
            - res.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1e-7, "spread {spread}");
    }

    #[test]
    fn sharing_set_examples() {
        let s = parse_homogeneous("X1", 2).unwrap();
        let f = ProjectiveCurve::from_i64(&[&[1], &[0, 1]]).unwrap().reduce();
        let g = ProjectiveCurve::from_i64(&[&[1], &[0, 2]]).unwrap().reduce();
        let set = sharing_set(&f, &g, std::slice::from_ref(&s)).unwrap();
        assert!(set.contains_origin);
        assert!(set.points.is_empty());
        assert!((set.counting(std::f64::consts::E) - 1.0).abs() < 1e-12);

        let h = ProjectiveCurve::from_i64(&[&[1], &[1, 1]]).unwrap().reduce();
        let set = sharing_set(&f, &h, &[s]).unwrap();
        assert!(set.contains_origin);
        assert_eq!(set.points.len(), 1);
        assert!((set.points[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        // second point enters the count only for r > 1
        assert!((set.counting(0.9) - 0.9f64.ln()).abs() < 1e-12);
        let r = 4.0;
        assert!((set.counting(r) - (r.ln() + r.ln())).abs() < 1e-9);
    }

    #[test]
    fn growth_index_rules() {
        assert_eq!(growth_index(None, None).unwrap(), GrowthIndex::ZeroByTheorem);
        assert_eq!(
            growth_index(Some(1.0), Some(2.5)).unwrap(),
            GrowthIndex::UserSupplied(2.5)
        );
        assert!(matches!(
            growth_index(Some(1.0), None),
            Err(GeonevError::MissingGrowthIndex)
        ));
    }

    #[test]
    fn truncation_ordering() {
        // N_1 ≤ N_k ≤ N and N_k ≤ k·N_1 on a mixed-multiplicity pullback
        let p = UniPolynomial::monomial(2)
            .mul(&UniPolynomial::from_i64(&[-1, 1]))
            .mul(&UniPolynomial::from_i64(&[-1, 1]))
            .mul(&UniPolynomial::from_i64(&[-1, 1]))
            .mul(&UniPolynomial::from_i64(&[2, 1]));
        for r in [1.5, 3.0, 10.0] {
            let n = counting_function(&p, r, None).unwrap();
            let n1 = counting_function(&p, r, Some(1)).unwrap();
            for k in 1..=4usize {
                let nk = counting_function(&p, r, Some(k)).unwrap();
                assert!(n1 <= nk + 1e-12);
                assert!(nk <= n + 1e-12);
                assert!(nk <= k as f64 * n1 + 1e-12);
            }
        }
    }
}
