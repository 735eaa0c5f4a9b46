//! The ambient meromorphic connection on ℂ^{k+1} induced by a linear system
//! of homogeneous polynomials S_0..S_k: Christoffel symbols solved from
//!
//!   Σ_λ (∂S_μ/∂X_λ)·Γ^λ_{ij} = ∂²S_μ/∂X_i∂X_j
//!
//! by Cramer's rule Γ^λ_{ij} = δ^λ_{ij}/δ with δ = det(∂S_μ/∂X_λ), together
//! with the structural checks (degree −1 homogeneity, Euler/descent span
//! property, totally-geodesic identity, polar-degree bound) and restriction
//! to affine charts.

use crate::algebra::{
    determinant_poly, AffineRational, GaussianRational, HomRationalFunction,
    HomogeneousPolynomial,
};
use crate::error::{GeonevError, Result};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A basis S_0..S_k of a linear system of degree-d hypersurfaces with
/// nonvanishing Jacobian determinant.
#[derive(Clone, Debug)]
pub struct LinearSystemBasis {
    pub k: usize,
    pub d: usize,
    sections: Vec<HomogeneousPolynomial>,
    delta: HomogeneousPolynomial,
}

impl LinearSystemBasis {
    pub fn new(k: usize, d: usize, sections: Vec<HomogeneousPolynomial>) -> Result<Self> {
        if k < 1 || d < 1 {
            return Err(GeonevError::InvalidInput(
                "k and d must both be at least 1".into(),
            ));
        }
        if sections.len() != k + 1 {
            return Err(GeonevError::InvalidInput(format!(
                "expected {} sections, got {}",
                k + 1,
                sections.len()
            )));
        }
        for s in &sections {
            if s.num_vars != k + 1 {
                return Err(GeonevError::InvalidInput(format!(
                    "section has {} variables, expected {}",
                    s.num_vars,
                    k + 1
                )));
            }
            if s.is_zero() || s.degree != d {
                return Err(GeonevError::DegreeMismatch {
                    expected: d,
                    got: s.degree,
                });
            }
        }
        let jac = jacobian_of(&sections, k);
        let delta = determinant_poly(&jac);
        if delta.is_zero() {
            return Err(GeonevError::SingularSystem);
        }
        Ok(Self {
            k,
            d,
            sections,
            delta,
        })
    }

    /// The flat basis S_μ = X_μ (d = 1).
    pub fn coordinates(k: usize) -> Self {
        let sections = (0..=k)
            .map(|i| HomogeneousPolynomial::variable(k + 1, i))
            .collect();
        Self::new(k, 1, sections).expect("coordinate basis is admissible")
    }

    /// The Fermat basis S_μ = X_μ^d.
    pub fn fermat(k: usize, d: usize) -> Self {
        let sections = (0..=k)
            .map(|i| {
                let mut e = vec![0u32; k + 1];
                e[i] = d as u32;
                HomogeneousPolynomial::monomial(k + 1, e, GaussianRational::one())
            })
            .collect();
        Self::new(k, d, sections).expect("Fermat basis is admissible")
    }

    pub fn sections(&self) -> &[HomogeneousPolynomial] {
        &self.sections
    }

    pub fn delta(&self) -> &HomogeneousPolynomial {
        &self.delta
    }

    /// Entry (μ, λ) = ∂S_μ/∂X_λ, each homogeneous of degree d−1.
    pub fn jacobian_matrix(&self) -> Vec<Vec<HomogeneousPolynomial>> {
        jacobian_of(&self.sections, self.k)
    }
}

fn jacobian_of(sections: &[HomogeneousPolynomial], k: usize) -> Vec<Vec<HomogeneousPolynomial>> {
    sections
        .iter()
        .map(|s| (0..=k).map(|l| s.partial_derivative(l)).collect())
        .collect()
}

/// The (k+1)³ array of Christoffel symbols Γ^λ_{ij}, homogeneous rational
/// functions of degree −1 with common denominator δ.
#[derive(Clone, Debug)]
pub struct ChristoffelTensor {
    pub k: usize,
    pub d: usize,
    gamma: Vec<HomRationalFunction>,
    pub delta: HomogeneousPolynomial,
}

impl ChristoffelTensor {
    fn index(&self, lambda: usize, i: usize, j: usize) -> usize {
        let n = self.k + 1;
        (lambda * n + i) * n + j
    }

    pub fn entry(&self, lambda: usize, i: usize, j: usize) -> &HomRationalFunction {
        &self.gamma[self.index(lambda, i, j)]
    }

    pub fn is_flat(&self) -> bool {
        self.gamma.iter().all(|g| g.is_zero())
    }

    /// Test hook: returns a copy with one entry replaced.
    pub fn with_entry(&self, lambda: usize, i: usize, j: usize, v: HomRationalFunction) -> Self {
        let mut t = self.clone();
        let idx = t.index(lambda, i, j);
        t.gamma[idx] = v;
        t
    }
}

/// Solves the defining linear system for all (i, j) by Cramer's rule.
pub fn solve_christoffel(basis: &LinearSystemBasis) -> ChristoffelTensor {
    let k = basis.k;
    let n = k + 1;
    let jac = basis.jacobian_matrix();
    let delta = basis.delta.clone();
    let mut gamma = vec![HomRationalFunction::zero(n); n * n * n];
    for i in 0..n {
        for j in i..n {
            // right-hand side column: ∂²S_μ/∂X_i∂X_j
            let rhs: Vec<HomogeneousPolynomial> = basis
                .sections
                .iter()
                .map(|s| s.partial_derivative(i).partial_derivative(j))
                .collect();
            for lambda in 0..n {
                let numerator = if rhs.iter().all(|h| h.is_zero()) {
                    HomogeneousPolynomial::zero(n, 0)
                } else {
                    let mut m = jac.clone();
                    for (mu, row) in m.iter_mut().enumerate() {
                        row[lambda] = rhs[mu].clone();
                    }
                    determinant_poly(&m)
                };
                let entry = if numerator.is_zero() {
                    HomRationalFunction::zero(n)
                } else {
                    HomRationalFunction::new(numerator, delta.clone())
                };
                let idx = (lambda * n + i) * n + j;
                let sym = (lambda * n + j) * n + i;
                gamma[idx] = entry.clone();
                gamma[sym] = entry;
            }
        }
    }
    ChristoffelTensor {
        k,
        d: basis.d,
        gamma,
        delta,
    }
}

/// Residuals of the totally-geodesic identity for a section σ.
#[derive(Clone, Debug)]
pub struct GeodesicReport {
    pub holds: bool,
    /// (i, j, residual) for each nonzero residual.
    pub nonzero_residuals: Vec<(usize, usize, HomRationalFunction)>,
}

/// Checks Σ_λ (∂σ/∂X_λ)Γ^λ_{ij} = ∂²σ/∂X_i∂X_j exactly for all (i, j).
/// This is the ambient totally-geodesic relation with a = b = c = 0; it
/// holds for every σ in the span of the basis.
pub fn verify_geodesic_identity(
    tensor: &ChristoffelTensor,
    sigma: &HomogeneousPolynomial,
) -> Result<GeodesicReport> {
    if sigma.degree != tensor.d || sigma.is_zero() {
        return Err(GeonevError::DegreeMismatch {
            expected: tensor.d,
            got: sigma.degree,
        });
    }
    let n = tensor.k + 1;
    let grads: Vec<HomogeneousPolynomial> =
        (0..n).map(|l| sigma.partial_derivative(l)).collect();
    let mut nonzero = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut lhs = HomRationalFunction::zero(n);
            for (lambda, grad) in grads.iter().enumerate() {
                if grad.is_zero() {
                    continue;
                }
                lhs = lhs.add(
                    &HomRationalFunction::from_poly(grad.clone())
                        .mul(tensor.entry(lambda, i, j)),
                );
            }
            let rhs = HomRationalFunction::from_poly(
                sigma.partial_derivative(i).partial_derivative(j),
            );
            let res = lhs.sub(&rhs);
            if !res.is_zero() {
                nonzero.push((i, j, res));
            }
        }
    }
    Ok(GeodesicReport {
        holds: nonzero.is_empty(),
        nonzero_residuals: nonzero,
    })
}

/// True iff every nonzero Γ^λ_{ij} has homogeneity degree exactly −1.
pub fn check_homogeneity_degree(tensor: &ChristoffelTensor) -> bool {
    tensor
        .gamma
        .iter()
        .all(|g| g.hom_degree().is_none_or(|d| d == -1))
}

/// Outcome of the sampled span check for the descent property.
#[derive(Clone, Debug)]
pub struct EulerReport {
    pub holds: bool,
    pub worst_residual: f64,
    pub points_used: usize,
}

const POLAR_REJECT: f64 = 1e-6;
const SPAN_TOL: f64 = 1e-8;

/// At random points X away from {δ = 0} and random vectors v, checks that
/// w^λ = Σ_{i,j} Γ^λ_{ij}(X) X^i v^j lies in span{v, X}, and likewise for
/// the contraction on the other slot.
pub fn check_euler_property(
    tensor: &ChristoffelTensor,
    samples: usize,
    seed: u64,
) -> Result<EulerReport> {
    assert!(samples >= 1);
    let n = tensor.k + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = 0usize;
    let mut worst: f64 = 0.0;
    let mut attempts = 0usize;
    while used < samples && attempts < samples * 50 {
        attempts += 1;
        let x: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if tensor.delta.evaluate(&x).norm() < POLAR_REJECT {
            continue;
        }
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for swap in [false, true] {
            let mut w = vec![Complex64::new(0.0, 0.0); n];
            for lambda in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let g = tensor.entry(lambda, i, j);
                        if g.is_zero() {
                            continue;
                        }
                        let (a, b) = if swap { (&v[i], &x[j]) } else { (&x[i], &v[j]) };
                        w[lambda] += g.evaluate(&x) * a * b;
                    }
                }
            }
            let res = span_residual(&w, &v, &x);
            worst = worst.max(res);
        }
        used += 1;
    }
    if used == 0 {
        return Err(GeonevError::SamplingFailure);
    }
    Ok(EulerReport {
        holds: worst <= SPAN_TOL,
        worst_residual: worst,
        points_used: used,
    })
}

/// Relative distance of w from span{a, b}, via least squares on the normal
/// equations of the 2-column system.
fn span_residual(w: &[Complex64], a: &[Complex64], b: &[Complex64]) -> f64 {
    let dot = |u: &[Complex64], v: &[Complex64]| -> Complex64 {
        u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
    };
    let wn = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if wn < 1e-14 {
        return 0.0;
    }
    let (aa, ab, bb) = (dot(a, a), dot(a, b), dot(b, b));
    let (aw, bw) = (dot(a, w), dot(b, w));
    let det = aa * bb - ab * ab.conj();
    let (c1, c2) = if det.norm() < 1e-300 {
        // a, b (numerically) parallel: project onto the larger one
        if aa.norm() >= bb.norm() {
            (aw / aa, Complex64::new(0.0, 0.0))
        } else {
            (Complex64::new(0.0, 0.0), bw / bb)
        }
    } else {
        ((bb * aw - ab * bw) / det, (aa * bw - ab.conj() * aw) / det)
    };
    let res: f64 = w
        .iter()
        .zip(a.iter().zip(b))
        .map(|(wi, (ai, bi))| (wi - c1 * ai - c2 * bi).norm_sqr())
        .sum::<f64>()
        .sqrt();
    res / wn
}

/// The polar locus {δ = 0} with its degree bound.
#[derive(Clone, Debug)]
pub struct PolarLocus {
    pub delta: HomogeneousPolynomial,
    pub degree: usize,
    pub bound: usize,
}

pub fn polar_degree(tensor: &ChristoffelTensor) -> PolarLocus {
    let bound = (tensor.k + 1) * (tensor.d - 1);
    let degree = tensor.delta.degree;
    debug_assert!(degree <= bound);
    PolarLocus {
        delta: tensor.delta.clone(),
        degree,
        bound,
    }
}

/// Restriction of the ambient tensor to the affine chart {X_j ≠ 0}: the
/// substitution X_j := 1 on all entries with indices ≠ j. Degree −1
/// homogeneity makes the substitution scale-consistent.
#[derive(Clone, Debug)]
pub struct ChartConnection {
    pub chart: usize,
    pub k: usize,
    /// Entries indexed by ambient indices (λ, i, m), all ≠ chart.
    entries: Vec<AffineRational>,
}

impl ChartConnection {
    /// Ambient indices of the chart coordinates, in order.
    pub fn coordinate_indices(&self) -> Vec<usize> {
        (0..=self.k).filter(|&i| i != self.chart).collect()
    }

    /// Entry by ambient indices (each ≠ chart).
    pub fn entry(&self, lambda: usize, i: usize, m: usize) -> &AffineRational {
        let pos = |a: usize| -> usize {
            assert!(a <= self.k && a != self.chart, "index on the chart axis");
            if a < self.chart {
                a
            } else {
                a - 1
            }
        };
        let k = self.k;
        &self.entries[(pos(lambda) * k + pos(i)) * k + pos(m)]
    }

    pub fn is_flat(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Flat chart connection (all entries zero) for dimension k.
    pub fn flat(k: usize, chart: usize) -> Self {
        let one = HomogeneousPolynomial::constant(k + 1, GaussianRational::one());
        let zero = AffineRational::new(
            HomogeneousPolynomial::zero(k + 1, 0).dehomogenize(chart),
            one.dehomogenize(chart),
        );
        Self {
            chart,
            k,
            entries: vec![zero; k * k * k],
        }
    }
}

pub fn chart_restrict(tensor: &ChristoffelTensor, chart: usize) -> ChartConnection {
    assert!(chart <= tensor.k, "chart index out of range");
    let k = tensor.k;
    let coords: Vec<usize> = (0..=k).filter(|&i| i != chart).collect();
    let mut entries = Vec::with_capacity(k * k * k);
    for &lambda in &coords {
        for &i in &coords {
            for &m in &coords {
                let g = tensor.entry(lambda, i, m);
                entries.push(AffineRational::new(
                    g.num.dehomogenize(chart),
                    g.den.dehomogenize(chart),
                ));
            }
        }
    }
    ChartConnection { chart, k, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_homogeneous;

    #[test]
    fn coordinate_basis_is_flat() {
        let basis = LinearSystemBasis::coordinates(2);
        let tensor = solve_christoffel(&basis);
        assert!(tensor.is_flat());
        assert_eq!(polar_degree(&tensor).degree, 0);
    }

    #[test]
    fn fermat_closed_form() {
        // Γ^μ_{ij} = (d−1)/X_μ when i = j = μ, else 0
        for (k, d) in [(1usize, 2usize), (1, 3), (2, 2), (2, 3)] {
            let basis = LinearSystemBasis::fermat(k, d);
            let tensor = solve_christoffel(&basis);
            for lambda in 0..=k {
                for i in 0..=k {
                    for j in 0..=k {
                        let g = tensor.entry(lambda, i, j);
                        if lambda == i && i == j {
                            let want = HomRationalFunction::new(
                                HomogeneousPolynomial::constant(
                                    k + 1,
                                    GaussianRational::from_int((d - 1) as i64),
                                ),
                                HomogeneousPolynomial::variable(k + 1, lambda),
                            );
                            assert_eq!(g, &want);
                        } else {
                            assert!(g.is_zero(), "unexpected nonzero entry");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn repeated_section_is_singular() {
        let x0sq = HomogeneousPolynomial::monomial(2, vec![2, 0], GaussianRational::one());
        let err = LinearSystemBasis::new(1, 2, vec![x0sq.clone(), x0sq]).unwrap_err();
        assert!(matches!(err, GeonevError::SingularSystem));
    }

    #[test]
    fn jacobian_hand_example() {
        // k=1, S0 = X0², S1 = X0X1 → [[2X0, 0], [X1, X0]]
        let s0 = parse_homogeneous("X0^2", 2).unwrap();
        let s1 = parse_homogeneous("X0 X1", 2).unwrap();
        let basis = LinearSystemBasis::new(1, 2, vec![s0, s1]).unwrap();
        let jac = basis.jacobian_matrix();
        assert_eq!(jac[0][0], parse_homogeneous("2*X0", 2).unwrap());
        assert!(jac[0][1].is_zero());
        assert_eq!(jac[1][0], parse_homogeneous("X1", 2).unwrap());
        assert_eq!(jac[1][1], parse_homogeneous("X0", 2).unwrap());
    }

    #[test]
    fn geodesic_identity_on_span() {
        let basis = LinearSystemBasis::fermat(2, 2);
        let tensor = solve_christoffel(&basis);
        // σ = 2 S_0 + 3 S_1
        let sigma = basis.sections()[0]
            .scale(&GaussianRational::from_int(2))
            .add(&basis.sections()[1].scale(&GaussianRational::from_int(3)));
        let rep = verify_geodesic_identity(&tensor, &sigma).unwrap();
        assert!(rep.holds);
    }

    #[test]
    fn geodesic_identity_fails_off_span() {
        // perturbed Fermat basis S_μ = X_μ² + X_{μ+1}², σ = X0² is not in span
        let k = 1;
        let s0 = parse_homogeneous("X0^2 + X1^2", 2).unwrap();
        let s1 = parse_homogeneous("X1^2 + 2*X0^2", 2).unwrap();
        let basis = LinearSystemBasis::new(k, 2, vec![s0, s1]).unwrap();
        let tensor = solve_christoffel(&basis);
        let sigma = parse_homogeneous("X0 X1", 2).unwrap();
        let rep = verify_geodesic_identity(&tensor, &sigma).unwrap();
        assert!(!rep.holds);
        assert!(!rep.nonzero_residuals.is_empty());
    }

    #[test]
    fn homogeneity_and_negative_control() {
        let basis = LinearSystemBasis::fermat(2, 3);
        let tensor = solve_christoffel(&basis);
        assert!(check_homogeneity_degree(&tensor));
        // corrupt with a degree-0 entry
        let bad = HomRationalFunction::from_poly(HomogeneousPolynomial::constant(
            3,
            GaussianRational::one(),
        ));
        let corrupted = tensor.with_entry(0, 1, 1, bad);
        assert!(!check_homogeneity_degree(&corrupted));
    }

    #[test]
    fn euler_property_fermat_and_corrupted() {
        let basis = LinearSystemBasis::fermat(2, 3);
        let tensor = solve_christoffel(&basis);
        let rep = check_euler_property(&tensor, 25, 7).unwrap();
        assert!(rep.holds, "worst residual {}", rep.worst_residual);
        // zero out a diagonal entry: the span property breaks
        let corrupted = tensor.with_entry(1, 1, 1, HomRationalFunction::zero(3));
        let rep = check_euler_property(&corrupted, 25, 7).unwrap();
        assert!(!rep.holds);
    }

    #[test]
    fn fermat_polar_degree_attained() {
        for k in 1..=3usize {
            for d in 1..=3usize {
                let tensor = solve_christoffel(&LinearSystemBasis::fermat(k, d));
                let locus = polar_degree(&tensor);
                assert_eq!(locus.degree, (k + 1) * (d - 1));
                assert_eq!(locus.bound, (k + 1) * (d - 1));
            }
        }
    }

    #[test]
    fn chart_restriction_fermat() {
        // Fermat, chart 0, k=1: single entry Γ¹₁₁ = (d−1)/w1
        let d = 3;
        let tensor = solve_christoffel(&LinearSystemBasis::fermat(1, d));
        let chart = chart_restrict(&tensor, 0);
        let e = chart.entry(1, 1, 1);
        let composed = e
            .compose(&[None, Some(crate::algebra::UniRational::from_poly(
                crate::algebra::UniPolynomial::monomial(1),
            ))])
            .unwrap();
        // (d−1)/z
        assert_eq!(
            composed,
            crate::algebra::UniRational::new(
                crate::algebra::UniPolynomial::from_i64(&[(d - 1) as i64]),
                crate::algebra::UniPolynomial::monomial(1)
            )
        );
    }

    #[test]
    fn random_linear_bases_are_flat() {
        // d = 1 with any invertible linear S gives Γ ≡ 0
        let mats = [
            [[1i64, 2, 0], [0, 1, 5], [3, 0, 1]],
            [[2, -1, 1], [1, 1, 0], [0, 4, -3]],
        ];
        for m in mats {
            let sections: Vec<HomogeneousPolynomial> = m
                .iter()
                .map(|row| {
                    let mut acc = HomogeneousPolynomial::zero(3, 1);
                    for (i, &c) in row.iter().enumerate() {
                        acc = acc.add(
                            &HomogeneousPolynomial::variable(3, i)
                                .scale(&GaussianRational::from_int(c)),
                        );
                    }
                    acc
                })
                .collect();
            let basis = LinearSystemBasis::new(2, 1, sections).unwrap();
            assert!(solve_christoffel(&basis).is_flat());
        }
    }
}
