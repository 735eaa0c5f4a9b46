//! Numeric root extraction for univariate polynomials.
//!
//! Multiplicities are taken exactly from the square-free decomposition;
//! locations come from companion-matrix eigenvalues of each square-free
//! factor, polished by a few Newton steps.

use super::gaussian::GaussianRational;
use super::unipoly::UniPolynomial;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// A zero with its exact multiplicity.
#[derive(Clone, Copy, Debug)]
pub struct Root {
    pub location: Complex64,
    pub multiplicity: usize,
}

/// All complex roots of a square-free monic polynomial.
pub fn roots_square_free(p: &UniPolynomial) -> Vec<Complex64> {
    let Some(deg) = p.degree() else {
        return vec![];
    };
    if deg == 0 {
        return vec![];
    }
    let monic = p.monic();
    let c: Vec<Complex64> = monic.coeffs().iter().map(|x| x.to_complex64()).collect();
    if deg == 1 {
        return vec![-c[0]];
    }
    let mut m = DMatrix::<Complex64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -c[i];
    }
    let eig = m
        .eigenvalues()
        .map(|v| v.iter().copied().collect::<Vec<_>>())
        .unwrap_or_else(|| durand_kerner(&c, deg));
    eig.into_iter().map(|z| newton_polish(&monic, z)).collect()
}

fn newton_polish(p: &UniPolynomial, mut z: Complex64) -> Complex64 {
    let dp = p.derivative();
    for _ in 0..4 {
        let d = dp.evaluate(z);
        if d.norm() < 1e-300 {
            break;
        }
        let step = p.evaluate(z) / d;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
    }
    z
}

// fallback when the eigenvalue routine does not converge
fn durand_kerner(monic_coeffs: &[Complex64], deg: usize) -> Vec<Complex64> {
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for c in monic_coeffs[..deg].iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..deg).map(|i| seed.powu(i as u32 + 1)).collect();
    for _ in 0..200 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(zs[i]) / denom;
            zs[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    zs
}

/// Roots of an arbitrary nonzero polynomial with exact multiplicities.
pub fn roots_with_multiplicity(p: &UniPolynomial) -> Vec<Root> {
    assert!(!p.is_zero(), "roots of zero polynomial");
    let mut out = Vec::new();
    for (factor, mult) in p.square_free() {
        for z in roots_square_free(&factor) {
            out.push(Root {
                location: z,
                multiplicity: mult,
            });
        }
    }
    // deterministic ordering: by modulus, then argument
    out.sort_by(|a, b| {
        a.location
            .norm()
            .partial_cmp(&b.location.norm())
            .unwrap()
            .then(a.location.arg().partial_cmp(&b.location.arg()).unwrap())
    });
    out
}

/// Numeric multiplicity at a point by repeated deflation: counts derivatives
/// vanishing within tolerance. Used when the point is not Gaussian-rational.
pub fn numeric_order_at(p: &UniPolynomial, z0: Complex64, tol: f64) -> usize {
    let mut q = p.clone();
    let mut ord = 0usize;
    let scale: f64 = p
        .coeffs()
        .iter()
        .map(|c| c.to_complex64().norm())
        .fold(0.0, f64::max)
        .max(1.0);
    while !q.is_zero() && q.evaluate(z0).norm() < tol * scale {
        q = q.derivative();
        ord += 1;
    }
    ord
}

/// Exact order at a Gaussian-rational point with numeric fallback.
pub fn order_at_point(p: &UniPolynomial, z0: &PointSpec, tol: f64) -> usize {
    match z0 {
        PointSpec::Exact(g) => p.order_at(g).unwrap_or(0),
        PointSpec::Numeric(z) => numeric_order_at(p, *z, tol),
    }
}

/// A disk point, exact when available.
#[derive(Clone, Debug)]
pub enum PointSpec {
    Exact(GaussianRational),
    Numeric(Complex64),
}

impl PointSpec {
    pub fn to_complex64(&self) -> Complex64 {
        match self {
            PointSpec::Exact(g) => g.to_complex64(),
            PointSpec::Numeric(z) => *z,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots() {
        // z² + 1 → ±i
        let p = UniPolynomial::from_i64(&[1, 0, 1]);
        let mut rs = roots_square_free(&p);
        rs.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((rs[0] - Complex64::new(0.0, -1.0)).norm() < 1e-9);
        assert!((rs[1] - Complex64::new(0.0, 1.0)).norm() < 1e-9);
    }

    #[test]
    fn multiplicities_from_square_free() {
        // (z−1)²(z+2)
        let a = UniPolynomial::from_i64(&[-1, 1]);
        let b = UniPolynomial::from_i64(&[2, 1]);
        let p = a.mul(&a).mul(&b);
        let rs = roots_with_multiplicity(&p);
        assert_eq!(rs.len(), 2);
        let at_one = rs
            .iter()
            .find(|r| (r.location - Complex64::new(1.0, 0.0)).norm() < 1e-8)
            .unwrap();
        assert_eq!(at_one.multiplicity, 2);
        let at_minus_two = rs
            .iter()
            .find(|r| (r.location - Complex64::new(-2.0, 0.0)).norm() < 1e-8)
            .unwrap();
        assert_eq!(at_minus_two.multiplicity, 1);
    }

    #[test]
    fn high_degree_wilkinson_like() {
        // Π (z − j), j=1..8
        let mut p = UniPolynomial::one();
        for j in 1..=8 {
            p = p.mul(&UniPolynomial::from_i64(&[-j, 1]));
        }
        let rs = roots_with_multiplicity(&p);
        assert_eq!(rs.len(), 8);
        for j in 1..=8 {
            assert!(rs
                .iter()
                .any(|r| (r.location - Complex64::new(j as f64, 0.0)).norm() < 1e-6));
        }
    }
}
