//! Homogeneous rational functions: ratios of homogeneous polynomials with a
//! well-defined homogeneity degree deg(num) − deg(den).

use super::gaussian::GaussianRational;
use super::homog::HomogeneousPolynomial;
use num_complex::Complex64;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomRationalFunction {
    pub num: HomogeneousPolynomial,
    pub den: HomogeneousPolynomial,
}

impl HomRationalFunction {
    /// Normalizes: cancels the common monomial factor and content, then
    /// scales so the denominator's leading coefficient is 1. A full
    /// multivariate gcd is not attempted.
    pub fn new(num: HomogeneousPolynomial, den: HomogeneousPolynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator in homogeneous rational");
        assert_eq!(num.num_vars, den.num_vars);
        if num.is_zero() {
            return Self::zero(num.num_vars);
        }
        let nv = num.num_vars;
        // common monomial factor: componentwise min exponent across all terms
        let mut common = vec![u32::MAX; nv];
        for poly in [&num, &den] {
            for (e, _) in poly.terms() {
                for (c, &x) in common.iter_mut().zip(e) {
                    *c = (*c).min(x);
                }
            }
        }
        let strip = |p: &HomogeneousPolynomial| -> HomogeneousPolynomial {
            if common.iter().all(|&c| c == 0) {
                return p.clone();
            }
            let deg = p.degree - common.iter().map(|&c| c as usize).sum::<usize>();
            HomogeneousPolynomial::from_terms(
                nv,
                deg,
                p.terms()
                    .map(|(e, c)| (e.iter().zip(&common).map(|(a, b)| a - b).collect(), c.clone())),
            )
        };
        let mut n = strip(&num);
        let mut d = strip(&den);
        // try the cheap full cancellation when one divides the other
        if n.degree >= d.degree {
            if let Some(q) = n.divide_exact(&d) {
                n = q;
                d = HomogeneousPolynomial::constant(nv, GaussianRational::one());
            }
        } else if let Some(q) = d.divide_exact(&n) {
            d = q;
            n = HomogeneousPolynomial::constant(nv, GaussianRational::one());
        }
        let lc = d.leading_coefficient().unwrap().inv();
        Self {
            num: n.scale(&lc),
            den: d.scale(&lc),
        }
    }

    pub fn zero(num_vars: usize) -> Self {
        Self {
            num: HomogeneousPolynomial::zero(num_vars, 0),
            den: HomogeneousPolynomial::constant(num_vars, GaussianRational::one()),
        }
    }

    pub fn from_poly(p: HomogeneousPolynomial) -> Self {
        let nv = p.num_vars;
        Self {
            num: p,
            den: HomogeneousPolynomial::constant(nv, GaussianRational::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// deg(num) − deg(den); None for the zero function.
    pub fn hom_degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.num.degree as i64 - self.den.degree as i64)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.num.num_vars);
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn evaluate(&self, point: &[Complex64]) -> Complex64 {
        self.num.evaluate(point) / self.den.evaluate(point)
    }
}

impl fmt::Display for HomRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree == 0 && self.den.num_terms() == 1 {
            let c = self.den.leading_coefficient().unwrap();
            if c.is_one() {
                return write!(f, "{}", self.num);
            }
        }
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn monomial_cancellation() {
        // X0²X1 / X0X1² = X0 / X1
        let n = HomogeneousPolynomial::monomial(2, vec![2, 1], gr(1));
        let d = HomogeneousPolynomial::monomial(2, vec![1, 2], gr(1));
        let r = HomRationalFunction::new(n, d);
        assert_eq!(r.num, HomogeneousPolynomial::variable(2, 0));
        assert_eq!(r.den, HomogeneousPolynomial::variable(2, 1));
        assert_eq!(r.hom_degree(), Some(0));
    }

    #[test]
    fn degree_arithmetic() {
        // (d−1)/X0 has homogeneity degree −1
        let r = HomRationalFunction::new(
            HomogeneousPolynomial::constant(2, gr(2)),
            HomogeneousPolynomial::variable(2, 0),
        );
        assert_eq!(r.hom_degree(), Some(-1));
    }

    #[test]
    fn full_cancellation_when_divisible() {
        let a = HomogeneousPolynomial::from_terms(2, 1, [(vec![1, 0], gr(1)), (vec![0, 1], gr(1))]);
        let b = HomogeneousPolynomial::variable(2, 1);
        let r = HomRationalFunction::new(a.mul(&b), a.clone());
        assert_eq!(r.num, b);
        assert_eq!(r.den, HomogeneousPolynomial::constant(2, gr(1)));
    }

    #[test]
    fn field_identities() {
        let a = HomRationalFunction::new(
            HomogeneousPolynomial::from_terms(2, 2, [(vec![2, 0], gr(1)), (vec![0, 2], gr(3))]),
            HomogeneousPolynomial::monomial(2, vec![1, 1], gr(2)),
        );
        let one = a.div(&a);
        assert_eq!(one.num, one.den);
        assert_eq!(a.sub(&a), HomRationalFunction::zero(2));
    }
}
