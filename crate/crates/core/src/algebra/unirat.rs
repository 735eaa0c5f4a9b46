//! Univariate rational functions num/den, gcd-normalized with monic denominator.

use super::gaussian::GaussianRational;
use super::unipoly::UniPolynomial;
use num_complex::Complex64;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniRational {
    pub num: UniPolynomial,
    pub den: UniPolynomial,
}

impl UniRational {
    pub fn new(num: UniPolynomial, den: UniPolynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator in univariate rational");
        if num.is_zero() {
            return Self {
                num: UniPolynomial::zero(),
                den: UniPolynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lc = d.leading_coefficient().unwrap().clone();
        n = n.scale(&lc.inv());
        d = d.scale(&lc.inv());
        Self { num: n, den: d }
    }

    pub fn zero() -> Self {
        Self {
            num: UniPolynomial::zero(),
            den: UniPolynomial::one(),
        }
    }

    pub fn from_poly(p: UniPolynomial) -> Self {
        Self {
            num: p,
            den: UniPolynomial::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    /// Derivative by the quotient rule (normalized).
    pub fn derivative(&self) -> Self {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den))
    }

    /// Signed order of vanishing at a Gaussian-rational point:
    /// ord(num) − ord(den). None when the function is identically zero.
    pub fn order_at(&self, z0: &GaussianRational) -> Option<i64> {
        let n = self.num.order_at(z0)? as i64;
        let d = self.den.order_at(z0).expect("nonzero denominator") as i64;
        Some(n - d)
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.num.evaluate(z) / self.den.evaluate(z)
    }
}

impl fmt::Display for UniRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPolynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}
