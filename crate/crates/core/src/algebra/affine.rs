//! Non-homogeneous multivariate polynomials and their ratios, used for the
//! chart restrictions X_j := 1 of the ambient Christoffel symbols.

use super::gaussian::GaussianRational;
use super::unipoly::UniPolynomial;
use super::unirat::UniRational;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial in the chart coordinates. The exponent vectors keep the
/// ambient arity k+1; the chart variable's slot is always zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffinePolynomial {
    pub num_vars: usize,
    terms: BTreeMap<Vec<u32>, GaussianRational>,
}

impl AffinePolynomial {
    pub fn from_map(num_vars: usize, terms: BTreeMap<Vec<u32>, GaussianRational>) -> Self {
        Self { num_vars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &GaussianRational)> {
        self.terms.iter()
    }

    /// Substitute each variable with a univariate rational function. Returns
    /// None when any needed slot has no substitution.
    pub fn compose(&self, subs: &[Option<UniRational>]) -> Option<UniRational> {
        let mut acc = UniRational::zero();
        for (e, c) in &self.terms {
            let mut t = UniRational::from_poly(UniPolynomial::constant(c.clone()));
            for (i, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let w = subs.get(i).and_then(|s| s.as_ref())?;
                for _ in 0..p {
                    t = t.mul(w);
                }
            }
            acc = acc.add(&t);
        }
        Some(acc)
    }

    pub fn evaluate(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.to_complex64();
            for (x, &p) in point.iter().zip(e.iter()) {
                t *= x.powu(p);
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for AffinePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("w{i}")
                    } else {
                        format!("w{i}^{p}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) * {}", mono.join(" "))?;
            }
        }
        Ok(())
    }
}

/// A ratio of affine polynomials in chart coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineRational {
    pub num: AffinePolynomial,
    pub den: AffinePolynomial,
}

impl AffineRational {
    pub fn new(num: AffinePolynomial, den: AffinePolynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator in chart entry");
        Self { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Composition with univariate rational chart coordinates; None when the
    /// composed denominator vanishes identically (curve inside the polar locus).
    pub fn compose(&self, subs: &[Option<UniRational>]) -> Option<UniRational> {
        let n = self.num.compose(subs)?;
        let d = self.den.compose(subs)?;
        if d.is_zero() {
            return None;
        }
        Some(n.div(&d))
    }
}

impl fmt::Display for AffineRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
