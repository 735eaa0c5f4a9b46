//! Homogeneous multivariate polynomials over ℚ(i) in variables X0..Xk.
//!
//! Terms are kept in a BTreeMap keyed by exponent vector. All exponent
//! vectors of a homogeneous polynomial share the same total degree, so the
//! lexicographic map order coincides with graded lexicographic order.

use super::gaussian::GaussianRational;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousPolynomial {
    pub num_vars: usize,
    pub degree: usize,
    terms: BTreeMap<Vec<u32>, GaussianRational>,
}

impl HomogeneousPolynomial {
    /// The zero polynomial, with a conventional degree attached.
    pub fn zero(num_vars: usize, degree: usize) -> Self {
        Self {
            num_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Build from (exponent, coefficient) pairs. Panics on a non-homogeneous
    /// or wrong-arity exponent vector.
    pub fn from_terms<I>(num_vars: usize, degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, GaussianRational)>,
    {
        let mut map: BTreeMap<Vec<u32>, GaussianRational> = BTreeMap::new();
        for (exp, c) in terms {
            assert_eq!(exp.len(), num_vars, "exponent arity mismatch");
            assert_eq!(
                exp.iter().map(|&e| e as usize).sum::<usize>(),
                degree,
                "non-homogeneous term"
            );
            let entry = map.entry(exp).or_insert_with(GaussianRational::zero);
            *entry = entry.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        Self {
            num_vars,
            degree,
            terms: map,
        }
    }

    /// The single variable X_i as a degree-1 polynomial.
    pub fn variable(num_vars: usize, i: usize) -> Self {
        Self::monomial(num_vars, {
            let mut e = vec![0u32; num_vars];
            e[i] = 1;
            e
        }, GaussianRational::one())
    }

    pub fn monomial(num_vars: usize, exp: Vec<u32>, coeff: GaussianRational) -> Self {
        let degree = exp.iter().map(|&e| e as usize).sum();
        Self::from_terms(num_vars, degree, [(exp, coeff)])
    }

    pub fn constant(num_vars: usize, c: GaussianRational) -> Self {
        Self::from_terms(num_vars, 0, [(vec![0; num_vars], c)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the fixed monomial order (largest exponent key).
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&GaussianRational> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn coefficient(&self, exp: &[u32]) -> GaussianRational {
        self.terms.get(exp).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "degree mismatch in homogeneous add");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(GaussianRational::zero);
            *entry = entry.clone() + c.clone();
        }
        terms.retain(|_, c| !c.is_zero());
        Self {
            num_vars: self.num_vars,
            degree: self.degree,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c.clone()))
            .collect();
        Self {
            num_vars: self.num_vars,
            degree: self.degree,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.num_vars, self.degree + other.degree);
        }
        let mut terms: BTreeMap<Vec<u32>, GaussianRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(exp).or_insert_with(GaussianRational::zero);
                *entry = entry.clone() + ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self {
            num_vars: self.num_vars,
            degree: self.degree + other.degree,
            terms,
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars, self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, t)| (e.clone(), t * c))
            .collect();
        Self {
            num_vars: self.num_vars,
            degree: self.degree,
            terms,
        }
    }

    /// ∂P/∂X_i.
    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.num_vars, "variable index out of range");
        let degree = self.degree.saturating_sub(1);
        let mut terms: BTreeMap<Vec<u32>, GaussianRational> = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exp = e.clone();
            let k = exp[i];
            exp[i] = k - 1;
            let coeff = c * &GaussianRational::from_int(k as i64);
            let entry = terms.entry(exp).or_insert_with(GaussianRational::zero);
            *entry = entry.clone() + coeff;
        }
        Self {
            num_vars: self.num_vars,
            degree,
            terms,
        }
    }

    /// Double-precision evaluation at a complex point.
    pub fn evaluate(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.num_vars, "point arity mismatch");
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

    /// Exact evaluation over the coefficient field.
    pub fn evaluate_exact(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.num_vars, "point arity mismatch");
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &p) in point.iter().zip(e.iter()) {
                for _ in 0..p {
                    t *= x.clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division by a divisor known to divide self. Returns None when
    /// division leaves a remainder.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.num_vars, 0));
        }
        if self.degree < divisor.degree {
            return None;
        }
        let qdeg = self.degree - divisor.degree;
        let mut rem = self.clone();
        let mut quot: BTreeMap<Vec<u32>, GaussianRational> = BTreeMap::new();
        let (dlt, dlc) = {
            let (e, c) = divisor.leading_term().unwrap();
            (e.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rlt, rlc) = {
                let (e, c) = rem.leading_term().unwrap();
                (e.clone(), c.clone())
            };
            let mut qexp = Vec::with_capacity(self.num_vars);
            for (a, b) in rlt.iter().zip(&dlt) {
                if a < b {
                    return None;
                }
                qexp.push(a - b);
            }
            let qc = rlc / dlc.clone();
            let piece = Self::monomial(self.num_vars, qexp.clone(), qc.clone());
            rem = rem.sub(&piece.mul(divisor));
            let entry = quot.entry(qexp).or_insert_with(GaussianRational::zero);
            *entry = entry.clone() + qc;
        }
        quot.retain(|_, c| !c.is_zero());
        Some(Self {
            num_vars: self.num_vars,
            degree: qdeg,
            terms: quot,
        })
    }

    /// Substitute X_j := 1, producing a polynomial in the remaining
    /// variables (arity preserved, slot j frozen at exponent 0).
    pub fn dehomogenize(&self, j: usize) -> super::affine::AffinePolynomial {
        assert!(j < self.num_vars);
        let mut out = std::collections::BTreeMap::new();
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp[j] = 0;
            let entry = out
                .entry(exp)
                .or_insert_with(GaussianRational::zero);
            *entry = entry.clone() + c.clone();
        }
        out.retain(|_, c: &mut GaussianRational| !c.is_zero());
        super::affine::AffinePolynomial::from_map(self.num_vars, out)
    }

    /// Checks the Euler identity Σ X_λ ∂P/∂X_λ = deg(P)·P symbolically.
    pub fn euler_identity_holds(&self) -> bool {
        let mut acc = Self::zero(self.num_vars, self.degree);
        for i in 0..self.num_vars {
            let xi = Self::variable(self.num_vars, i);
            acc = acc.add(&xi.mul(&self.partial_derivative(i)));
        }
        acc == self.scale(&GaussianRational::from_int(self.degree as i64))
    }
}

impl fmt::Display for HomogeneousPolynomial {
    /// Canonical text form, terms in descending monomial order:
    /// `c * X0^a X1^b + ...`. Zero exponents are omitted; the constant
    /// monomial prints as the bare coefficient.
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
                        format!("X{i}")
                    } else {
                        format!("X{i}^{p}")
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

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn partial_derivative_power_rule() {
        // ∂(X0²X1)/∂X0 = 2·X0X1
        let p = HomogeneousPolynomial::monomial(2, vec![2, 1], gr(1));
        let d = p.partial_derivative(0);
        assert_eq!(d, HomogeneousPolynomial::monomial(2, vec![1, 1], gr(2)));
    }

    #[test]
    fn partial_derivative_absent_variable() {
        let p = HomogeneousPolynomial::variable(2, 1);
        assert!(p.partial_derivative(0).is_zero());
    }

    #[test]
    fn fermat_derivative() {
        // ∂(X_μ^d)/∂X_μ = d·X_μ^{d−1}
        for d in 1u32..=5 {
            let p = HomogeneousPolynomial::monomial(3, vec![0, d, 0], gr(1));
            let got = p.partial_derivative(1);
            let want = HomogeneousPolynomial::monomial(3, vec![0, d - 1, 0], gr(d as i64));
            assert_eq!(got, want);
        }
    }

    #[test]
    fn evaluate_simple() {
        let p = HomogeneousPolynomial::monomial(2, vec![1, 1], gr(1));
        let v = p.evaluate(&[Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)]);
        assert!((v - Complex64::new(6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn evaluate_at_i() {
        // X0² + X1² at (i, 1) = 0
        let p = HomogeneousPolynomial::from_terms(
            2,
            2,
            [(vec![2, 0], gr(1)), (vec![0, 2], gr(1))],
        );
        let v = p.evaluate(&[Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)]);
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = HomogeneousPolynomial::from_terms(
            2,
            2,
            [(vec![2, 0], gr(1)), (vec![1, 1], gr(3)), (vec![0, 2], gr(2))],
        );
        let b = HomogeneousPolynomial::from_terms(2, 1, [(vec![1, 0], gr(1)), (vec![0, 1], gr(-5))]);
        let prod = a.mul(&b);
        assert_eq!(prod.divide_exact(&b).unwrap(), a);
        assert_eq!(prod.divide_exact(&a).unwrap(), b);
    }

    #[test]
    fn euler_identity() {
        let p = HomogeneousPolynomial::from_terms(
            3,
            3,
            [
                (vec![3, 0, 0], gr(2)),
                (vec![1, 1, 1], gr(-7)),
                (vec![0, 2, 1], GaussianRational::from_ratio(1, 3)),
            ],
        );
        assert!(p.euler_identity_holds());
    }
}
