//! Univariate polynomials in the disk parameter z over ℚ(i).

use super::gaussian::GaussianRational;
use num_complex::Complex64;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPolynomial {
    /// coeffs[n] is the coefficient of z^n; trailing zeros trimmed.
    coeffs: Vec<GaussianRational>,
}

impl UniPolynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// z^n with unit coefficient.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); n + 1];
        coeffs[n] = GaussianRational::one();
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, n: usize) -> GaussianRational {
        self.coeffs.get(n).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading_coefficient(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    /// Order of vanishing at z = 0 (index of first nonzero coefficient).
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coefficient(i) + other.coefficient(i));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|t| t * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &GaussianRational::from_int((i + 1) as i64))
                .collect(),
        )
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.degree() < divisor.degree() {
            return (Self::zero(), self.clone());
        }
        let dl = divisor.leading_coefficient().unwrap().clone();
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let qd = self.degree().unwrap() - dd;
        let mut quot = vec![GaussianRational::zero(); qd + 1];
        for i in (0..=qd).rev() {
            let lead = rem[i + dd].clone();
            if lead.is_zero() {
                continue;
            }
            let q = lead / dl.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * b;
            }
            quot[i] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Leading coefficient normalized to 1.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free decomposition by Yun's algorithm (characteristic 0):
    /// returns [(g_i, i)] with p = lc·Π g_i^i, each g_i monic square-free.
    pub fn square_free(&self) -> Vec<(Self, usize)> {
        assert!(!self.is_zero(), "square_free of zero polynomial");
        if self.degree() == Some(0) {
            return vec![];
        }
        let p = self.monic();
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut out = Vec::new();
        let (mut b, _) = p.div_rem(&a0);
        let (mut c, _) = dp.div_rem(&a0);
        let mut i = 1usize;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree().is_some_and(|d| d > 0) {
                    out.push((b.monic(), i));
                }
                break;
            }
            let g = b.gcd(&d);
            if g.degree().is_some_and(|d| d > 0) {
                out.push((g.clone(), i));
            }
            let (nb, _) = b.div_rem(&g);
            let (nc, _) = d.div_rem(&g);
            b = nb;
            c = nc;
            i += 1;
        }
        out
    }

    /// Exact order of vanishing at a Gaussian-rational point.
    pub fn order_at(&self, z0: &GaussianRational) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let lin = Self::new(vec![-z0.clone(), GaussianRational::one()]);
        let mut p = self.clone();
        let mut ord = 0usize;
        loop {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                return Some(ord);
            }
            ord += 1;
            p = q;
            if p.is_zero() {
                return Some(ord);
            }
        }
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_complex64();
        }
        acc
    }

    pub fn evaluate_exact(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }
}

impl fmt::Display for UniPolynomial {
    /// Canonical text form `c0 + c1*z + c2*z^2 + ...`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{n}")?,
            }
        }
        Ok(())
    }
}
