//! Text grammar for polynomial input/output.
//!
//! Multivariate terms: `coeff * X0^a0 X1^a1 ...` joined by `+`/`-`.
//! Univariate terms: `c0 + c1*z + c2*z^2 ...`.
//! Coefficients are Gaussian rationals `p/q`, `p/q+r/s*i`, `r/s*i`, or `i`,
//! optionally parenthesized. `parse(print(P)) = P` holds bit-exactly.

use super::gaussian::GaussianRational;
use super::homog::HomogeneousPolynomial;
use super::unipoly::UniPolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty polynomial expression")]
    Empty,
    #[error("column {col}: unexpected character '{ch}'")]
    UnexpectedChar { col: usize, ch: char },
    #[error("column {col}: {msg}")]
    Malformed { col: usize, msg: String },
    #[error("variable index {idx} out of range for {num_vars} variables")]
    VariableOutOfRange { idx: usize, num_vars: usize },
    #[error("terms of unequal total degree: {a} vs {b}")]
    NotHomogeneous { a: usize, b: usize },
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, msg: String) -> ParseError {
        ParseError::Malformed {
            col: self.pos + 1,
            msg,
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer".into()));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn usize_lit(&mut self) -> Result<usize, ParseError> {
        let n = self.integer()?;
        n.try_into()
            .map_err(|_| self.err("index too large".into()))
    }

    /// `p` or `p/q` with an optional leading sign.
    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let p = self.integer()?;
        let q = if self.eat(b'/') {
            let q = self.integer()?;
            if q.is_zero() {
                return Err(self.err("zero denominator".into()));
            }
            q
        } else {
            BigInt::from(1)
        };
        let r = BigRational::new(p, q);
        Ok(if neg { -r } else { r })
    }

    /// A Gaussian rational: `a`, `a±b*i`, `b*i`, `i`, `-i`, possibly in parens.
    fn coefficient(&mut self) -> Result<GaussianRational, ParseError> {
        if self.eat(b'(') {
            let c = self.coefficient()?;
            self.expect(b')')?;
            return Ok(c);
        }
        // pure imaginary unit, with sign
        if self.peek() == Some(b'i') {
            self.pos += 1;
            return Ok(GaussianRational::i());
        }
        let save = self.pos;
        if self.eat(b'-') && self.peek() == Some(b'i') {
            self.pos += 1;
            return Ok(-GaussianRational::i());
        }
        self.pos = save;
        let first = self.rational()?;
        // `a*i` form; `*` followed by anything else belongs to the monomial
        let save = self.pos;
        if self.eat(b'*') {
            if self.peek() == Some(b'i') {
                self.pos += 1;
                return Ok(GaussianRational::new(BigRational::zero(), first));
            }
            self.pos = save;
        }
        // maybe followed by ±b*i
        let save = self.pos;
        match self.peek() {
            Some(b'+') | Some(b'-') => {
                let im = match self.rational() {
                    Ok(v) => v,
                    Err(_) => {
                        self.pos = save;
                        return Ok(GaussianRational::new(first, BigRational::zero()));
                    }
                };
                if self.eat(b'*') && self.eat(b'i') {
                    Ok(GaussianRational::new(first, im))
                } else {
                    // not an imaginary part; back off
                    self.pos = save;
                    Ok(GaussianRational::new(first, BigRational::zero()))
                }
            }
            _ => Ok(GaussianRational::new(first, BigRational::zero())),
        }
    }
}

/// Parses the multivariate grammar. The total degree is inferred; all terms
/// must agree on it.
pub fn parse_homogeneous(
    src: &str,
    num_vars: usize,
) -> Result<HomogeneousPolynomial, ParseError> {
    let mut cur = Cursor::new(src);
    let mut terms: Vec<(Vec<u32>, GaussianRational)> = Vec::new();
    let mut negate = false;
    if cur.peek().is_none() {
        return Err(ParseError::Empty);
    }
    loop {
        let (exp, mut coeff) = parse_multi_term(&mut cur, num_vars)?;
        if negate {
            coeff = -coeff;
        }
        terms.push((exp, coeff));
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.bump();
                negate = false;
            }
            Some(b'-') => {
                cur.bump();
                negate = true;
            }
            Some(c) => {
                return Err(ParseError::UnexpectedChar {
                    col: cur.pos + 1,
                    ch: c as char,
                })
            }
        }
    }
    let degrees: Vec<usize> = terms
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, _)| e.iter().map(|&x| x as usize).sum())
        .collect();
    let degree = degrees.first().copied().unwrap_or(0);
    if let Some(&bad) = degrees.iter().find(|&&d| d != degree) {
        return Err(ParseError::NotHomogeneous { a: degree, b: bad });
    }
    Ok(HomogeneousPolynomial::from_terms(
        num_vars,
        degree,
        terms.into_iter().filter(|(_, c)| !c.is_zero()),
    ))
}

fn parse_multi_term(
    cur: &mut Cursor,
    num_vars: usize,
) -> Result<(Vec<u32>, GaussianRational), ParseError> {
    let mut coeff = GaussianRational::one();
    let mut exp = vec![0u32; num_vars];
    let mut saw_anything = false;
    // optional coefficient (anything not starting with 'X')
    if let Some(c) = cur.peek() {
        if c != b'X' {
            coeff = cur.coefficient()?;
            saw_anything = true;
            cur.eat(b'*');
        }
    }
    // monomial factors
    while cur.peek() == Some(b'X') {
        cur.bump();
        let idx = cur.usize_lit()?;
        if idx >= num_vars {
            return Err(ParseError::VariableOutOfRange { idx, num_vars });
        }
        let power = if cur.eat(b'^') {
            cur.usize_lit()? as u32
        } else {
            1
        };
        exp[idx] += power;
        saw_anything = true;
        cur.eat(b'*');
    }
    if !saw_anything {
        return Err(cur.err("expected term".into()));
    }
    Ok((exp, coeff))
}

/// Parses the univariate grammar `c0 + c1*z + c2*z^2 ...`.
pub fn parse_unipoly(src: &str) -> Result<UniPolynomial, ParseError> {
    let mut cur = Cursor::new(src);
    if cur.peek().is_none() {
        return Err(ParseError::Empty);
    }
    let mut coeffs: Vec<GaussianRational> = Vec::new();
    let mut negate = false;
    loop {
        let (pow, mut coeff) = parse_uni_term(&mut cur)?;
        if negate {
            coeff = -coeff;
        }
        if coeffs.len() <= pow {
            coeffs.resize(pow + 1, GaussianRational::zero());
        }
        coeffs[pow] += coeff;
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.bump();
                negate = false;
            }
            Some(b'-') => {
                cur.bump();
                negate = true;
            }
            Some(c) => {
                return Err(ParseError::UnexpectedChar {
                    col: cur.pos + 1,
                    ch: c as char,
                })
            }
        }
    }
    Ok(UniPolynomial::new(coeffs))
}

fn parse_uni_term(cur: &mut Cursor) -> Result<(usize, GaussianRational), ParseError> {
    let mut coeff = GaussianRational::one();
    let mut pow = 0usize;
    let mut saw_anything = false;
    if let Some(c) = cur.peek() {
        if c != b'z' {
            coeff = cur.coefficient()?;
            saw_anything = true;
            cur.eat(b'*');
        }
    }
    if cur.peek() == Some(b'z') {
        cur.bump();
        pow = if cur.eat(b'^') { cur.usize_lit()? } else { 1 };
        saw_anything = true;
    }
    if !saw_anything {
        return Err(cur.err("expected term".into()));
    }
    Ok((pow, coeff))
}
