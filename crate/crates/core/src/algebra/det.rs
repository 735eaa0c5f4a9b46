//! Exact determinants of polynomial and rational-function matrices.
//!
//! Polynomial matrices use fraction-free Bareiss elimination (every division
//! is exact in the ring); small matrices and rational-function matrices fall
//! back to cofactor expansion.

use super::gaussian::GaussianRational;
use super::homog::HomogeneousPolynomial;
use super::homrat::HomRationalFunction;

/// Determinant of a square matrix of homogeneous polynomials.
pub fn determinant_poly(m: &[Vec<HomogeneousPolynomial>]) -> HomogeneousPolynomial {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|row| row.len() == n), "matrix not square");
    let nv = m[0][0].num_vars;
    if n <= 3 {
        return cofactor_poly(m);
    }
    // Bareiss: a[i][j] <- (a[p][p]*a[i][j] - a[i][p]*a[p][j]) / prev_pivot
    let mut a: Vec<Vec<HomogeneousPolynomial>> = m.to_vec();
    let mut sign = false;
    let mut prev = HomogeneousPolynomial::constant(nv, GaussianRational::one());
    for p in 0..n - 1 {
        if a[p][p].is_zero() {
            let Some(swap) = (p + 1..n).find(|&i| !a[i][p].is_zero()) else {
                return HomogeneousPolynomial::zero(nv, 0);
            };
            a.swap(p, swap);
            sign = !sign;
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let t = a[p][p].mul(&a[i][j]).sub(&a[i][p].mul(&a[p][j]));
                a[i][j] = t
                    .divide_exact(&prev)
                    .expect("Bareiss division must be exact");
            }
            a[i][p] = HomogeneousPolynomial::zero(nv, 0);
        }
        prev = a[p][p].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

fn cofactor_poly(m: &[Vec<HomogeneousPolynomial>]) -> HomogeneousPolynomial {
    let n = m.len();
    let nv = m[0][0].num_vars;
    match n {
        1 => m[0][0].clone(),
        _ => {
            let mut acc = HomogeneousPolynomial::zero(nv, 0);
            for (j, entry) in m[0].iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<HomogeneousPolynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = entry.mul(&cofactor_poly(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Naive Laplace cofactor expansion, kept as an independent oracle.
pub fn determinant_poly_laplace(m: &[Vec<HomogeneousPolynomial>]) -> HomogeneousPolynomial {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|row| row.len() == n), "matrix not square");
    cofactor_poly(m)
}

/// Determinant of a square matrix of homogeneous rational functions.
pub fn determinant_rational(m: &[Vec<HomRationalFunction>]) -> HomRationalFunction {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|row| row.len() == n), "matrix not square");
    let nv = m[0][0].num.num_vars;
    // clear denominators row-wise, take the polynomial determinant, divide back
    let mut cleared: Vec<Vec<HomogeneousPolynomial>> = Vec::with_capacity(n);
    let mut scale = HomRationalFunction::from_poly(HomogeneousPolynomial::constant(
        nv,
        GaussianRational::one(),
    ));
    for row in m {
        let mut common = HomogeneousPolynomial::constant(nv, GaussianRational::one());
        for e in row {
            common = common.mul(&e.den);
        }
        let mut prow = Vec::with_capacity(n);
        for e in row {
            let rest = common
                .divide_exact(&e.den)
                .expect("row denominator product divisible by each factor");
            prow.push(e.num.mul(&rest));
        }
        scale = scale.mul(&HomRationalFunction::new(
            HomogeneousPolynomial::constant(nv, GaussianRational::one()),
            common,
        ));
        cleared.push(prow);
    }
    let det = determinant_poly(&cleared);
    HomRationalFunction::from_poly(det).mul(&scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn var(nv: usize, i: usize) -> HomogeneousPolynomial {
        HomogeneousPolynomial::variable(nv, i)
    }

    #[test]
    fn diagonal_product() {
        let nv = 3;
        let m: Vec<Vec<HomogeneousPolynomial>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        if i == j {
                            var(nv, i)
                        } else {
                            HomogeneousPolynomial::zero(nv, 1)
                        }
                    })
                    .collect()
            })
            .collect();
        let det = determinant_poly(&m);
        let want = var(nv, 0).mul(&var(nv, 1)).mul(&var(nv, 2));
        assert_eq!(det, want);
    }

    #[test]
    fn equal_rows_vanish() {
        let nv = 2;
        let row = vec![var(nv, 0), var(nv, 1)];
        let det = determinant_poly(&[row.clone(), row]);
        assert!(det.is_zero());
    }

    #[test]
    fn bareiss_matches_laplace_4x4() {
        // pseudo-random small polynomial entries
        let nv = 2;
        let entry = |a: i64, b: i64| {
            HomogeneousPolynomial::from_terms(
                nv,
                1,
                [(vec![1, 0], gr(a)), (vec![0, 1], gr(b))],
            )
        };
        let m: Vec<Vec<HomogeneousPolynomial>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| entry((i * 7 + j * 3) % 5 - 2, (i * 11 + j * 5) % 7 - 3))
                    .collect()
            })
            .collect();
        assert_eq!(determinant_poly(&m), determinant_poly_laplace(&m));
    }

    #[test]
    fn rational_determinant_clears_denominators() {
        // [[1/X0, 0], [0, 1/X1]] → 1/(X0·X1)
        let nv = 2;
        let one = HomogeneousPolynomial::constant(nv, gr(1));
        let m = vec![
            vec![
                HomRationalFunction::new(one.clone(), var(nv, 0)),
                HomRationalFunction::zero(nv),
            ],
            vec![
                HomRationalFunction::zero(nv),
                HomRationalFunction::new(one.clone(), var(nv, 1)),
            ],
        ];
        let det = determinant_rational(&m);
        assert_eq!(det.num, one);
        assert_eq!(det.den, var(nv, 0).mul(&var(nv, 1)));
    }
}
