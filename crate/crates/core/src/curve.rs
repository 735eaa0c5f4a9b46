//! Explicit polynomial holomorphic curves into ℙ^k: reduction, pullbacks
//! under hypersurfaces, covariant derivatives along the curve, the
//! connection Wronskian W_Λ(f) and its degeneracy test, and the
//! order-of-vanishing inequality.

use crate::algebra::{
    GaussianRational, HomogeneousPolynomial, UniPolynomial, UniRational,
};
use crate::connection::ChartConnection;
use crate::error::{GeonevError, Result};

/// A holomorphic curve given by a tuple of polynomial components.
#[derive(Clone, Debug)]
pub struct ProjectiveCurve {
    components: Vec<UniPolynomial>,
    pub reduced: bool,
}

impl ProjectiveCurve {
    pub fn new(components: Vec<UniPolynomial>) -> Result<Self> {
        if components.len() < 2 || components.iter().all(|c| c.is_zero()) {
            return Err(GeonevError::ZeroCurve);
        }
        Ok(Self {
            components,
            reduced: false,
        })
    }

    pub fn from_i64(components: &[&[i64]]) -> Result<Self> {
        Self::new(components.iter().map(|c| UniPolynomial::from_i64(c)).collect())
    }

    /// Ambient dimension k (number of components minus one).
    pub fn k(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[UniPolynomial] {
        &self.components
    }

    /// Divides out the exact gcd of the components.
    pub fn reduce(&self) -> Self {
        let mut g = UniPolynomial::zero();
        for c in &self.components {
            g = if g.is_zero() { c.clone() } else { g.gcd(c) };
        }
        let components = self
            .components
            .iter()
            .map(|c| if c.is_zero() { c.clone() } else { c.div_rem(&g).0 })
            .collect();
        Self {
            components,
            reduced: true,
        }
    }

    /// σ(f_0(z), ..., f_k(z)).
    pub fn pullback(&self, sigma: &HomogeneousPolynomial) -> UniPolynomial {
        assert_eq!(sigma.num_vars, self.components.len(), "arity mismatch");
        let mut acc = UniPolynomial::zero();
        for (e, c) in sigma.terms() {
            let mut t = UniPolynomial::constant(c.clone());
            for (f, &p) in self.components.iter().zip(e.iter()) {
                for _ in 0..p {
                    t = t.mul(f);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Smallest chart index j with f_j ≢ 0.
    pub fn default_chart(&self) -> usize {
        self.components
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero curve")
    }

    /// Chart coordinates (f_i/f_j) for i ≠ j, in index order.
    pub fn affine_coordinates(&self, chart: usize) -> Result<Vec<UniRational>> {
        assert!(chart < self.components.len(), "chart index out of range");
        let fj = &self.components[chart];
        if fj.is_zero() {
            return Err(GeonevError::ChartDegenerate { chart });
        }
        Ok(self
            .components
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != chart)
            .map(|(_, fi)| UniRational::new(fi.clone(), fj.clone()))
            .collect())
    }

    /// Exact projective equality: all cross products f_i g_j − f_j g_i ≡ 0.
    pub fn projectively_equal(&self, other: &Self) -> bool {
        if self.components.len() != other.components.len() {
            return false;
        }
        let n = self.components.len();
        for i in 0..n {
            for j in i + 1..n {
                let cross = self.components[i]
                    .mul(&other.components[j])
                    .sub(&self.components[j].mul(&other.components[i]));
                if !cross.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// One covariant-derivative step along the curve in a chart:
/// (Λ_{f'}V)^λ = (V^λ)' + Σ_{i,m} Γ^λ_{im}(f)·(f^i)'·V^m,
/// all indices running over the chart coordinates.
pub fn covariant_derivative(
    v: &[UniRational],
    affine: &[UniRational],
    conn: &ChartConnection,
) -> Result<Vec<UniRational>> {
    let k = conn.k;
    assert_eq!(v.len(), k, "frame vector arity mismatch");
    assert_eq!(affine.len(), k, "affine coordinate arity mismatch");
    let coords = conn.coordinate_indices();
    // substitution table over ambient indices: chart slot fixed at 1
    let mut subs: Vec<Option<UniRational>> = vec![None; k + 1];
    subs[conn.chart] = Some(UniRational::from_poly(UniPolynomial::one()));
    for (slot, &amb) in coords.iter().enumerate() {
        subs[amb] = Some(affine[slot].clone());
    }
    let derivs: Vec<UniRational> = affine.iter().map(|w| w.derivative()).collect();
    let mut out = Vec::with_capacity(k);
    for (ls, &lambda) in coords.iter().enumerate() {
        let mut acc = v[ls].derivative();
        for (is, &i) in coords.iter().enumerate() {
            for (ms, &m) in coords.iter().enumerate() {
                let g = conn.entry(lambda, i, m);
                if g.is_zero() {
                    continue;
                }
                let composed = g.compose(&subs).ok_or(GeonevError::PolarLocusCurve)?;
                acc = acc.add(&composed.mul(&derivs[is]).mul(&v[ms]));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// The frame f', Λ_{f'}f', ..., Λ^{(k−1)}_{f'}f' in a chart.
#[derive(Clone, Debug)]
pub struct CovariantFrame {
    pub chart: usize,
    pub vectors: Vec<Vec<UniRational>>,
}

pub fn covariant_frame(curve: &ProjectiveCurve, conn: &ChartConnection) -> Result<CovariantFrame> {
    let affine = curve.affine_coordinates(conn.chart)?;
    let k = conn.k;
    // screen for an image inside the polar locus before taking any steps
    let coords = conn.coordinate_indices();
    let mut subs: Vec<Option<UniRational>> = vec![None; k + 1];
    subs[conn.chart] = Some(UniRational::from_poly(UniPolynomial::one()));
    for (slot, &amb) in coords.iter().enumerate() {
        subs[amb] = Some(affine[slot].clone());
    }
    for &lambda in &coords {
        for &i in &coords {
            for &m in &coords {
                let g = conn.entry(lambda, i, m);
                if !g.is_zero() && g.compose(&subs).is_none() {
                    return Err(GeonevError::PolarLocusCurve);
                }
            }
        }
    }
    let mut vectors = Vec::with_capacity(k);
    let v0: Vec<UniRational> = affine.iter().map(|w| w.derivative()).collect();
    vectors.push(v0);
    for _ in 1..k {
        let next = covariant_derivative(vectors.last().unwrap(), &affine, conn)?;
        vectors.push(next);
    }
    Ok(CovariantFrame {
        chart: conn.chart,
        vectors,
    })
}

/// W_Λ(f) and its exact degeneracy verdict.
#[derive(Clone, Debug)]
pub struct WronskianValue {
    pub value: UniRational,
    pub identically_zero: bool,
}

/// Determinant of the k×k matrix whose rows are the covariant frame vectors.
pub fn connection_wronskian(
    curve: &ProjectiveCurve,
    conn: &ChartConnection,
) -> Result<WronskianValue> {
    let frame = covariant_frame(curve, conn)?;
    let value = determinant_unirational(&frame.vectors);
    let identically_zero = value.is_zero();
    Ok(WronskianValue {
        value,
        identically_zero,
    })
}

/// Classical Wronskian det[(d^i/dz^i) w_j] of the affine coordinates,
/// kept as the flat-case oracle.
pub fn classical_wronskian(affine: &[UniRational]) -> UniRational {
    let k = affine.len();
    let mut rows = Vec::with_capacity(k);
    let mut current: Vec<UniRational> = affine.iter().map(|w| w.derivative()).collect();
    for _ in 0..k {
        rows.push(current.clone());
        current = current.iter().map(|v| v.derivative()).collect();
    }
    determinant_unirational(&rows)
}

fn determinant_unirational(m: &[Vec<UniRational>]) -> UniRational {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix not square");
    match n {
        0 => UniRational::from_poly(UniPolynomial::one()),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = UniRational::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<UniRational>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&determinant_unirational(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Order-of-vanishing inequality at an exact point z0: when
/// ord(σ∘f) ≥ k+1, checks ord δ(f)^{k(k−1)/2}·W_Λ(f) ≥ ord(σ∘f) − k.
/// Vacuously true below the threshold.
pub fn zero_order_inequality_check(
    curve: &ProjectiveCurve,
    conn: &ChartConnection,
    delta: &HomogeneousPolynomial,
    sigma: &HomogeneousPolynomial,
    z0: &GaussianRational,
) -> Result<bool> {
    let k = conn.k;
    let pull = curve.pullback(sigma);
    if pull.is_zero() {
        return Err(GeonevError::ZeroPullback);
    }
    let ord_pull = pull.order_at(z0).expect("nonzero pullback") as i64;
    if ord_pull < (k + 1) as i64 {
        return Ok(true);
    }
    let w = connection_wronskian(curve, conn)?;
    if w.identically_zero {
        return Err(GeonevError::DegenerateCurve);
    }
    let delta_pull = curve.pullback(delta);
    if delta_pull.is_zero() {
        return Err(GeonevError::PolarLocusCurve);
    }
    let power = (k * (k - 1) / 2) as i64;
    let ord_delta = delta_pull.order_at(z0).expect("nonzero") as i64;
    let ord_w = w.value.order_at(z0).expect("nonzero Wronskian");
    Ok(power * ord_delta + ord_w >= ord_pull - k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{chart_restrict, solve_christoffel, LinearSystemBasis};

    #[test]
    fn reduce_examples() {
        // (z, z²) → (1, z)
        let c = ProjectiveCurve::from_i64(&[&[0, 1], &[0, 0, 1]]).unwrap().reduce();
        assert_eq!(c.components()[0], UniPolynomial::one());
        assert_eq!(c.components()[1], UniPolynomial::monomial(1));
        // (z²−1, z−1) → (z+1, 1)
        let c = ProjectiveCurve::from_i64(&[&[-1, 0, 1], &[-1, 1]]).unwrap().reduce();
        assert_eq!(c.components()[0], UniPolynomial::from_i64(&[1, 1]));
        assert_eq!(c.components()[1], UniPolynomial::one());
    }

    #[test]
    fn pullback_substitution() {
        use crate::algebra::parse_homogeneous;
        let f = ProjectiveCurve::from_i64(&[&[1], &[0, 1]]).unwrap().reduce();
        let s = parse_homogeneous("X1", 2).unwrap();
        assert_eq!(f.pullback(&s), UniPolynomial::monomial(1));
        let s = parse_homogeneous("X0 X1", 2).unwrap();
        assert_eq!(f.pullback(&s), UniPolynomial::monomial(1));
        let s = parse_homogeneous("X1^2 - X0 X1", 2).unwrap();
        assert_eq!(f.pullback(&s), UniPolynomial::from_i64(&[0, -1, 1]));
    }

    #[test]
    fn affine_coordinates_and_degenerate_chart() {
        let f = ProjectiveCurve::from_i64(&[&[0, 1], &[1, 0, 1]]).unwrap();
        let coords = f.affine_coordinates(0).unwrap();
        assert_eq!(
            coords[0],
            UniRational::new(
                UniPolynomial::from_i64(&[1, 0, 1]),
                UniPolynomial::monomial(1)
            )
        );
        let g = ProjectiveCurve::from_i64(&[&[], &[0, 1]]).unwrap();
        assert!(matches!(
            g.affine_coordinates(0),
            Err(GeonevError::ChartDegenerate { chart: 0 })
        ));
    }

    #[test]
    fn flat_covariant_derivative_is_differentiation() {
        let conn = ChartConnection::flat(1, 0);
        let f = ProjectiveCurve::from_i64(&[&[1], &[0, 0, 1]]).unwrap().reduce();
        let affine = f.affine_coordinates(0).unwrap();
        let v = vec![UniRational::from_poly(UniPolynomial::from_i64(&[0, 0, 1]))];
        let dv = covariant_derivative(&v, &affine, &conn).unwrap();
        assert_eq!(dv[0], UniRational::from_poly(UniPolynomial::from_i64(&[0, 2])));
    }

    #[test]
    fn fermat_frame_k1() {
        // Fermat conn chart 0, k=1, curve (1, z): V_0 = (1), V_1 = ((d−1)/z)
        let d = 3;
        let tensor = solve_christoffel(&LinearSystemBasis::fermat(1, d));
        let conn = chart_restrict(&tensor, 0);
        let f = ProjectiveCurve::from_i64(&[&[1], &[0, 1]]).unwrap().reduce();
        let frame = covariant_frame(&f, &conn).unwrap();
        assert_eq!(frame.vectors[0][0], UniRational::from_poly(UniPolynomial::one()));
        let w = connection_wronskian(&f, &conn).unwrap();
        assert!(!w.identically_zero);
        // k = 1: W is just V_0's single entry = 1
        assert_eq!(w.value, UniRational::from_poly(UniPolynomial::one()));
        // one more covariant step gives (d−1)/z
        let affine = f.affine_coordinates(0).unwrap();
        let v1 = covariant_derivative(&frame.vectors[0], &affine, &conn).unwrap();
        assert_eq!(
            v1[0],
            UniRational::new(
                UniPolynomial::from_i64(&[(d - 1) as i64]),
                UniPolynomial::monomial(1)
            )
        );
    }

    #[test]
    fn polar_locus_curve_detected() {
        // curve forced into chart 1 with f_0/f_1 ≡ 0 hits the pole of (d−1)/w
        let tensor = solve_christoffel(&LinearSystemBasis::fermat(1, 2));
        let conn = chart_restrict(&tensor, 1);
        let f = ProjectiveCurve::from_i64(&[&[], &[0, 1]]).unwrap().reduce();
        let err = connection_wronskian(&f, &conn).unwrap_err();
        assert!(matches!(err, GeonevError::PolarLocusCurve));
    }

    #[test]
    fn flat_wronskian_matches_classical() {
        // k=2 flat, f=(1, z, z²): det [[1, 2z], [0, 2]] = 2
        let conn = ChartConnection::flat(2, 0);
        let f = ProjectiveCurve::from_i64(&[&[1], &[0, 1], &[0, 0, 1]])
            .unwrap()
            .reduce();
        let w = connection_wronskian(&f, &conn).unwrap();
        assert_eq!(w.value, UniRational::from_poly(UniPolynomial::from_i64(&[2])));
        let classical = classical_wronskian(&f.affine_coordinates(0).unwrap());
        assert_eq!(w.value, classical);
    }

    #[test]
    fn degenerate_curve_flagged() {
        // f = (1, z, 2z): linearly degenerate
        let conn = ChartConnection::flat(2, 0);
        let f = ProjectiveCurve::from_i64(&[&[1], &[0, 1], &[0, 2]])
            .unwrap()
            .reduce();
        let w = connection_wronskian(&f, &conn).unwrap();
        assert!(w.identically_zero);
    }

    #[test]
    fn zero_order_inequality_examples() {
        use crate::algebra::parse_homogeneous;
        // k=1, flat, f=(1, z³), σ=X1, z0=0: ord(σ∘f)=3, W=3z² ord 2 ≥ 2
        let conn = ChartConnection::flat(1, 0);
        let basis = LinearSystemBasis::coordinates(1);
        let f = ProjectiveCurve::from_i64(&[&[1], &[0, 0, 0, 1]]).unwrap().reduce();
        let sigma = parse_homogeneous("X1", 2).unwrap();
        assert!(zero_order_inequality_check(
            &f,
            &conn,
            basis.delta(),
            &sigma,
            &GaussianRational::zero()
        )
        .unwrap());
        // ord 1 < k+1: vacuous
        let g = ProjectiveCurve::from_i64(&[&[1], &[0, 1]]).unwrap().reduce();
        assert!(zero_order_inequality_check(
            &g,
            &conn,
            basis.delta(),
            &sigma,
            &GaussianRational::zero()
        )
        .unwrap());
        // k=2, flat, f=(1, z³, z⁶), σ=X1, z0=0
        let conn2 = ChartConnection::flat(2, 0);
        let basis2 = LinearSystemBasis::coordinates(2);
        let h = ProjectiveCurve::from_i64(&[&[1], &[0, 0, 0, 1], &[0, 0, 0, 0, 0, 0, 1]])
            .unwrap()
            .reduce();
        let sigma3 = parse_homogeneous("X1", 3).unwrap();
        assert!(zero_order_inequality_check(
            &h,
            &conn2,
            basis2.delta(),
            &sigma3,
            &GaussianRational::zero()
        )
        .unwrap());
    }

    #[test]
    fn representation_invariance() {
        // multiplying components by a common factor leaves verdicts unchanged
        let conn = ChartConnection::flat(2, 0);
        let f = ProjectiveCurve::from_i64(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
        let common = UniPolynomial::from_i64(&[3, 1]);
        let scaled =
            ProjectiveCurve::new(f.components().iter().map(|c| c.mul(&common)).collect())
                .unwrap();
        let a = connection_wronskian(&f.reduce(), &conn).unwrap();
        let b = connection_wronskian(&scaled.reduce(), &conn).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.identically_zero, b.identically_zero);
    }
}
