//! Curve descriptions and the linear-algebra side of the parametrization
//! story: the restriction map `psi` from ambient polynomials to univariate
//! polynomials, exponent coverage, the image-dimension formula for the
//! curve `y = x^d`, and places at infinity of plane curves.

use crate::error::{Error, Result};
use crate::multipoly::{monomial_count, monomials, MultivariatePolynomial};
use crate::poly::{real_roots, Polynomial};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A rational curve `t -> (phi_1(t)/phi_0(t), ..., phi_n(t)/phi_0(t))`.
///
/// The denominator's distinct real zeros are computed on construction; they
/// are the poles the synthesis and moment modules must keep away from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RationalCurveData", into = "RationalCurveData")]
pub struct RationalCurve {
    phi0: Polynomial,
    phi: Vec<Polynomial>,
    max_numerator_degree: usize,
    pole_zeros: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RationalCurveData {
    phi0: Polynomial,
    phi: Vec<Polynomial>,
}

impl TryFrom<RationalCurveData> for RationalCurve {
    type Error = Error;
    fn try_from(d: RationalCurveData) -> Result<Self> {
        RationalCurve::new(d.phi0, d.phi)
    }
}

impl From<RationalCurve> for RationalCurveData {
    fn from(c: RationalCurve) -> Self {
        RationalCurveData {
            phi0: c.phi0,
            phi: c.phi,
        }
    }
}

impl RationalCurve {
    pub fn new(phi0: Polynomial, phi: Vec<Polynomial>) -> Result<Self> {
        if phi.is_empty() {
            return Err(Error::InvalidInput {
                detail: "a curve needs at least one coordinate".into(),
            });
        }
        if phi0.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let max_numerator_degree = phi.iter().map(|p| p.degree()).max().unwrap();
        let pole_zeros = if phi0.is_constant() {
            Vec::new()
        } else {
            real_roots(&phi0, 1e-10)?
                .into_iter()
                .map(|(r, _)| r)
                .collect()
        };
        Ok(RationalCurve {
            phi0,
            phi,
            max_numerator_degree,
            pole_zeros,
        })
    }

    /// Polynomial parametrization `t -> (phi_1(t), ..., phi_n(t))`.
    pub fn polynomial(phi: Vec<Polynomial>) -> Result<Self> {
        Self::new(Polynomial::constant(1.0), phi)
    }

    /// The line parametrized by `t` itself.
    pub fn line() -> Self {
        Self::polynomial(vec![Polynomial::monomial(1)]).unwrap()
    }

    /// The moment-curve style witness `(t, t^{d-1}, t^d)` in three variables.
    pub fn power_witness(d: usize) -> Self {
        assert!(d >= 1);
        Self::polynomial(vec![
            Polynomial::monomial(1),
            Polynomial::monomial(d.saturating_sub(1)),
            Polynomial::monomial(d),
        ])
        .unwrap()
    }

    /// The plane curve `y = x^d` parametrized as `(t, t^d)`.
    pub fn x_power_curve(d: usize) -> Self {
        assert!(d >= 1);
        Self::polynomial(vec![Polynomial::monomial(1), Polynomial::monomial(d)]).unwrap()
    }

    pub fn ambient_dim(&self) -> usize {
        self.phi.len()
    }

    pub fn phi0(&self) -> &Polynomial {
        &self.phi0
    }

    pub fn phi(&self) -> &[Polynomial] {
        &self.phi
    }

    /// `D`, the largest numerator degree.
    pub fn max_degree(&self) -> usize {
        self.max_numerator_degree
    }

    /// Degree of the curve as max over all parametrization degrees,
    /// denominator included.
    pub fn curve_degree(&self) -> usize {
        self.max_numerator_degree.max(self.phi0.degree())
    }

    pub fn is_polynomial(&self) -> bool {
        self.phi0.is_constant()
    }

    /// Distinct real zeros of the denominator, ascending.
    pub fn pole_zeros(&self) -> &[f64] {
        &self.pole_zeros
    }

    pub fn num_real_poles(&self) -> usize {
        self.pole_zeros.len()
    }

    /// Distance from `t` to the nearest denominator zero (infinite if none).
    pub fn pole_distance(&self, t: f64) -> f64 {
        self.pole_zeros
            .iter()
            .map(|z| (t - z).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// Evaluates the parametrization at `t`.
    pub fn point_at(&self, t: f64) -> Result<Vec<f64>> {
        let den = self.phi0.eval(t);
        if den.abs() <= 1e-14 * self.phi0.eval_scale(t) {
            return Err(Error::PoleInSupport { pole: t });
        }
        Ok(self.phi.iter().map(|p| p.eval(t) / den).collect())
    }
}

/// A plane algebraic curve `F(x, y) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlaneCurveData", into = "PlaneCurveData")]
pub struct PlaneCurve {
    defining: MultivariatePolynomial,
    degree: usize,
    places_override: Option<usize>,
    smooth_claimed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PlaneCurveData {
    #[serde(rename = "F")]
    f: MultivariatePolynomial,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    places_at_infinity: Option<usize>,
    #[serde(default)]
    smooth: bool,
}

impl TryFrom<PlaneCurveData> for PlaneCurve {
    type Error = Error;
    fn try_from(d: PlaneCurveData) -> Result<Self> {
        PlaneCurve::new(d.f, d.places_at_infinity, d.smooth)
    }
}

impl From<PlaneCurve> for PlaneCurveData {
    fn from(c: PlaneCurve) -> Self {
        PlaneCurveData {
            f: c.defining,
            places_at_infinity: c.places_override,
            smooth: c.smooth_claimed,
        }
    }
}

impl PlaneCurve {
    pub fn new(
        defining: MultivariatePolynomial,
        places_override: Option<usize>,
        smooth_claimed: bool,
    ) -> Result<Self> {
        if defining.nvars() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: defining.nvars(),
            });
        }
        if defining.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let degree = defining.degree();
        if degree == 0 {
            return Err(Error::InvalidInput {
                detail: "defining polynomial must have degree >= 1".into(),
            });
        }
        if let Some(t) = places_override {
            if t > degree {
                return Err(Error::InvalidInput {
                    detail: format!("places at infinity {t} exceeds the degree {degree}"),
                });
            }
        }
        Ok(PlaneCurve {
            defining,
            degree,
            places_override,
            smooth_claimed,
        })
    }

    pub fn defining_polynomial(&self) -> &MultivariatePolynomial {
        &self.defining
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn smooth_claimed(&self) -> bool {
        self.smooth_claimed
    }

    /// Number of real places at infinity (user override wins).
    pub fn places_at_infinity(&self) -> usize {
        self.places_override
            .unwrap_or_else(|| places_at_infinity(self))
    }
}

/// Either kind of curve, as read from curve JSON files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Curve {
    Rational(RationalCurve),
    Plane(PlaneCurve),
}

/// Counts real directions at infinity of a plane curve: real zeros of the
/// leading form `F_d(1, m)` in `m`, plus one if `F_d(0, 1) = 0`.
///
/// For curves smooth at infinity this equals the number of real places; the
/// override field on [`PlaneCurve`] covers the singular cases.
pub fn places_at_infinity(c: &PlaneCurve) -> usize {
    let d = c.degree();
    let lead = c.defining_polynomial().homogeneous_part(d);
    // g(m) = F_d(1, m), coefficients indexed by the y-exponent.
    let mut g = vec![0.0; d + 1];
    for (mi, coeff) in lead.terms() {
        g[mi.0[1]] += coeff;
    }
    let y_axis = if g[d] == 0.0 { 1 } else { 0 };
    let g = Polynomial::new(g);
    let dirs = if g.is_constant() {
        0
    } else {
        real_roots(&g, 1e-10).map(|r| r.len()).unwrap_or(0)
    };
    dirs + y_axis
}

/// Matrix of the restriction map from ambient polynomials of degree `<= s`
/// to univariate polynomials of degree `<= D s`, for a polynomial
/// parametrization. Rows are `t^0 .. t^{Ds}`; columns are the monomials of
/// the ambient space in the shared graded order.
pub fn psi_matrix(curve: &RationalCurve, s: usize) -> Result<DMatrix<f64>> {
    if !curve.is_polynomial() {
        return Err(Error::NotPolynomialParametrization);
    }
    let c = curve.phi0().coeff(0);
    let comps: Vec<Polynomial> = curve.phi().iter().map(|p| p.scale(1.0 / c)).collect();
    let n = curve.ambient_dim();
    let rows = curve.max_degree() * s + 1;
    let cols = monomials(n, s);
    let mut m = DMatrix::<f64>::zeros(rows, cols.len());
    for (j, alpha) in cols.iter().enumerate() {
        let mut prod = Polynomial::constant(1.0);
        for (i, &e) in alpha.0.iter().enumerate() {
            prod = prod.mul(&comps[i].pow(e));
        }
        for (k, &coef) in prod.coeffs().iter().enumerate() {
            m[(k, j)] = coef;
        }
    }
    Ok(m)
}

/// Rank analysis of the restriction map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiRank {
    pub rank: usize,
    pub surjective: bool,
    pub kernel_dim: usize,
    pub target_dim: usize,
    pub source_dim: usize,
}

/// Singular-value rank of the restriction map; surjective exactly when the
/// rank fills the univariate target `R[t]_{<= Ds}`.
pub fn psi_rank(curve: &RationalCurve, s: usize, rel_tol: f64) -> Result<PsiRank> {
    let m = psi_matrix(curve, s)?;
    let rows = m.nrows();
    let cols = m.ncols();
    let rank = svd_rank(&m, rel_tol);
    Ok(PsiRank {
        rank,
        surjective: rank == rows,
        kernel_dim: cols - rank,
        target_dim: rows,
        source_dim: cols,
    })
}

pub(crate) fn svd_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    let svals = m.clone().singular_values();
    let max = svals.iter().fold(0.0f64, |a, &b| a.max(b));
    if max == 0.0 {
        return 0;
    }
    svals.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Exponents reachable by monomials of `(t, t^{d-1}, t^d)` up to degree `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub covered: BTreeSet<usize>,
    pub complete: bool,
}

/// Which exponents `a + b(d-1) + cd` with `a + b + c <= s` occur, and
/// whether they cover all of `0..=ds`.
pub fn exponent_coverage(d: usize, s: usize) -> CoverageReport {
    assert!(d >= 1);
    let mut covered = BTreeSet::new();
    for b in 0..=s {
        for c in 0..=(s - b) {
            for a in 0..=(s - b - c) {
                covered.insert(a + b * (d - 1) + c * d);
            }
        }
    }
    let complete = covered.len() == d * s + 1 && covered.iter().next_back() == Some(&(d * s));
    CoverageReport { covered, complete }
}

/// Image dimension of the restriction map for the curve `y = x^d`:
/// `ds - d(d-3)/2`, together with the witnessing exponent set
/// `{a + bd : a + b <= s}`.
pub fn image_dimension_xd(d: usize, s: usize) -> Result<(i64, BTreeSet<usize>)> {
    if d < 1 || s < d {
        return Err(Error::DomainError {
            detail: format!("image dimension formula needs s >= d >= 1, got d={d}, s={s}"),
        });
    }
    let (di, si) = (d as i64, s as i64);
    let dim = di * si - di * (di - 3) / 2;
    let mut set = BTreeSet::new();
    for b in 0..=s {
        for a in 0..=(s - b) {
            set.insert(a + b * d);
        }
    }
    Ok((dim, set))
}

/// `binom(n+s, s)`, the Caratheodory monomial count, re-exported close to
/// the matrix whose column count it is.
pub fn ambient_dim_count(n: usize, s: usize) -> usize {
    monomial_count(n, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::MultivariatePolynomial as MP;

    #[test]
    fn psi_identity_line() {
        let curve = RationalCurve::line();
        let m = psi_matrix(&curve, 2).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (3, 3));
        assert!((m - DMatrix::<f64>::identity(3, 3)).norm() < 1e-14);
    }

    #[test]
    fn psi_monomial_columns() {
        // curve (t, t^3), s = 1: columns for 1, y, x in graded order.
        let curve = RationalCurve::polynomial(vec![
            Polynomial::monomial(1),
            Polynomial::monomial(3),
        ])
        .unwrap();
        let m = psi_matrix(&curve, 1).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (4, 3));
        let cols = monomials(2, 1);
        for (j, alpha) in cols.iter().enumerate() {
            let expected_row = alpha.0[0] + 3 * alpha.0[1];
            for i in 0..4 {
                let want = if i == expected_row { 1.0 } else { 0.0 };
                assert_eq!(m[(i, j)], want);
            }
        }
    }

    #[test]
    fn twisted_cubic_full_rank() {
        let curve = RationalCurve::power_witness(3);
        let r = psi_rank(&curve, 3, 1e-8).unwrap();
        assert_eq!(r.target_dim, 10);
        assert_eq!(r.source_dim, 20);
        assert_eq!(r.rank, 10);
        assert!(r.surjective);
    }

    #[test]
    fn parabola_kernel_is_one_dimensional() {
        let curve = RationalCurve::x_power_curve(2);
        let r = psi_rank(&curve, 2, 1e-8).unwrap();
        assert_eq!(r.kernel_dim, 1);
        assert!(!r.surjective);
    }

    #[test]
    fn coverage_line_always_complete() {
        for s in 0..6 {
            assert!(exponent_coverage(1, s).complete);
        }
    }

    #[test]
    fn coverage_d3_s3_complete() {
        let rep = exponent_coverage(3, 3);
        assert!(rep.complete);
        assert_eq!(rep.covered, (0..=9).collect());
    }

    #[test]
    fn coverage_gap_below_threshold() {
        assert!(!exponent_coverage(4, 2).complete);
    }

    #[test]
    fn image_dimension_examples() {
        let (dim, set) = image_dimension_xd(3, 3).unwrap();
        assert_eq!(dim, 9);
        let expected: BTreeSet<usize> = (0..=7).chain(std::iter::once(9)).collect();
        assert_eq!(set, expected);

        let (dim, set) = image_dimension_xd(1, 5).unwrap();
        assert_eq!(dim, 6);
        assert_eq!(set.len(), 6);

        let (dim, set) = image_dimension_xd(2, 2).unwrap();
        assert_eq!(dim, 5);
        assert_eq!(set, (0..=4).collect());
    }

    #[test]
    fn image_dimension_rejects_small_s() {
        assert!(image_dimension_xd(4, 2).is_err());
    }

    fn plane(terms: Vec<(Vec<usize>, f64)>) -> PlaneCurve {
        PlaneCurve::new(MP::from_terms(2, terms), None, true).unwrap()
    }

    #[test]
    fn circle_has_no_places_at_infinity() {
        let c = plane(vec![(vec![2, 0], 1.0), (vec![0, 2], 1.0), (vec![0, 0], -1.0)]);
        assert_eq!(c.places_at_infinity(), 0);
    }

    #[test]
    fn hyperbola_has_two() {
        let c = plane(vec![(vec![1, 1], 1.0), (vec![0, 0], -1.0)]);
        assert_eq!(c.places_at_infinity(), 2);
    }

    #[test]
    fn parabola_has_one() {
        let c = plane(vec![(vec![0, 1], 1.0), (vec![2, 0], -1.0)]);
        assert_eq!(c.places_at_infinity(), 1);
    }

    #[test]
    fn override_wins() {
        let c = PlaneCurve::new(
            MP::from_terms(2, vec![(vec![1, 1], 1.0), (vec![0, 0], -1.0)]),
            Some(1),
            false,
        )
        .unwrap();
        assert_eq!(c.places_at_infinity(), 1);
    }

    #[test]
    fn curve_json_roundtrip() {
        let c = Curve::Rational(RationalCurve::power_witness(3));
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"kind\":\"rational\""));
        let back: Curve = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
