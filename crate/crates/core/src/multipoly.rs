//! Multivariate polynomials as term maps, graded-lexicographic monomial
//! order, and composition with rational parametrizations.
//!
//! The same monomial enumeration is shared by the moment matrices and the
//! restriction-map columns so that indices never drift between modules.

use crate::curves::RationalCurve;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, TRIM_REL};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Evaluates the monomial `x^alpha` at a point.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(x)
            .map(|(&e, &v)| v.powi(e as i32))
            .product()
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    /// Graded order: total degree first, then lexicographic on exponents.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.0).cmp(&(other.order(), &other.0))
    }
}

/// All monomials in `nvars` variables of total degree `<= max_degree`,
/// in the shared graded order.
pub fn monomials(nvars: usize, max_degree: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0usize; nvars];
    collect(&mut current, 0, max_degree, &mut out);
    out.sort();
    out
}

fn collect(current: &mut Vec<usize>, var: usize, budget: usize, out: &mut Vec<MultiIndex>) {
    if var + 1 == current.len() {
        for e in 0..=budget {
            current[var] = e;
            out.push(MultiIndex(current.clone()));
        }
        current[var] = 0;
        return;
    }
    for e in 0..=budget {
        current[var] = e;
        collect(current, var + 1, budget - e, out);
    }
    current[var] = 0;
}

/// Number of monomials of degree `<= s` in `n` variables: `binom(n+s, s)`.
pub fn monomial_count(n: usize, s: usize) -> usize {
    binomial(n + s, s)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// A real multivariate polynomial stored as a map from exponent vectors to
/// coefficients; terms below the trim tolerance are dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<TermRecord>", into = "Vec<TermRecord>")]
pub struct MultivariatePolynomial {
    terms: BTreeMap<MultiIndex, f64>,
    nvars: usize,
}

/// JSON shape of a single term.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<usize>,
    pub coeff: f64,
}

impl TryFrom<Vec<TermRecord>> for MultivariatePolynomial {
    type Error = Error;

    fn try_from(records: Vec<TermRecord>) -> Result<Self> {
        let nvars = records
            .first()
            .map(|r| r.exponents.len())
            .ok_or_else(|| Error::InvalidInput {
                detail: "multivariate polynomial needs at least one term record".into(),
            })?;
        if nvars == 0 {
            return Err(Error::InvalidInput {
                detail: "multivariate polynomial needs at least one variable".into(),
            });
        }
        let mut p = MultivariatePolynomial::zero(nvars);
        for r in records {
            if r.exponents.len() != nvars {
                return Err(Error::InvalidInput {
                    detail: "inconsistent exponent lengths in term records".into(),
                });
            }
            p.add_term(MultiIndex(r.exponents), r.coeff);
        }
        p.trim();
        Ok(p)
    }
}

impl From<MultivariatePolynomial> for Vec<TermRecord> {
    fn from(p: MultivariatePolynomial) -> Self {
        let nvars = p.nvars;
        let mut recs: Vec<TermRecord> = p
            .terms
            .into_iter()
            .map(|(mi, c)| TermRecord {
                exponents: mi.0,
                coeff: c,
            })
            .collect();
        if recs.is_empty() {
            recs.push(TermRecord {
                exponents: vec![0; nvars],
                coeff: 0.0,
            });
        }
        recs
    }
}

impl MultivariatePolynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "need at least one variable");
        MultivariatePolynomial {
            terms: BTreeMap::new(),
            nvars,
        }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(MultiIndex(vec![0; nvars]), c);
        p.trim();
        p
    }

    /// The coordinate polynomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(MultiIndex(exps), 1.0);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<usize>, f64)>) -> Self {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent length must match nvars");
            p.add_term(MultiIndex(exps), c);
        }
        p.trim();
        p
    }

    fn add_term(&mut self, mi: MultiIndex, c: f64) {
        *self.terms.entry(mi).or_insert(0.0) += c;
    }

    fn trim(&mut self) {
        let max = self
            .terms
            .values()
            .fold(0.0f64, |m, c| m.max(c.abs()));
        if max == 0.0 {
            self.terms.clear();
            return;
        }
        let tol = TRIM_REL * max;
        self.terms.retain(|_, c| c.abs() > tol);
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.terms.iter().map(|(mi, &c)| (mi, c))
    }

    pub fn coeff(&self, mi: &MultiIndex) -> f64 {
        self.terms.get(mi).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|mi| mi.order()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars);
        self.terms.iter().map(|(mi, c)| c * mi.eval(x)).sum()
    }

    pub fn add(&self, other: &MultivariatePolynomial) -> MultivariatePolynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut p = self.clone();
        for (mi, c) in &other.terms {
            p.add_term(mi.clone(), *c);
        }
        p.trim();
        p
    }

    pub fn scale(&self, a: f64) -> MultivariatePolynomial {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c *= a;
        }
        p.trim();
        p
    }

    pub fn mul(&self, other: &MultivariatePolynomial) -> MultivariatePolynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut p = MultivariatePolynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                p.add_term(a.add(b), ca * cb);
            }
        }
        p.trim();
        p
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> MultivariatePolynomial {
        assert!(i < self.nvars);
        let mut p = MultivariatePolynomial::zero(self.nvars);
        for (mi, c) in &self.terms {
            let e = mi.0[i];
            if e > 0 {
                let mut exps = mi.0.clone();
                exps[i] = e - 1;
                p.add_term(MultiIndex(exps), c * e as f64);
            }
        }
        p.trim();
        p
    }

    /// Gradient as one partial per variable.
    pub fn gradient(&self) -> Vec<MultivariatePolynomial> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, deg: usize) -> MultivariatePolynomial {
        let mut p = MultivariatePolynomial::zero(self.nvars);
        for (mi, c) in &self.terms {
            if mi.order() == deg {
                p.add_term(mi.clone(), *c);
            }
        }
        p.trim();
        p
    }
}

/// Pulls `p` back along the parametrization of `curve`, returning `(N, e)`
/// with `p(phi_1/phi_0, ..., phi_n/phi_0) = N(t) / phi_0(t)^e` and
/// `e = deg p`. Polynomial parametrizations return `e = 0` and the exact
/// composite.
pub fn compose_with_parametrization(
    p: &MultivariatePolynomial,
    curve: &RationalCurve,
) -> Result<(Polynomial, usize)> {
    if p.nvars() != curve.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: curve.ambient_dim(),
            got: p.nvars(),
        });
    }
    if curve.is_polynomial() {
        let c = curve.phi0().coeff(0);
        let comps: Vec<Polynomial> = curve.phi().iter().map(|q| q.scale(1.0 / c)).collect();
        let mut num = Polynomial::zero();
        for (mi, coeff) in p.terms() {
            let mut term = Polynomial::constant(coeff);
            for (i, &e) in mi.0.iter().enumerate() {
                term = term.mul(&comps[i].pow(e));
            }
            num = num.add(&term);
        }
        return Ok((num, 0));
    }
    let e = p.degree();
    let mut num = Polynomial::zero();
    for (mi, coeff) in p.terms() {
        let mut term = Polynomial::constant(coeff);
        for (i, &exp) in mi.0.iter().enumerate() {
            term = term.mul(&curve.phi()[i].pow(exp));
        }
        term = term.mul(&curve.phi0().pow(e - mi.order()));
        num = num.add(&term);
    }
    Ok((num, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order_is_strict_and_degree_first() {
        let ms = monomials(2, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0].0, vec![0, 0]);
        for w in ms.windows(2) {
            assert!(w[0] < w[1]);
            assert!(w[0].order() <= w[1].order());
        }
    }

    #[test]
    fn monomial_counts_match_binomial() {
        for n in 1..=4 {
            for s in 0..=5 {
                assert_eq!(monomials(n, s).len(), monomial_count(n, s));
            }
        }
    }

    #[test]
    fn eval_and_arith() {
        // p = x^2 y - 3 y + 1
        let p = MultivariatePolynomial::from_terms(
            2,
            vec![(vec![2, 1], 1.0), (vec![0, 1], -3.0), (vec![0, 0], 1.0)],
        );
        assert_eq!(p.degree(), 3);
        assert_eq!(p.eval(&[2.0, 1.5]), 6.0 - 4.5 + 1.0);
        let dp = p.partial(0);
        assert_eq!(dp.eval(&[2.0, 1.5]), 2.0 * 2.0 * 1.5);
    }

    #[test]
    fn compose_coordinate_on_twisted_cubic() {
        let curve = RationalCurve::polynomial(vec![
            Polynomial::monomial(1),
            Polynomial::monomial(2),
            Polynomial::monomial(3),
        ])
        .unwrap();
        let p = MultivariatePolynomial::var(3, 0);
        let (num, e) = compose_with_parametrization(&p, &curve).unwrap();
        assert_eq!(e, 0);
        assert_eq!(num.coeffs(), &[0.0, 1.0]);
    }

    #[test]
    fn compose_kills_curve_relation() {
        let curve = RationalCurve::polynomial(vec![
            Polynomial::monomial(1),
            Polynomial::monomial(2),
            Polynomial::monomial(3),
        ])
        .unwrap();
        // x1 x3 - x2^2 vanishes on the twisted cubic.
        let p = MultivariatePolynomial::from_terms(
            3,
            vec![(vec![1, 0, 1], 1.0), (vec![0, 2, 0], -1.0)],
        );
        let (num, e) = compose_with_parametrization(&p, &curve).unwrap();
        assert_eq!(e, 0);
        assert!(num.is_zero());
    }

    #[test]
    fn compose_with_denominator() {
        // curve (1/t, t): phi0 = t, phi = (1, t^2); p = x1^2 -> 1 / t^2.
        let curve = RationalCurve::new(
            Polynomial::monomial(1),
            vec![Polynomial::constant(1.0), Polynomial::monomial(2)],
        )
        .unwrap();
        let p = MultivariatePolynomial::from_terms(2, vec![(vec![2, 0], 1.0)]);
        let (num, e) = compose_with_parametrization(&p, &curve).unwrap();
        assert_eq!(e, 2);
        assert_eq!(num.coeffs(), &[1.0]);
    }

    #[test]
    fn compose_dimension_mismatch() {
        let curve = RationalCurve::polynomial(vec![Polynomial::monomial(1)]).unwrap();
        let p = MultivariatePolynomial::var(2, 0);
        assert!(matches!(
            compose_with_parametrization(&p, &curve),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
