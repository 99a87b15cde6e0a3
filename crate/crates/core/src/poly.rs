//! Dense univariate polynomial arithmetic and real root isolation.
//!
//! Coefficients are stored in ascending degree order. The degree is the index
//! of the last coefficient whose magnitude exceeds the relative trim
//! tolerance; the zero polynomial is a single zero coefficient. Real roots
//! are computed from companion-matrix eigenvalues of the square-free part
//! with a Newton polish, and multiplicities come from the repeated-GCD chain
//! with the derivative.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Relative coefficient trim tolerance (fraction of the largest magnitude).
pub const TRIM_REL: f64 = 1e-12;

/// An eigenvalue counts as real when `|imag| <= REAL_EIG_TOL * (1 + |real|)`.
pub const REAL_EIG_TOL: f64 = 1e-8;

/// A dense real polynomial in one variable, coefficients ascending in degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl From<Vec<f64>> for Polynomial {
    fn from(coeffs: Vec<f64>) -> Self {
        Polynomial::new(coeffs)
    }
}

impl From<Polynomial> for Vec<f64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Polynomial {
    /// Builds a polynomial, trimming trailing coefficients below the relative
    /// trim tolerance.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial { coeffs: vec![0.0] }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        Polynomial { coeffs }
    }

    /// Monic polynomial with the given roots, `prod (t - r_i)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut p = Polynomial::constant(1.0);
        for &r in roots {
            p = p.mul(&Polynomial::new(vec![-r, 1.0]));
        }
        p
    }

    fn trim(&mut self) {
        let max = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if max == 0.0 {
            self.coeffs = vec![0.0];
            return;
        }
        let tol = TRIM_REL * max;
        let mut last = 0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.abs() > tol {
                last = i;
            }
        }
        self.coeffs.truncate(last + 1);
        if self.coeffs.is_empty() {
            self.coeffs = vec![0.0];
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    /// Horner evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Magnitude scale of the evaluation at `t`: `sum |c_k| |t|^k`.
    /// Used to turn absolute residuals into relative ones near a root.
    pub fn eval_scale(&self, t: f64) -> f64 {
        let at = t.abs();
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * at + c.abs();
        }
        acc.max(f64::MIN_POSITIVE)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, a: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| a * c).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Polynomial::new(coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        let mut acc = Polynomial::constant(1.0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Synthetic division: `self = q * div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if div.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() < div.degree() {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let lead = div.leading();
        let qn = self.degree() - dd + 1;
        let mut q = vec![0.0; qn];
        for k in (0..qn).rev() {
            let f = rem[k + dd] / lead;
            q[k] = f;
            for (j, c) in div.coeffs.iter().enumerate() {
                rem[k + j] -= f * c;
            }
        }
        rem.truncate(dd.max(1));
        Ok((Polynomial::new(q), Polynomial::new(rem)))
    }

    fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Approximate monic GCD by the Euclidean algorithm; remainders whose
    /// coefficients all fall below `tol` times the running scale are treated
    /// as zero.
    pub fn approx_gcd(&self, other: &Polynomial, tol: f64) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.is_zero() {
            return monic(&a);
        }
        let scale = a.max_abs_coeff().max(b.max_abs_coeff());
        loop {
            if b.is_zero() || b.max_abs_coeff() <= tol * scale {
                return monic(&a);
            }
            if b.is_constant() {
                return Polynomial::constant(1.0);
            }
            let b_monic = monic(&b);
            let (_, r) = a.divrem(&b_monic).expect("divisor is nonzero");
            let r = if r.max_abs_coeff() <= tol * a.max_abs_coeff().max(1.0) {
                Polynomial::zero()
            } else {
                r
            };
            a = b_monic;
            b = r;
        }
    }

    /// Square-free part: `self / gcd(self, self')`, monic.
    pub fn square_free_part(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(Polynomial::constant(1.0));
        }
        let g = self.approx_gcd(&self.derivative(), TRIM_REL * 10.0);
        if g.is_constant() {
            return Ok(monic(self));
        }
        let (q, _) = self.divrem(&g)?;
        Ok(monic(&q))
    }
}

fn monic(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    p.scale(1.0 / p.leading())
}

/// Distinct real roots of `p` with multiplicities, sorted ascending.
///
/// Roots come from the eigenvalues of the balanced companion matrix of the
/// square-free part, with one Newton polish step; an eigenvalue counts as
/// real when its imaginary part is below [`REAL_EIG_TOL`] relative to its
/// magnitude. Multiplicities are read off the repeated-GCD chain
/// `p, gcd(p, p'), gcd(gcd(p, p'), ...), ...`: the multiplicity of a root is
/// the number of chain members vanishing at it.
pub fn real_roots(p: &Polynomial, tol: f64) -> Result<Vec<(f64, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let sf = p.square_free_part()?;
    let mut roots = companion_real_roots(&sf);

    // One Newton step on the square-free part.
    let dsf = sf.derivative();
    for r in roots.iter_mut() {
        let d = dsf.eval(*r);
        if d != 0.0 {
            let step = sf.eval(*r) / d;
            if step.is_finite() && step.abs() < 1.0 + r.abs() {
                *r -= step;
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Collapse near-coincident roots left over from an imperfect square-free split.
    let mut distinct: Vec<f64> = Vec::new();
    for r in roots {
        match distinct.last() {
            Some(&last) if (r - last).abs() <= 1e-8 * (1.0 + r.abs()) => {}
            _ => distinct.push(r),
        }
    }
    // Keep only genuine roots of p.
    distinct.retain(|&r| p.eval(r).abs() <= tol.max(1e-10) * p.eval_scale(r));

    // GCD chain for multiplicities.
    let mut chain = Vec::new();
    let mut cur = monic(p);
    while cur.degree() >= 1 {
        let g = cur.approx_gcd(&cur.derivative(), TRIM_REL * 10.0);
        if g.is_constant() {
            break;
        }
        chain.push(g.clone());
        cur = g;
    }

    let out = distinct
        .into_iter()
        .map(|r| {
            let mut mult = 1;
            for g in &chain {
                if g.eval(r).abs() <= 1e-6 * g.eval_scale(r) {
                    mult += 1;
                } else {
                    break;
                }
            }
            (r, mult)
        })
        .collect();
    Ok(out)
}

/// Real eigenvalues of the companion matrix of a square-free polynomial,
/// balanced by a root-radius variable rescaling.
fn companion_real_roots(sf: &Polynomial) -> Vec<f64> {
    let n = sf.degree();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![-sf.coeff(0) / sf.coeff(1)];
    }
    // Cauchy-style root radius, used to rescale t = sigma * u so the
    // companion matrix is well balanced.
    let lead = sf.leading();
    let mut sigma = 0.0f64;
    for k in 0..n {
        let m = (sf.coeff(k) / lead).abs();
        if m > 0.0 {
            sigma = sigma.max(m.powf(1.0 / (n - k) as f64));
        }
    }
    let sigma = if sigma > 0.0 { 2.0 * sigma } else { 1.0 };
    // Coefficients of the monic rescaled polynomial in u.
    let mut b = vec![0.0; n + 1];
    for k in 0..=n {
        b[k] = sf.coeff(k) / lead * sigma.powi(k as i32 - n as i32);
    }
    let mut c = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        c[(i, n - 1)] = -b[i];
    }
    let eig = c.complex_eigenvalues();
    let mut out = Vec::new();
    for ev in eig.iter() {
        if ev.im.abs() <= REAL_EIG_TOL * (1.0 + ev.re.abs()) {
            out.push(ev.re * sigma);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_constant() {
        let p = Polynomial::constant(1.0);
        assert_eq!(p.eval(7.3), 1.0);
    }

    #[test]
    fn eval_monomial() {
        let p = Polynomial::monomial(3);
        assert_eq!(p.eval(2.0), 8.0);
    }

    #[test]
    fn eval_double_root() {
        let p = Polynomial::new(vec![1.0, -2.0, 1.0]);
        assert_eq!(p.eval(1.0), 0.0);
    }

    #[test]
    fn eval_exact_on_integers() {
        // Integer coefficients at integer points stay exact in f64.
        let p = Polynomial::new(vec![3.0, -7.0, 0.0, 11.0, -2.0]);
        for t in -6..=6 {
            let tf = t as f64;
            let expected = 3.0 - 7.0 * tf + 11.0 * tf.powi(3) - 2.0 * tf.powi(4);
            assert_eq!(p.eval(tf), expected);
        }
    }

    #[test]
    fn roots_of_quadratic() {
        let p = Polynomial::new(vec![-1.0, 0.0, 1.0]);
        let roots = real_roots(&p, 1e-10).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].0 + 1.0).abs() < 1e-10 && roots[0].1 == 1);
        assert!((roots[1].0 - 1.0).abs() < 1e-10 && roots[1].1 == 1);
    }

    #[test]
    fn no_real_roots() {
        let p = Polynomial::new(vec![1.0, 0.0, 1.0]);
        assert!(real_roots(&p, 1e-10).unwrap().is_empty());
    }

    #[test]
    fn multiple_root_detected() {
        // (t-2)^2 (t+3) expanded.
        let p = Polynomial::from_roots(&[2.0, 2.0, -3.0]);
        assert_eq!(p.coeffs(), &[12.0, -8.0, -1.0, 1.0]);
        let roots = real_roots(&p, 1e-8).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].0 + 3.0).abs() < 1e-8);
        assert_eq!(roots[0].1, 1);
        assert!((roots[1].0 - 2.0).abs() < 1e-7);
        assert_eq!(roots[1].1, 2);
    }

    #[test]
    fn triple_root_detected() {
        let p = Polynomial::from_roots(&[1.0, 1.0, 1.0, -4.0]);
        let roots = real_roots(&p, 1e-8).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[1].1, 3);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(real_roots(&Polynomial::zero(), 1e-10), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn divrem_roundtrip() {
        let a = Polynomial::new(vec![1.0, 2.0, 3.0, 4.0]);
        let b = Polynomial::new(vec![-1.0, 1.0]);
        let (q, r) = a.divrem(&b).unwrap();
        let back = q.mul(&b).add(&r);
        for k in 0..=a.degree() {
            assert!((back.coeff(k) - a.coeff(k)).abs() < 1e-12);
        }
    }

    #[test]
    fn trim_keeps_zero_polynomial_canonical() {
        let p = Polynomial::new(vec![0.0, 0.0, 0.0]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), 0);
        assert_eq!(p.coeffs().len(), 1);
    }

    #[test]
    fn square_free_part_of_power() {
        let p = Polynomial::from_roots(&[0.5, 0.5]);
        let sf = p.square_free_part().unwrap();
        assert_eq!(sf.degree(), 1);
        assert!(sf.eval(0.5).abs() < 1e-10);
    }
}
