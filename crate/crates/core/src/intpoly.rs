//! Univariate integer polynomials.
//!
//! Coefficients are stored constant term first with trailing zeros trimmed.
//! Besides ring arithmetic this module provides the subresultant resultant,
//! primitive gcd, squarefree decomposition, cyclotomic polynomials, an exact
//! Kronecker test by Graeffe root squaring, and a Mahler measure computed from
//! certified root enclosures.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain_err, Error, Result};
use crate::roots::{self, RootEnclosure};
use crate::serial::bigint_vec_str;

/// Default tolerance for Mahler measure evaluation.
pub const DEFAULT_MAHLER_TOL: f64 = 1e-9;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntPoly {
    #[serde(with = "bigint_vec_str")]
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from coefficients, constant term first.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `t^k − 1`.
    pub fn t_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        coeffs[0] -= 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * z + c.to_f64().unwrap_or(f64::NAN)
        })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// gcd of the coefficients, nonnegative; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Splits off the largest power of `t` dividing `self`: returns `(m, q)`
    /// with `self = t^m·q` and `q(0) ≠ 0`.
    pub fn strip_zero_roots(&self) -> (usize, Self) {
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (m.min(self.coeffs.len()), Self::new(self.coeffs[m.min(self.coeffs.len())..].to_vec()))
    }

    /// Pseudo-remainder: `lc(b)^(deg a − deg b + 1)·a = q·b + r`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> Result<Self> {
        if b.is_zero() {
            return domain_err("pseudo-remainder by the zero polynomial");
        }
        if self.is_zero() || self.degree() < b.degree() {
            return Ok(self.clone());
        }
        let lb = b.leading();
        let db = b.degree();
        let mut e = self.degree() - db + 1;
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.leading();
            let mut next = r.scale(&lb).coeffs;
            for (i, c) in b.coeffs.iter().enumerate() {
                next[i + shift] -= &lr * c;
            }
            r = Self::new(next);
            e -= 1;
        }
        Ok(r.scale(&Pow::pow(&lb, e)))
    }

    /// Division with remainder where every quotient step must be integral.
    /// Returns an error if `d` does not divide `self` exactly over Z.
    pub fn div_exact(&self, d: &IntPoly) -> Result<Self> {
        if d.is_zero() {
            return domain_err("division by the zero polynomial");
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.degree() < d.degree() {
            return domain_err("inexact polynomial division");
        }
        let ld = d.leading();
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&ld);
            if !rem.is_zero() {
                return domain_err("inexact polynomial division");
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qk * c;
            }
            q[k] = qk;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return domain_err("inexact polynomial division");
        }
        Ok(Self::new(q))
    }

    /// Greatest common divisor over Z by the primitive remainder sequence.
    /// Normalized to positive leading coefficient; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("b nonzero");
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    /// Resultant by the subresultant pseudo-remainder sequence.
    pub fn resultant(&self, other: &IntPoly) -> Result<BigInt> {
        resultant(self, other)
    }

    /// Yun's squarefree decomposition of the primitive part: `(factor, multiplicity)`
    /// pairs with primitive, pairwise coprime, squarefree factors of positive
    /// degree. Constant input yields an empty list.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let p = self.primitive_part();
        if p.degree() == 0 {
            return Vec::new();
        }
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut b = p.div_exact(&a0).expect("gcd divides p").primitive_part();
        let mut c = dp.div_exact(&a0).expect("gcd divides p'");
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides b");
            c = d.div_exact(&a).expect("gcd divides d");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// One Graeffe root-squaring step: the monic polynomial whose roots are
    /// the squares of the roots of `self` (with multiplicity).
    pub fn graeffe(&self) -> IntPoly {
        let n = self.degree();
        let even: Vec<BigInt> = self.coeffs.iter().step_by(2).cloned().collect();
        let odd: Vec<BigInt> = self.coeffs.iter().skip(1).step_by(2).cloned().collect();
        let e = IntPoly::new(even);
        let o = IntPoly::new(odd);
        let o2 = &o * &o;
        let s_o2 = IntPoly::new(
            std::iter::once(BigInt::zero())
                .chain(o2.coeffs.iter().cloned())
                .collect(),
        );
        let g = &(&e * &e) - &s_o2;
        if n % 2 == 1 {
            -&g
        } else {
            g
        }
    }

    /// Exact test: every nonzero root of `self` is a root of unity.
    ///
    /// Zero roots are split off first. Iterates Graeffe squaring; a
    /// coefficient exceeding `binomial(n, i)` proves a root off the unit
    /// circle, a repeated polynomial proves all roots lie on it.
    pub fn is_cyclotomic_product(&self) -> Result<bool> {
        if !self.is_monic() {
            return domain_err("is_cyclotomic_product needs a monic polynomial");
        }
        let (_, mut p) = self.strip_zero_roots();
        let n = p.degree();
        if n == 0 {
            return Ok(true);
        }
        let bounds = binomial_row(n);
        let mut seen: HashSet<IntPoly> = HashSet::new();
        // Every iterate is monic with nonzero constant term, so the loop
        // terminates; the cap only guards against logic errors.
        for _ in 0..4096 {
            if p.coeffs
                .iter()
                .zip(&bounds)
                .any(|(c, b)| c.abs() > *b)
            {
                return Ok(false);
            }
            if !seen.insert(p.clone()) {
                return Ok(true);
            }
            p = p.graeffe();
        }
        Err(Error::Internal("Graeffe iteration failed to settle".into()))
    }

    /// Certified enclosures of all complex roots, with multiplicities.
    pub fn root_enclosures(&self) -> Result<Vec<RootEnclosure>> {
        roots::certified_roots(self)
    }

    /// Mahler measure `|lc|·∏ max{1, |α|}` to within `tol`.
    pub fn mahler_measure(&self, tol: f64) -> Result<MahlerResult> {
        mahler_measure(self, tol)
    }

    /// Largest root modulus as a certified interval `(lower, upper)`;
    /// `(0, 0)` for constants.
    pub fn spectral_radius_bounds(&self) -> Result<(f64, f64)> {
        let roots = self.root_enclosures()?;
        Ok(roots.iter().fold((0.0f64, 0.0f64), |(lo, hi), r| {
            (lo.max(r.modulus_lower()), hi.max(r.modulus_upper()))
        }))
    }
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    if p.leading().is_negative() {
        -&p
    } else {
        p
    }
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Resultant of two nonzero integer polynomials (subresultant PRS).
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    if p.is_zero() || q.is_zero() {
        return domain_err("resultant of the zero polynomial");
    }
    let mut sign = 1i32;
    let (mut a, mut b) = (p.clone(), q.clone());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            sign = -sign;
        }
    }
    if b.degree() == 0 {
        let r = Pow::pow(&b.leading(), a.degree());
        return Ok(if sign < 0 { -r } else { r });
    }
    let ca = a.content();
    let cb = b.content();
    a = IntPoly::new(a.coeffs.iter().map(|c| c / &ca).collect());
    b = IntPoly::new(b.coeffs.iter().map(|c| c / &cb).collect());
    let t = Pow::pow(&ca, b.degree()) * Pow::pow(&cb, a.degree());
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.degree(), b.degree());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b)?;
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let divisor = &g * Pow::pow(&h, delta);
        b = IntPoly::new(r.coeffs.iter().map(|c| c / &divisor).collect());
        g = a.leading();
        if delta > 0 {
            h = Pow::pow(&g, delta) / Pow::pow(&h, delta - 1);
        }
        if b.degree() == 0 {
            break;
        }
    }
    let da = a.degree();
    let hfinal = Pow::pow(&b.leading(), da) / Pow::pow(&h, da - 1);
    let r = t * hfinal;
    Ok(if sign < 0 { -r } else { r })
}

/// The `n`-th cyclotomic polynomial, by the Möbius product formula.
pub fn cyclotomic_poly(n: usize) -> Result<IntPoly> {
    if n == 0 {
        return domain_err("cyclotomic_poly(0) is undefined");
    }
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        match mobius(n / d) {
            1 => num = &num * &IntPoly::t_pow_minus_one(d),
            -1 => den = &den * &IntPoly::t_pow_minus_one(d),
            _ => {}
        }
    }
    num.div_exact(&den)
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Certified Mahler measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MahlerResult {
    pub value: f64,
    pub error_bound: f64,
    /// Roots (with multiplicity) certified to lie strictly outside the unit circle.
    pub roots_outside_unit: usize,
}

impl MahlerResult {
    pub fn log_value(&self) -> f64 {
        self.value.ln()
    }

    /// True when the certified interval contains 1.
    pub fn contains_one(&self) -> bool {
        (self.value - 1.0).abs() <= self.error_bound
    }
}

pub fn mahler_measure(p: &IntPoly, tol: f64) -> Result<MahlerResult> {
    if p.is_zero() {
        return domain_err("Mahler measure of the zero polynomial");
    }
    if !(tol > 0.0) {
        return domain_err("Mahler tolerance must be positive");
    }
    let lc = p
        .leading()
        .abs()
        .to_f64()
        .ok_or_else(|| Error::Convergence("leading coefficient out of f64 range".into()))?;
    let roots = p.root_enclosures()?;
    let mut lo = lc;
    let mut hi = lc;
    let mut outside = 0;
    for r in &roots {
        let m = r.multiplicity as i32;
        lo *= r.modulus_lower().max(1.0).powi(m);
        hi *= r.modulus_upper().max(1.0).powi(m);
        if r.modulus_lower() > 1.0 {
            outside += r.multiplicity;
        }
    }
    let value = 0.5 * (lo + hi);
    // Rounding in the product itself.
    let slack = value * (roots.len() as f64 + 2.0) * 4.0 * f64::EPSILON;
    let error_bound = 0.5 * (hi - lo) + slack;
    if error_bound > tol {
        return Err(Error::Convergence(format!(
            "Mahler measure enclosure width {error_bound:e} exceeds tolerance {tol:e}"
        )));
    }
    Ok(MahlerResult {
        value,
        error_bound,
        roots_outside_unit: outside,
    })
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &'a IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &'a IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &'a IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_univariate(f, &self.coeffs, "t")
    }
}

/// Writes `c_n v^n + … + c_0` in descending order, skipping zero terms.
pub(crate) fn write_univariate(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[BigInt],
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let show_coeff = !mag.is_one() || i == 0;
        if show_coeff {
            write!(f, "{mag}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn lehmer() -> IntPoly {
        p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn trims_and_displays() {
        let q = p(&[1, -3, 1, 0, 0]);
        assert_eq!(q.degree(), 2);
        assert_eq!(q.to_string(), "t^2 - 3t + 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }

    #[test]
    fn resultant_fixtures() {
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-1, 1])).unwrap(), BigInt::zero());
        assert_eq!(resultant(&p(&[1, -3, 1]), &p(&[-1, 0, 1])).unwrap(), BigInt::from(-5));
        // prod over roots of t^2-3t+1 of (a^3 - 1) = det(A^3 - I) = -16.
        assert_eq!(resultant(&p(&[1, -3, 1]), &p(&[-1, 0, 0, 1])).unwrap(), BigInt::from(-16));
        assert!(resultant(&IntPoly::zero(), &p(&[1])).is_err());
    }

    #[test]
    fn resultant_with_constant_and_swap_sign() {
        assert_eq!(resultant(&p(&[1, 2, 3]), &p(&[5])).unwrap(), BigInt::from(25));
        assert_eq!(resultant(&p(&[5]), &p(&[1, 2, 3])).unwrap(), BigInt::from(25));
        // deg 1 and deg 1: Res(t-2, t-3) = (2-3) = -1, Res(t-3, t-2) = 1.
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-3, 1])).unwrap(), BigInt::from(-1));
        assert_eq!(resultant(&p(&[-3, 1]), &p(&[-2, 1])).unwrap(), BigInt::from(1));
    }

    #[test]
    fn cyclotomic_fixtures() {
        assert_eq!(cyclotomic_poly(1).unwrap(), p(&[-1, 1]));
        assert_eq!(cyclotomic_poly(5).unwrap(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(12).unwrap(), p(&[1, 0, -1, 0, 1]));
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn cyclotomic_test_fixtures() {
        assert!(p(&[1, 1, 1, 1, 1]).is_cyclotomic_product().unwrap());
        assert!(!p(&[1, -3, 1]).is_cyclotomic_product().unwrap());
        let prod = &p(&[1, 0, 1]) * &p(&[1, 1, 1]);
        assert!(prod.is_cyclotomic_product().unwrap());
        assert!(!lehmer().is_cyclotomic_product().unwrap());
        assert!(p(&[1, 2]).is_cyclotomic_product().is_err());
        // Zero roots are split off.
        assert!(p(&[0, 0, 1, 1]).is_cyclotomic_product().unwrap());
        // Repeated cyclotomic factors.
        let sq = &p(&[-1, 1]) * &p(&[-1, 1]);
        assert!(sq.is_cyclotomic_product().unwrap());
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = &p(&[-1, 1]) * &p(&[1, 1, 1]);
        let b = &p(&[-1, 1]) * &p(&[2, 3]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.div_exact(&p(&[-1, 1])).unwrap(), p(&[1, 1, 1]));
        assert!(a.div_exact(&p(&[2, 3])).is_err());
        assert_eq!(p(&[4, 6]).gcd(&p(&[6, 9])), p(&[2, 3]));
    }

    #[test]
    fn squarefree_decomposition_yun() {
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[1, 0, 1]);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(p(&[1, 0, 1]), 1), (p(&[-1, 1]), 2)]);
    }

    #[test]
    fn graeffe_squares_roots() {
        // (t-2)(t+3) -> (s-4)(s-9)
        let g = p(&[-6, 1, 1]).graeffe();
        assert_eq!(g, p(&[36, -13, 1]));
    }

    #[test]
    fn mahler_fixtures() {
        let m = mahler_measure(&p(&[-1, 1]), 1e-9).unwrap();
        assert!((m.value - 1.0).abs() < 1e-12);
        let m = mahler_measure(&p(&[1, -3, 1]), 1e-9).unwrap();
        assert!((m.value - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
        assert_eq!(m.roots_outside_unit, 1);
        // Independent oracle (numpy roots, pinned): 1.17628081825991750654...
        let m = mahler_measure(&lehmer(), 1e-9).unwrap();
        assert!((m.value - 1.176_280_818_259_917_5).abs() < 1e-9);
        assert!(mahler_measure(&IntPoly::zero(), 1e-9).is_err());
        assert!(mahler_measure(&p(&[1, 1]), 0.0).is_err());
    }

    #[test]
    fn mahler_handles_repeated_roots_and_leading_coefficient() {
        let sq = &p(&[1, -3, 1]) * &p(&[1, -3, 1]);
        let m = mahler_measure(&sq, 1e-9).unwrap();
        let phi2 = ((3.0 + 5f64.sqrt()) / 2.0).powi(2);
        assert!((m.value - phi2).abs() < 1e-9);
        let m = mahler_measure(&p(&[1, 2]), 1e-9).unwrap();
        assert!((m.value - 2.0).abs() < 1e-12);
        let m = mahler_measure(&p(&[0, 0, 1]), 1e-9).unwrap();
        assert!((m.value - 1.0).abs() < 1e-12);
    }
}
