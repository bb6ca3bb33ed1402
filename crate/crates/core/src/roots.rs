//! Certified complex root enclosures for integer polynomials.
//!
//! The polynomial is split exactly into squarefree factors first, so every
//! factor handed to the numerical stage has simple roots. Approximations come
//! from Aberth–Ehrlich simultaneous iteration; each approximation `z_i` then
//! gets the inclusion radius `n·|W_i|`, where `W_i` is the Weierstrass
//! correction, inflated by a rounding-error bound on the evaluation. When
//! these discs are pairwise disjoint each one contains exactly one root.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

/// Disc `|z − center| ≤ radius` known to contain `multiplicity` roots
/// (counted with multiplicity) and no others.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootEnclosure {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
    pub multiplicity: usize,
}

impl RootEnclosure {
    pub fn center(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus_lower(&self) -> f64 {
        (self.center().norm() - self.radius).max(0.0)
    }

    pub fn modulus_upper(&self) -> f64 {
        self.center().norm() + self.radius
    }
}

const MAX_ITERATIONS: usize = 2000;

/// Enclosures for every root of `p`, zero roots included.
pub fn certified_roots(p: &IntPoly) -> Result<Vec<RootEnclosure>> {
    if p.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let (zeros, rest) = p.strip_zero_roots();
    let mut out = Vec::new();
    if zeros > 0 {
        out.push(RootEnclosure {
            re: 0.0,
            im: 0.0,
            radius: 0.0,
            multiplicity: zeros,
        });
    }
    for (factor, mult) in rest.squarefree_decomposition() {
        for (z, r) in simple_roots(&factor)? {
            out.push(RootEnclosure {
                re: z.re,
                im: z.im,
                radius: r,
                multiplicity: mult,
            });
        }
    }
    out.sort_by(|a, b| {
        b.center()
            .norm()
            .total_cmp(&a.center().norm())
            .then(a.re.total_cmp(&b.re))
            .then(a.im.total_cmp(&b.im))
    });
    Ok(out)
}

fn to_f64_coeffs(p: &IntPoly) -> Result<Vec<f64>> {
    p.coeffs()
        .iter()
        .map(|c| {
            c.to_f64()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Convergence("coefficient out of f64 range".into()))
        })
        .collect()
}

/// Horner evaluation of `p` and `p'`, plus `Σ|a_k||z|^k` for the error bound.
fn horner(a: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let az = z.norm();
    for &c in a.iter().rev() {
        d = d * z + v;
        v = v * z + c;
        mag = mag * az + c.abs();
    }
    (v, d, mag)
}

/// Roots of a squarefree polynomial with nonzero constant term.
fn simple_roots(p: &IntPoly) -> Result<Vec<(Complex64, f64)>> {
    let n = p.degree();
    let a = to_f64_coeffs(p)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        let z = Complex64::new(-a[0] / a[1], 0.0);
        // Exact rational root; the only error is the final division.
        return Ok(vec![(z, z.norm() * 2.0 * f64::EPSILON + f64::MIN_POSITIVE)]);
    }
    let lead = a[n];
    // Initial points on a circle of the geometric-mean radius, offset from
    // the real axis so conjugate pairs separate.
    let radius = (a[0].abs() / lead.abs()).powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut settled_rounds = 0;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (v, d, _) = horner(&a, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1e-300));
            }
        }
        if max_step < 8.0 * f64::EPSILON {
            settled_rounds += 1;
            if settled_rounds >= 3 {
                break;
            }
        }
        if let Some(enc) = try_certify(&a, &z) {
            if settled_rounds >= 1 || max_step < 1e-13 {
                return Ok(enc);
            }
        }
    }
    try_certify(&a, &z).ok_or_else(|| {
        Error::Convergence(format!(
            "could not separate the roots of a degree-{n} factor in double precision"
        ))
    })
}

fn try_certify(a: &[f64], z: &[Complex64]) -> Option<Vec<(Complex64, f64)>> {
    let n = z.len();
    let nf = n as f64;
    let eps = f64::EPSILON;
    let lead = a[n].abs();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (v, _, mag) = horner(a, z[i]);
        // Horner rounding plus coefficient conversion.
        let perr = (4.0 * nf + 4.0) * eps * mag * 1.01;
        let mut denom = 1.0f64;
        for j in 0..n {
            if j != i {
                denom *= (z[i] - z[j]).norm();
            }
        }
        let denom = lead * denom * (1.0 - 4.0 * nf * eps);
        if !(denom > 0.0) || !denom.is_finite() {
            return None;
        }
        let w = (v.norm() + perr) / denom;
        let r = nf * w * (1.0 + 1e-12) + f64::MIN_POSITIVE;
        if !r.is_finite() {
            return None;
        }
        out.push((z[i], r));
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = (out[i].0 - out[j].0).norm();
            if gap <= out[i].1 + out[j].1 {
                return None;
            }
        }
    }
    Some(out)
}
