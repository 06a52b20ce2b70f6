//! Univariate and multivariate Laguerre polynomials.
//!
//! The multivariate polynomial is evaluated through its pole-free finite sum
//!
//! ```text
//! L_n^(α)(x) = (1/n!) Σ_{s=0}^{⟨n⟩} (-1)^s (α+s+1)_{⟨n⟩-s} E_s,
//! E_s = [t^s] Π_i (1 + x_i t)^{n_i},
//! ```
//!
//! which groups the terms of `Σ_{j<=n}` by `⟨j⟩` and stays finite for every `α`.

mod oracle;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use oracle::{gf_coefficients, gf_coefficients_with_cap, DEFAULT_GF_CAP};

use crate::cpoint::CPoint;
use crate::error::{Error, Result};
use crate::gamma::{nonpositive_integer, pochhammer};
use crate::multi_index::MultiIndex;
use crate::sum::CompensatedSum;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest `ln n!` for which the direct (non-logarithmic) route is used.
const DIRECT_LN_FACTORIAL: f64 = 600.0;

/// A degree, parameter and point, checked for matching dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaguerreEval {
    pub degree: MultiIndex,
    pub alpha: Complex64,
    pub point: CPoint,
}

impl LaguerreEval {
    pub fn new(degree: MultiIndex, alpha: Complex64, point: CPoint) -> Result<Self> {
        check_dims(&degree, &point)?;
        Ok(LaguerreEval { degree, alpha, point })
    }

    pub fn value(&self) -> Complex64 {
        multi_unchecked(&self.degree, self.alpha, &self.point)
    }
}

fn check_dims(n: &MultiIndex, x: &CPoint) -> Result<()> {
    if n.dim() != x.dim() {
        return Err(Error::domain(format!("degree has {} components, point has {}", n.dim(), x.dim())));
    }
    Ok(())
}

/// `L_n^(α)(x)` for a single variable.
pub fn laguerre_uni(n: usize, alpha: Complex64, x: Complex64) -> Complex64 {
    multi_unchecked(&MultiIndex::diagonal(1, n), alpha, &CPoint::splat(1, x))
}

/// Erdélyi's `L_n^(α)(x)`.
pub fn laguerre_multi(n: &MultiIndex, alpha: Complex64, x: &CPoint) -> Result<Complex64> {
    check_dims(n, x)?;
    Ok(multi_unchecked(n, alpha, x))
}

/// Coefficients of `Π_i (1 + sign·x_i t)^{n_i}` after scaling `x` by `1/rho`.
fn elementary(n: &MultiIndex, x: &CPoint, sign: f64, rho: f64) -> Vec<Complex64> {
    let total = n.total();
    let mut e = vec![ZERO; total + 1];
    e[0] = ONE;
    let mut deg = 0;
    for (i, &ni) in n.entries().iter().enumerate() {
        let xi = x[i] * (sign / rho);
        for _ in 0..ni {
            deg += 1;
            for s in (1..=deg).rev() {
                let prev = e[s - 1];
                e[s] += xi * prev;
            }
        }
    }
    e
}

/// `n!` as a double; exact while the integer fits in 100 bits.
pub(crate) fn factorial_f64(n: &MultiIndex) -> f64 {
    match n.factorial() {
        Some(f) if f < (1u128 << 100) => f as f64,
        _ => n.ln_factorial().exp(),
    }
}

fn multi_unchecked(n: &MultiIndex, alpha: Complex64, x: &CPoint) -> Complex64 {
    let total = n.total();
    let ln_fact = n.ln_factorial();
    if ln_fact <= DIRECT_LN_FACTORIAL && total <= 170 {
        let v = multi_direct(n, alpha, x);
        if v.re.is_finite() && v.im.is_finite() {
            return v;
        }
    }
    multi_log(n, alpha, x)
}

fn multi_direct(n: &MultiIndex, alpha: Complex64, x: &CPoint) -> Complex64 {
    let total = n.total();
    let e = elementary(n, x, 1.0, 1.0);
    let inv_fact = 1.0 / factorial_f64(n);
    // c_s = (α+s+1)_{N-s} / n!, built downward from c_N = 1/n!
    let mut acc = CompensatedSum::new();
    let mut c = Complex64::new(inv_fact, 0.0);
    for s in (0..=total).rev() {
        if s < total {
            c *= alpha + (s + 1) as f64;
        }
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(c * e[s] * sign);
    }
    acc.value()
}

/// A complex number `m · 2^e`, for products whose magnitude leaves the double range.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    m: Complex64,
    e: i64,
}

impl Scaled {
    fn one() -> Self {
        Scaled { m: ONE, e: 0 }
    }

    fn split(z: Complex64) -> Self {
        let mut s = Scaled { m: z, e: 0 };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let mag = self.m.norm();
        if mag > 0.0 && mag.is_finite() && !(1e-30..=1e30).contains(&mag) {
            let shift = mag.log2().round() as i64;
            self.m = Complex64::new(ldexp(self.m.re, -shift), ldexp(self.m.im, -shift));
            self.e += shift;
        }
    }

    fn mul(&mut self, f: Complex64) {
        self.m *= f;
        self.normalize();
    }
}

/// `x · 2^e` without intermediate overflow.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// Route for large degrees: the same grouped sum with every coefficient carried
/// as mantissa and binary exponent, and `x` scaled by a power of two.
fn multi_log(n: &MultiIndex, alpha: Complex64, x: &CPoint) -> Complex64 {
    let total = n.total();
    let shift = x.max_norm().max(1.0).log2().ceil() as i64;
    let e = elementary(n, x, 1.0, ldexp(1.0, shift));
    let mut fact = Scaled::one();
    for &ni in n.entries() {
        for j in 2..=ni {
            fact.mul(Complex64::new(j as f64, 0.0));
        }
    }
    let mut acc = CompensatedSum::new();
    let mut c = Scaled::one();
    for s in (0..=total).rev() {
        if s < total {
            c.mul(alpha + (s + 1) as f64);
        }
        if c.m == ZERO {
            break;
        }
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        let es = Scaled::split(e[s]);
        let m = c.m * es.m / fact.m * sign;
        let exp = c.e + es.e + s as i64 * shift - fact.e;
        acc.add(Complex64::new(ldexp(m.re, exp), ldexp(m.im, exp)));
    }
    acc.value()
}

/// `L_n^(-β-⟨n⟩)(x)`, the negatively shifted family.
///
/// Uses `(-1)^N (β)_N/n! Σ_s D_s/(1-β-N)_s` with `D_s = [t^s] Π(1 - x_i t)^{n_i}`
/// when no denominator vanishes, otherwise the pole-free evaluator at `α = -β-N`.
pub fn laguerre_neg_shift(n: &MultiIndex, beta: Complex64, x: &CPoint) -> Result<Complex64> {
    check_dims(n, x)?;
    Ok(neg_shift_unchecked(n, beta, x))
}

pub(crate) fn neg_shift_unchecked(n: &MultiIndex, beta: Complex64, x: &CPoint) -> Complex64 {
    let total = n.total();
    if neg_shift_pole_free(total, beta) && total <= 150 && n.ln_factorial() <= DIRECT_LN_FACTORIAL {
        let v = neg_shift_direct(n, beta, x);
        if v.re.is_finite() && v.im.is_finite() {
            return v;
        }
    }
    multi_unchecked(n, -beta - total as f64, x)
}

/// `(1-β-N)_s ≠ 0` for all `s <= N`, i.e. `β ∉ {1-N, ..., 0}`.
fn neg_shift_pole_free(total: usize, beta: Complex64) -> bool {
    match nonpositive_integer(beta) {
        Some(p) => (p as usize) + 1 > total,
        None => true,
    }
}

/// The defining sum of the negatively shifted family, grouped by `⟨j⟩`.
pub fn laguerre_neg_shift_defining_sum(n: &MultiIndex, beta: Complex64, x: &CPoint) -> Result<Complex64> {
    check_dims(n, x)?;
    if !neg_shift_pole_free(n.total(), beta) {
        return Err(Error::pole(format!("(1-β-⟨n⟩)_s vanishes for β = {beta}, ⟨n⟩ = {}", n.total())));
    }
    Ok(neg_shift_direct(n, beta, x))
}

fn neg_shift_direct(n: &MultiIndex, beta: Complex64, x: &CPoint) -> Complex64 {
    let total = n.total();
    let d = elementary(n, x, -1.0, 1.0);
    let base = ONE - beta - total as f64;
    let mut acc = CompensatedSum::new();
    let mut inv = ONE;
    for (s, ds) in d.iter().enumerate() {
        if s > 0 {
            inv /= base + (s - 1) as f64;
        }
        acc.add(ds * inv);
    }
    let inv_fact = 1.0 / factorial_f64(n);
    let sign = if total.is_multiple_of(2) { 1.0 } else { -1.0 };
    acc.value() * pochhammer(beta, total) * (sign * inv_fact)
}

/// Multiple Laguerre polynomial of the second kind, `n! L_n^(α)(-β_1 x, ..., -β_k x)`.
pub fn multiple_laguerre_2nd(n: &MultiIndex, alpha: Complex64, betas: &CPoint, x: Complex64) -> Result<Complex64> {
    check_dims(n, betas)?;
    let point = betas.scale(-x);
    Ok(multi_unchecked(n, alpha, &point) * factorial_f64(n))
}
