//! Gauss rules from three-term recurrence coefficients.
//!
//! Nodes are the eigenvalues of the Jacobi matrix (implicit QL), then polished
//! by Newton steps on the orthonormal recurrence. Weights come from
//! `w_i = μ0 / Σ_j p_j(x_i)^2`, accumulated with a running log scale so large
//! Laguerre nodes do not overflow.

use crate::error::{Error, Result};
use crate::gamma::log_gamma;
use num_complex::Complex64;

/// Monic recurrence `p_{j+1} = (x - alpha_j) p_j - beta_j p_{j-1}` and total mass `mu0`.
#[derive(Debug, Clone)]
pub(crate) struct Recurrence {
    pub alpha: Vec<f64>,
    /// `beta[j]` for `j >= 1`; `beta[0]` is unused.
    pub beta: Vec<f64>,
    pub mu0: f64,
}

fn ln_gamma_real(x: f64) -> f64 {
    log_gamma(Complex64::new(x, 0.0)).map(|z| z.re).unwrap_or(f64::NAN)
}

pub(crate) fn legendre(m: usize) -> Recurrence {
    let alpha = vec![0.0; m];
    let beta = (0..m)
        .map(|j| {
            let j = j as f64;
            j * j / (4.0 * j * j - 1.0)
        })
        .collect();
    Recurrence { alpha, beta, mu0: 2.0 }
}

/// Weight `(1-x)^a (1+x)^b` on `(-1, 1)`.
pub(crate) fn jacobi(m: usize, a: f64, b: f64) -> Result<Recurrence> {
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::domain(format!("Jacobi exponents must exceed -1, got a={a}, b={b}")));
    }
    let ab = a + b;
    let mut alpha = Vec::with_capacity(m);
    let mut beta = vec![0.0; m];
    for j in 0..m {
        let jf = j as f64;
        let t = 2.0 * jf + ab;
        alpha.push(if j == 0 { (b - a) / (ab + 2.0) } else { (b * b - a * a) / (t * (t + 2.0)) });
        if j == 1 {
            beta[1] = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0).powi(2) * (ab + 3.0));
        } else if j >= 2 {
            beta[j] = 4.0 * jf * (jf + a) * (jf + b) * (jf + ab) / (t * t * (t + 1.0) * (t - 1.0));
        }
    }
    let ln_mu0 = (ab + 1.0) * std::f64::consts::LN_2 + ln_gamma_real(a + 1.0) + ln_gamma_real(b + 1.0)
        - ln_gamma_real(ab + 2.0);
    Ok(Recurrence { alpha, beta, mu0: ln_mu0.exp() })
}

/// Weight `s^a e^{-s}` on `(0, ∞)`.
pub(crate) fn laguerre(m: usize, a: f64) -> Result<Recurrence> {
    if a <= -1.0 {
        return Err(Error::domain(format!("Laguerre exponent must exceed -1, got {a}")));
    }
    let alpha = (0..m).map(|j| 2.0 * j as f64 + a + 1.0).collect();
    let beta = (0..m).map(|j| j as f64 * (j as f64 + a)).collect();
    Ok(Recurrence { alpha, beta, mu0: ln_gamma_real(a + 1.0).exp() })
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (`e[i]` couples `i` and `i+1`; the last entry is ignored).
fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Ok(d);
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::no_conv("tridiagonal QL iteration", iter));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

/// Orthonormal recurrence at `x`: returns `(p_m, p_m', ln Σ_{j<m} p_j^2)`, where
/// `p_m` and its derivative share an unknown positive scale.
fn evaluate(rec: &Recurrence, m: usize, x: f64) -> (f64, f64, f64) {
    let sb: Vec<f64> = rec.beta.iter().map(|b| b.sqrt()).collect();
    let (mut p_prev, mut p) = (0.0, 1.0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    let mut sum = 0.0;
    let mut ln_scale = 0.0;
    for j in 0..m {
        sum += p * p;
        let next_b = if j + 1 < m { sb[j + 1] } else { next_sqrt_beta(rec, j + 1) };
        let prev_b = if j >= 1 { sb[j] } else { 0.0 };
        let p_next = ((x - rec.alpha[j]) * p - prev_b * p_prev) / next_b;
        let d_next = (p + (x - rec.alpha[j]) * d - prev_b * d_prev) / next_b;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        let big = p.abs().max(p_prev.abs());
        if big > 1e100 {
            let f = 1.0 / big;
            p *= f;
            p_prev *= f;
            d *= f;
            d_prev *= f;
            sum *= f * f;
            ln_scale += 2.0 * big.ln();
        }
    }
    (p, d, sum.ln() + ln_scale)
}

// beta_m is only needed to normalize p_m; any positive value keeps the zero set.
fn next_sqrt_beta(rec: &Recurrence, j: usize) -> f64 {
    rec.beta.get(j).copied().filter(|b| *b > 0.0).map(f64::sqrt).unwrap_or(1.0)
}

/// Nodes and weights of the `m`-point Gauss rule for the recurrence.
pub(crate) fn gauss_rule(rec: &Recurrence) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = rec.alpha.len();
    if m == 0 {
        return Err(Error::domain("quadrature rule needs at least one node"));
    }
    let off: Vec<f64> = (0..m).map(|j| if j + 1 < m { rec.beta[j + 1].sqrt() } else { 0.0 }).collect();
    let mut nodes = tridiagonal_eigenvalues(rec.alpha.clone(), off)?;
    let mut weights = Vec::with_capacity(m);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = evaluate(rec, m, *x);
            if dp == 0.0 || !dp.is_finite() {
                break;
            }
            let step = p / dp;
            if !step.is_finite() || step.abs() > 1e-6 * (1.0 + x.abs()) {
                break;
            }
            *x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs() {
                break;
            }
        }
        let (_, _, ln_sum) = evaluate(rec, m, *x);
        weights.push(rec.mu0 * (-ln_sum).exp());
    }
    Ok((nodes, weights))
}
