use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::IdentityReport;
use crate::cpoint::CPoint;
use crate::error::{Error, Result};
use crate::gamma::log_gamma;
use crate::hypergeometric::le_roy_scaled;
use crate::laguerre::neg_shift_unchecked;
use crate::multi_index::MultiIndex;
use crate::quadrature::{semi_infinite_rule_with_power, QuadRule, RuleKind};
use crate::series::{sum_terms, SeriesControl};
use crate::sum::csum;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_diagonal(beta: Complex64, k: usize, u: Complex64) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("x must have at least one component".into()));
    }
    if !(beta.re > 0.0) {
        return Err(Error::Domain(format!("Re(β) > 0 required, got β = {beta}")));
    }
    let bound = (k as f64).powi(k as i32).recip();
    if !(u.norm() < bound) {
        return Err(Error::Domain(format!("|u| < 1/k^k = {bound} required for k = {k}, got |u| = {}", u.norm())));
    }
    Ok(())
}

/// Exponential rate left in the integrand: `1 - k|u|^{1/k}`, or `1 + Re u` when `k = 1`.
fn decay_rate(k: usize, u: Complex64) -> f64 {
    if k == 1 {
        1.0 + u.re
    } else {
        1.0 - k as f64 * u.norm().powf(1.0 / k as f64)
    }
}

/// The semi-infinite rule matched to the diagonal integrand: weight `s^{Re β - 1} e^{-d s}`.
pub fn diagonal_rule(beta: Complex64, u: Complex64, k: usize, nodes: usize) -> Result<QuadRule> {
    check_diagonal(beta, k, u)?;
    semi_infinite_rule_with_power(decay_rate(k, u), beta.re - 1.0, nodes)
}

/// `(1/Γ(β)) ∫ e^{-s} s^{β-1} F_k((-1)^k u Π(s+x_i)) ds` and a roundoff estimate.
fn integral_side(beta: Complex64, x: &CPoint, u: Complex64, rule: &QuadRule) -> Result<(Complex64, f64)> {
    let k = x.dim();
    let (rate, power) = match rule.kind() {
        RuleKind::SemiInfinite { rate, power } => (rate, power),
        other => return Err(Error::Domain(format!("diagonal generating function needs a semi-infinite rule, got {other:?}"))),
    };
    let ln_gamma = log_gamma(beta)?;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let order = Complex64::new(k as f64, 0.0);
    let inner = SeriesControl::inner();
    let mut values = Vec::with_capacity(rule.len());
    let mut magnitude = 0.0;
    for (&s, &w) in rule.points().iter().zip(rule.weights()) {
        let z = u * sign * x.iter().map(|xi| xi + s).product::<Complex64>();
        // F_k(z) = mant · e^{scale}; |F|_k bounds the cancellation in the series
        let (mant, scale, abs_ln) = if k == 1 {
            (Complex64::new(1.0, 0.0), z, z.norm())
        } else {
            let (m, e) = le_roy_scaled(order, z, &inner)?;
            let abs_ln = if z.im == 0.0 && z.re >= 0.0 {
                m.norm().ln() + e
            } else {
                let (ma, ea) = le_roy_scaled(order, Complex64::new(z.norm(), 0.0), &inner)?;
                ma.norm().ln() + ea
            };
            (m, Complex64::new(e, 0.0), abs_ln)
        };
        let ln_rest = (rate - 1.0) * s + (beta - 1.0 - power) * s.ln() - ln_gamma;
        let v = mant * (scale + ln_rest).exp() * w;
        magnitude += w * (abs_ln + ln_rest.re).exp();
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::no_conv(format!("diagonal integrand overflows at s = {s}"), rule.len()));
        }
        values.push(v);
    }
    let value = csum(values);
    Ok((value, f64::EPSILON * magnitude / value.norm().max(1e-300)))
}

/// `Σ_n L_{n,…,n}^{(-β-kn)}(x) u^n` against its Le Roy integral over `(0, ∞)`.
///
/// `rule` should come from [`diagonal_rule`]. The channel `roundoff_estimate` bounds
/// the relative rounding error of the quadrature side.
pub fn diagonal_gf(beta: Complex64, x: &CPoint, u: Complex64, ctl: &SeriesControl, rule: &QuadRule) -> Result<IdentityReport> {
    let start = Instant::now();
    ctl.validate()?;
    let k = x.dim();
    check_diagonal(beta, k, u)?;
    let sum = sum_terms(ctl, "diagonal generating series", |n| {
        if n > 0 && u == ZERO {
            return Ok(ZERO);
        }
        Ok(neg_shift_unchecked(&MultiIndex::diagonal(k, n), beta, x) * u.powu(n as u32))
    })?;
    let (rhs, roundoff) = integral_side(beta, x, u, rule)?;
    Ok(IdentityReport::new("diagonal_gf", sum.value, rhs)
        .series(sum.order, sum.order + 1, sum.converged)
        .channel("roundoff_estimate", roundoff)
        .timed(start))
}

/// `[uⁿ]` of the integral side, by the trapezoidal rule on the circle `|u| = radius`
/// with `points` samples and `nodes`-point quadratures.
pub fn diagonal_coefficient(
    n: usize,
    beta: Complex64,
    x: &CPoint,
    radius: f64,
    points: usize,
    nodes: usize,
) -> Result<Complex64> {
    if points <= n {
        return Err(Error::Domain(format!("need more than {n} circle points, got {points}")));
    }
    let k = x.dim();
    let rule = diagonal_rule(beta, Complex64::new(radius, 0.0), k, nodes)?;
    let mut acc = Vec::with_capacity(points);
    for j in 0..points {
        let angle = 2.0 * PI * j as f64 / points as f64;
        let u = Complex64::from_polar(radius, angle);
        check_diagonal(beta, k, u)?;
        let (g, _) = integral_side(beta, x, u, &rule)?;
        acc.push(g * Complex64::from_polar(1.0, -angle * n as f64));
    }
    Ok(csum(acc) / (points as f64 * radius.powi(n as i32)))
}

/// Which closed form the diagonal of `1/(1-x-y)` matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagonalSign {
    /// `(1-4u)^{-1/2}`
    Minus,
    /// `(1+4u)^{-1/2}`
    Plus,
    Neither,
}

/// Result of expanding the diagonal of `1/(1-x-y)` by brute force.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalFinding {
    /// `[xⁿyⁿ] 1/(1-x-y)` for `n < terms`.
    pub coefficients: Vec<f64>,
    /// `[uⁿ] (1-4u)^{-1/2}`
    pub minus_series: Vec<f64>,
    /// `[uⁿ] (1+4u)^{-1/2}`
    pub plus_series: Vec<f64>,
    pub sign: DiagonalSign,
    /// First index where the `(1+4u)^{-1/2}` series disagrees, if any.
    pub plus_first_mismatch: Option<usize>,
}

impl DiagonalFinding {
    /// Truncated series of both sides at `u`, as a report.
    pub fn report(&self, u: f64) -> IdentityReport {
        let eval = |c: &[f64]| Complex64::new(c.iter().rev().fold(0.0, |acc, c| acc * u + c), 0.0);
        let rhs = match self.sign {
            DiagonalSign::Plus => eval(&self.plus_series),
            _ => eval(&self.minus_series),
        };
        let mut rep = IdentityReport::new("diagonal_example", eval(&self.coefficients), rhs).series(
            self.coefficients.len() - 1,
            self.coefficients.len(),
            true,
        );
        rep.note = Some(match (self.sign, self.plus_first_mismatch) {
            (DiagonalSign::Minus, Some(i)) => format!(
                "diagonal of 1/(1-x-y) is Σ C(2n,n) u^n = (1-4u)^(-1/2); (1+4u)^(-1/2) disagrees from u^{i} on"
            ),
            (DiagonalSign::Plus, _) => "diagonal of 1/(1-x-y) matches (1+4u)^(-1/2)".to_string(),
            _ => "diagonal of 1/(1-x-y) matches neither (1-4u)^(-1/2) nor (1+4u)^(-1/2)".to_string(),
        });
        rep
    }
}

/// Expands `Σ_m (x+y)^m` by repeated polynomial multiplication, reads off the
/// first `terms` diagonal coefficients, and compares them with the binomial
/// series of `(1∓4u)^{-1/2}`.
pub fn central_binomial_diagonal(terms: usize) -> DiagonalFinding {
    let deg = 2 * terms.saturating_sub(1);
    // total[a][b] = [x^a y^b] Σ_{m<=deg} (x+y)^m
    let mut total = vec![vec![0.0f64; deg + 1]; deg + 1];
    let mut power = vec![vec![0.0f64; deg + 1]; deg + 1];
    power[0][0] = 1.0;
    for _ in 0..=deg {
        for a in 0..=deg {
            for b in 0..=deg {
                total[a][b] += power[a][b];
            }
        }
        let mut next = vec![vec![0.0f64; deg + 1]; deg + 1];
        for a in 0..=deg {
            for b in 0..=deg {
                let c = power[a][b];
                if c == 0.0 {
                    continue;
                }
                if a < deg {
                    next[a + 1][b] += c;
                }
                if b < deg {
                    next[a][b + 1] += c;
                }
            }
        }
        power = next;
    }
    let coefficients: Vec<f64> = (0..terms).map(|n| total[n][n]).collect();
    // (1 - t)^{-1/2} = Σ (1/2)_n t^n / n!
    let mut half = Vec::with_capacity(terms);
    let mut c = 1.0;
    for n in 0..terms {
        half.push(c);
        c *= (n as f64 + 0.5) / (n as f64 + 1.0);
    }
    let minus_series: Vec<f64> = half.iter().enumerate().map(|(n, c)| c * 4f64.powi(n as i32)).collect();
    let plus_series: Vec<f64> = half.iter().enumerate().map(|(n, c)| c * (-4f64).powi(n as i32)).collect();
    let matches = |s: &[f64]| coefficients.iter().zip(s).position(|(a, b)| (a - b).abs() > 1e-9 * a.abs().max(1.0));
    let minus_mismatch = matches(&minus_series);
    let plus_first_mismatch = matches(&plus_series);
    let sign = match (minus_mismatch, plus_first_mismatch) {
        (None, _) => DiagonalSign::Minus,
        (Some(_), None) => DiagonalSign::Plus,
        _ => DiagonalSign::Neither,
    };
    DiagonalFinding { coefficients, minus_series, plus_series, sign, plus_first_mismatch }
}
