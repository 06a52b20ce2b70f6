use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{require_l1_below_one, require_same_dim, HardyHilleKernel, IdentityReport};
use crate::cpoint::CPoint;
use crate::error::{Error, Result};
use crate::gamma::{gamma_ratio, is_nonpositive_integer, pochhammer, rgamma};
use crate::hypergeometric::bessel_i;
use crate::laguerre::{factorial_f64, laguerre_multi};
use crate::multi_index::{box_enumerate, MultiIndex, Shell};
use crate::quadrature::{cosine_box_rule, cosine_power_rule, QuadRule, RuleKind, DEFAULT_BOX_BUDGET};
use crate::series::{sum_shells, SeriesControl};
use crate::sum::csum;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Largest `⟨m+n⟩` for which the box quadrature is trusted.
const PRODUCT_MAX_DEGREE: usize = 6;
/// Largest dimension for which the box quadrature is trusted.
const PRODUCT_MAX_DIM: usize = 2;

/// `Σ_n n! L_n^(α)(x) L_n^(α)(y) u^n / Γ(α+1+⟨n⟩)` against its Bessel closed form.
pub fn hardy_hille(
    alpha: Complex64,
    x: &CPoint,
    y: &CPoint,
    u: &CPoint,
    ctl: &SeriesControl,
) -> Result<IdentityReport> {
    let start = Instant::now();
    ctl.validate()?;
    let k = require_same_dim(&[("x", x), ("y", y), ("u", u)])?;
    require_l1_below_one("u", u)?;
    if is_nonpositive_integer(alpha + 1.0) {
        return Err(Error::Domain(format!("α must not be an integer <= -1, got {alpha}")));
    }
    let kernel = HardyHilleKernel::new(u, x, y)?;
    let s = u.angle();
    let one_minus = ONE - s;
    let rhs = (-(alpha + 1.0) * one_minus.ln() - (u.hadamard(x)?.angle() + u.hadamard(y)?.angle()) / one_minus).exp()
        * bessel_i(alpha, kernel.value, &SeriesControl::inner())?;

    let sum = sum_shells(ctl, "hardy_hille series", |t| {
        let indices: Vec<MultiIndex> = Shell::new(k, t).collect();
        let terms: Result<Vec<Complex64>> = indices
            .par_iter()
            .map(|n| {
                let p = u.power(n)?;
                if p == Complex64::new(0.0, 0.0) {
                    return Ok(p);
                }
                Ok(laguerre_multi(n, alpha, x)? * laguerre_multi(n, alpha, y)? * factorial_f64(n) * p)
            })
            .collect();
        Ok((csum(terms?) * rgamma(alpha + 1.0 + t as f64), indices.len() as u128))
    })?;
    Ok(IdentityReport::new("hardy_hille", sum.value, rhs)
        .series(sum.order, sum.order + 1, sum.converged)
        .timed(start))
}

/// The point `(ξ_j, η_j)` of the product-formula integrand for one coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiEta {
    pub x: Complex64,
    pub y: Complex64,
    pub theta: f64,
    pub phi: f64,
    /// `x e^{i(θ-φ)} sec φ cos θ`
    pub xi: Complex64,
    /// `y e^{i(φ-θ)} sec φ cos θ`
    pub eta: Complex64,
}

impl XiEta {
    pub fn new(x: Complex64, y: Complex64, theta: f64, phi: f64) -> Result<Self> {
        if !(phi.abs() < FRAC_PI_2) {
            return Err(Error::Domain(format!("|φ| < π/2 required, got {phi}")));
        }
        let f = theta.cos() / phi.cos();
        let xi = x * Complex64::from_polar(f, theta - phi);
        let eta = y * Complex64::from_polar(f, phi - theta);
        Ok(XiEta { x, y, theta, phi, xi, eta })
    }

    pub fn sum(&self) -> Complex64 {
        self.xi + self.eta
    }
}

/// The cosine-weighted box rule for [`product_formula`] in dimension `k`.
pub fn product_rule(k: usize, per_axis: usize, alpha: f64, beta: f64) -> Result<QuadRule> {
    cosine_box_rule(k + 1, per_axis, alpha + beta, DEFAULT_BOX_BUDGET)
}

fn real_param(name: &str, z: Complex64) -> Result<f64> {
    if z.im != 0.0 {
        return Err(Error::Unsupported(format!(
            "product formula quadrature is only certified for real {name}, got {z}"
        )));
    }
    if !(z.re > -1.0) {
        return Err(Error::Domain(format!("{name} > -1 required, got {}", z.re)));
    }
    Ok(z.re)
}

/// Both sides of the product formula for `L_m^(α)(x) L_n^(β)(y)`.
///
/// The right side is integrated with `rule`, which must come from [`product_rule`].
/// The Laguerre factor is expanded so that every `sec φ_j` cancels against
/// `cos^{m_j+n_j} φ_j`; the integrand is then smooth on the closed box.
pub fn product_formula(
    m: &MultiIndex,
    n: &MultiIndex,
    alpha: Complex64,
    beta: Complex64,
    x: &CPoint,
    y: &CPoint,
    rule: &QuadRule,
) -> Result<IdentityReport> {
    let start = Instant::now();
    let k = require_same_dim(&[("x", x), ("y", y)])?;
    if m.dim() != k || n.dim() != k {
        return Err(Error::Domain(format!("degrees must have {k} components")));
    }
    let a = real_param("α", alpha)?;
    let b = real_param("β", beta)?;
    let p = a + b;
    if !(p > -1.0) {
        return Err(Error::Domain(format!("α + β > -1 required, got {p}")));
    }
    let big_m = m + n;
    if big_m.total() > PRODUCT_MAX_DEGREE || k > PRODUCT_MAX_DIM {
        return Err(Error::Unsupported(format!(
            "product formula quadrature is certified only for ⟨m+n⟩ <= {PRODUCT_MAX_DEGREE} and k <= {PRODUCT_MAX_DIM}"
        )));
    }
    match rule.kind() {
        RuleKind::CosineBox { dim, power, .. } if dim == k + 1 && (power - p).abs() <= 1e-14 * p.abs().max(1.0) => {}
        other => {
            return Err(Error::Domain(format!(
                "product formula needs a cosine box rule of dimension {} and power {p}, got {other:?}",
                k + 1
            )))
        }
    }

    let lhs = laguerre_multi(m, alpha, x)? * rgamma(alpha + 1.0 + m.total() as f64) * laguerre_multi(n, beta, y)?
        * rgamma(beta + 1.0 + n.total() as f64);

    // L_M^(p)(z) / Γ(p+1+⟨M⟩) = (1/M!) Σ_{i<=M} Π_j (-M_j)_{i_j}/i_j! · z^i / Γ(p+1+⟨i⟩)
    let ap = Complex64::new(p, 0.0);
    let m_fact = factorial_f64(&big_m);
    let coeffs: Vec<(MultiIndex, Complex64)> = box_enumerate(&big_m)
        .map(|i| {
            let mut c = rgamma(ap + 1.0 + i.total() as f64) / m_fact;
            for (&mj, &ij) in big_m.entries().iter().zip(i.entries()) {
                c *= pochhammer(Complex64::new(-(mj as f64), 0.0), ij) / factorial_f64(&MultiIndex::diagonal(1, ij));
            }
            (i, c)
        })
        .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
        .collect();
    let freq: Vec<f64> = m.entries().iter().zip(n.entries()).map(|(&a, &b)| a as f64 - b as f64).collect();
    let integral = rule.integrate(|node| {
        let theta = node[0];
        let phis = &node[1..];
        let mut phase = (a - b) * theta;
        for (f, phi) in freq.iter().zip(phis) {
            phase += f * phi;
        }
        let ct = theta.cos();
        // ζ_j = (ξ_j + η_j) cos φ_j
        let zeta: Vec<Complex64> = (0..k)
            .map(|j| x[j] * Complex64::from_polar(ct, theta - phis[j]) + y[j] * Complex64::from_polar(ct, phis[j] - theta))
            .collect();
        let poly = csum(coeffs.iter().map(|(i, c)| {
            let mut t = *c;
            for j in 0..k {
                let ij = i.entries()[j];
                t *= zeta[j].powu(ij as u32) * phis[j].cos().powi((big_m.entries()[j] - ij) as i32);
            }
            t
        }));
        (I * phase).exp() * poly
    });
    let rhs = integral * (2f64.powf(p + big_m.total() as f64) / PI.powi(k as i32 + 1));
    let mut rep = IdentityReport::new("product_formula", lhs, rhs).series(rule.len(), 1, true);
    if x.iter().chain(y.iter()).all(|z| z.im == 0.0) {
        rep = rep.channel("rhs_imag_ratio", rhs.im.abs() / rhs.re.abs().max(1e-300));
    }
    Ok(rep.timed(start))
}

/// `Γ(α+β+1)/(Γ(α+1)Γ(β+1)) = (2^{α+β}/π) ∫ e^{i(α-β)θ} cos^{α+β}θ dθ` with an `nodes`-point rule.
pub fn cosine_beta_identity(alpha: f64, beta: f64, nodes: usize) -> Result<IdentityReport> {
    let start = Instant::now();
    if !(alpha > -1.0 && beta > -1.0 && alpha + beta > -1.0) {
        return Err(Error::Domain(format!("α, β, α + β > -1 required, got α = {alpha}, β = {beta}")));
    }
    let c = |v: f64| Complex64::new(v, 0.0);
    let lhs = gamma_ratio(c(alpha + beta + 1.0), c(alpha + 1.0))? * rgamma(c(beta + 1.0));
    let (t, w) = cosine_power_rule(alpha + beta, nodes)?;
    let integral = csum(t.iter().zip(&w).map(|(&t, &w)| Complex64::from_polar(w, (alpha - beta) * t)));
    let rhs = integral * (2f64.powf(alpha + beta) / PI);
    Ok(IdentityReport::new("cosine_beta", lhs, rhs)
        .series(nodes, 1, true)
        .channel("rhs_imag", rhs.im.abs())
        .timed(start))
}
