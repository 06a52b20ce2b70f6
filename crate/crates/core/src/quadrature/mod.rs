//! Quadrature rules: the beta measure on `(0, 1)`, exponentially weighted
//! rules on `(0, ∞)`, and tensor rules on the box `[-π/2, π/2]^d`.

mod gauss;

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::csum;

/// Default cap on the number of box nodes.
pub const DEFAULT_BOX_BUDGET: u128 = 4_000_000;

/// Which measure a rule integrates against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RuleKind {
    /// Lebesgue measure on `(0, 1)`.
    Legendre01,
    /// Normalized beta measure `t^{a_exp-1} (1-t)^{b_exp-1} dt / B(a_exp, b_exp)` on `(0, 1)`.
    JacobiBeta { a_exp: f64, b_exp: f64 },
    /// `s^power e^{-rate s} ds` on `(0, ∞)`.
    SemiInfinite { rate: f64, power: f64 },
    /// Lebesgue measure on `[-π/2, π/2]^dim`.
    Box { dim: usize, per_axis: usize },
    /// `cos^p(θ_0) dθ` on the first axis, Lebesgue on the remaining axes of `[-π/2, π/2]^dim`.
    CosineBox { dim: usize, per_axis: usize, power: f64 },
}

/// An immutable set of nodes and weights. Multidimensional nodes are stored flat.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    kind: RuleKind,
    dim: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadRule {
    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    /// Dimension of each node.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes of a one-dimensional rule.
    pub fn points(&self) -> &[f64] {
        assert_eq!(self.dim, 1, "points() is for one-dimensional rules");
        &self.nodes
    }

    /// `Σ w_i f(x_i)`; evaluation is parallel, the reduction is ordered and compensated.
    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(&[f64]) -> Complex64 + Sync,
    {
        let terms: Vec<Complex64> = (0..self.len())
            .into_par_iter()
            .map(|i| if self.weights[i] == 0.0 { Complex64::new(0.0, 0.0) } else { f(self.node(i)) * self.weights[i] })
            .collect();
        csum(terms)
    }

    /// Fallible variant of [`QuadRule::integrate`]; the first error in node order wins.
    pub fn try_integrate<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(&[f64]) -> Result<Complex64> + Sync,
    {
        let terms: Vec<Result<Complex64>> = (0..self.len())
            .into_par_iter()
            .map(|i| {
                if self.weights[i] == 0.0 {
                    Ok(Complex64::new(0.0, 0.0))
                } else {
                    f(self.node(i)).map(|v| v * self.weights[i])
                }
            })
            .collect();
        let mut values = Vec::with_capacity(terms.len());
        for t in terms {
            values.push(t?);
        }
        Ok(csum(values))
    }
}

fn check_count(m: usize, min: usize) -> Result<()> {
    if m < min {
        return Err(Error::domain(format!("rule needs at least {min} nodes, got {m}")));
    }
    Ok(())
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_count(m, 1)?;
    gauss::gauss_rule(&gauss::legendre(m))
}

/// Gauss–Jacobi nodes and weights for `(1-x)^a (1+x)^b` on `[-1, 1]`.
pub fn gauss_jacobi(m: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    check_count(m, 1)?;
    gauss::gauss_rule(&gauss::jacobi(m, a, b)?)
}

/// Generalized Gauss–Laguerre nodes and weights for `s^a e^{-s}` on `(0, ∞)`.
pub fn gauss_laguerre(m: usize, a: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    check_count(m, 1)?;
    gauss::gauss_rule(&gauss::laguerre(m, a)?)
}

/// Gauss–Legendre on `(0, 1)`.
pub fn legendre01(m: usize) -> Result<QuadRule> {
    let (x, w) = gauss_legendre(m)?;
    Ok(QuadRule {
        kind: RuleKind::Legendre01,
        dim: 1,
        nodes: x.iter().map(|x| 0.5 * (1.0 + x)).collect(),
        weights: w.iter().map(|w| 0.5 * w).collect(),
    })
}

/// Gauss–Jacobi rule for the probability measure `t^{α-1} (1-t)^{γ-α-1} dt / B(α, γ-α)`.
pub fn beta_rule(alpha: f64, gamma_minus_alpha: f64, m: usize) -> Result<QuadRule> {
    if !(alpha > 0.0 && gamma_minus_alpha > 0.0) {
        return Err(Error::domain(format!(
            "beta rule exponents must be positive, got {alpha} and {gamma_minus_alpha}"
        )));
    }
    check_count(m, 2)?;
    // t = (1+x)/2: t^{α-1} ~ (1+x)^{α-1}, (1-t)^{γ-α-1} ~ (1-x)^{γ-α-1}
    let (x, w) = gauss_jacobi(m, gamma_minus_alpha - 1.0, alpha - 1.0)?;
    let total: f64 = w.iter().sum();
    Ok(QuadRule {
        kind: RuleKind::JacobiBeta { a_exp: alpha, b_exp: gamma_minus_alpha },
        dim: 1,
        nodes: x.iter().map(|x| 0.5 * (1.0 + x)).collect(),
        weights: w.iter().map(|w| w / total).collect(),
    })
}

/// Gauss–Laguerre rule for `e^{-decay s} ds` on `(0, ∞)`.
pub fn semi_infinite_rule(decay: f64, m: usize) -> Result<QuadRule> {
    semi_infinite_rule_with_power(decay, 0.0, m)
}

/// Generalized Gauss–Laguerre rule for `s^power e^{-decay s} ds` on `(0, ∞)`.
pub fn semi_infinite_rule_with_power(decay: f64, power: f64, m: usize) -> Result<QuadRule> {
    if !(decay > 0.0 && decay.is_finite()) {
        return Err(Error::domain(format!("decay rate must be positive, got {decay}")));
    }
    check_count(m, 1)?;
    let (x, w) = gauss_laguerre(m, power)?;
    // s = τ / d: ∫ s^p e^{-d s} f ds = d^{-p-1} ∫ τ^p e^{-τ} f(τ/d) dτ
    let scale = decay.powf(-power - 1.0);
    Ok(QuadRule {
        kind: RuleKind::SemiInfinite { rate: decay, power },
        dim: 1,
        nodes: x.iter().map(|x| x / decay).collect(),
        weights: w.iter().map(|w| w * scale).collect(),
    })
}

fn tensor(kind: RuleKind, axes: &[(Vec<f64>, Vec<f64>)]) -> QuadRule {
    let dim = axes.len();
    let count: usize = axes.iter().map(|a| a.0.len()).product();
    let mut nodes = Vec::with_capacity(count * dim);
    let mut weights = Vec::with_capacity(count);
    let mut idx = vec![0usize; dim];
    for _ in 0..count {
        let mut w = 1.0;
        for (axis, &i) in axes.iter().zip(&idx) {
            nodes.push(axis.0[i]);
            w *= axis.1[i];
        }
        weights.push(w);
        for d in (0..dim).rev() {
            idx[d] += 1;
            if idx[d] < axes[d].0.len() {
                break;
            }
            idx[d] = 0;
        }
    }
    QuadRule { kind, dim, nodes, weights }
}

fn box_guard(dim: usize, per_axis: usize, budget: u128) -> Result<()> {
    if dim < 1 {
        return Err(Error::domain("box rule needs at least one axis"));
    }
    check_count(per_axis, 1)?;
    let needed = (per_axis as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { what: format!("{dim}-dimensional box rule"), needed, cap: budget });
    }
    Ok(())
}

fn legendre_half_pi(per_axis: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (x, w) = gauss_legendre(per_axis)?;
    Ok((x.iter().map(|x| x * FRAC_PI_2).collect(), w.iter().map(|w| w * FRAC_PI_2).collect()))
}

/// Tensor Gauss–Legendre on `[-π/2, π/2]^dim` with the default node budget.
pub fn box_rule(dim: usize, per_axis: usize) -> Result<QuadRule> {
    box_rule_with_budget(dim, per_axis, DEFAULT_BOX_BUDGET)
}

pub fn box_rule_with_budget(dim: usize, per_axis: usize, budget: u128) -> Result<QuadRule> {
    if dim < 2 {
        return Err(Error::domain(format!("box rule dimension must be at least 2, got {dim}")));
    }
    box_guard(dim, per_axis, budget)?;
    let axis = legendre_half_pi(per_axis)?;
    Ok(tensor(RuleKind::Box { dim, per_axis }, &vec![axis; dim]))
}

/// Gauss rule for `cos^p θ dθ` on `[-π/2, π/2]`, `p > -1`.
///
/// With `θ = πx/2` the weight is `(1-x^2)^p` times the smooth factor
/// `[cos(πx/2)/(1-x^2)]^p`, so Gauss–Jacobi with `a = b = p` absorbs the endpoint behaviour.
pub fn cosine_power_rule(power: f64, m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if power <= -1.0 {
        return Err(Error::domain(format!("cosine power must exceed -1, got {power}")));
    }
    let (x, w) = gauss_jacobi(m, power, power)?;
    let weights = x
        .iter()
        .zip(&w)
        .map(|(x, w)| {
            let smooth = (FRAC_PI_2 * x).cos() / (1.0 - x * x);
            w * FRAC_PI_2 * smooth.powf(power)
        })
        .collect();
    Ok((x.iter().map(|x| x * FRAC_PI_2).collect(), weights))
}

/// Box rule whose first axis carries the weight `cos^p θ`; the other axes are Gauss–Legendre.
pub fn cosine_box_rule(dim: usize, per_axis: usize, power: f64, budget: u128) -> Result<QuadRule> {
    box_guard(dim, per_axis, budget)?;
    let mut axes = vec![cosine_power_rule(power, per_axis)?];
    let plain = legendre_half_pi(per_axis)?;
    axes.extend(std::iter::repeat_n(plain, dim - 1));
    Ok(tensor(RuleKind::CosineBox { dim, per_axis, power }, &axes))
}

/// `∫_{-π/2}^{π/2} cos^p θ dθ = √π Γ((p+1)/2) / Γ(p/2 + 1)`.
pub fn cosine_power_integral(power: f64) -> f64 {
    let lg = |x: f64| crate::gamma::log_gamma(Complex64::new(x, 0.0)).map(|z| z.re).unwrap_or(f64::NAN);
    (0.5 * PI.ln() + lg((power + 1.0) / 2.0) - lg(power / 2.0 + 1.0)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integrate_real(rule: &QuadRule, f: impl Fn(f64) -> f64 + Sync) -> f64 {
        rule.integrate(|x| Complex64::new(f(x[0]), 0.0)).re
    }

    #[test]
    fn beta_rule_moments() {
        let r = beta_rule(1.0, 1.0, 8).unwrap();
        assert!((integrate_real(&r, |_| 1.0) - 1.0).abs() < 1e-14);
        assert!((integrate_real(&r, |t| t * t) - 1.0 / 3.0).abs() < 1e-14);
        let (a, g) = (0.35, 2.6);
        let r = beta_rule(a, g - a, 10).unwrap();
        assert!((integrate_real(&r, |t| t) - a / g).abs() < 1e-14);
        assert!(r.points().iter().all(|&t| t > 0.0 && t < 1.0));
        assert!(beta_rule(0.0, 1.0, 8).is_err());
        assert!(beta_rule(1.0, 1.0, 1).is_err());
    }

    #[test]
    fn semi_infinite_examples() {
        let r = semi_infinite_rule(1.0, 40).unwrap();
        assert!((integrate_real(&r, |_| 1.0) - 1.0).abs() < 1e-14);
        assert!((integrate_real(&r, |s| s) - 1.0).abs() < 1e-13);
        let r = semi_infinite_rule(2.5, 30).unwrap();
        assert!((integrate_real(&r, |s| s * s) - 2.0 / 2.5f64.powi(3)).abs() < 1e-14);
        assert!(semi_infinite_rule(0.0, 10).is_err());
        assert!(semi_infinite_rule(-1.0, 10).is_err());
    }

    #[test]
    fn box_examples() {
        let r = box_rule(2, 10).unwrap();
        assert_eq!(r.len(), 100);
        assert!((r.integrate(|_| Complex64::new(1.0, 0.0)).re - PI * PI).abs() < 1e-13);
        let v = r.integrate(|p| Complex64::new((p[0].cos() * p[1].cos()).powi(2), 0.0)).re;
        assert!((v - PI * PI / 4.0).abs() < 1e-13);
        assert!(matches!(box_rule_with_budget(4, 100, 1000), Err(Error::BudgetExceeded { .. })));
        assert!(box_rule(1, 10).is_err());
    }

    #[test]
    fn cosine_rule_total_mass() {
        for p in [0.0, 0.37, 1.0, 2.9] {
            let (_, w) = cosine_power_rule(p, 40).unwrap();
            let total: f64 = w.iter().sum();
            assert!((total - cosine_power_integral(p)).abs() < 1e-13, "p = {p}");
        }
        assert!((cosine_power_integral(1.0) - 2.0).abs() < 1e-14);
    }
}
