use std::time::Instant;

use num_complex::Complex64;

use super::levels::{Level, LevelChain};
use super::{require_l1_below_one, require_not_nonpositive, require_same_dim, IdentityReport};
use crate::cpoint::CPoint;
use crate::error::{Error, Result};
use crate::gamma::pochhammer_ratio;
use crate::hypergeometric::{humbert_phi1_series, Phi1Params};
use crate::series::{sum_shells, SeriesControl};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `Φ₁[α,β;γ;-⟨u⟩,-⟨u∘x⟩] = Σ_n (α)_⟨n⟩/(γ)_⟨n⟩ L_n^(-β-⟨n⟩)(x) u^n`.
pub fn prop1_general(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    u: &CPoint,
    x: &CPoint,
    ctl: &SeriesControl,
) -> Result<IdentityReport> {
    let start = Instant::now();
    ctl.validate()?;
    require_same_dim(&[("u", u), ("x", x)])?;
    require_l1_below_one("u", u)?;
    require_not_nonpositive("-β", -beta)?;
    require_not_nonpositive("γ", gamma)?;
    let inner = SeriesControl::inner();
    let lhs = humbert_phi1_series(Phi1Params::new(alpha, beta, gamma), -u.angle(), -u.hadamard(x)?.angle(), &inner)?;
    let mut chain = LevelChain::new(vec![Level { b: beta, z: x.clone(), c: u.clone() }]);
    let sum = sum_shells(ctl, "prop1_general series", |s| {
        let shell = chain.next_shell(s);
        Ok((pochhammer_ratio(alpha, gamma, s)? * shell, chain.shell_size(s)))
    })?;
    Ok(IdentityReport::new("prop1_general", lhs, sum.value)
        .series(sum.order, sum.order + 1, sum.converged)
        .timed(start))
}

/// `e^{-⟨u∘x⟩} (1+⟨u⟩)^{-β} = Σ_n L_n^(-β-⟨n⟩)(x) u^n`.
pub fn prop1_exponential(beta: Complex64, u: &CPoint, x: &CPoint, ctl: &SeriesControl) -> Result<IdentityReport> {
    let start = Instant::now();
    ctl.validate()?;
    require_same_dim(&[("u", u), ("x", x)])?;
    require_l1_below_one("u", u)?;
    let lhs = (-u.hadamard(x)?.angle() - beta * (ONE + u.angle()).ln()).exp();
    let mut chain = LevelChain::new(vec![Level { b: beta, z: x.clone(), c: u.clone() }]);
    let sum = sum_shells(ctl, "prop1_exponential series", |s| Ok((chain.next_shell(s), chain.shell_size(s))))?;
    Ok(IdentityReport::new("prop1_exponential", lhs, sum.value)
        .series(sum.order, sum.order + 1, sum.converged)
        .timed(start))
}

/// One application of the expansion: `Φ₁[α,β;γ;⟨x⟩,⟨y⟩]` re-expanded around `Φ₁[·,β₁;·;⟨x⟩,⟨σ∘y⟩]`.
#[allow(clippy::too_many_arguments)]
pub fn lemma_expansion(
    alpha: Complex64,
    beta: Complex64,
    beta1: Complex64,
    gamma: Complex64,
    sigma: &CPoint,
    x: &CPoint,
    y: &CPoint,
    ctl: &SeriesControl,
) -> Result<IdentityReport> {
    multi_level("lemma_expansion", alpha, gamma, &[beta, beta1], std::slice::from_ref(sigma), x, y, ctl)
}

/// The `L`-fold expansion; `betas = [β, β₁, ..., β_L]`, `sigmas = [σ⁽¹⁾, ..., σ⁽ᴸ⁾]`.
///
/// The multiple series is truncated at `Σ_r ⟨n⁽ʳ⁾⟩ <= N`.
pub fn theorem_multiple(
    alpha: Complex64,
    gamma: Complex64,
    betas: &[Complex64],
    sigmas: &[CPoint],
    x: &CPoint,
    y: &CPoint,
    ctl: &SeriesControl,
) -> Result<IdentityReport> {
    multi_level("theorem_multiple", alpha, gamma, betas, sigmas, x, y, ctl)
}

#[allow(clippy::too_many_arguments)]
fn multi_level(
    id: &str,
    alpha: Complex64,
    gamma: Complex64,
    betas: &[Complex64],
    sigmas: &[CPoint],
    x: &CPoint,
    y: &CPoint,
    ctl: &SeriesControl,
) -> Result<IdentityReport> {
    let start = Instant::now();
    ctl.validate()?;
    let levels = sigmas.len();
    if levels == 0 {
        return Err(Error::Domain("at least one level (σ vector) is required".into()));
    }
    if betas.len() != levels + 1 {
        return Err(Error::Domain(format!(
            "{levels} levels need {} β values (β, β₁, ..., β_L), got {}",
            levels + 1,
            betas.len()
        )));
    }
    let mut named = vec![("x", x), ("y", y)];
    named.extend(sigmas.iter().map(|s| ("σ", s)));
    require_same_dim(&named)?;
    require_l1_below_one("x", x)?;
    require_not_nonpositive("γ", gamma)?;
    for r in 1..=levels {
        require_not_nonpositive(&format!("β_{r} - β_{}", r - 1), betas[r] - betas[r - 1])?;
    }
    if x.iter().any(|&xi| xi == ZERO) {
        return Err(Error::Domain("every x_i must be nonzero (the Laguerre argument is y/x)".into()));
    }

    let y_over_x = y.quotient(x)?;
    let mut carried = CPoint::splat(x.dim(), ONE);
    let mut chain_levels = Vec::with_capacity(levels);
    for (r, sigma) in sigmas.iter().enumerate() {
        let one_minus = sigma.map(|s| ONE - s);
        chain_levels.push(Level {
            b: betas[r] - betas[r + 1],
            z: one_minus.hadamard(&carried)?.hadamard(&y_over_x)?,
            c: -x,
        });
        carried = carried.hadamard(sigma)?;
    }
    let mut chain = LevelChain::new(chain_levels);
    let needed = chain.index_count(ctl.max_total_order);
    if needed > ctl.index_budget {
        return Err(Error::BudgetExceeded { what: format!("{id} index set"), needed, cap: ctl.index_budget });
    }

    let inner = SeriesControl::inner();
    let big_x = x.angle();
    let tail_y = carried.hadamard(y)?.angle();
    let beta_last = betas[levels];
    let lhs = humbert_phi1_series(Phi1Params::new(alpha, betas[0], gamma), big_x, y.angle(), &inner)?;
    let sum = sum_shells(ctl, id, |t| {
        let shell = chain.next_shell(t);
        let size = chain.shell_size(t);
        if shell == ZERO {
            return Ok((ZERO, size));
        }
        let tf = t as f64;
        let phi = humbert_phi1_series(Phi1Params::new(alpha + tf, beta_last, gamma + tf), big_x, tail_y, &inner)?;
        Ok((pochhammer_ratio(alpha, gamma, t)? * shell * phi, size))
    })?;
    Ok(IdentityReport::new(id, lhs, sum.value)
        .series(sum.order, sum.order + 1, sum.converged)
        .timed(start))
}
