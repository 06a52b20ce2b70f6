use std::collections::HashMap;
use std::time::Instant;

use num_complex::Complex64;

use super::levels::{Level, LevelChain};
use super::{require_angle, require_l1_below_one, require_not_nonpositive, require_same_dim, IdentityReport};
use crate::cpoint::CPoint;
use crate::error::{Error, Result};
use crate::gamma::{gamma_ratio, pochhammer_ratio};
use crate::hypergeometric::{humbert_phi1_integral_auto, humbert_phi1_series, phi1_neg1_split, Phi1Params};
use crate::laguerre::{laguerre_neg_shift, laguerre_uni};
use crate::multi_index::{graded_count, graded_enumerate, MultiIndex, Shell};
use crate::series::{sum_shells, SeriesControl};
use crate::sum::CompensatedSum;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_levels(betas: &[Complex64], ws: &[CPoint], extra_w: usize) -> Result<usize> {
    if betas.len() < 2 {
        return Err(Error::Domain("need β and at least β₁ (L >= 1)".into()));
    }
    let levels = betas.len() - 1;
    if ws.len() != levels + extra_w {
        return Err(Error::Domain(format!("{levels} levels need {} w vectors, got {}", levels + extra_w, ws.len())));
    }
    Ok(levels)
}

fn sum_points(ws: &[CPoint]) -> Result<CPoint> {
    let mut acc = CPoint::zeros(ws[0].dim());
    for w in ws {
        acc = &acc + w;
    }
    Ok(acc)
}

/// Cached `L_n^{(β_r - β_{r-1} - ⟨n⟩)}(w⁽ʳ⁾)` per level.
struct LevelCache<'a> {
    b: Vec<Complex64>,
    w: &'a [CPoint],
    values: Vec<HashMap<MultiIndex, Complex64>>,
}

impl<'a> LevelCache<'a> {
    fn new(b: Vec<Complex64>, w: &'a [CPoint]) -> Self {
        let levels = b.len();
        LevelCache { b, w, values: vec![HashMap::new(); levels] }
    }

    fn get(&mut self, r: usize, n: &MultiIndex) -> Result<Complex64> {
        if let Some(v) = self.values[r].get(n) {
            return Ok(*v);
        }
        let v = laguerre_neg_shift(n, self.b[r], &self.w[r])?;
        self.values[r].insert(n.clone(), v);
        Ok(v)
    }
}

/// The substituted expansion, evaluated term by term over every `(n⁽¹⁾, ..., n⁽ᴸ⁾)`.
///
/// `betas = [β, β₁, ..., β_L]`, `ws = [w⁽¹⁾, ..., w⁽ᴸ⁺¹⁾]`.
pub fn cor1_expansion(
    alpha: Complex64,
    gamma: Complex64,
    betas: &[Complex64],
    ws: &[CPoint],
    u: &CPoint,
    ctl: &SeriesControl,
) -> Result<IdentityReport> {
    let start = Instant::now();
    ctl.validate()?;
    let levels = check_levels(betas, ws, 1)?;
    let mut named = vec![("u", u)];
    named.extend(ws.iter().map(|w| ("w", w)));
    let k = require_same_dim(&named)?;
    require_l1_below_one("u", u)?;
    require_not_nonpositive("γ", gamma)?;
    for r in 1..=levels {
        require_not_nonpositive(&format!("β_{r} - β_{}", r - 1), betas[r] - betas[r - 1])?;
    }
    let inner = SeriesControl::inner();
    let s = -u.angle();
    let lhs = humbert_phi1_series(Phi1Params::new(alpha, betas[0], gamma), s, -u.hadamard(&sum_points(ws)?)?.angle(), &inner)?;
    let tail_y = -u.hadamard(&ws[levels])?.angle();
    let mut cache = LevelCache::new((0..levels).map(|r| betas[r] - betas[r + 1]).collect(), ws);
    let sum = sum_shells(ctl, "cor1_expansion", |t| {
        let mut acc = CompensatedSum::new();
        let mut count = 0u128;
        for n in Shell::new(k * levels, t) {
            let parts = n.split(levels);
            let mut term = ONE;
            for (r, p) in parts.iter().enumerate() {
                term *= u.power(p)? * cache.get(r, p)?;
            }
            acc.add(term);
            count += 1;
        }
        let shell = acc.value();
        if shell == ZERO {
            return Ok((ZERO, count));
        }
        let tf = t as f64;
        let phi = humbert_phi1_series(Phi1Params::new(alpha + tf, betas[levels], gamma + tf), s, tail_y, &inner)?;
        Ok((pochhammer_ratio(alpha, gamma, t)? * shell * phi, count))
    })?;
    Ok(IdentityReport::new("cor1_expansion", lhs, sum.value)
        .series(sum.order, sum.order + 1, sum.converged)
        .timed(start))
}

/// The finite addition formula at `⟨u⟩ = -1`: `a = [a₁, ..., a_{L+1}]`, `ws = [w⁽¹⁾, ..., w⁽ᴸ⁺¹⁾]`.
pub fn cor3_addition(
    m: usize,
    a: &[Complex64],
    u: &CPoint,
    ws: &[CPoint],
    ctl: &SeriesControl,
) -> Result<IdentityReport> {
    let start = Instant::now();
    if a.len() < 2 || ws.len() != a.len() {
        return Err(Error::Domain(format!(
            "need L+1 >= 2 parameters a_r and as many w vectors, got {} and {}",
            a.len(),
            ws.len()
        )));
    }
    let levels = a.len() - 1;
    let mut named = vec![("u", u)];
    named.extend(ws.iter().map(|w| ("w", w)));
    let k = require_same_dim(&named)?;
    require_angle(u, -1.0)?;
    for (r, &ar) in a.iter().enumerate() {
        require_not_nonpositive(&format!("a_{}", r + 1), ar)?;
    }
    let total_a: Complex64 = a.iter().sum();
    require_not_nonpositive("a_1 + ... + a_{L+1}", total_a)?;
    let needed = graded_count(k * levels, m);
    if needed > ctl.index_budget {
        return Err(Error::BudgetExceeded { what: "cor3_addition index set".into(), needed, cap: ctl.index_budget });
    }

    let lhs = laguerre_uni(m, total_a, -u.hadamard(&sum_points(ws)?)?.angle());
    let last_arg = -u.hadamard(&ws[levels])?.angle();
    let minus_u = -u;
    let mut cache = LevelCache::new(a[..levels].iter().map(|&ar| -ar).collect(), ws);
    let mut acc = CompensatedSum::new();
    for n in graded_enumerate(k * levels, m) {
        let t = n.total();
        let parts = n.split(levels);
        let mut term = laguerre_uni(m - t, a[levels] + t as f64, last_arg);
        for (r, p) in parts.iter().enumerate() {
            term *= minus_u.power(p)? * cache.get(r, p)?;
        }
        acc.add(term);
    }
    Ok(IdentityReport::new("cor3_addition", lhs, acc.value()).series(m, m + 1, true).timed(start))
}

/// `Γ((α+T)/2 + 1) / (Γ((α+T)/2 - b + 1) (α+T))`, the Kummer weight of total order `T`.
fn kummer_weight(alpha: Complex64, b: Complex64, t: usize) -> Result<Complex64> {
    let a = alpha + t as f64;
    Ok(gamma_ratio(a / 2.0 + 1.0, a / 2.0 - b + 1.0)? / a)
}

/// `Σ_T weight(T) Σ_{Σ⟨n⁽ʳ⁾⟩ = T} u^{Σ n⁽ʳ⁾} Π_r L_{n⁽ʳ⁾}^{(β_r-β_{r-1}-⟨n⁽ʳ⁾⟩)}(w⁽ʳ⁾)`.
fn kummer_series(
    id: &str,
    alpha: Complex64,
    betas: &[Complex64],
    ws: &[CPoint],
    u: &CPoint,
    ctl: &SeriesControl,
) -> Result<crate::series::SeriesSum> {
    let levels = betas.len() - 1;
    let beta_last = betas[levels];
    let chain_levels = (0..levels)
        .map(|r| Level { b: betas[r] - betas[r + 1], z: ws[r].clone(), c: u.clone() })
        .collect();
    let mut chain = LevelChain::new(chain_levels);
    sum_shells(ctl, id, |t| {
        let shell = chain.next_shell(t);
        Ok((kummer_weight(alpha, beta_last, t)? * shell, chain.shell_size(t)))
    })
}

fn kummer_checks(alpha: Complex64, betas: &[Complex64], ws: &[CPoint], u: &CPoint) -> Result<usize> {
    let levels = check_levels(betas, ws, 0)?;
    let mut named = vec![("u", u)];
    named.extend(ws.iter().map(|w| ("w", w)));
    require_same_dim(&named)?;
    require_angle(u, 1.0)?;
    let beta_last = betas[levels];
    if !(beta_last.re < 1.0) {
        return Err(Error::Domain(format!("Re(β_L) < 1 required, got β_L = {beta_last}")));
    }
    require_not_nonpositive("α - β_L + 1", alpha - beta_last + 1.0)?;
    Ok(levels)
}

/// Kummer-summed expansion at `⟨u⟩ = 1`; `betas = [β, β₁, ..., β_L]`, `ws = [w⁽¹⁾, ..., w⁽ᴸ⁾]`.
///
/// The left side `Φ₁[α,β;α-β_L+1;-1,y]` is evaluated by the beta-measure integral
/// with `nodes` points, which needs real `α > 0` and real `β_L`.
pub fn cor4_kummer(
    alpha: Complex64,
    betas: &[Complex64],
    ws: &[CPoint],
    u: &CPoint,
    ctl: &SeriesControl,
    nodes: usize,
) -> Result<IdentityReport> {
    let start = Instant::now();
    ctl.validate()?;
    let levels = kummer_checks(alpha, betas, ws, u)?;
    let beta_last = betas[levels];
    let y = -u.hadamard(&sum_points(ws)?)?.angle();
    let lhs = humbert_phi1_integral_auto(Phi1Params::new(alpha, betas[0], alpha - beta_last + 1.0), -ONE, y, nodes)?;
    let pref = gamma_ratio(alpha - beta_last + 1.0, alpha)?;
    let sum = kummer_series("cor4_kummer", alpha, betas, ws, u, ctl)?;
    Ok(IdentityReport::new("cor4_kummer", lhs, pref * sum.value)
        .series(sum.order, sum.order + 1, sum.converged)
        .timed(start))
}

/// Both evaluations of `Γ(α)/Γ(α-β+1) · Φ₁[α,β;α-β+1;-1,-y]`: the `₁F₂` split and,
/// when `α` and `β` are real, the beta-measure integral with `nodes` points.
pub fn cor5_lhs_routes(
    alpha: Complex64,
    beta: Complex64,
    y: Complex64,
    nodes: usize,
) -> Result<(Complex64, Option<Complex64>)> {
    let inner = SeriesControl::inner();
    let scale = gamma_ratio(alpha, alpha - beta + 1.0)?;
    let split = scale * phi1_neg1_split(alpha, beta, -y, &inner)?;
    let integral = match humbert_phi1_integral_auto(Phi1Params::new(alpha, beta, alpha - beta + 1.0), -ONE, -y, nodes) {
        Ok(v) => Some(scale * v),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    Ok((split, integral))
}

/// The `₁F₂` form at `⟨u⟩ = 1` with `β_L = β`; `betas = [β, β₁, ..., β_{L-1}, β]`.
///
/// The report's left side is the `₁F₂` combination; the channel `lhs_route_gap`
/// holds its relative distance to the integral route when that route applies.
pub fn cor5_split(
    alpha: Complex64,
    betas: &[Complex64],
    ws: &[CPoint],
    u: &CPoint,
    ctl: &SeriesControl,
    nodes: usize,
) -> Result<IdentityReport> {
    let start = Instant::now();
    ctl.validate()?;
    let levels = kummer_checks(alpha, betas, ws, u)?;
    let beta = betas[0];
    if (betas[levels] - beta).norm() > 1e-14 * beta.norm().max(1.0) {
        return Err(Error::Domain(format!("β_L = β required, got β = {beta}, β_L = {}", betas[levels])));
    }
    let y = u.hadamard(&sum_points(ws)?)?.angle();
    let (split, integral) = cor5_lhs_routes(alpha, beta, y, nodes)?;
    let sum = kummer_series("cor5_split", alpha, betas, ws, u, ctl)?;
    let mut rep = IdentityReport::new("cor5_split", split, sum.value).series(sum.order, sum.order + 1, sum.converged);
    if let Some(v) = integral {
        rep = rep.channel("lhs_route_gap", (split - v).norm() / split.norm().max(v.norm()).max(1e-300));
    }
    Ok(rep.timed(start))
}
