//! Every checkable identity by name: parameter signature, admissibility checks,
//! random admissible samples, default tolerances, and evaluation.

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::params::{complex_json, complexes_json, point_json, points_json, Params};
use crate::cpoint::CPoint;
use crate::error::{Error, Result};
use crate::hypergeometric::{le_roy_asymptotic, le_roy_series};
use crate::identities::{
    self, require_angle as angle_is, require_l1_below_one as l1_below_one,
    require_not_nonpositive as not_nonpositive, require_same_dim as same_dim, IdentityReport,
};
use crate::laguerre::{gf_coefficients, laguerre_multi, laguerre_neg_shift};
use crate::multi_index::{graded_enumerate, MultiIndex};
use crate::series::SeriesControl;

/// Shape parameters accepted by every identity: dimension and number of levels.
const META: [&str; 2] = ["k", "levels"];

/// An identity that `check` and suites can evaluate.
#[derive(Debug, Clone, Copy)]
pub struct IdentityInfo {
    pub id: &'static str,
    pub params: &'static [&'static str],
    pub summary: &'static str,
}

pub const IDENTITIES: &[IdentityInfo] = &[
    IdentityInfo { id: "gf_coefficients", params: &["alpha", "x", "order"], summary: "Taylor coefficients of the generating function vs the finite sum" },
    IdentityInfo { id: "prop1_general", params: &["alpha", "beta", "gamma", "u", "x"], summary: "Φ₁ generating function of L_n^(-β-⟨n⟩)" },
    IdentityInfo { id: "prop1_exponential", params: &["beta", "u", "x"], summary: "exponential generating function of L_n^(-β-⟨n⟩)" },
    IdentityInfo { id: "lemma_expansion", params: &["alpha", "beta", "beta1", "gamma", "sigma", "x", "y"], summary: "one-level re-expansion of Φ₁" },
    IdentityInfo { id: "theorem_multiple", params: &["alpha", "gamma", "betas", "sigmas", "x", "y"], summary: "L-level multiple generating function" },
    IdentityInfo { id: "theorem_lemma_equivalence", params: &["alpha", "beta", "beta1", "gamma", "sigma", "x", "y"], summary: "one-level theorem series vs lemma series" },
    IdentityInfo { id: "cor1_expansion", params: &["alpha", "gamma", "betas", "ws", "u"], summary: "substituted multiple expansion" },
    IdentityInfo { id: "cor3_addition", params: &["m", "a", "u", "ws"], summary: "finite addition formula at ⟨u⟩ = -1" },
    IdentityInfo { id: "cor4_kummer", params: &["alpha", "betas", "ws", "u"], summary: "Kummer-summed expansion at ⟨u⟩ = 1" },
    IdentityInfo { id: "cor5_split", params: &["alpha", "betas", "ws", "u"], summary: "₁F₂ form at ⟨u⟩ = 1 with β_L = β" },
    IdentityInfo { id: "cor5_routes", params: &["alpha", "beta", "y"], summary: "₁F₂ split vs beta integral of Φ₁ at x = -1" },
    IdentityInfo { id: "hardy_hille", params: &["alpha", "x", "y", "u"], summary: "bilinear generating function with Bessel kernel" },
    IdentityInfo { id: "hardy_hille_symmetry", params: &["alpha", "x", "y", "u"], summary: "bilinear series under x <-> y" },
    IdentityInfo { id: "product_formula", params: &["m", "n", "alpha", "beta", "x", "y"], summary: "integral representation of L_m^(α)(x) L_n^(β)(y)" },
    IdentityInfo { id: "cosine_beta", params: &["alpha", "beta"], summary: "beta function as a cosine-power integral" },
    IdentityInfo { id: "diagonal_gf", params: &["beta", "x", "u"], summary: "main-diagonal series vs Le Roy integral" },
    IdentityInfo { id: "diagonal_coefficient", params: &["n", "beta", "x", "radius"], summary: "diagonal coefficient recovered from the integral" },
    IdentityInfo { id: "diagonal_example", params: &["terms", "u"], summary: "diagonal of 1/(1-x-y): which of (1∓4u)^(-1/2)" },
    IdentityInfo { id: "le_roy_asymptotic", params: &["k", "z"], summary: "Le Roy series vs real-axis asymptotic" },
];

pub fn info(id: &str) -> Result<&'static IdentityInfo> {
    IDENTITIES.iter().find(|i| i.id == id).ok_or_else(|| {
        let names: Vec<&str> = IDENTITIES.iter().map(|i| i.id).collect();
        Error::Domain(format!("unknown identity `{id}` (known: {})", names.join(", ")))
    })
}

/// Per-entry overrides of the series truncation policy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_window: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl SeriesOverride {
    pub fn is_empty(&self) -> bool {
        *self == SeriesOverride::default()
    }

    /// Later fields win.
    pub fn or(self, fallback: SeriesOverride) -> SeriesOverride {
        SeriesOverride {
            max_order: self.max_order.or(fallback.max_order),
            rel_tol: self.rel_tol.or(fallback.rel_tol),
            tail_window: self.tail_window.or(fallback.tail_window),
            budget: self.budget.or(fallback.budget),
        }
    }

    pub fn apply(&self, base: SeriesControl) -> Result<SeriesControl> {
        let ctl = SeriesControl {
            max_total_order: self.max_order.unwrap_or(base.max_total_order),
            rel_tol: self.rel_tol.unwrap_or(base.rel_tol),
            tail_window: self.tail_window.unwrap_or(base.tail_window),
            index_budget: self.budget.map(u128::from).unwrap_or(base.index_budget),
        };
        ctl.validate()?;
        Ok(ctl)
    }
}

/// Per-entry quadrature sizes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_axis: Option<usize>,
}

impl QuadratureOverride {
    pub fn is_empty(&self) -> bool {
        *self == QuadratureOverride::default()
    }
}

/// Evaluation settings for one identity check.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOptions {
    pub series: SeriesOverride,
    pub quadrature: QuadratureOverride,
}

/// Fully parsed and checked arguments of one identity.
#[derive(Debug, Clone)]
enum Call {
    GfCoefficients { alpha: Complex64, x: CPoint, order: usize },
    Prop1General { alpha: Complex64, beta: Complex64, gamma: Complex64, u: CPoint, x: CPoint },
    Prop1Exponential { beta: Complex64, u: CPoint, x: CPoint },
    Lemma { alpha: Complex64, beta: Complex64, beta1: Complex64, gamma: Complex64, sigma: CPoint, x: CPoint, y: CPoint, equivalence: bool },
    Theorem { alpha: Complex64, gamma: Complex64, betas: Vec<Complex64>, sigmas: Vec<CPoint>, x: CPoint, y: CPoint },
    Cor1 { alpha: Complex64, gamma: Complex64, betas: Vec<Complex64>, ws: Vec<CPoint>, u: CPoint },
    Cor3 { m: usize, a: Vec<Complex64>, u: CPoint, ws: Vec<CPoint> },
    Cor4 { alpha: Complex64, betas: Vec<Complex64>, ws: Vec<CPoint>, u: CPoint, split: bool },
    Cor5Routes { alpha: Complex64, beta: Complex64, y: Complex64 },
    HardyHille { alpha: Complex64, x: CPoint, y: CPoint, u: CPoint, swap: bool },
    Product { m: MultiIndex, n: MultiIndex, alpha: Complex64, beta: Complex64, x: CPoint, y: CPoint },
    CosineBeta { alpha: f64, beta: f64 },
    DiagonalGf { beta: Complex64, x: CPoint, u: Complex64 },
    DiagonalCoefficient { n: usize, beta: Complex64, x: CPoint, radius: f64 },
    DiagonalExample { terms: usize, u: f64 },
    LeRoyAsymptotic { k: u32, z: f64 },
}


fn check_meta(p: &Params, k: usize, levels: Option<usize>) -> Result<()> {
    if p.has("k") && p.uint("k")? != k {
        return Err(Error::Domain(format!("k = {} does not match the vectors' dimension {k}", p.uint("k")?)));
    }
    if let (true, Some(l)) = (p.has("levels"), levels) {
        if p.uint("levels")? != l {
            return Err(Error::Domain(format!("levels = {} does not match the {l} levels given", p.uint("levels")?)));
        }
    }
    Ok(())
}




fn level_steps(betas: &[Complex64]) -> Result<()> {
    for r in 1..betas.len() {
        not_nonpositive(&format!("β_{r} - β_{}", r - 1), betas[r] - betas[r - 1])?;
    }
    Ok(())
}

fn nonzero(name: &str, x: &CPoint) -> Result<()> {
    if x.iter().any(|z| z.norm() == 0.0) {
        return Err(Error::Domain(format!("every {name}_i must be nonzero")));
    }
    Ok(())
}

fn at_least_two(name: &str, v: &[Complex64]) -> Result<usize> {
    if v.len() < 2 {
        return Err(Error::Domain(format!("`{name}` needs at least two entries (L >= 1), got {}", v.len())));
    }
    Ok(v.len() - 1)
}

fn count_is(name: &str, v: &[CPoint], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::Domain(format!("`{name}` needs {expected} vectors, got {}", v.len())));
    }
    Ok(())
}

fn diagonal_bound(beta: Complex64, k: usize, u: Complex64) -> Result<()> {
    if !(beta.re > 0.0) {
        return Err(Error::Domain(format!("Re(β) > 0 required, got β = {beta}")));
    }
    let bound = (k as f64).powi(k as i32).recip();
    if !(u.norm() < bound) {
        return Err(Error::Domain(format!("|u| < 1/k^k = {bound} required for k = {k}, got |u| = {}", u.norm())));
    }
    Ok(())
}

fn parse(id: &str, p: &Params) -> Result<Call> {
    let entry = info(id)?;
    let mut allowed: Vec<&str> = entry.params.to_vec();
    allowed.extend(META);
    p.only(&allowed)?;
    let call = match id {
        "gf_coefficients" => {
            let x = p.point("x")?;
            let order = p.uint_or("order", 5)?;
            if order > 12 {
                return Err(Error::Domain(format!("order <= 12 required for the coefficient oracle, got {order}")));
            }
            check_meta(p, x.dim(), None)?;
            Call::GfCoefficients { alpha: p.complex("alpha")?, x, order }
        }
        "prop1_general" => {
            let (u, x) = (p.point("u")?, p.point("x")?);
            let k = same_dim(&[("u", &u), ("x", &x)])?;
            check_meta(p, k, None)?;
            l1_below_one("u", &u)?;
            let (beta, gamma) = (p.complex("beta")?, p.complex("gamma")?);
            not_nonpositive("-β", -beta)?;
            not_nonpositive("γ", gamma)?;
            Call::Prop1General { alpha: p.complex("alpha")?, beta, gamma, u, x }
        }
        "prop1_exponential" => {
            let (u, x) = (p.point("u")?, p.point("x")?);
            let k = same_dim(&[("u", &u), ("x", &x)])?;
            check_meta(p, k, None)?;
            l1_below_one("u", &u)?;
            Call::Prop1Exponential { beta: p.complex("beta")?, u, x }
        }
        "lemma_expansion" | "theorem_lemma_equivalence" => {
            let (sigma, x, y) = (p.point("sigma")?, p.point("x")?, p.point("y")?);
            let k = same_dim(&[("sigma", &sigma), ("x", &x), ("y", &y)])?;
            check_meta(p, k, Some(1))?;
            l1_below_one("x", &x)?;
            nonzero("x", &x)?;
            let (beta, beta1, gamma) = (p.complex("beta")?, p.complex("beta1")?, p.complex("gamma")?);
            not_nonpositive("β₁ - β", beta1 - beta)?;
            not_nonpositive("γ", gamma)?;
            let equivalence = id == "theorem_lemma_equivalence";
            Call::Lemma { alpha: p.complex("alpha")?, beta, beta1, gamma, sigma, x, y, equivalence }
        }
        "theorem_multiple" => {
            let betas = p.complexes("betas")?;
            let levels = at_least_two("betas", &betas)?;
            let sigmas = p.points("sigmas")?;
            count_is("sigmas", &sigmas, levels)?;
            let (x, y) = (p.point("x")?, p.point("y")?);
            let mut named = vec![("x", &x), ("y", &y)];
            named.extend(sigmas.iter().map(|s| ("sigmas", s)));
            let k = same_dim(&named)?;
            check_meta(p, k, Some(levels))?;
            l1_below_one("x", &x)?;
            nonzero("x", &x)?;
            let gamma = p.complex("gamma")?;
            not_nonpositive("γ", gamma)?;
            level_steps(&betas)?;
            Call::Theorem { alpha: p.complex("alpha")?, gamma, betas, sigmas, x, y }
        }
        "cor1_expansion" => {
            let betas = p.complexes("betas")?;
            let levels = at_least_two("betas", &betas)?;
            let ws = p.points("ws")?;
            count_is("ws", &ws, levels + 1)?;
            let u = p.point("u")?;
            let mut named = vec![("u", &u)];
            named.extend(ws.iter().map(|w| ("ws", w)));
            let k = same_dim(&named)?;
            check_meta(p, k, Some(levels))?;
            l1_below_one("u", &u)?;
            let gamma = p.complex("gamma")?;
            not_nonpositive("γ", gamma)?;
            level_steps(&betas)?;
            Call::Cor1 { alpha: p.complex("alpha")?, gamma, betas, ws, u }
        }
        "cor3_addition" => {
            let a = p.complexes("a")?;
            let levels = at_least_two("a", &a)?;
            let ws = p.points("ws")?;
            count_is("ws", &ws, levels + 1)?;
            let u = p.point("u")?;
            let mut named = vec![("u", &u)];
            named.extend(ws.iter().map(|w| ("ws", w)));
            let k = same_dim(&named)?;
            check_meta(p, k, Some(levels))?;
            angle_is(&u, -1.0)?;
            for (r, &ar) in a.iter().enumerate() {
                not_nonpositive(&format!("a_{}", r + 1), ar)?;
            }
            not_nonpositive("a_1 + ... + a_{L+1}", a.iter().sum())?;
            Call::Cor3 { m: p.uint("m")?, a, u, ws }
        }
        "cor4_kummer" | "cor5_split" => {
            let betas = p.complexes("betas")?;
            let levels = at_least_two("betas", &betas)?;
            let split = id == "cor5_split";
            if split && levels < 2 {
                return Err(Error::Domain("β_L = β needs L >= 2 (with L = 1 the step β_1 - β is zero)".into()));
            }
            let ws = p.points("ws")?;
            count_is("ws", &ws, levels)?;
            let u = p.point("u")?;
            let mut named = vec![("u", &u)];
            named.extend(ws.iter().map(|w| ("ws", w)));
            let k = same_dim(&named)?;
            check_meta(p, k, Some(levels))?;
            angle_is(&u, 1.0)?;
            let alpha = p.complex("alpha")?;
            let last = betas[levels];
            if !(last.re < 1.0) {
                return Err(Error::Domain(format!("Re(β_L) < 1 required, got β_L = {last}")));
            }
            not_nonpositive("α - β_L + 1", alpha - last + 1.0)?;
            level_steps(&betas)?;
            if split && (last - betas[0]).norm() > 1e-14 * betas[0].norm().max(1.0) {
                return Err(Error::Domain(format!("β_L = β required, got β = {}, β_L = {last}", betas[0])));
            }
            Call::Cor4 { alpha, betas, ws, u, split }
        }
        "cor5_routes" => {
            let (alpha, beta) = (p.complex("alpha")?, p.complex("beta")?);
            not_nonpositive("α - β + 1", alpha - beta + 1.0)?;
            not_nonpositive("α", alpha)?;
            Call::Cor5Routes { alpha, beta, y: p.complex("y")? }
        }
        "hardy_hille" | "hardy_hille_symmetry" => {
            let (x, y, u) = (p.point("x")?, p.point("y")?, p.point("u")?);
            let k = same_dim(&[("x", &x), ("y", &y), ("u", &u)])?;
            check_meta(p, k, None)?;
            l1_below_one("u", &u)?;
            let alpha = p.complex("alpha")?;
            not_nonpositive("α + 1", alpha + 1.0)?;
            Call::HardyHille { alpha, x, y, u, swap: id == "hardy_hille_symmetry" }
        }
        "product_formula" => {
            let (m, n) = (p.index("m")?, p.index("n")?);
            let (x, y) = (p.point("x")?, p.point("y")?);
            let k = same_dim(&[("x", &x), ("y", &y)])?;
            if m.dim() != k || n.dim() != k {
                return Err(Error::Domain(format!("`m` and `n` must have {k} components")));
            }
            check_meta(p, k, None)?;
            let (alpha, beta) = (p.complex("alpha")?, p.complex("beta")?);
            for (name, v) in [("α", alpha.re), ("β", beta.re), ("α + β", alpha.re + beta.re)] {
                if !(v > -1.0) {
                    return Err(Error::Domain(format!("Re({name}) > -1 required, got {v}")));
                }
            }
            Call::Product { m, n, alpha, beta, x, y }
        }
        "cosine_beta" => {
            let (alpha, beta) = (p.real("alpha")?, p.real("beta")?);
            if !(alpha > -1.0 && beta > -1.0 && alpha + beta > -1.0) {
                return Err(Error::Domain(format!("α, β, α + β > -1 required, got α = {alpha}, β = {beta}")));
            }
            Call::CosineBeta { alpha, beta }
        }
        "diagonal_gf" => {
            let x = p.point("x")?;
            check_meta(p, x.dim(), None)?;
            let (beta, u) = (p.complex("beta")?, p.complex("u")?);
            diagonal_bound(beta, x.dim(), u)?;
            Call::DiagonalGf { beta, x, u }
        }
        "diagonal_coefficient" => {
            let x = p.point("x")?;
            check_meta(p, x.dim(), None)?;
            let beta = p.complex("beta")?;
            let k = x.dim();
            let radius = if p.has("radius") { p.real("radius")? } else { 0.2 / (k as f64).powi(k as i32) };
            if !(radius > 0.0) {
                return Err(Error::Domain(format!("radius > 0 required, got {radius}")));
            }
            diagonal_bound(beta, k, Complex64::new(radius, 0.0))?;
            let n = p.uint("n")?;
            if n > 8 {
                return Err(Error::Domain(format!("n <= 8 required for circle extraction, got {n}")));
            }
            Call::DiagonalCoefficient { n, beta, x, radius }
        }
        "diagonal_example" => {
            let terms = p.uint_or("terms", 10)?;
            if !(2..=30).contains(&terms) {
                return Err(Error::Domain(format!("2 <= terms <= 30 required, got {terms}")));
            }
            let u = if p.has("u") { p.real("u")? } else { 0.1 };
            if !(u.abs() < 0.25) {
                return Err(Error::Domain(format!("|u| < 1/4 required, got {u}")));
            }
            Call::DiagonalExample { terms, u }
        }
        "le_roy_asymptotic" => {
            let k = p.uint("k")?;
            if !(2..=8).contains(&k) {
                return Err(Error::Domain(format!("integer order 2 <= k <= 8 required, got {k}")));
            }
            let z = p.real("z")?;
            if !(z > 0.0) {
                return Err(Error::Domain(format!("z > 0 required, got {z}")));
            }
            Call::LeRoyAsymptotic { k: k as u32, z }
        }
        _ => unreachable!("every registered identity is parsed"),
    };
    Ok(call)
}

/// Type-checks `params` against the identity's signature and its preconditions.
pub fn validate(id: &str, params: &Params) -> Result<()> {
    parse(id, params).map(|_| ())
}

/// Truncation policy per identity: the tail test sits one decade below the
/// default threshold, so a series stops as soon as it can no longer move the verdict.
fn base_control(id: &str) -> SeriesControl {
    let ctl = SeriesControl::default();
    match id {
        "diagonal_gf" => ctl.with_order(400),
        "prop1_general" | "prop1_exponential" => ctl.with_tol(1e-10),
        "lemma_expansion" | "cor1_expansion" | "hardy_hille" | "hardy_hille_symmetry" => ctl.with_tol(1e-9),
        "theorem_multiple" | "cor4_kummer" | "cor5_split" => ctl.with_tol(1e-8),
        _ => ctl,
    }
}

/// Threshold on the relative residual used when none is given.
pub fn default_tolerance(id: &str, params: &Params) -> f64 {
    let k = params.point("x").map(|x| x.dim()).unwrap_or(1);
    match id {
        "gf_coefficients" => 1e-11,
        "prop1_general" | "prop1_exponential" => 1e-9,
        "lemma_expansion" | "cor1_expansion" | "hardy_hille" => 1e-8,
        "diagonal_gf" if k == 1 => 1e-10,
        "theorem_multiple" | "cor4_kummer" | "cor5_split" | "diagonal_gf" => 1e-7,
        "theorem_lemma_equivalence" => 1e-11,
        "cor3_addition" | "hardy_hille_symmetry" | "diagonal_example" => 1e-12,
        "cor5_routes" | "cosine_beta" => 1e-9,
        "product_formula" if k == 1 => 1e-6,
        "product_formula" | "diagonal_coefficient" => 1e-5,
        "le_roy_asymptotic" => 0.02,
        _ => 1e-8,
    }
}

/// Evaluates both sides of the identity `id`.
pub fn evaluate(id: &str, params: &Params, opts: &RunOptions) -> Result<IdentityReport> {
    let call = parse(id, params)?;
    let ctl = opts.series.apply(base_control(id))?;
    let q = opts.quadrature;
    let start = Instant::now();
    let report = match call {
        Call::GfCoefficients { alpha, x, order } => {
            let coef = gf_coefficients(alpha, &x, order)?;
            let mut worst: Option<IdentityReport> = None;
            for n in graded_enumerate(x.dim(), order) {
                let rep = IdentityReport::new("gf_coefficients", coef[&n], laguerre_multi(&n, alpha, &x)?);
                if worst.as_ref().is_none_or(|w| rep.rel_residual > w.rel_residual) {
                    worst = Some(rep);
                }
            }
            let mut rep = worst.expect("order 0 is always present");
            rep.truncation_order = order;
            rep.shells_used = order + 1;
            rep
        }
        Call::Prop1General { alpha, beta, gamma, u, x } => identities::prop1_general(alpha, beta, gamma, &u, &x, &ctl)?,
        Call::Prop1Exponential { beta, u, x } => identities::prop1_exponential(beta, &u, &x, &ctl)?,
        Call::Lemma { alpha, beta, beta1, gamma, sigma, x, y, equivalence: false } => {
            identities::lemma_expansion(alpha, beta, beta1, gamma, &sigma, &x, &y, &ctl)?
        }
        Call::Lemma { alpha, beta, beta1, gamma, sigma, x, y, equivalence: true } => {
            let lemma = identities::lemma_expansion(alpha, beta, beta1, gamma, &sigma, &x, &y, &ctl)?;
            let thm = identities::theorem_multiple(alpha, gamma, &[beta, beta1], &[sigma], &x, &y, &ctl)?;
            IdentityReport::new("theorem_lemma_equivalence", lemma.rhs, thm.rhs).series(
                thm.truncation_order,
                thm.shells_used,
                lemma.converged && thm.converged,
            )
        }
        Call::Theorem { alpha, gamma, betas, sigmas, x, y } => {
            identities::theorem_multiple(alpha, gamma, &betas, &sigmas, &x, &y, &ctl)?
        }
        Call::Cor1 { alpha, gamma, betas, ws, u } => identities::cor1_expansion(alpha, gamma, &betas, &ws, &u, &ctl)?,
        Call::Cor3 { m, a, u, ws } => identities::cor3_addition(m, &a, &u, &ws, &ctl)?,
        Call::Cor4 { alpha, betas, ws, u, split } => {
            let nodes = q.nodes.unwrap_or(80);
            if split {
                identities::cor5_split(alpha, &betas, &ws, &u, &ctl, nodes)?
            } else {
                identities::cor4_kummer(alpha, &betas, &ws, &u, &ctl, nodes)?
            }
        }
        Call::Cor5Routes { alpha, beta, y } => {
            let nodes = q.nodes.unwrap_or(80);
            let (split, integral) = identities::cor5_lhs_routes(alpha, beta, y, nodes)?;
            let integral = integral.ok_or_else(|| {
                Error::Unsupported("the beta-integral route needs real α > 0 and real β < 1".into())
            })?;
            IdentityReport::new("cor5_routes", split, integral).series(nodes, 1, true)
        }
        Call::HardyHille { alpha, x, y, u, swap: false } => identities::hardy_hille(alpha, &x, &y, &u, &ctl)?,
        Call::HardyHille { alpha, x, y, u, swap: true } => {
            let a = identities::hardy_hille(alpha, &x, &y, &u, &ctl)?;
            let b = identities::hardy_hille(alpha, &y, &x, &u, &ctl)?;
            let rhs_gap = (a.rhs - b.rhs).norm() / a.rhs.norm().max(b.rhs.norm()).max(1e-300);
            IdentityReport::new("hardy_hille_symmetry", a.lhs, b.lhs)
                .series(a.truncation_order.max(b.truncation_order), a.shells_used, a.converged && b.converged)
                .channel("rhs_swap_gap", rhs_gap)
        }
        Call::Product { m, n, alpha, beta, x, y } => {
            let k = x.dim();
            let per_axis = q.per_axis.unwrap_or(if k == 1 { 96 } else { 64 });
            if alpha.im != 0.0 || beta.im != 0.0 {
                return Err(Error::Unsupported("product formula quadrature is only certified for real α, β".into()));
            }
            let rule = identities::product_rule(k, per_axis, alpha.re, beta.re)?;
            identities::product_formula(&m, &n, alpha, beta, &x, &y, &rule)?
        }
        Call::CosineBeta { alpha, beta } => identities::cosine_beta_identity(alpha, beta, q.nodes.unwrap_or(80))?,
        Call::DiagonalGf { beta, x, u } => {
            let rule = identities::diagonal_rule(beta, u, x.dim(), q.nodes.unwrap_or(200))?;
            identities::diagonal_gf(beta, &x, u, &ctl, &rule)?
        }
        Call::DiagonalCoefficient { n, beta, x, radius } => {
            let k = x.dim();
            let exact = laguerre_neg_shift(&MultiIndex::diagonal(k, n), beta, &x)?;
            let got = identities::diagonal_coefficient(n, beta, &x, radius, 16, q.nodes.unwrap_or(120))?;
            IdentityReport::new("diagonal_coefficient", exact, got).series(n, 1, true)
        }
        Call::DiagonalExample { terms, u } => identities::central_binomial_diagonal(terms).report(u),
        Call::LeRoyAsymptotic { k, z } => {
            let series = le_roy_series(Complex64::new(k as f64, 0.0), Complex64::new(z, 0.0), &SeriesControl::inner())?;
            let asym = le_roy_asymptotic(k, z)?;
            IdentityReport::new("le_roy_asymptotic", series, Complex64::new(asym, 0.0))
        }
    };
    let mut report = report;
    report.identity_id = id.to_string();
    if report.wall_time == 0.0 {
        report.wall_time = start.elapsed().as_secs_f64();
    }
    Ok(report)
}

fn uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

fn cplx<R: Rng>(rng: &mut R, re: (f64, f64), im: (f64, f64)) -> Complex64 {
    Complex64::new(uniform(rng, re.0, re.1), uniform(rng, im.0, im.1))
}

/// Complex entries with real and imaginary parts in `[-mag, mag]`.
fn point<R: Rng>(rng: &mut R, k: usize, mag: f64) -> CPoint {
    CPoint::new((0..k).map(|_| cplx(rng, (-mag, mag), (-mag, mag))).collect()).expect("k >= 1")
}

fn real_point<R: Rng>(rng: &mut R, k: usize, lo: f64, hi: f64) -> CPoint {
    CPoint::new((0..k).map(|_| Complex64::new(uniform(rng, lo, hi), 0.0)).collect()).expect("k >= 1")
}

/// Random complex vector with `|u|_1` drawn from `[lo, hi]`.
fn point_l1<R: Rng>(rng: &mut R, k: usize, lo: f64, hi: f64) -> CPoint {
    let raw = point(rng, k, 1.0).map(|z| if z.norm() < 1e-3 { Complex64::new(0.5, 0.0) } else { z });
    let target = uniform(rng, lo, hi);
    raw.scale(Complex64::new(target / raw.l1_norm(), 0.0))
}

/// Complex vector with `⟨u⟩ = target` exactly in floating point.
fn point_with_angle<R: Rng>(rng: &mut R, k: usize, target: f64, positive: bool) -> CPoint {
    let mut e: Vec<Complex64> = if positive {
        let w: Vec<f64> = (0..k).map(|_| uniform(rng, 0.2, 1.0)).collect();
        let s: f64 = w.iter().sum();
        w.iter().map(|w| Complex64::new(target * w / s, 0.0)).collect()
    } else {
        (0..k).map(|_| cplx(rng, (-0.8, 0.8), (-0.8, 0.8))).collect()
    };
    let rest: Complex64 = e[..k - 1].iter().sum();
    e[k - 1] = Complex64::new(target, 0.0) - rest;
    CPoint::new(e).expect("k >= 1")
}

/// A random admissible parameter block for `id` in dimension `k` with `levels` levels.
///
/// The ranges are those used by the shipped suite; they stay inside the regime
/// where the default truncation and quadrature sizes meet the default tolerances.
pub fn sample<R: Rng>(id: &str, k: usize, levels: usize, rng: &mut R) -> Result<Params> {
    info(id)?;
    if k == 0 || levels == 0 {
        return Err(Error::Domain("k and levels must be positive".into()));
    }
    let mut p = Params::new();
    let c = |rng: &mut R| cplx(rng, (0.2, 2.5), (-0.5, 0.5));
    match id {
        "gf_coefficients" => {
            p.set("alpha", complex_json(cplx(rng, (-0.9, 3.0), (-1.0, 1.0))));
            p.set("x", point_json(&point(rng, k, 1.5)));
            p.set("order", json!(5));
        }
        "prop1_general" | "prop1_exponential" => {
            if id == "prop1_general" {
                p.set("alpha", complex_json(c(rng)));
                p.set("gamma", complex_json(cplx(rng, (0.5, 3.0), (-0.5, 0.5))));
            }
            p.set("beta", complex_json(cplx(rng, (-1.0, 2.0), (-0.5, 0.5))));
            p.set("u", point_json(&point_l1(rng, k, 0.05, 0.5)));
            p.set("x", point_json(&point(rng, k, 1.5)));
        }
        "lemma_expansion" | "theorem_lemma_equivalence" => {
            p.set("alpha", complex_json(c(rng)));
            p.set("beta", complex_json(cplx(rng, (-0.5, 1.5), (-0.3, 0.3))));
            p.set("beta1", complex_json(cplx(rng, (-0.5, 1.5), (-0.3, 0.3))));
            p.set("gamma", complex_json(cplx(rng, (0.8, 3.0), (-0.5, 0.5))));
            p.set("sigma", point_json(&sigma(rng, k)));
            p.set("x", point_json(&point_l1(rng, k, 0.1, 0.5)));
            p.set("y", point_json(&point(rng, k, 0.6)));
        }
        "theorem_multiple" => {
            p.set("alpha", complex_json(c(rng)));
            p.set("gamma", complex_json(cplx(rng, (0.8, 3.0), (-0.5, 0.5))));
            let betas: Vec<Complex64> = (0..=levels).map(|_| cplx(rng, (-0.5, 1.5), (-0.3, 0.3))).collect();
            p.set("betas", complexes_json(&betas));
            let sigmas: Vec<CPoint> = (0..levels).map(|_| sigma(rng, k)).collect();
            p.set("sigmas", points_json(&sigmas));
            p.set("x", point_json(&point_l1(rng, k, 0.1, 0.4)));
            p.set("y", point_json(&point(rng, k, 0.6)));
        }
        "cor1_expansion" => {
            p.set("alpha", complex_json(c(rng)));
            p.set("gamma", complex_json(cplx(rng, (0.8, 3.0), (-0.5, 0.5))));
            let betas: Vec<Complex64> = (0..=levels).map(|_| cplx(rng, (-0.5, 1.5), (-0.3, 0.3))).collect();
            p.set("betas", complexes_json(&betas));
            let ws: Vec<CPoint> = (0..=levels).map(|_| point(rng, k, 0.6)).collect();
            p.set("ws", points_json(&ws));
            p.set("u", point_json(&point_l1(rng, k, 0.05, 0.35)));
        }
        "cor3_addition" => {
            p.set("m", json!(rng.random_range(0..=6usize)));
            let a: Vec<Complex64> = (0..=levels).map(|_| c(rng)).collect();
            p.set("a", complexes_json(&a));
            p.set("u", point_json(&point_with_angle(rng, k, -1.0, false)));
            let ws: Vec<CPoint> = (0..=levels).map(|_| point(rng, k, 1.0)).collect();
            p.set("ws", points_json(&ws));
        }
        "cor4_kummer" | "cor5_split" => {
            p.set("alpha", json!(uniform(rng, 0.5, 2.5)));
            let mut betas = Vec::with_capacity(levels + 1);
            if id == "cor4_kummer" {
                betas.push(Complex64::new(uniform(rng, -4.8, -4.2), 0.0));
                for _ in 1..levels {
                    betas.push(Complex64::new(uniform(rng, -3.0, 0.5), 0.0));
                }
                betas.push(Complex64::new(uniform(rng, -0.9, 0.8), 0.0));
            } else {
                let beta = Complex64::new(uniform(rng, -0.9, 0.6), 0.0);
                betas.push(beta);
                for _ in 1..levels {
                    betas.push(cplx(rng, (-1.5, 1.5), (-0.3, 0.3)));
                }
                betas.push(beta);
            }
            p.set("betas", complexes_json(&betas));
            let ws: Vec<CPoint> = (0..levels).map(|_| point(rng, k, 0.5)).collect();
            p.set("ws", points_json(&ws));
            p.set("u", point_json(&point_with_angle(rng, k, 1.0, true)));
        }
        "cor5_routes" => {
            p.set("alpha", json!(uniform(rng, 0.5, 2.5)));
            p.set("beta", json!(uniform(rng, -0.9, 0.6)));
            p.set("y", complex_json(cplx(rng, (-1.5, 1.5), (-1.0, 1.0))));
        }
        "hardy_hille" | "hardy_hille_symmetry" => {
            let alphas = [-0.5, 0.0, 0.5, 2.0];
            p.set("alpha", json!(alphas[rng.random_range(0..alphas.len())]));
            // away from the negative axis, where L_n grows like e^{2√(n|x|)}
            let near_axis = |rng: &mut R| {
                CPoint::new((0..k).map(|_| cplx(rng, (-0.5, 2.0), (-0.5, 0.5))).collect()).expect("k >= 1")
            };
            p.set("x", point_json(&near_axis(rng)));
            p.set("y", point_json(&near_axis(rng)));
            p.set("u", point_json(&point_l1(rng, k, 0.05, 0.4)));
        }
        "product_formula" => {
            let max_degree = if k == 1 { 4 } else { 3 };
            let total = rng.random_range(0..=max_degree);
            let mut m = vec![0usize; k];
            let mut n = vec![0usize; k];
            for _ in 0..total {
                let j = rng.random_range(0..k);
                if rng.random_bool(0.5) {
                    m[j] += 1;
                } else {
                    n[j] += 1;
                }
            }
            p.set("m", json!(m));
            p.set("n", json!(n));
            p.set("alpha", json!(uniform(rng, -0.45, 2.0)));
            p.set("beta", json!(uniform(rng, -0.45, 2.0)));
            p.set("x", point_json(&real_point(rng, k, -1.0, 2.0)));
            p.set("y", point_json(&real_point(rng, k, -1.0, 2.0)));
        }
        "cosine_beta" => {
            p.set("alpha", json!(uniform(rng, -0.45, 3.0)));
            p.set("beta", json!(uniform(rng, -0.45, 3.0)));
        }
        "diagonal_gf" | "diagonal_coefficient" => {
            let betas = [0.7, 1.5, 3.0];
            p.set("beta", json!(betas[rng.random_range(0..betas.len())]));
            p.set("x", point_json(&real_point(rng, k, 0.0, 2.0)));
            if id == "diagonal_gf" {
                let bound = (k as f64).powi(k as i32).recip();
                p.set("u", json!(uniform(rng, 0.02, 0.8) * bound));
            } else {
                p.set("n", json!(rng.random_range(0..=3usize)));
            }
        }
        "diagonal_example" => {
            p.set("terms", json!(10));
            p.set("u", json!(0.1));
        }
        "le_roy_asymptotic" => {
            let order = if k >= 2 { k.min(8) } else { 2 + rng.random_range(0..2usize) };
            let w = uniform(rng, 35.0, 60.0);
            p.set("k", json!(order));
            p.set("z", json!((w / order as f64).powi(order as i32)));
        }
        _ => unreachable!("every registered identity has a sampler"),
    }
    Ok(p)
}

/// `given` with every missing parameter drawn from [`sample`].
pub fn complete<R: Rng>(id: &str, given: &Params, rng: &mut R) -> Result<Params> {
    let entry = info(id)?;
    let (k, levels) = shape(given)?;
    let mut params = given.clone();
    params.fill_from(sample(id, k, levels, rng)?);
    for meta in META {
        if !given.has(meta) && !entry.params.contains(&meta) {
            params.0.remove(meta);
        }
    }
    Ok(params)
}

fn sigma<R: Rng>(rng: &mut R, k: usize) -> CPoint {
    CPoint::new((0..k).map(|_| cplx(rng, (0.0, 1.0), (-0.3, 0.3))).collect()).expect("k >= 1")
}

/// `k` and `levels` requested by a parameter block, falling back to the shapes
/// of the vectors given and then to `k = 2`, `levels = 2`.
pub fn shape(params: &Params) -> Result<(usize, usize)> {
    let k = if params.has("k") {
        params.uint("k")?
    } else if let Some(name) = ["x", "u", "y", "sigma"].into_iter().find(|n| params.has(n)) {
        params.point(name)?.dim()
    } else if let Some(name) = ["ws", "sigmas"].into_iter().find(|n| params.has(n)) {
        params.points(name)?[0].dim()
    } else if let Some(Value::Array(m)) = params.0.get("m") {
        m.len()
    } else {
        2
    };
    let levels = if params.has("levels") {
        params.uint("levels")?
    } else if let Some(name) = ["betas", "a"].into_iter().find(|n| params.has(n)) {
        params.complexes(name)?.len().saturating_sub(1)
    } else if params.has("sigmas") {
        params.points("sigmas")?.len()
    } else {
        2
    };
    if k == 0 || levels == 0 {
        return Err(Error::Domain("k and levels must be positive".into()));
    }
    Ok((k, levels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_identity_samples_admissibly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for entry in IDENTITIES {
            for k in 1..=2 {
                let p = sample(entry.id, k, 2, &mut rng).unwrap();
                validate(entry.id, &p).unwrap_or_else(|e| panic!("{}: {e}", entry.id));
            }
        }
    }

    #[test]
    fn gates() {
        let p = Params::from_args(&["beta=1.5", "x=0.5,1.0", "u=0.3"]).unwrap();
        assert!(matches!(validate("diagonal_gf", &p), Err(Error::Domain(msg)) if msg.contains("1/k^k")));
        let p = Params::from_args(&["m=2", "a=0.5,1.5", "u=-0.4,-0.5", "ws=0.1,0.2;0.3,0.4"]).unwrap();
        assert!(matches!(validate("cor3_addition", &p), Err(Error::Domain(msg)) if msg.contains("⟨u⟩ = −1 required")));
        assert!(validate("no_such_identity", &p).is_err());
        let p = Params::from_args(&["beta=2", "u=0.3", "x=1.0", "bogus=1"]).unwrap();
        assert!(validate("prop1_exponential", &p).is_err());
    }

    #[test]
    fn evaluation_by_name() {
        let p = Params::from_args(&["beta=2", "u=0.3", "x=1.0"]).unwrap();
        let rep = evaluate("prop1_exponential", &p, &RunOptions::default()).unwrap();
        assert!(rep.passes(default_tolerance("prop1_exponential", &p)));
        assert_eq!(rep.identity_id, "prop1_exponential");
        let rep = evaluate("diagonal_example", &Params::new(), &RunOptions::default()).unwrap();
        assert!(rep.note.unwrap().contains("(1-4u)"));
    }

    #[test]
    fn shapes_from_vectors() {
        let p = Params::from_args(&["betas=1,2,3,4", "x=0.1,0.2,0.3"]).unwrap();
        assert_eq!(shape(&p).unwrap(), (3, 3));
        let p = Params::from_args(&["ws=1,2;3,4", "a=1,2"]).unwrap();
        assert_eq!(shape(&p).unwrap(), (2, 1));
        assert_eq!(shape(&Params::new()).unwrap(), (2, 2));
    }

    #[test]
    fn overrides_apply() {
        let o = SeriesOverride { max_order: Some(10), ..Default::default() };
        assert_eq!(o.apply(SeriesControl::default()).unwrap().max_total_order, 10);
        let bad = SeriesOverride { tail_window: Some(1), ..Default::default() };
        assert!(bad.apply(SeriesControl::default()).is_err());
    }
}
