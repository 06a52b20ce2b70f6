//! Both sides of each generating-function identity, evaluated independently.
//!
//! Every evaluator returns an [`IdentityReport`]; the left side is a closed or
//! low-dimensional form, the right side a truncated multiple series or a quadrature.

mod classical;
mod corollaries;
mod diagonal;
mod expansion;
mod levels;

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cpoint::CPoint;
use crate::error::{Error, Result};
use crate::gamma::nonpositive_integer;

pub use classical::{cosine_beta_identity, hardy_hille, product_formula, product_rule, XiEta};
pub use corollaries::{cor1_expansion, cor3_addition, cor4_kummer, cor5_lhs_routes, cor5_split};
pub use diagonal::{
    central_binomial_diagonal, diagonal_coefficient, diagonal_gf, diagonal_rule, DiagonalFinding,
    DiagonalSign,
};
pub use expansion::{lemma_expansion, prop1_exponential, prop1_general, theorem_multiple};

/// One evaluation of an identity: both sides, the residual, and how the series ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    /// Highest total order (or node count, for quadrature sides) that entered the sum.
    pub truncation_order: usize,
    /// Number of graded shells summed.
    pub shells_used: usize,
    /// The tail criterion was met (always true for finite identities).
    pub converged: bool,
    /// Seconds spent in the evaluator.
    pub wall_time: f64,
    /// Secondary measurements, e.g. the imaginary part of a real integral.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub channels: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn new(identity_id: &str, lhs: Complex64, rhs: Complex64) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let rel_residual = abs_residual / lhs.norm().max(rhs.norm()).max(1e-300);
        IdentityReport {
            identity_id: identity_id.to_string(),
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            truncation_order: 0,
            shells_used: 0,
            converged: true,
            wall_time: 0.0,
            channels: BTreeMap::new(),
            note: None,
        }
    }

    pub(crate) fn series(mut self, order: usize, shells: usize, converged: bool) -> Self {
        self.truncation_order = order;
        self.shells_used = shells;
        self.converged = converged;
        self
    }

    pub(crate) fn timed(mut self, start: Instant) -> Self {
        self.wall_time = start.elapsed().as_secs_f64();
        self
    }

    pub(crate) fn channel(mut self, name: &str, value: f64) -> Self {
        self.channels.insert(name.to_string(), value);
        self
    }

    /// True when the series converged and the relative residual is within `tol`.
    pub fn passes(&self, tol: f64) -> bool {
        self.converged && self.rel_residual <= tol
    }
}

/// Erdélyi's kernel `(u; x, y)` of the bilinear generating function.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyHilleKernel {
    pub u: CPoint,
    pub x: CPoint,
    pub y: CPoint,
    pub value: Complex64,
}

impl HardyHilleKernel {
    /// `[⟨u∘x∘y⟩ - ⟨u⟩⟨u∘x∘y⟩ + ⟨u∘x⟩⟨u∘y⟩] / (1-⟨u⟩)²`.
    pub fn new(u: &CPoint, x: &CPoint, y: &CPoint) -> Result<Self> {
        let ux = u.hadamard(x)?;
        let uy = u.hadamard(y)?;
        let uxy = ux.hadamard(y)?;
        let s = u.angle();
        let den = (Complex64::new(1.0, 0.0) - s).powu(2);
        if den.norm() == 0.0 {
            return Err(Error::Domain("(u; x, y) needs ⟨u⟩ ≠ 1".into()));
        }
        let value = (uxy.angle() - s * uxy.angle() + ux.angle() * uy.angle()) / den;
        Ok(HardyHilleKernel { u: u.clone(), x: x.clone(), y: y.clone(), value })
    }
}

pub(crate) fn require_l1_below_one(name: &str, u: &CPoint) -> Result<()> {
    let l1 = u.l1_norm();
    if !(l1 < 1.0) {
        return Err(Error::Domain(format!("|{name}_1| + ... + |{name}_k| < 1 required, got {l1}")));
    }
    Ok(())
}

pub(crate) fn require_not_nonpositive(name: &str, z: Complex64) -> Result<()> {
    if nonpositive_integer(z).is_some() {
        return Err(Error::Domain(format!("{name} must not be a nonpositive integer, got {z}")));
    }
    Ok(())
}

pub(crate) fn require_same_dim(points: &[(&str, &CPoint)]) -> Result<usize> {
    let k = points[0].1.dim();
    for (name, p) in points {
        if p.dim() != k {
            return Err(Error::Domain(format!("{name} has dimension {}, expected {k}", p.dim())));
        }
    }
    Ok(k)
}

/// `⟨u⟩ = target` to `1e-14` (relative to `max(1, |u|_1)`).
pub(crate) fn require_angle(u: &CPoint, target: f64) -> Result<()> {
    let s = u.angle();
    if (s - target).norm() > 1e-14 * u.l1_norm().max(1.0) {
        let sym = if target < 0.0 { "−" } else { "" };
        return Err(Error::Domain(format!("⟨u⟩ = {sym}{} required, got {s}", target.abs())));
    }
    Ok(())
}
