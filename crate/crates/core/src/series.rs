//! Truncation policy and shell-by-shell summation of infinite series.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cpoint::CPoint;
use crate::error::{Error, Result};
use crate::multi_index::{MultiIndex, Shell};
use crate::sum::CompensatedSum;

/// When to stop summing an infinite (multiple) series.
///
/// A series is declared converged once `tail_window` consecutive graded shells
/// each contribute less than `rel_tol` times the magnitude of the running sum.
/// `index_budget` caps the number of multi-indices a single evaluation may visit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub max_total_order: usize,
    pub rel_tol: f64,
    pub tail_window: usize,
    #[serde(default = "default_budget")]
    pub index_budget: u128,
}

fn default_budget() -> u128 {
    5_000_000
}

impl SeriesControl {
    pub fn new(max_total_order: usize, rel_tol: f64, tail_window: usize) -> Result<Self> {
        let ctl = SeriesControl { max_total_order, rel_tol, tail_window, index_budget: default_budget() };
        ctl.validate()?;
        Ok(ctl)
    }

    pub fn with_budget(mut self, index_budget: u128) -> Self {
        self.index_budget = index_budget;
        self
    }

    pub fn with_order(mut self, max_total_order: usize) -> Self {
        self.max_total_order = max_total_order;
        self
    }

    pub fn with_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::domain(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if self.tail_window < 2 {
            return Err(Error::domain(format!("tail_window must be at least 2, got {}", self.tail_window)));
        }
        if self.max_total_order < self.tail_window {
            return Err(Error::domain(format!(
                "max_total_order {} is below tail_window {}",
                self.max_total_order, self.tail_window
            )));
        }
        if self.index_budget == 0 {
            return Err(Error::domain("index_budget must be positive"));
        }
        Ok(())
    }

    /// Generous control used for the scalar special functions inside identities.
    pub fn inner() -> Self {
        SeriesControl { max_total_order: 5000, rel_tol: 1e-17, tail_window: 3, index_budget: 50_000_000 }
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { max_total_order: 60, rel_tol: 1e-15, tail_window: 3, index_budget: default_budget() }
    }
}

/// Outcome of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    /// Highest shell (total order) that was added.
    pub order: usize,
    /// Number of indices visited.
    pub terms: u128,
    pub converged: bool,
}

impl SeriesSum {
    /// Turns a non-converged result into [`Error::NonConvergence`].
    pub fn require(self, what: &str) -> Result<Complex64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::no_conv(what, self.order))
        }
    }
}

/// Tracks the tail criterion across successive shells.
#[derive(Debug, Clone)]
pub struct ShellTracker {
    ctl: SeriesControl,
    sum: CompensatedSum,
    quiet: usize,
    shells: usize,
    terms: u128,
    min_order: usize,
}

impl ShellTracker {
    pub fn new(ctl: SeriesControl) -> Self {
        ShellTracker { ctl, sum: CompensatedSum::new(), quiet: 0, shells: 0, terms: 0, min_order: 0 }
    }

    /// Shells below `min_order` never count toward the tail window; used when
    /// terms are known to grow before they decay.
    pub fn with_min_order(mut self, min_order: usize) -> Self {
        self.min_order = min_order;
        self
    }

    /// Adds one shell; returns `true` once the tail criterion holds.
    pub fn push(&mut self, shell: Complex64, terms_in_shell: u128) -> bool {
        self.sum.add(shell);
        self.shells += 1;
        self.terms += terms_in_shell;
        let scale = self.sum.value().norm();
        if self.shells <= self.min_order {
            self.quiet = 0;
        } else if shell.norm() <= self.ctl.rel_tol * scale || shell.norm() == 0.0 {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        self.quiet >= self.ctl.tail_window
    }

    pub fn value(&self) -> Complex64 {
        self.sum.value()
    }

    pub fn terms(&self) -> u128 {
        self.terms
    }

    pub fn finish(&self, converged: bool) -> SeriesSum {
        SeriesSum {
            value: self.sum.value(),
            order: self.shells.saturating_sub(1),
            terms: self.terms,
            converged,
        }
    }
}

/// Sums `Σ_{s=0}^{N} shell(s)` with the tail test; `shell` returns the shell value
/// and the number of indices it visited.
pub fn sum_shells(
    ctl: &SeriesControl,
    what: &str,
    shell: impl FnMut(usize) -> Result<(Complex64, u128)>,
) -> Result<SeriesSum> {
    sum_shells_from(ctl, what, 0, shell)
}

/// [`sum_shells`] where shells `0..=min_order` cannot end the summation.
pub fn sum_shells_from(
    ctl: &SeriesControl,
    what: &str,
    min_order: usize,
    mut shell: impl FnMut(usize) -> Result<(Complex64, u128)>,
) -> Result<SeriesSum> {
    ctl.validate()?;
    let mut tracker = ShellTracker::new(*ctl).with_min_order(min_order);
    for s in 0..=ctl.max_total_order {
        let (v, count) = shell(s)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::no_conv(format!("{what}: non-finite shell"), s));
        }
        if tracker.push(v, count) {
            return Ok(tracker.finish(true));
        }
        if tracker.terms() > ctl.index_budget {
            return Err(Error::BudgetExceeded {
                what: what.to_string(),
                needed: tracker.terms(),
                cap: ctl.index_budget,
            });
        }
    }
    Ok(tracker.finish(false))
}

/// Univariate series `Σ term(m)`, one term per shell.
pub fn sum_terms(
    ctl: &SeriesControl,
    what: &str,
    mut term: impl FnMut(usize) -> Result<Complex64>,
) -> Result<SeriesSum> {
    sum_shells(ctl, what, |m| Ok((term(m)?, 1)))
}

/// [`sum_terms`] that may not stop before `min_order`.
pub fn sum_terms_from(
    ctl: &SeriesControl,
    what: &str,
    min_order: usize,
    mut term: impl FnMut(usize) -> Result<Complex64>,
) -> Result<SeriesSum> {
    sum_shells_from(ctl, what, min_order, |m| Ok((term(m)?, 1)))
}

/// Multiple series `Σ_{n ∈ Z^k} term(n)` summed over graded shells.
pub fn sum_graded(
    k: usize,
    ctl: &SeriesControl,
    what: &str,
    mut term: impl FnMut(&MultiIndex) -> Result<Complex64>,
) -> Result<SeriesSum> {
    sum_shells(ctl, what, |s| {
        let mut acc = CompensatedSum::new();
        let mut count = 0u128;
        for n in Shell::new(k, s) {
            acc.add(term(&n)?);
            count += 1;
        }
        Ok((acc.value(), count))
    })
}

/// `Σ_{n=0}^{N} f(n) ⟨x⟩^n / n!`: the collapsed form of `Σ_n f(⟨n⟩) x^n / n!`.
pub fn diagonal_collapse(
    f: impl Fn(usize) -> Complex64,
    x: &CPoint,
    ctl: &SeriesControl,
) -> Result<Complex64> {
    let s = x.angle();
    let mut power = Complex64::new(1.0, 0.0);
    sum_terms(ctl, "diagonal collapse", |n| {
        if n > 0 {
            power *= s / n as f64;
        }
        Ok(f(n) * power)
    })?
    .require("diagonal collapse")
}
