use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::scalar::{hyp1f1, hyp1f2, hyp2f1, require_not_pole};
use crate::error::{Error, Result};
use crate::gamma::{gamma_ratio, log_gamma};
use crate::quadrature::{beta_rule, QuadRule, RuleKind};
use crate::series::{sum_shells_from, sum_terms_from, SeriesControl};
use crate::sum::CompensatedSum;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Parameters of Humbert's `Φ₁[a, b; c; x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Phi1Params {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl Phi1Params {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Phi1Params { a, b, c }
    }

    pub fn real(a: f64, b: f64, c: f64) -> Self {
        Phi1Params::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0), Complex64::new(c, 0.0))
    }
}

/// Above this `|y|` the series switches to the single sum over the `y` index.
pub const SINGLE_SUM_THRESHOLD: f64 = 10.0;

/// `Φ₁[a,b;c;x,y] = Σ (a)_{m+n} (b)_m x^m y^n / ((c)_{m+n} m! n!)`, `|x| < 1`.
pub fn humbert_phi1_series(p: Phi1Params, x: Complex64, y: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    check_series_domain(p, x)?;
    if y.norm() > SINGLE_SUM_THRESHOLD {
        humbert_phi1_single_sum(p, x, y, ctl)
    } else {
        humbert_phi1_double_sum(p, x, y, ctl)
    }
}

fn check_series_domain(p: Phi1Params, x: Complex64) -> Result<()> {
    require_not_pole("c", p.c)?;
    if x.norm() >= 1.0 {
        return Err(Error::domain(format!("Phi1 series needs |x| < 1, got x = {x}")));
    }
    Ok(())
}

fn growth(p: Phi1Params, y: Complex64) -> usize {
    (2.0 * y.norm() + p.a.norm() + p.b.norm() + p.c.norm() + 2.0) as usize
}

/// The graded double sum over shells `m + n = s`.
pub fn humbert_phi1_double_sum(p: Phi1Params, x: Complex64, y: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    check_series_domain(p, x)?;
    let mut a_terms: Vec<Complex64> = Vec::new(); // (b)_m x^m / m!
    let mut b_terms: Vec<Complex64> = Vec::new(); // y^n / n!
    let mut ratio = ONE; // (a)_s / (c)_s
    sum_shells_from(ctl, "Phi1 double series", growth(p, y), |s| {
        if s == 0 {
            a_terms.push(ONE);
            b_terms.push(ONE);
        } else {
            let sf = (s - 1) as f64;
            let last_a = a_terms[s - 1];
            a_terms.push(last_a * (p.b + sf) * x / (sf + 1.0));
            let last_b = b_terms[s - 1];
            b_terms.push(last_b * y / (sf + 1.0));
            ratio *= (p.a + sf) / (p.c + sf);
        }
        let mut acc = CompensatedSum::new();
        for m in 0..=s {
            acc.add(a_terms[m] * b_terms[s - m]);
        }
        Ok((ratio * acc.value(), (s + 1) as u128))
    })?
    .require("Phi1 double series")
}

/// `Φ₁ = Σ_j (a)_j/(c)_j y^j/j! ₂F₁(a+j, b; c+j; x)`.
pub fn humbert_phi1_single_sum(p: Phi1Params, x: Complex64, y: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    check_series_domain(p, x)?;
    let mut weight = ONE;
    let inner = SeriesControl::inner();
    sum_terms_from(ctl, "Phi1 single series", growth(p, y), |j| {
        if j > 0 {
            let jf = (j - 1) as f64;
            weight *= (p.a + jf) / (p.c + jf) * y / (jf + 1.0);
        }
        let jf = j as f64;
        Ok(weight * hyp2f1(p.a + jf, p.b, p.c + jf, x, &inner)?)
    })?
    .require("Phi1 single series")
}

/// Checks `Re c > Re a > 0`, the strip of the Euler-type integral.
pub fn check_integral_strip(p: Phi1Params) -> Result<()> {
    if p.a.im != 0.0 || p.c.im != 0.0 {
        return Err(Error::Unsupported(format!(
            "Phi1 integral is certified for real a and c only, got a = {}, c = {}",
            p.a, p.c
        )));
    }
    if !(p.c.re > p.a.re && p.a.re > 0.0) {
        return Err(Error::domain(format!(
            "Phi1 integral needs Re c > Re a > 0, got a = {}, c = {}",
            p.a, p.c
        )));
    }
    Ok(())
}

/// `Φ₁ = ∫_0^1 (1-xt)^{-b} e^{yt} dμ_{a,c-a}(t)` by the beta rule `rule`.
///
/// `rule` must be [`beta_rule`]`(a, c-a, m)`. Complex `a` or `c` is refused:
/// the factor `t^{i Im a}` oscillates in `ln t` at the endpoint and a Gauss rule
/// on real nodes only converges algebraically against it.
pub fn humbert_phi1_integral(p: Phi1Params, x: Complex64, y: Complex64, rule: &QuadRule) -> Result<Complex64> {
    check_integral_strip(p)?;
    if x.im == 0.0 && x.re >= 1.0 {
        return Err(Error::domain(format!("Phi1 integral needs x outside [1, inf), got x = {x}")));
    }
    let (ra, rb) = (p.a.re, (p.c - p.a).re);
    match rule.kind() {
        RuleKind::JacobiBeta { a_exp, b_exp } if (a_exp - ra).abs() <= 1e-14 * ra.max(1.0) && (b_exp - rb).abs() <= 1e-14 * rb.max(1.0) => {}
        other => {
            return Err(Error::domain(format!(
                "Phi1 integral needs a beta rule with exponents ({ra}, {rb}), got {other:?}"
            )))
        }
    }
    let b = p.b;
    let v = rule.integrate(|t| {
        let t = t[0];
        (-b * (ONE - x * t).ln() + y * t).exp()
    });
    Ok(v)
}

/// [`humbert_phi1_integral`] with an `m`-node beta rule built for `p`.
pub fn humbert_phi1_integral_auto(p: Phi1Params, x: Complex64, y: Complex64, m: usize) -> Result<Complex64> {
    check_integral_strip(p)?;
    let rule = beta_rule(p.a.re, (p.c - p.a).re, m)?;
    humbert_phi1_integral(p, x, y, &rule)
}

/// `Φ₁[a,b;c;1,y] = Γ(c)Γ(c-a-b)/(Γ(c-a)Γ(c-b)) ₁F₁(a; c-b; y)`, `Re(c-a-b) > 0`.
pub fn phi1_at_unit_x(p: Phi1Params, y: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    let (a, b, c) = (p.a, p.b, p.c);
    if (c - a - b).re <= 0.0 {
        return Err(Error::domain(format!("Phi1 at x = 1 needs Re(c - a - b) > 0, got {}", c - a - b)));
    }
    require_not_pole("c", c)?;
    require_not_pole("c - a", c - a)?;
    require_not_pole("c - b", c - b)?;
    let pref = (log_gamma(c)? + log_gamma(c - a - b)? - log_gamma(c - a)? - log_gamma(c - b)?).exp();
    Ok(pref * hyp1f1(a, c - b, y, ctl)?)
}

/// `Φ₁[a,b;a-b+1;-1,y]` as a combination of two `₁F₂` values at `y²/4`.
pub fn phi1_neg1_split(a: Complex64, b: Complex64, y: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if b.re >= 1.0 {
        return Err(Error::domain(format!("Phi1 at x = -1 needs Re b < 1, got b = {b}")));
    }
    require_not_pole("a - b + 1", a - b + 1.0)?;
    require_not_pole("a", a)?;
    let half = a / 2.0;
    let w = y * y / 4.0;
    let lead = gamma_ratio(a - b + 1.0, a)? / 2.0;
    let even = gamma_ratio(half, half - b + 1.0)?
        * hyp1f2(half, Complex64::new(0.5, 0.0), half - b + 1.0, w, ctl)?;
    let odd = if y == Complex64::new(0.0, 0.0) {
        Complex64::new(0.0, 0.0)
    } else {
        gamma_ratio(half + 0.5, half - b + 1.5)?
            * y
            * hyp1f2(half + 0.5, Complex64::new(1.5, 0.0), half - b + 1.5, w, ctl)?
    };
    Ok(lead * (even + odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeometric::scalar::kummer_value;

    fn r(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * a.norm().max(b.norm())
    }

    #[test]
    fn series_examples() {
        let ctl = SeriesControl::inner();
        let p = Phi1Params::real(1.3, 0.4, 2.2);
        assert_eq!(humbert_phi1_series(p, r(0.0), r(0.0), &ctl).unwrap(), ONE);
        let v = humbert_phi1_series(Phi1Params::real(2.0, 1.0, 2.0), r(0.5), r(0.3), &ctl).unwrap();
        assert!(close(v, r(2.0 * 0.3f64.exp()), 1e-14));
        let v = humbert_phi1_series(Phi1Params::real(1.0, 0.0, 2.0), r(0.4), r(0.7), &ctl).unwrap();
        assert!(close(v, hyp1f1(r(1.0), r(2.0), r(0.7), &ctl).unwrap(), 1e-14));
        assert!(matches!(humbert_phi1_series(p, r(1.0), r(0.0), &ctl), Err(Error::Domain(_))));
    }

    #[test]
    fn double_and_single_sums_agree() {
        let ctl = SeriesControl::inner();
        let p = Phi1Params::new(Complex64::new(0.8, 0.3), r(1.4), Complex64::new(2.1, -0.2));
        for (x, y) in [(r(0.5), r(3.0)), (Complex64::new(-0.3, 0.4), Complex64::new(-6.0, 2.0)), (r(0.2), r(12.0))] {
            let d = humbert_phi1_double_sum(p, x, y, &ctl).unwrap();
            let s = humbert_phi1_single_sum(p, x, y, &ctl).unwrap();
            assert!(close(d, s, 1e-12), "{x} {y}: {d} vs {s}");
        }
    }

    #[test]
    fn integral_examples() {
        let v = humbert_phi1_integral_auto(Phi1Params::real(1.0, 1.0, 2.0), r(0.0), r(0.0), 20).unwrap();
        assert!(close(v, ONE, 1e-14));
        let ctl = SeriesControl::inner();
        let v = humbert_phi1_integral_auto(Phi1Params::real(1.0, 2.0, 3.0), r(-0.5), r(0.0), 40).unwrap();
        assert!(close(v, hyp2f1(r(1.0), r(2.0), r(3.0), r(-0.5), &ctl).unwrap(), 1e-13));
        let p = Phi1Params::real(0.7, 1.3, 2.1);
        let v = humbert_phi1_integral_auto(p, r(0.4), r(-0.2), 40).unwrap();
        let s = humbert_phi1_series(p, r(0.4), r(-0.2), &ctl).unwrap();
        assert!(close(v, s, 1e-12));
        assert!(humbert_phi1_integral_auto(Phi1Params::real(2.0, 1.0, 1.5), r(0.1), r(0.0), 20).is_err());
    }

    #[test]
    fn integral_rejects_mismatched_rule() {
        let rule = beta_rule(1.0, 1.0, 10).unwrap();
        let p = Phi1Params::real(0.5, 1.0, 2.0);
        assert!(matches!(humbert_phi1_integral(p, r(0.1), r(0.1), &rule), Err(Error::Domain(_))));
    }

    #[test]
    fn complex_b_and_arguments() {
        let ctl = SeriesControl::inner();
        let p = Phi1Params::new(r(0.9), Complex64::new(-0.4, 0.3), r(2.5));
        let (x, y) = (Complex64::new(0.3, -0.2), Complex64::new(1.5, 0.5));
        let v = humbert_phi1_integral_auto(p, x, y, 60).unwrap();
        let s = humbert_phi1_series(p, x, y, &ctl).unwrap();
        assert!(close(v, s, 1e-12), "{v} vs {s}");
        let q = Phi1Params::new(Complex64::new(0.9, 0.6), r(1.0), r(2.5));
        assert!(matches!(humbert_phi1_integral_auto(q, x, y, 60), Err(Error::Unsupported(_))));
    }

    #[test]
    fn unit_x_examples() {
        let ctl = SeriesControl::inner();
        let v = phi1_at_unit_x(Phi1Params::real(1.0, 1.0, 4.0), r(0.0), &ctl).unwrap();
        assert!(close(v, r(1.5), 1e-14));
        let v = phi1_at_unit_x(Phi1Params::real(0.0, 0.7, 2.3), r(1.9), &ctl).unwrap();
        assert!(close(v, ONE, 1e-14));
        assert!(phi1_at_unit_x(Phi1Params::real(1.0, 1.0, 2.0), r(0.0), &ctl).is_err());
    }

    #[test]
    fn unit_x_is_the_limit_of_the_integral() {
        // x = 1 lies on the boundary of the series disc, but the beta integral converges there
        let ctl = SeriesControl::inner();
        let p = Phi1Params::real(1.5, -1.0, 3.2);
        let closed = phi1_at_unit_x(p, r(0.8), &ctl).unwrap();
        let rule = beta_rule(1.5, 1.7, 60).unwrap();
        let near = humbert_phi1_integral(p, r(1.0 - 1e-12), r(0.8), &rule).unwrap();
        assert!(close(closed, near, 1e-9));
    }

    #[test]
    fn neg1_split_examples() {
        let ctl = SeriesControl::inner();
        for (a, b) in [(2.0, 0.5), (1.3, -0.7), (0.4, 0.2)] {
            let (a, b) = (r(a), r(b));
            let v = phi1_neg1_split(a, b, r(0.0), &ctl).unwrap();
            assert!(close(v, kummer_value(a, b).unwrap(), 1e-13));
        }
        let v = phi1_neg1_split(r(2.0), r(0.5), r(0.3), &ctl).unwrap();
        let q = humbert_phi1_integral_auto(Phi1Params::real(2.0, 0.5, 2.5), r(-1.0), r(0.3), 60).unwrap();
        assert!(close(v, q, 1e-12), "{v} vs {q}");
        // b = 0: Φ₁ collapses to ₁F₁(a; a+1; y)
        let v = phi1_neg1_split(r(1.0), r(0.0), r(0.9), &ctl).unwrap();
        assert!(close(v, hyp1f1(r(1.0), r(2.0), r(0.9), &ctl).unwrap(), 1e-13));
        assert!(phi1_neg1_split(r(1.0), r(1.0), r(0.9), &ctl).is_err());
    }
}
