use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::{log_gamma, nonpositive_integer};
use crate::series::{sum_terms_from, SeriesControl};
use crate::sum::CompensatedSum;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub(crate) fn require_not_pole(name: &str, c: Complex64) -> Result<()> {
    if let Some(n) = nonpositive_integer(c) {
        return Err(Error::pole(format!("{name} = {c} is the nonpositive integer {}", -(n as i64))));
    }
    Ok(())
}

/// Degree of the polynomial when one of the numerator parameters is a nonpositive integer.
pub(crate) fn terminating_degree(params: &[Complex64]) -> Option<usize> {
    params.iter().filter_map(|&a| nonpositive_integer(a)).map(|n| n as usize).min()
}

/// Generic `pFq` series with ratio `term(m+1)/term(m)` supplied by `ratio(m)`.
/// Polynomials (`degree = Some(d)`) are summed exactly to `d`.
fn hyper_series(
    what: &str,
    degree: Option<usize>,
    min_order: usize,
    ctl: &SeriesControl,
    ratio: impl Fn(usize) -> Complex64,
) -> Result<Complex64> {
    if let Some(d) = degree {
        let mut acc = CompensatedSum::new();
        let mut t = ONE;
        acc.add(t);
        for m in 0..d {
            t *= ratio(m);
            acc.add(t);
        }
        return Ok(acc.value());
    }
    let mut t = ONE;
    sum_terms_from(ctl, what, min_order, |m| {
        if m > 0 {
            t *= ratio(m - 1);
        }
        Ok(t)
    })?
    .require(what)
}

fn growth_order(z: Complex64, params: &[Complex64]) -> usize {
    let p: f64 = params.iter().map(|a| a.norm()).sum();
    (2.0 * z.norm() + p + 2.0).min(1e6) as usize
}

/// Kummer's confluent function `₁F₁(a; c; z)`.
///
/// For `Re z < 0` the non-terminating case uses `e^z ₁F₁(c-a; c; -z)` to avoid cancellation.
pub fn hyp1f1(a: Complex64, c: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    require_not_pole("c", c)?;
    let degree = terminating_degree(&[a]);
    if degree.is_none() && z.re < 0.0 {
        let b = c - a;
        let inner_deg = terminating_degree(&[b]);
        let min = growth_order(z, &[b, c]);
        let v = hyper_series("1F1", inner_deg, min, ctl, |m| {
            let m = m as f64;
            (b + m) / ((c + m) * (m + 1.0)) * (-z)
        })?;
        return Ok(z.exp() * v);
    }
    let min = growth_order(z, &[a, c]);
    hyper_series("1F1", degree, min, ctl, |m| {
        let m = m as f64;
        (a + m) / ((c + m) * (m + 1.0)) * z
    })
}

/// Gauss's function `₂F₁(a, b; c; z)`.
///
/// Supported: `|z| < 1`; terminating series anywhere; and the Kummer point
/// `z = -1`, `c = a - b + 1`, `Re b < 1`, via
/// `Γ(a-b+1) Γ(a/2+1) / (Γ(a/2-b+1) Γ(a+1))`.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    require_not_pole("c", c)?;
    let degree = terminating_degree(&[a, b]);
    let ratio = |m: usize| {
        let m = m as f64;
        (a + m) * (b + m) / ((c + m) * (m + 1.0)) * z
    };
    if degree.is_some() {
        return hyper_series("2F1", degree, 0, ctl, ratio);
    }
    if (z + 1.0).norm() < 1e-15 {
        if (c - (a - b + 1.0)).norm() <= 1e-12 && b.re < 1.0 {
            return kummer_value(a, b);
        }
        if (c - (b - a + 1.0)).norm() <= 1e-12 && a.re < 1.0 {
            return kummer_value(b, a);
        }
    }
    if z.norm() >= 1.0 {
        return Err(Error::domain(format!(
            "2F1 needs |z| < 1, a terminating series, or the Kummer point; got z = {z}"
        )));
    }
    let min = growth_order(Complex64::new(0.0, 0.0), &[a, b, c]);
    hyper_series("2F1", None, min, ctl, ratio)
}

/// `₂F₁(a, b; a-b+1; -1)` by Kummer's theorem.
pub fn kummer_value(a: Complex64, b: Complex64) -> Result<Complex64> {
    let top = a - b + 1.0;
    require_not_pole("a - b + 1", top)?;
    if nonpositive_integer(a + 1.0).is_some() {
        return Err(Error::pole(format!("Kummer value needs a + 1 off the poles, got a = {a}")));
    }
    let den = a / 2.0 - b + 1.0;
    if nonpositive_integer(den).is_some() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let num = a / 2.0 + 1.0;
    if nonpositive_integer(num).is_some() {
        return Err(Error::pole(format!("Kummer value: Γ(a/2 + 1) has a pole at a = {a}")));
    }
    Ok((log_gamma(top)? + log_gamma(num)? - log_gamma(den)? - log_gamma(a + 1.0)?).exp())
}

/// `₁F₂(a; b1, b2; z)`, entire in `z`.
pub fn hyp1f2(a: Complex64, b1: Complex64, b2: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    require_not_pole("b1", b1)?;
    require_not_pole("b2", b2)?;
    let degree = terminating_degree(&[a]);
    let min = (2.0 * z.norm().sqrt()) as usize + growth_order(Complex64::new(0.0, 0.0), &[a, b1, b2]);
    hyper_series("1F2", degree, min, ctl, |m| {
        let m = m as f64;
        (a + m) / ((b1 + m) * (b2 + m) * (m + 1.0)) * z
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn hyp1f1_examples() {
        let ctl = SeriesControl::inner();
        assert_eq!(hyp1f1(c(0.3, 1.0), r(2.2), r(0.0), &ctl).unwrap(), ONE);
        let z = c(-3.5, 0.7);
        let v = hyp1f1(c(1.3, -0.4), c(1.3, -0.4), z, &ctl).unwrap();
        assert!((v - z.exp()).norm() < 1e-14 * z.exp().norm());
        assert!((hyp1f1(r(-1.0), r(2.0), r(3.0), &ctl).unwrap() - r(-0.5)).norm() < 1e-15);
        assert!(matches!(hyp1f1(ONE, r(-2.0), ONE, &ctl), Err(Error::Pole(_))));
    }

    #[test]
    fn hyp1f1_kummer_branch_matches_direct_sum() {
        let ctl = SeriesControl::inner();
        let (a, cc, z) = (c(0.7, 0.2), c(1.9, -0.3), r(-4.0));
        let v = hyp1f1(a, cc, z, &ctl).unwrap();
        // direct series, small enough |z| that cancellation is mild
        let mut t = ONE;
        let mut s = ONE;
        for m in 0..200 {
            let mf = m as f64;
            t *= (a + mf) / ((cc + mf) * (mf + 1.0)) * z;
            s += t;
        }
        assert!((v - s).norm() < 1e-12 * s.norm());
    }

    #[test]
    fn hyp2f1_examples() {
        let ctl = SeriesControl::inner();
        assert_eq!(hyp2f1(r(0.4), r(1.2), r(2.0), r(0.0), &ctl).unwrap(), ONE);
        let v = hyp2f1(ONE, ONE, r(2.0), r(0.5), &ctl).unwrap();
        assert!((v.re - 2.0 * 2f64.ln()).abs() < 1e-14);
        let v = hyp2f1(ONE, r(0.5), r(1.5), r(-1.0), &ctl).unwrap();
        assert!((v.re - PI / 4.0).abs() < 1e-14);
        assert!(matches!(hyp2f1(ONE, r(0.5), r(2.5), r(-1.0), &ctl), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1(ONE, ONE, r(2.0), r(1.5), &ctl), Err(Error::Domain(_))));
        // terminating: (1 - 2z)
        let v = hyp2f1(r(-1.0), r(2.0), r(1.0), r(3.0), &ctl).unwrap();
        assert!((v - r(-5.0)).norm() < 1e-15);
    }

    #[test]
    fn kummer_point_against_averaged_partial_sums() {
        // alternating series at z = -1, accelerated by repeated averaging of partial sums
        let ctl = SeriesControl::inner();
        for (a, b) in [(1.0, 0.5), (2.3, -0.4), (0.6, 0.3)] {
            let (a, b) = (r(a), r(b));
            let cc = a - b + 1.0;
            let mut partial = Vec::new();
            let (mut t, mut s) = (ONE, ONE);
            for m in 0..400 {
                partial.push(s);
                let mf = m as f64;
                t *= (a + mf) * (b + mf) / ((cc + mf) * (mf + 1.0)) * -1.0;
                s += t;
            }
            let mut level = partial[partial.len() - 40..].to_vec();
            while level.len() > 1 {
                level = level.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
            }
            let closed = hyp2f1(a, b, cc, r(-1.0), &ctl).unwrap();
            assert!((closed - level[0]).norm() < 1e-9 * closed.norm(), "{a} {b}: {closed} vs {}", level[0]);
        }
    }

    #[test]
    fn hyp1f2_examples() {
        let ctl = SeriesControl::inner();
        assert_eq!(hyp1f2(r(0.5), r(0.5), r(1.5), r(0.0), &ctl).unwrap(), ONE);
        // a cancels one lower parameter only: Σ 1/(m!)^2 = I_0(2), not e
        let v = hyp1f2(ONE, ONE, ONE, ONE, &ctl).unwrap();
        assert!((v.re - 2.279_585_302_336_067_3).abs() < 4e-15);
        let (a, b1, b2, z) = (0.5, 0.5, 1.5, -0.25);
        let mut t = 1.0;
        let mut s = 1.0;
        for m in 0..100 {
            let mf = m as f64;
            t *= (a + mf) / ((b1 + mf) * (b2 + mf) * (mf + 1.0)) * z;
            s += t;
        }
        let v = hyp1f2(r(a), r(b1), r(b2), r(z), &ctl).unwrap();
        assert!((v.re - s).abs() < 1e-15);
    }
}
