use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::SeriesControl;

/// Above this value of `k z^{1/k}` the real-axis asymptotic replaces the series.
pub const ASYMPTOTIC_SWITCH: f64 = 35.0;

/// Le Roy function `F_γ(z) = Σ z^n / (n!)^γ`.
///
/// `γ = 1` returns `e^z`. For integer `γ = k >= 2` and real `z` with
/// `k z^{1/k} > 35` the real-axis asymptotic [`le_roy_asymptotic`] is used.
pub fn le_roy(gamma: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if gamma == Complex64::new(1.0, 0.0) {
        return Ok(z.exp());
    }
    if let Some(k) = integer_order(gamma) {
        if k >= 2 && z.im == 0.0 && z.re > 0.0 && k as f64 * z.re.powf(1.0 / k as f64) > ASYMPTOTIC_SWITCH {
            return le_roy_asymptotic(k, z.re).map(|v| Complex64::new(v, 0.0));
        }
    }
    le_roy_series(gamma, z, ctl)
}

fn integer_order(gamma: Complex64) -> Option<u32> {
    (gamma.im == 0.0 && gamma.re >= 1.0 && gamma.re.fract() == 0.0 && gamma.re < 1e6).then_some(gamma.re as u32)
}

/// The plain series, never switching to the asymptotic.
pub fn le_roy_series(gamma: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    let (m, scale) = le_roy_scaled(gamma, z, ctl)?;
    let v = m * scale.exp();
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::domain(format!("Le Roy value overflows at z = {z}")));
    }
    Ok(v)
}

/// `F_γ(z) = mantissa · e^{scale}`, for arguments whose value overflows a double.
pub fn le_roy_scaled(gamma: Complex64, z: Complex64, ctl: &SeriesControl) -> Result<(Complex64, f64)> {
    ctl.validate()?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok((Complex64::new(1.0, 0.0), 0.0));
    }
    if gamma.re <= 0.0 && z.norm() >= 1.0 {
        return Err(Error::domain(format!("Le Roy series diverges for Re γ <= 0 and |z| >= 1 (γ = {gamma}, z = {z})")));
    }
    let ln_z = z.ln();
    // terms grow until n ≈ |z|^{1/Re γ}
    let peak = if gamma.re > 0.0 { z.norm().powf(1.0 / gamma.re) } else { 0.0 };
    let min_order = (peak + 2.0 * peak.sqrt() + 3.0) as usize;
    let mut log_term = Complex64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for n in 0..=ctl.max_total_order.max(2 * min_order + ctl.tail_window) {
        if n > 0 {
            log_term += ln_z - gamma * (n as f64).ln();
        }
        if log_term.re > scale {
            sum *= (scale - log_term.re).exp();
            scale = log_term.re;
        }
        let t = (log_term - scale).exp();
        sum += t;
        if n > min_order && t.norm() <= ctl.rel_tol * sum.norm() {
            quiet += 1;
            if quiet >= ctl.tail_window {
                return Ok((sum, scale));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::no_conv(format!("Le Roy series at z = {z}"), ctl.max_total_order))
}

/// `F_k(z) ~ C_k z^{(1-k)/(2k)} e^{k z^{1/k}}`, `C_k = (2π)^{(1-k)/2} k^{-1/2}`, real `z -> +∞`.
pub fn le_roy_asymptotic(k: u32, z: f64) -> Result<f64> {
    if k < 1 || !(z > 0.0) {
        return Err(Error::domain(format!("Le Roy asymptotic needs integer k >= 1 and z > 0, got k = {k}, z = {z}")));
    }
    let kf = k as f64;
    let ln = (1.0 - kf) / 2.0 * (2.0 * PI).ln() - 0.5 * kf.ln() + (1.0 - kf) / (2.0 * kf) * z.ln() + kf * z.powf(1.0 / kf);
    Ok(ln.exp())
}

/// `ln C_k + ((1-k)/(2k)) ln z + k z^{1/k}`, the logarithm of [`le_roy_asymptotic`].
pub fn le_roy_asymptotic_ln(k: u32, z: f64) -> f64 {
    let kf = k as f64;
    (1.0 - kf) / 2.0 * (2.0 * PI).ln() - 0.5 * kf.ln() + (1.0 - kf) / (2.0 * kf) * z.ln() + kf * z.powf(1.0 / kf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn examples() {
        let ctl = SeriesControl::inner();
        let z = Complex64::new(0.4, -1.3);
        assert_eq!(le_roy(r(1.0), z, &ctl).unwrap(), z.exp());
        for g in [0.5, 2.0, 3.0] {
            assert_eq!(le_roy(r(g), r(0.0), &ctl).unwrap(), r(1.0));
        }
        let v = le_roy_series(r(1.0), r(1.0), &ctl).unwrap();
        assert!((v.re - 1f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn bessel_zero_at_gamma_two() {
        // F_2(1) = Σ 1/(m!)^2
        let ctl = SeriesControl::inner();
        let direct: f64 = (0..30).map(|m| 1.0 / ((1..=m).map(|j| j as f64).product::<f64>().powi(2))).sum();
        assert!((le_roy(r(2.0), r(1.0), &ctl).unwrap().re - direct).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_within_two_percent_at_400() {
        let ctl = SeriesControl::inner();
        let series = le_roy_series(r(2.0), r(400.0), &ctl).unwrap().re;
        let asym = le_roy_asymptotic(2, 400.0).unwrap();
        assert!(((asym - series) / series).abs() < 0.02);
        assert_eq!(le_roy(r(2.0), r(400.0), &ctl).unwrap().re, asym);
    }

    #[test]
    fn scaled_series_survives_overflow() {
        let ctl = SeriesControl::inner().with_order(20000);
        let (m, s) = le_roy_scaled(r(2.0), r(1e6), &ctl).unwrap();
        let ln_series = m.norm().ln() + s;
        let ln_asym = le_roy_asymptotic_ln(2, 1e6);
        assert!((ln_series - ln_asym).abs() < 1e-3);
    }
}
