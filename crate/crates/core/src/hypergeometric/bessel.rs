use num_complex::Complex64;

use crate::error::Result;
use crate::gamma::rgamma;
use crate::series::{sum_terms_from, SeriesControl};

/// The regularized modified Bessel combination
/// `t^{-α/2} I_α(2√t) = Σ_m t^m / (m! Γ(α+m+1))`.
///
/// Entire in `t`, so no branch of `√t` is ever chosen. When `α + 1` is a
/// nonpositive integer `-p`, the first `p + 1` terms vanish and the sum starts at `m = p + 1`.
pub fn bessel_i(alpha: Complex64, t: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    let shifted = alpha + 1.0;
    let start = if shifted.im == 0.0 && shifted.re <= 0.0 && shifted.re.fract() == 0.0 {
        (-shifted.re) as usize + 1
    } else {
        0
    };
    let mut term = t.powu(start as u32) * rgamma(Complex64::new(start as f64 + 1.0, 0.0)) * rgamma(alpha + start as f64 + 1.0);
    let min = (2.0 * t.norm().sqrt() + alpha.norm() + 2.0) as usize;
    sum_terms_from(ctl, "regularized Bessel series", min, |j| {
        if j > 0 {
            let m = (start + j - 1) as f64;
            term *= t / ((m + 1.0) * (alpha + m + 1.0));
        }
        Ok(term)
    })?
    .require("regularized Bessel series")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn r(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn value_at_zero() {
        let ctl = SeriesControl::inner();
        for a in [r(0.0), r(0.5), r(-0.5), Complex64::new(1.2, -0.7)] {
            let v = bessel_i(a, r(0.0), &ctl).unwrap();
            assert!((v - rgamma(a + 1.0)).norm() <= 1e-13 * v.norm());
        }
        assert_eq!(bessel_i(r(-3.0), r(0.0), &ctl).unwrap(), r(0.0));
    }

    #[test]
    fn half_order_closed_form() {
        // α = 1/2: Σ t^m/(m! Γ(m+3/2)) = sinh(2√t)/√(π t)
        let ctl = SeriesControl::inner();
        for t in [0.01, 0.3, 2.0, 17.0] {
            let v = bessel_i(r(0.5), r(t), &ctl).unwrap();
            let closed = (2.0 * t.sqrt()).sinh() / (PI * t).sqrt();
            assert!((v.re - closed).abs() < 1e-14 * closed);
        }
        // negative t: sin(2√|t|)/√(π|t|)
        let t: f64 = 2.5;
        let v = bessel_i(r(0.5), r(-t), &ctl).unwrap();
        assert!((v.re - (2.0 * t.sqrt()).sin() / (PI * t).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn integer_negative_order_reflects() {
        // I_{-n} = I_n, so t^{n/2} I_{-n}(2√t) = t^n · t^{-n/2} I_n(2√t)
        let ctl = SeriesControl::inner();
        let t = r(1.7);
        let v = bessel_i(r(-2.0), t, &ctl).unwrap();
        let w = bessel_i(r(2.0), t, &ctl).unwrap() * t * t;
        assert!((v - w).norm() < 1e-14 * w.norm());
    }
}
