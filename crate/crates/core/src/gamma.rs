//! Complex gamma, log-gamma and Pochhammer symbols.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerance used to decide that a parameter sits on a nonpositive integer.
pub const INTEGER_TOL: f64 = 1e-12;

// B_2, B_4, ..., B_20
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// If `z` lies within [`INTEGER_TOL`] of `0, -1, -2, ...`, returns that integer's magnitude.
pub fn nonpositive_integer(z: Complex64) -> Option<u64> {
    if z.im.abs() > INTEGER_TOL || z.re > INTEGER_TOL {
        return None;
    }
    let r = z.re.round();
    if (z.re - r).abs() <= INTEGER_TOL && r <= 0.0 {
        Some((-r) as u64)
    } else {
        None
    }
}

pub fn is_nonpositive_integer(z: Complex64) -> bool {
    nonpositive_integer(z).is_some()
}

fn stirling(z: Complex64) -> Complex64 {
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let mut acc = (z - 0.5) * z.ln() - z + half_ln_2pi;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        acc += pow * (b / (two_k * (two_k - 1.0)));
        pow *= inv2;
    }
    acc
}

/// Principal branch of `ln Γ(z)`.
///
/// Shifts `z` upward with `Γ(z) = Γ(z+n) / (z (z+1) ... (z+n-1))` until the
/// Stirling series is accurate, so the imaginary part stays continuous away
/// from the negative real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if let Some(n) = nonpositive_integer(z) {
        if z == Complex64::new(-(n as f64), 0.0) {
            return Err(Error::pole(format!("log_gamma at nonpositive integer {}", -(n as i64))));
        }
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("log_gamma of non-finite argument {z}")));
    }
    if z.re < -1000.0 {
        // reflection; only the real part is meaningful this far out
        let s = (z * PI).sin();
        return Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - log_gamma(ONE - z)?);
    }
    let mut w = z;
    if z.im == 0.0 && z.re > 0.0 {
        // positive reals: one logarithm of the exact-ish product
        let mut prod = 1.0;
        while w.re < 10.0 {
            prod *= w.re;
            w += 1.0;
        }
        return Ok(Complex64::new(stirling(w).re - prod.ln(), 0.0));
    }
    let mut shift = ZERO;
    while w.re < 7.0 || w.norm() < 10.0 {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

/// `Γ(z)`; errors at the poles.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if let Some(p) = exact_pole(z) {
        return Err(Error::pole(format!("gamma at {}", -(p as i64))));
    }
    // exact factorials for small positive integers
    if z.im == 0.0 && z.re > 0.0 && z.re <= 30.0 && z.re.fract() == 0.0 {
        let n = z.re as u32;
        return Ok(Complex64::new((1..n).map(f64::from).product(), 0.0));
    }
    Ok(log_gamma(z)?.exp())
}

/// `1/Γ(z)`, entire: zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Complex64 {
    if exact_pole(z).is_some() {
        return ZERO;
    }
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => ZERO,
    }
}

fn exact_pole(z: Complex64) -> Option<u64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        Some((-z.re) as u64)
    } else {
        None
    }
}

/// `Γ(a) / Γ(b)`. Zero when `b` is a pole and `a` is not; a pole of `a` is an error.
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64> {
    if let Some(p) = exact_pole(a) {
        return Err(Error::pole(format!("gamma ratio numerator at {}", -(p as i64))));
    }
    if exact_pole(b).is_some() {
        return Ok(ZERO);
    }
    let d = a - b;
    if d.im == 0.0 && d.re.fract() == 0.0 && d.re.abs() <= 64.0 {
        // exact rising-factorial path for integer offsets
        let m = d.re.abs() as usize;
        return if d.re >= 0.0 {
            Ok(pochhammer(b, m))
        } else {
            Ok(pochhammer(a, m).inv())
        };
    }
    Ok((log_gamma(a)? - log_gamma(b)?).exp())
}

/// Rising factorial `(a)_m = a (a+1) ... (a+m-1)`, always as a product.
pub fn pochhammer(a: Complex64, m: usize) -> Complex64 {
    let mut acc = ONE;
    for j in 0..m {
        acc *= a + j as f64;
    }
    acc
}

/// `(a)_m / (c)_m`, factor by factor.
pub fn pochhammer_ratio(a: Complex64, c: Complex64, m: usize) -> Result<Complex64> {
    let mut acc = ONE;
    for j in 0..m {
        let den = c + j as f64;
        if den == ZERO {
            return Err(Error::pole(format!("(c)_m vanishes: c + {j} = 0")));
        }
        acc *= (a + j as f64) / den;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(0.3, 0.7), 0), ONE);
        assert_eq!(pochhammer(c(3.0, 0.0), 4), c(360.0, 0.0));
        assert_eq!(pochhammer(c(-2.0, 0.0), 3), ZERO);
    }

    #[test]
    fn pochhammer_ratio_examples() {
        let a = c(0.4, -1.2);
        assert_eq!(pochhammer_ratio(a, a, 7).unwrap(), ONE);
        assert_relative_eq!(pochhammer_ratio(c(1.0, 0.0), c(2.0, 0.0), 3).unwrap().re, 0.25, epsilon = 1e-15);
        let direct = (0.5 * 1.5) / (1.5 * 2.5);
        assert_relative_eq!(pochhammer_ratio(c(0.5, 0.0), c(1.5, 0.0), 2).unwrap().re, direct, epsilon = 1e-15);
        assert!(matches!(pochhammer_ratio(ONE, c(-2.0, 0.0), 3), Err(Error::Pole(_))));
        assert!(pochhammer_ratio(ONE, c(-2.0, 0.0), 2).is_ok());
    }

    #[test]
    fn log_gamma_examples() {
        assert!(log_gamma(ONE).unwrap().norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-14);
        assert_relative_eq!(log_gamma(c(5.0, 0.0)).unwrap().re, 24f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(log_gamma(c(0.5, 0.0)).unwrap().re, PI.sqrt().ln(), max_relative = 1e-14);
        assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(log_gamma(ZERO), Err(Error::Pole(_))));
    }

    #[test]
    fn log_gamma_reference_values() {
        // ln Γ(1+i) = -0.6509231993018563 - 0.3016403204675331 i
        let v = log_gamma(c(1.0, 1.0)).unwrap();
        assert_relative_eq!(v.re, -0.650_923_199_301_856_3, max_relative = 1e-14);
        assert_relative_eq!(v.im, -0.301_640_320_467_533_1, max_relative = 1e-14);
        // Γ(-0.5) = -2 sqrt(pi)
        assert_relative_eq!(gamma(c(-0.5, 0.0)).unwrap().re, -2.0 * PI.sqrt(), max_relative = 1e-14);
        // ln Γ(100) = ln(99!)
        let ln99: f64 = (2..100).map(|j| (j as f64).ln()).sum();
        assert_relative_eq!(log_gamma(c(100.0, 0.0)).unwrap().re, ln99, max_relative = 1e-14);
        // |Γ(iy)|^2 = π / (y sinh(π y))
        let y: f64 = 3.0;
        let g = gamma(c(0.0, y)).unwrap();
        assert_relative_eq!(g.norm_sqr(), PI / (y * (PI * y).sinh()), max_relative = 1e-13);
    }

    #[test]
    fn rgamma_vanishes_at_poles() {
        assert_eq!(rgamma(c(-4.0, 0.0)), ZERO);
        assert_relative_eq!(rgamma(c(4.0, 0.0)).re, 1.0 / 6.0, max_relative = 1e-14);
    }

    #[test]
    fn gamma_ratio_paths() {
        assert_relative_eq!(gamma_ratio(c(7.5, 0.0), c(4.5, 0.0)).unwrap().re, 4.5 * 5.5 * 6.5, max_relative = 1e-14);
        assert_eq!(gamma_ratio(c(1.5, 0.0), c(-2.0, 0.0)).unwrap(), ZERO);
        assert!(gamma_ratio(c(-1.0, 0.0), c(2.0, 0.0)).is_err());
        let r = gamma_ratio(c(2.3, 0.4), c(0.7, -0.2)).unwrap();
        let d = gamma(c(2.3, 0.4)).unwrap() / gamma(c(0.7, -0.2)).unwrap();
        assert_relative_eq!(r.re, d.re, max_relative = 1e-13);
        assert_relative_eq!(r.im, d.im, max_relative = 1e-13);
    }

    #[test]
    fn nonpositive_integer_detection() {
        assert_eq!(nonpositive_integer(c(-3.0, 0.0)), Some(3));
        assert_eq!(nonpositive_integer(c(-3.0 + 1e-14, 0.0)), Some(3));
        assert_eq!(nonpositive_integer(c(-3.0, 1e-6)), None);
        assert_eq!(nonpositive_integer(c(2.0, 0.0)), None);
        assert_eq!(nonpositive_integer(ZERO), Some(0));
    }
}
