//! Confluent and Gauss hypergeometric functions, Humbert's Φ₁ by series and by
//! integral, and the Humbert Φ₂ function of several variables.

use mvlaguerre::hypergeometric::{
    bessel_i, humbert_phi1_integral_auto, humbert_phi1_series, hyp1f1, hyp1f2, hyp2f1, kummer_value,
    lauricella_phi2k, Phi1Params,
};
use mvlaguerre::{CPoint, Complex64, SeriesControl};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> mvlaguerre::Result<()> {
    let ctl = SeriesControl::inner();

    println!("1F1(1/2; 3/2; -4)      = {}", hyp1f1(c(0.5, 0.0), c(1.5, 0.0), c(-4.0, 0.0), &ctl)?);
    println!("2F1(1, 1; 2; 1/2)      = {}  (2 ln 2 = {})", hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0), &ctl)?, 2.0 * 2f64.ln());
    println!("2F1(2, 1/2; 5/2; -1)   = {}", kummer_value(c(2.0, 0.0), c(0.5, 0.0))?);
    println!("1F2(1; 2, 3; 1+i)      = {}", hyp1f2(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(1.0, 1.0), &ctl)?);
    println!("I_0.5(t)/t^0.5 at t=2  = {}", bessel_i(c(0.5, 0.0), c(2.0, 0.0), &ctl)?);

    let p = Phi1Params::new(c(0.8, 0.0), c(0.4, 0.3), c(2.1, 0.0));
    let (x, y) = (c(0.3, -0.2), c(-1.5, 0.7));
    let series = humbert_phi1_series(p, x, y, &ctl)?;
    let integral = humbert_phi1_integral_auto(p, x, y, 80)?;
    println!("Φ1 series {series}\nΦ1 integral {integral}\nrelative gap {:.2e}", (series - integral).norm() / series.norm());

    let b = CPoint::from_reals(&[0.5, 1.0, -0.25])?;
    let xs = CPoint::from_reals(&[0.3, -1.2, 2.0])?;
    println!("Φ2^(3)[b; 2.5; x]      = {}", lauricella_phi2k(&b, c(2.5, 0.0), &xs, &ctl)?);
    Ok(())
}
