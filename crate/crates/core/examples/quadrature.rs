//! Gauss rules for the measures used by the integral representations.

use mvlaguerre::quadrature::{beta_rule, box_rule, cosine_power_integral, cosine_power_rule, semi_infinite_rule_with_power};
use mvlaguerre::Complex64;

fn main() -> mvlaguerre::Result<()> {
    // E[t^2] under Beta(2, 3) is 1/5
    let beta = beta_rule(2.0, 3.0, 10)?;
    println!("Beta(2,3) second moment: {:.15}", beta.integrate(|t| Complex64::new(t[0] * t[0], 0.0)).re);

    // ∫ s^0.5 e^{-2s} ds = Γ(3/2) / 2^{3/2}
    let lag = semi_infinite_rule_with_power(2.0, 0.5, 30)?;
    let mass = lag.integrate(|_| Complex64::new(1.0, 0.0)).re;
    println!("generalized Laguerre mass: {mass:.15}  exact {:.15}", 0.5 * std::f64::consts::PI.sqrt() / 2f64.powf(1.5));

    let (_, w) = cosine_power_rule(0.7, 40)?;
    println!("∫ cos^0.7: rule {:.15}  closed form {:.15}", w.iter().sum::<f64>(), cosine_power_integral(0.7));

    let cube = box_rule(3, 16)?;
    let v = cube.integrate(|t| Complex64::new((t[0] + 0.5 * t[1] - t[2]).exp(), 0.0));
    let exact = [1.0, 0.5, -1.0].iter().map(|c: &f64| 2.0 * (c * std::f64::consts::FRAC_PI_2).sinh() / c).product::<f64>();
    println!("3-d box rule with {} nodes: {:.15}  exact {exact:.15}", cube.len(), v.re);
    Ok(())
}
