//! The Le Roy function Σ zⁿ/(n!)^γ and its large-z asymptotics.
//! `le_roy` switches to the asymptotic form on its own; the table uses the plain series.

use mvlaguerre::hypergeometric::{le_roy, le_roy_asymptotic, le_roy_series};
use mvlaguerre::{Complex64, SeriesControl};

fn main() -> mvlaguerre::Result<()> {
    let ctl = SeriesControl::inner();
    println!("γ = 1, z = 1: {}", le_roy(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), &ctl)?);
    println!("γ = 2.5, z = -3+i: {}", le_roy(Complex64::new(2.5, 0.0), Complex64::new(-3.0, 1.0), &ctl)?);

    println!("{:>3} {:>12} {:>14}", "k", "z", "series/asym - 1");
    for k in [2u32, 3] {
        for w in [20.0, 40.0, 60.0] {
            let z = (w / k as f64).powi(k as i32);
            let series = le_roy_series(Complex64::new(k as f64, 0.0), Complex64::new(z, 0.0), &ctl)?.re;
            let asym = le_roy_asymptotic(k, z)?;
            println!("{k:>3} {z:>12.1} {:>14.3e}", series / asym - 1.0);
        }
    }
    Ok(())
}
