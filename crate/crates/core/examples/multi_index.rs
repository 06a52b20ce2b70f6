//! Graded enumeration of multi-indices and the collapse of total-order series.

use mvlaguerre::multi_index::{graded_count, graded_enumerate};
use mvlaguerre::series::diagonal_collapse;
use mvlaguerre::{CPoint, Complex64, SeriesControl};

fn main() -> mvlaguerre::Result<()> {
    for m in graded_enumerate(3, 2) {
        print!("{:?} ", m.entries());
    }
    println!();
    println!("indices in 4 variables up to total order 10: {}", graded_count(4, 10));

    // Σ_m f(⟨m⟩) x^m / m! with f(n) = 1/(n+1) depends on x only through ⟨x⟩
    let x = CPoint::from_reals(&[0.2, -0.5, 0.9])?;
    let s = diagonal_collapse(|n| Complex64::new(1.0 / (n as f64 + 1.0), 0.0), &x, &SeriesControl::default())?;
    let t = x.angle();
    println!("collapsed sum {:.15}  (e^t - 1)/t = {:.15}", s.re, ((t.exp() - 1.0) / t).re);
    Ok(())
}
