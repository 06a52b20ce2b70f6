//! The bilinear generating function and the product formula.

use mvlaguerre::identities::{cosine_beta_identity, hardy_hille, product_formula, product_rule};
use mvlaguerre::{CPoint, Complex64, MultiIndex, SeriesControl};

fn main() -> mvlaguerre::Result<()> {
    let x = CPoint::from_reals(&[0.5, 1.5])?;
    let y = CPoint::from_reals(&[1.0, 0.2])?;
    let u = CPoint::from_reals(&[0.15, 0.1])?;
    let hh = hardy_hille(Complex64::new(0.5, 0.0), &x, &y, &u, &SeriesControl::default())?;
    println!("bilinear: lhs {:.13}  rhs {:.13}  rel {:.1e}", hh.lhs, hh.rhs, hh.rel_residual);

    let (alpha, beta) = (0.5, 1.25);
    let rule = product_rule(2, 48, alpha, beta)?;
    let m = MultiIndex::new(vec![1, 2])?;
    let n = MultiIndex::new(vec![2, 0])?;
    let p = product_formula(&m, &n, Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0), &x, &y, &rule)?;
    println!("product: lhs {:.13}  rhs {:.13}  rel {:.1e}", p.lhs.re, p.rhs.re, p.rel_residual);
    for (name, v) in &p.channels {
        println!("  {name} = {v:.1e}");
    }

    let cb = cosine_beta_identity(alpha, beta, 80)?;
    println!("cosine integral: {:.15} vs {:.15}", cb.lhs.re, cb.rhs.re);
    Ok(())
}
