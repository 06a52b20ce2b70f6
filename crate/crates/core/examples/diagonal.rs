//! Main-diagonal generating functions and the central binomial example.

use mvlaguerre::identities::{central_binomial_diagonal, diagonal_coefficient, diagonal_gf, diagonal_rule};
use mvlaguerre::laguerre::laguerre_neg_shift;
use mvlaguerre::{CPoint, Complex64, MultiIndex, SeriesControl};

fn main() -> mvlaguerre::Result<()> {
    let beta = Complex64::new(1.5, 0.0);
    let x = CPoint::from_reals(&[0.5, 1.2])?;
    let u = Complex64::new(0.1, 0.0);

    let rule = diagonal_rule(beta, u, 2, 200)?;
    let r = diagonal_gf(beta, &x, u, &SeriesControl::default().with_order(400), &rule)?;
    println!("diagonal series {:.13}  integral {:.13}  rel {:.1e}", r.lhs.re, r.rhs.re, r.rel_residual);

    for n in 0..4 {
        let recovered = diagonal_coefficient(n, beta, &x, 0.05, 16, 120)?;
        let exact = laguerre_neg_shift(&MultiIndex::new(vec![n, n])?, beta, &x)?;
        println!("n = {n}: recovered {:.10}  polynomial {:.10}", recovered.re, exact.re);
    }

    let finding = central_binomial_diagonal(10);
    println!("{:?}", finding.coefficients);
    println!("{}", finding.report(0.1).note.unwrap_or_default());
    Ok(())
}
