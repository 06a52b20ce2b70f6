//! Expansions of generating functions: the one-parameter family, the
//! one-level expansion, and its multi-level version.

use mvlaguerre::identities::{lemma_expansion, prop1_exponential, prop1_general, theorem_multiple, IdentityReport};
use mvlaguerre::{CPoint, Complex64, SeriesControl};

fn show(r: &IdentityReport) {
    println!(
        "{:<18} lhs {:.12}  rhs {:.12}  rel {:.1e}  order {}",
        r.identity_id, r.lhs, r.rhs, r.rel_residual, r.truncation_order
    );
}

fn main() -> mvlaguerre::Result<()> {
    let ctl = SeriesControl::default();
    let c = |re| Complex64::new(re, 0.0);
    let u = CPoint::from_reals(&[0.2, -0.15])?;
    let x = CPoint::from_reals(&[1.0, 0.4])?;

    show(&prop1_general(c(1.2), c(0.7), c(2.5), &u, &x, &ctl)?);
    show(&prop1_exponential(c(0.7), &u, &x, &ctl)?);

    let sigma = CPoint::from_reals(&[0.5, -0.3])?;
    let y = CPoint::from_reals(&[0.3, 0.6])?;
    show(&lemma_expansion(c(1.1), c(0.6), c(0.9), c(2.0), &sigma, &u, &y, &ctl)?);

    let betas = [c(0.6), c(0.9), c(1.3)];
    let sigmas = [sigma.clone(), CPoint::from_reals(&[0.2, 0.1])?];
    show(&theorem_multiple(c(1.1), c(2.0), &betas, &sigmas, &u, &y, &ctl)?);
    Ok(())
}
