//! Multivariable Laguerre polynomials: values, a coefficient table of the
//! generating function, and the multiple polynomials of the second kind.

use mvlaguerre::laguerre::{gf_coefficients, laguerre_multi, laguerre_neg_shift, laguerre_uni, multiple_laguerre_2nd};
use mvlaguerre::{CPoint, Complex64, MultiIndex};

fn main() -> mvlaguerre::Result<()> {
    let alpha = Complex64::new(0.5, 0.0);
    for n in 0..5 {
        println!("L_{n}^(1/2)(1.3) = {:.12}", laguerre_uni(n, alpha, Complex64::new(1.3, 0.0)).re);
    }

    let x = CPoint::from_reals(&[0.4, 1.1])?;
    let n = MultiIndex::new(vec![2, 3])?;
    println!("L_(2,3)^(1/2)(0.4, 1.1) = {:.12}", laguerre_multi(&n, alpha, &x)?.re);
    println!("L_(2,3)^(-1.5-5)(0.4, 1.1) = {:.12}", laguerre_neg_shift(&n, Complex64::new(1.5, 0.0), &x)?.re);

    // coefficients of (1 - ⟨u⟩)^{-α-1} exp(-Σ x_j u_j / (1 - ⟨u⟩)) up to total order 3
    let table = gf_coefficients(alpha, &x, 3)?;
    let mut keys: Vec<_> = table.keys().cloned().collect();
    keys.sort_by_key(|m| (m.total(), m.entries().to_vec()));
    for m in keys {
        let direct = laguerre_multi(&m, alpha, &x)?;
        println!("{:?}: coefficient {:.12}  polynomial {:.12}", m.entries(), table[&m].re, direct.re);
    }

    let betas = CPoint::from_reals(&[0.3, 1.7])?;
    let v = multiple_laguerre_2nd(&MultiIndex::new(vec![1, 2])?, alpha, &betas, Complex64::new(0.8, 0.0))?;
    println!("multiple Laguerre, second kind, n = (1,2), x = 0.8: {:.12}", v.re);
    Ok(())
}
