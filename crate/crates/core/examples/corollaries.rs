//! Special cases of the multi-level expansion: the finite addition formula
//! on ⟨u⟩ = -1, the Kummer-summed form on ⟨u⟩ = 1, and the split form.

use mvlaguerre::verify::{evaluate, sample, RunOptions};
use mvlaguerre::identities::cor3_addition;
use mvlaguerre::{CPoint, Complex64, SeriesControl};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mvlaguerre::Result<()> {
    let u = CPoint::from_reals(&[-0.25, -0.75])?;
    let ws = [CPoint::from_reals(&[1.0, 0.5])?, CPoint::from_reals(&[-0.3, 2.0])?];
    let a = [Complex64::new(1.5, 0.0), Complex64::new(0.25, 0.0)];
    for m in 0..4 {
        let r = cor3_addition(m, &a, &u, &ws, &SeriesControl::default())?;
        println!("addition formula, m = {m}: {:.14} vs {:.14}", r.lhs.re, r.rhs.re);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for id in ["cor4_kummer", "cor5_split", "cor5_routes"] {
        let params = sample(id, 2, 2, &mut rng)?;
        let r = evaluate(id, &params, &RunOptions::default())?;
        println!("{id:<12} rel residual {:.2e}", r.rel_residual);
    }
    Ok(())
}
