//! Brute-force Taylor coefficients of the generating function
//! `(1-⟨z⟩)^{-α-1} exp(-⟨x∘z⟩/(1-⟨z⟩))`, by truncated power-series arithmetic.
//!
//! Nothing here calls the polynomial evaluators; it is the reference they are tested against.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::cpoint::CPoint;
use crate::error::{Error, Result};
use crate::multi_index::{graded_count, graded_enumerate, MultiIndex};

/// Default cap on the number of coefficients `C(N+k, k)`.
pub const DEFAULT_GF_CAP: u128 = 5_000;

/// A power series in `k` variables truncated at total degree `N`.
struct Truncated<'a> {
    table: &'a Table,
    coef: Vec<Complex64>,
}

struct Table {
    order: usize,
    indices: Vec<MultiIndex>,
    position: HashMap<MultiIndex, usize>,
}

impl Table {
    fn new(k: usize, order: usize) -> Self {
        let indices: Vec<MultiIndex> = graded_enumerate(k, order).collect();
        let position = indices.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        Table { order, indices, position }
    }
}

impl<'a> Truncated<'a> {
    fn zero(table: &'a Table) -> Self {
        Truncated { table, coef: vec![Complex64::new(0.0, 0.0); table.indices.len()] }
    }

    fn constant(table: &'a Table, c: Complex64) -> Self {
        let mut s = Truncated::zero(table);
        s.coef[0] = c;
        s
    }

    fn mul(&self, other: &Truncated<'a>) -> Truncated<'a> {
        let mut out = Truncated::zero(self.table);
        for (i, a) in self.coef.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ni = &self.table.indices[i];
            let room = self.table.order - ni.total();
            for (j, b) in other.coef.iter().enumerate() {
                let nj = &self.table.indices[j];
                if nj.total() > room {
                    break; // graded order: every later index is at least as large
                }
                let sum = ni + nj;
                out.coef[self.table.position[&sum]] += a * b;
            }
        }
        out
    }

    fn add_scaled(&mut self, other: &Truncated<'a>, c: Complex64) {
        for (a, b) in self.coef.iter_mut().zip(&other.coef) {
            *a += b * c;
        }
    }
}

/// All coefficients with `⟨n⟩ <= order`, with the default size cap.
pub fn gf_coefficients(alpha: Complex64, x: &CPoint, order: usize) -> Result<HashMap<MultiIndex, Complex64>> {
    gf_coefficients_with_cap(alpha, x, order, DEFAULT_GF_CAP)
}

pub fn gf_coefficients_with_cap(
    alpha: Complex64,
    x: &CPoint,
    order: usize,
    cap: u128,
) -> Result<HashMap<MultiIndex, Complex64>> {
    let k = x.dim();
    let needed = graded_count(k, order);
    if needed > cap {
        return Err(Error::BudgetExceeded { what: "generating-function coefficients".into(), needed, cap });
    }
    let table = Table::new(k, order);
    let one = Complex64::new(1.0, 0.0);

    // s = ⟨z⟩ and l = ⟨x∘z⟩ as linear series
    let mut s = Truncated::zero(&table);
    let mut l = Truncated::zero(&table);
    for i in 0..k {
        let mut e = vec![0; k];
        e[i] = 1;
        if let Some(&p) = table.position.get(&MultiIndex::new(e)?) {
            s.coef[p] = one;
            l.coef[p] = x[i];
        }
    }

    // (1-s)^{-α-1} = Σ (α+1)_m s^m / m!, and 1/(1-s) = Σ s^m
    let mut binomial = Truncated::constant(&table, one);
    let mut geometric = Truncated::constant(&table, one);
    let mut power = Truncated::constant(&table, one);
    let mut c = one;
    for m in 1..=order {
        power = power.mul(&s);
        c *= (alpha + m as f64) / m as f64;
        binomial.add_scaled(&power, c);
        geometric.add_scaled(&power, one);
    }

    // exp(g), g = -l/(1-s), has no constant term
    let g = l.mul(&geometric);
    let mut exp_g = Truncated::constant(&table, one);
    let mut gp = Truncated::constant(&table, one);
    let mut f = one;
    for m in 1..=order {
        gp = gp.mul(&g);
        f *= -1.0 / m as f64;
        exp_g.add_scaled(&gp, f);
    }

    let full = binomial.mul(&exp_g);
    Ok(table.indices.iter().cloned().zip(full.coef).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_coefficients() {
        let alpha = Complex64::new(0.3, -0.6);
        let x = CPoint::new(vec![Complex64::new(1.2, 0.5)]).unwrap();
        let c = gf_coefficients(alpha, &x, 3).unwrap();
        assert_eq!(c[&MultiIndex::zeros(1)], Complex64::new(1.0, 0.0));
        let first = c[&MultiIndex::new(vec![1]).unwrap()];
        assert!((first - (alpha + 1.0 - x[0])).norm() < 1e-15);
    }

    #[test]
    fn budget() {
        let x = CPoint::zeros(4);
        assert!(matches!(
            gf_coefficients_with_cap(Complex64::new(0.0, 0.0), &x, 30, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
