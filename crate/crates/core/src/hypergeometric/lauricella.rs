use num_complex::Complex64;

use super::scalar::require_not_pole;
use crate::cpoint::CPoint;
use crate::error::{Error, Result};
use crate::gamma::nonpositive_integer;
use crate::multi_index::{box_enumerate, MultiIndex, Shell};
use crate::series::{sum_shells_from, SeriesControl};
use crate::sum::CompensatedSum;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Confluent Lauricella function
/// `Φ₂^(k)[b; c; x] = Σ_m (b_1)_{m_1} ... (b_k)_{m_k} / (c)_{⟨m⟩} · x^m / m!`.
///
/// When every `b_i` is a nonpositive integer the sum is the finite box `m_i <= -b_i`.
pub fn lauricella_phi2k(b: &CPoint, c: Complex64, x: &CPoint, ctl: &SeriesControl) -> Result<Complex64> {
    require_not_pole("c", c)?;
    if b.dim() != x.dim() {
        return Err(Error::domain(format!("Phi2: b has {} components, x has {}", b.dim(), x.dim())));
    }
    let k = x.dim();
    let degrees: Vec<Option<u64>> = b.iter().map(|&bi| nonpositive_integer(bi)).collect();
    let mut factors: Vec<Vec<Complex64>> = vec![vec![ONE]; k];
    let mut inv_c: Vec<Complex64> = vec![ONE];
    let grow = |factors: &mut Vec<Vec<Complex64>>, inv_c: &mut Vec<Complex64>, upto: usize| {
        for (i, f) in factors.iter_mut().enumerate() {
            while f.len() <= upto {
                let m = (f.len() - 1) as f64;
                let last = *f.last().unwrap();
                f.push(last * (b[i] + m) * x[i] / (m + 1.0));
            }
        }
        while inv_c.len() <= upto {
            let s = (inv_c.len() - 1) as f64;
            let last = *inv_c.last().unwrap();
            inv_c.push(last / (c + s));
        }
    };
    let term = |n: &MultiIndex, factors: &Vec<Vec<Complex64>>, inv_c: &Vec<Complex64>| {
        let mut t = inv_c[n.total()];
        for (i, &m) in n.entries().iter().enumerate() {
            t *= factors[i][m];
        }
        t
    };
    if degrees.iter().all(Option::is_some) {
        let top = MultiIndex::new(degrees.iter().map(|d| d.unwrap() as usize).collect())?;
        grow(&mut factors, &mut inv_c, top.total());
        let mut acc = CompensatedSum::new();
        for n in box_enumerate(&top) {
            acc.add(term(&n, &factors, &inv_c));
        }
        return Ok(acc.value());
    }
    let min = (2.0 * x.l1_norm() + b.l1_norm() + c.norm() + 2.0) as usize;
    let sum = sum_shells_from(ctl, "Phi2 series", min, |s| {
        grow(&mut factors, &mut inv_c, s);
        let mut acc = CompensatedSum::new();
        let mut count = 0u128;
        for n in Shell::new(k, s) {
            acc.add(term(&n, &factors, &inv_c));
            count += 1;
        }
        Ok((acc.value(), count))
    })?;
    sum.require("Phi2 series")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeometric::scalar::hyp1f1;

    #[test]
    fn examples() {
        let ctl = SeriesControl::inner();
        let b = CPoint::from_reals(&[0.3, 1.7]).unwrap();
        let v = lauricella_phi2k(&b, Complex64::new(2.0, 0.0), &CPoint::zeros(2), &ctl).unwrap();
        assert_eq!(v, ONE);
        let b = CPoint::from_reals(&[-1.0, -1.0]).unwrap();
        let x = CPoint::from_reals(&[1.0, 1.0]).unwrap();
        let v = lauricella_phi2k(&b, ONE, &x, &ctl).unwrap();
        assert!((v - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        let b = CPoint::new(vec![Complex64::new(0.4, 0.3)]).unwrap();
        let x = CPoint::new(vec![Complex64::new(-2.0, 1.0)]).unwrap();
        let c = Complex64::new(1.6, -0.2);
        let v = lauricella_phi2k(&b, c, &x, &ctl).unwrap();
        let w = hyp1f1(b[0], c, x[0], &ctl).unwrap();
        assert!((v - w).norm() < 1e-12 * w.norm());
    }
}
