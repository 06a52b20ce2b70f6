//! Multiple series whose summand factorizes over levels except for a weight in the total order.
//!
//! `Σ_{n(1),...,n(L)} W(T) Π_r c_r^{n(r)} L_{n(r)}^{(-b_r-⟨n(r)⟩)}(z_r)`, `T = Σ ⟨n(r)⟩`,
//! is summed shell by shell in `T`: each level contributes its own shell sums and the
//! levels are combined by discrete convolution.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cpoint::CPoint;
use crate::laguerre::neg_shift_unchecked;
use crate::multi_index::{graded_count, shell_count, MultiIndex, Shell};
use crate::sum::csum;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone)]
pub(crate) struct Level {
    /// `L_n^{(-b-⟨n⟩)}`
    pub b: Complex64,
    pub z: CPoint,
    /// Per-component factor raised to `n`.
    pub c: CPoint,
}

impl Level {
    fn shell(&self, s: usize) -> Complex64 {
        let k = self.z.dim();
        let indices: Vec<MultiIndex> = Shell::new(k, s).collect();
        let term = |n: &MultiIndex| {
            let p = self.c.power(n).unwrap_or(ZERO);
            if p == ZERO {
                ZERO
            } else {
                p * neg_shift_unchecked(n, self.b, &self.z)
            }
        };
        if indices.len() > 32 {
            csum(indices.par_iter().map(term).collect::<Vec<_>>())
        } else {
            csum(indices.iter().map(term))
        }
    }
}

/// Convolved shell sums of a chain of levels, extended one total order at a time.
pub(crate) struct LevelChain {
    levels: Vec<Level>,
    own: Vec<Vec<Complex64>>,
    conv: Vec<Vec<Complex64>>,
}

impl LevelChain {
    pub fn new(levels: Vec<Level>) -> Self {
        let l = levels.len();
        LevelChain { levels, own: vec![Vec::new(); l], conv: vec![Vec::new(); l] }
    }

    /// Number of `(n(1),...,n(L))` tuples with `Σ⟨n(r)⟩ <= order`.
    pub fn index_count(&self, order: usize) -> u128 {
        graded_count(self.dims(), order)
    }

    /// Tuples in the shell `Σ⟨n(r)⟩ = t`.
    pub fn shell_size(&self, t: usize) -> u128 {
        shell_count(self.dims(), t)
    }

    fn dims(&self) -> usize {
        self.levels.iter().map(|l| l.z.dim()).sum()
    }

    /// `Σ_{Σ⟨n(r)⟩ = t} Π_r (level r summand)`; must be called with `t = 0, 1, 2, ...`.
    pub fn next_shell(&mut self, t: usize) -> Complex64 {
        assert_eq!(self.own[0].len(), t, "shells must be requested in order");
        for (r, level) in self.levels.iter().enumerate() {
            let s = level.shell(t);
            self.own[r].push(s);
        }
        self.conv[0].push(self.own[0][t]);
        for r in 1..self.levels.len() {
            let v = csum((0..=t).map(|s| self.conv[r - 1][t - s] * self.own[r][s]));
            self.conv[r].push(v);
        }
        self.conv[self.levels.len() - 1][t]
    }
}
