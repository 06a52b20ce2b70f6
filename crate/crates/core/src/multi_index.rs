//! Multi-indices and their graded enumeration.
//!
//! Every multiple series in the crate is summed over `Z^k_{>=0}` in graded
//! shells: all indices with `|n| = 0`, then `|n| = 1`, and so on. Inside a
//! shell the order is lexicographic with the first component largest first,
//! so `(1,0)` precedes `(0,1)`.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A tuple of nonnegative integers `(n_1, ..., n_k)` with `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("multi-index must have at least one component"));
        }
        Ok(MultiIndex(entries))
    }

    pub fn zeros(k: usize) -> Self {
        assert!(k >= 1, "multi-index dimension must be positive");
        MultiIndex(vec![0; k])
    }

    /// The diagonal index `(n, ..., n)` of dimension `k`.
    pub fn diagonal(k: usize, n: usize) -> Self {
        assert!(k >= 1, "multi-index dimension must be positive");
        MultiIndex(vec![n; k])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `|n| = n_1 + ... + n_k`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `n! = n_1! ... n_k!` as an exact integer; `None` once it no longer fits in `u128`.
    pub fn factorial(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for &n in &self.0 {
            for j in 2..=n as u128 {
                acc = acc.checked_mul(j)?;
            }
        }
        Some(acc)
    }

    /// `ln(n!)`, valid for any size.
    pub fn ln_factorial(&self) -> f64 {
        self.0.iter().map(|&n| ln_factorial(n)).sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Splits a `(k*parts)`-dimensional index into `parts` consecutive blocks of length `k`.
    pub fn split(&self, parts: usize) -> Vec<MultiIndex> {
        assert!(parts >= 1 && self.dim().is_multiple_of(parts), "index does not split evenly");
        let k = self.dim() / parts;
        self.0.chunks(k).map(|c| MultiIndex(c.to_vec())).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<usize>> for MultiIndex {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        MultiIndex::new(v)
    }
}

impl From<MultiIndex> for Vec<usize> {
    fn from(m: MultiIndex) -> Self {
        m.0
    }
}

impl Add for &MultiIndex {
    type Output = MultiIndex;
    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MultiIndex {
    type Output = MultiIndex;
    /// Componentwise difference; panics unless `rhs <= self`.
    fn sub(self, rhs: &MultiIndex) -> MultiIndex {
        assert!(rhs.le(self), "{rhs} is not below {self}");
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

pub(crate) fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|j| (j as f64).ln()).sum()
}

/// Number of indices in `Z^k_{>=0}` with `|n| <= order`, i.e. `C(order + k, k)`.
pub fn graded_count(k: usize, order: usize) -> u128 {
    binomial((order + k) as u128, k as u128)
}

/// Number of indices in a single shell `|n| = s`, i.e. `C(s + k - 1, k - 1)`.
pub fn shell_count(k: usize, s: usize) -> u128 {
    binomial((s + k - 1) as u128, (k - 1) as u128)
}

fn binomial(n: u128, r: u128) -> u128 {
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        match acc.checked_mul(n - i) {
            Some(v) => acc = v / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Iterator over one shell `|n| = s` in descending lexicographic order.
#[derive(Debug, Clone)]
pub struct Shell {
    current: Option<Vec<usize>>,
}

impl Shell {
    pub fn new(k: usize, s: usize) -> Self {
        assert!(k >= 1, "multi-index dimension must be positive");
        let mut first = vec![0; k];
        first[0] = s;
        Shell { current: Some(first) }
    }
}

impl Iterator for Shell {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        // rightmost nonzero entry that can still give a unit to its right neighbour
        if let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| next[i] > 0) {
            let tail: usize = next[i + 1..].iter().sum();
            next[i] -= 1;
            next[i + 1] = tail + 1;
            for e in &mut next[i + 2..] {
                *e = 0;
            }
            self.current = Some(next);
        }
        Some(MultiIndex(cur))
    }
}

/// All indices with `|n| <= order`, shell by shell.
#[derive(Debug, Clone)]
pub struct GradedIndices {
    k: usize,
    order: usize,
    shell_total: usize,
    shell: Shell,
}

impl Iterator for GradedIndices {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        loop {
            if let Some(n) = self.shell.next() {
                return Some(n);
            }
            if self.shell_total >= self.order {
                return None;
            }
            self.shell_total += 1;
            self.shell = Shell::new(self.k, self.shell_total);
        }
    }
}

/// Enumerates every `n` in `Z^k_{>=0}` with `|n| <= order` exactly once, in graded lexicographic order.
pub fn graded_enumerate(k: usize, order: usize) -> GradedIndices {
    GradedIndices { k, order, shell_total: 0, shell: Shell::new(k, 0) }
}

/// Enumerates the box `0 <= j <= n` componentwise (last component fastest).
pub fn box_enumerate(n: &MultiIndex) -> impl Iterator<Item = MultiIndex> + '_ {
    let k = n.dim();
    let total: usize = n.0.iter().map(|&e| e + 1).product();
    (0..total).map(move |mut flat| {
        let mut j = vec![0; k];
        for i in (0..k).rev() {
            let radix = n.0[i] + 1;
            j[i] = flat % radix;
            flat /= radix;
        }
        MultiIndex(j)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(k: usize, order: usize) -> Vec<Vec<usize>> {
        graded_enumerate(k, order).map(|m| m.0).collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(collect(1, 2), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(collect(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(collect(3, 2).len(), 10);
    }

    #[test]
    fn counts_match_binomials() {
        for k in 1..=4 {
            for order in 0..=9 {
                let all = collect(k, order);
                assert_eq!(all.len() as u128, graded_count(k, order));
                let mut sorted = all.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), all.len(), "duplicates for k={k} N={order}");
                let mut last = 0;
                for n in &all {
                    let s: usize = n.iter().sum();
                    assert!(s >= last && s <= order);
                    last = s;
                }
            }
        }
    }

    #[test]
    fn shell_is_descending_lex() {
        let shell: Vec<_> = Shell::new(3, 2).map(|m| m.0).collect();
        assert_eq!(
            shell,
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]
        );
        assert_eq!(Shell::new(3, 5).count() as u128, shell_count(3, 5));
    }

    #[test]
    fn factorials() {
        let n = MultiIndex::new(vec![3, 0, 4]).unwrap();
        assert_eq!(n.total(), 7);
        assert_eq!(n.factorial(), Some(6 * 24));
        assert!((n.ln_factorial() - (144f64).ln()).abs() < 1e-14);
        assert_eq!(MultiIndex::new(vec![40, 40]).unwrap().factorial(), None);
        assert!(MultiIndex::new(vec![]).is_err());
    }

    #[test]
    fn box_enumeration_covers_box() {
        let n = MultiIndex::new(vec![1, 2]).unwrap();
        let all: Vec<_> = box_enumerate(&n).map(|m| m.0).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn split_blocks() {
        let n = MultiIndex::new(vec![1, 2, 3, 4]).unwrap();
        let parts = n.split(2);
        assert_eq!(parts[0].entries(), &[1, 2]);
        assert_eq!(parts[1].entries(), &[3, 4]);
    }
}
