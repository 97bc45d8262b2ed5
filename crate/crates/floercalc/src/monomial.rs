//! Sparse matrices over F2[U] with monomial entries.
//!
//! Every map in this crate is grading-homogeneous, so an entry between a
//! fixed pair of generators can only carry one `U`-exponent: the one forced
//! by the gradings.  A matrix is therefore a set of `(target, source) -> k`
//! monomials, and sums work by toggling entries.  Attempting to add two
//! monomials with different exponents in the same slot means an
//! inhomogeneous map slipped past construction-time validation, which is a
//! bug, so it panics rather than returning an error.

use std::collections::BTreeMap;

/// Homogeneous vector: generator index -> `U`-exponent of its coefficient.
pub type UVec = BTreeMap<usize, u32>;

/// Toggle `U^k e_idx` into a homogeneous vector.
pub fn uvec_toggle(v: &mut UVec, idx: usize, k: u32) {
    match v.get(&idx) {
        None => {
            v.insert(idx, k);
        }
        Some(&old) => {
            assert_eq!(
                old, k,
                "inhomogeneous sum at generator {idx}: U^{old} vs U^{k}"
            );
            v.remove(&idx);
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct MonomialMatrix {
    /// `(target row, source column) -> U-exponent`.
    entries: BTreeMap<(usize, usize), u32>,
}

impl MonomialMatrix {
    pub fn zero() -> Self {
        MonomialMatrix::default()
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MonomialMatrix::zero();
        for i in 0..n {
            m.entries.insert((i, i), 0);
        }
        m
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, usize, u32)>) -> Self {
        let mut m = MonomialMatrix::zero();
        for (t, s, k) in entries {
            m.toggle(t, s, k);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, target: usize, source: usize) -> Option<u32> {
        self.entries.get(&(target, source)).copied()
    }

    /// Adds `U^k` in slot `(target, source)`, cancelling an existing equal
    /// entry.  Panics on an exponent clash, which homogeneity rules out.
    pub fn toggle(&mut self, target: usize, source: usize, k: u32) {
        match self.entries.get(&(target, source)) {
            None => {
                self.entries.insert((target, source), k);
            }
            Some(&old) => {
                assert_eq!(
                    old, k,
                    "inhomogeneous sum in slot ({target},{source}): U^{old} vs U^{k}"
                );
                self.entries.remove(&(target, source));
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.entries.iter().map(|(&(t, s), &k)| (t, s, k))
    }

    pub fn row(&self, target: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.entries
            .range((target, 0)..=(target, usize::MAX))
            .map(|(&(_, s), &k)| (s, k))
    }

    pub fn col(&self, source: usize) -> Vec<(usize, u32)> {
        // Columns are not contiguous in the row-major map; collect instead of
        // returning a lazy iterator so callers can mutate while iterating.
        self.entries
            .iter()
            .filter(|(&(_, s), _)| s == source)
            .map(|(&(t, _), &k)| (t, k))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, s, k) in other.iter() {
            out.toggle(t, s, k);
        }
        out
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = MonomialMatrix::zero();
        for (mid, s, k1) in other.iter() {
            for (t, k2) in self.row_of_col(mid) {
                out.toggle(t, s, k1 + k2);
            }
        }
        out
    }

    /// Entries of the column `source` viewed as `(target, k)` pairs, i.e.
    /// where the basis vector `source` is sent.
    fn row_of_col(&self, source: usize) -> Vec<(usize, u32)> {
        self.col(source)
    }

    pub fn transpose(&self) -> Self {
        let mut out = MonomialMatrix::zero();
        for (t, s, k) in self.iter() {
            out.toggle(s, t, k);
        }
        out
    }

    /// Applies the matrix to a homogeneous vector.
    pub fn apply(&self, v: &UVec) -> UVec {
        let mut out = UVec::new();
        for (&s, &ks) in v {
            for (t, kt) in self.col(s) {
                uvec_toggle(&mut out, t, ks + kt);
            }
        }
        out
    }

    /// Scales the vector: `U^k * v`.
    pub fn scale(v: &UVec, k: u32) -> UVec {
        v.iter().map(|(&i, &e)| (i, e + k)).collect()
    }

    /// Reindexes rows and columns through the given maps.
    pub fn reindexed(&self, row_map: impl Fn(usize) -> usize, col_map: impl Fn(usize) -> usize) -> Self {
        let mut out = MonomialMatrix::zero();
        for (t, s, k) in self.iter() {
            out.toggle(row_map(t), col_map(s), k);
        }
        out
    }
}
