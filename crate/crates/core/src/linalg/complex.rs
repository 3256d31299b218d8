use std::collections::BTreeMap;

use super::{rank, Field, SparseMatrix};
use crate::error::{Error, Result};

/// A bounded cochain complex of finite-dimensional spaces.
///
/// `differentials[k]` maps degree `k` to degree `k + 1`; missing entries are zero maps.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplexSlice<T> {
    pub basis_sizes: BTreeMap<i64, usize>,
    pub differentials: BTreeMap<i64, SparseMatrix<T>>,
}

impl<T: Field> Default for ChainComplexSlice<T> {
    fn default() -> Self {
        ChainComplexSlice {
            basis_sizes: BTreeMap::new(),
            differentials: BTreeMap::new(),
        }
    }
}

impl<T: Field> ChainComplexSlice<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn size(&self, k: i64) -> usize {
        self.basis_sizes.get(&k).copied().unwrap_or(0)
    }

    pub fn check_shapes(&self) -> Result<()> {
        for (&k, m) in &self.differentials {
            if m.n_cols() != self.size(k) || m.n_rows() != self.size(k + 1) {
                return Err(Error::Shape(format!(
                    "differential at degree {k} is {}x{}, expected {}x{}",
                    m.n_rows(),
                    m.n_cols(),
                    self.size(k + 1),
                    self.size(k)
                )));
            }
        }
        Ok(())
    }

    /// Degrees `k` where `d_{k+1} ∘ d_k` is nonzero.
    pub fn d_squared_failures(&self) -> Result<Vec<i64>> {
        self.check_shapes()?;
        let mut bad = Vec::new();
        for (&k, m) in &self.differentials {
            if let Some(next) = self.differentials.get(&(k + 1)) {
                if !next.mul(m)?.is_zero() {
                    bad.push(k);
                }
            }
        }
        Ok(bad)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.basis_sizes
            .iter()
            .map(|(&k, &n)| if k.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn ranks(&self) -> BTreeMap<i64, usize> {
        self.differentials.iter().map(|(&k, m)| (k, rank(m))).collect()
    }
}

/// Homology dimension in every degree carrying a nonzero basis:
/// `dim H^k = dim C^k - rank d_k - rank d_{k-1}`.
pub fn homology_dims<T: Field>(c: &ChainComplexSlice<T>) -> Result<BTreeMap<i64, usize>> {
    c.check_shapes()?;
    let ranks = c.ranks();
    let mut out = BTreeMap::new();
    for (&k, &n) in &c.basis_sizes {
        let out_rank = ranks.get(&k).copied().unwrap_or(0);
        let in_rank = ranks.get(&(k - 1)).copied().unwrap_or(0);
        let h = n
            .checked_sub(out_rank + in_rank)
            .ok_or_else(|| Error::Consistency(format!("negative homology at degree {k}; is d² = 0?")))?;
        out.insert(k, h);
    }
    Ok(out)
}
