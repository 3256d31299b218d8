use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Field, LinComb};
use crate::error::{Error, Result};
use crate::Rational;

/// Sparse column or row vector indexed by position.
pub type SparseVector<T> = LinComb<usize, T>;

/// A sparse matrix with no stored zeros; entries are kept row-major sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<T> {
    n_rows: usize,
    n_cols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: Field> SparseMatrix<T> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix {
            n_rows,
            n_cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.add_entry(k, k, T::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(n_rows, n_cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.add_entry(r, c, v.clone());
            }
        }
        m
    }

    /// Build from columns given as sparse vectors (e.g. images of basis elements).
    pub fn from_columns(n_rows: usize, columns: &[SparseVector<T>]) -> Self {
        let mut m = Self::zeros(n_rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (&r, v) in col.iter() {
                m.add_entry(r, c, v.clone());
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Accumulate `v` into entry `(r, c)`; panics on out-of-bounds indices.
    pub fn add_entry(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.n_rows && c < self.n_cols, "entry ({r},{c}) out of bounds");
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((r, c)).or_insert_with(T::zero);
        *slot = slot.clone() + v;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(T::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.n_cols, self.n_rows);
        for (r, c, v) in self.entries() {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    /// Rows as sorted sparse lists.
    pub fn rows(&self) -> Vec<Vec<(usize, T)>> {
        let mut rows = vec![Vec::new(); self.n_rows];
        for (r, c, v) in self.entries() {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    pub fn column(&self, c: usize) -> SparseVector<T> {
        self.entries()
            .filter(|&(_, cc, _)| cc == c)
            .map(|(r, _, v)| (r, v.clone()))
            .collect()
    }

    /// Reindex rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut m = Self::zeros(self.n_rows, self.n_cols);
        for (r, c, v) in self.entries() {
            m.entries.insert((row_perm[r], col_perm[c]), v.clone());
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.n_cols != rhs.n_rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.n_rows, self.n_cols, rhs.n_rows, rhs.n_cols
            )));
        }
        let rhs_rows = rhs.rows();
        let mut out = Self::zeros(self.n_rows, rhs.n_cols);
        for (r, k, a) in self.entries() {
            for (c, b) in &rhs_rows[k] {
                out.add_entry(r, *c, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &SparseVector<T>) -> SparseVector<T> {
        let mut out = SparseVector::zero();
        for (r, c, a) in self.entries() {
            let x = v.coeff(&c);
            if !x.is_zero() {
                out.add_term(r, a.clone() * x);
            }
        }
        out
    }
}

impl SparseMatrix<Rational> {
    /// Triplet text format: a header `rows cols nnz`, then one `row col num/den`
    /// line per nonzero entry in row-major order. Indices are 0-based.
    pub fn to_triplet_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.n_rows, self.n_cols, self.nnz());
        for (r, c, v) in self.entries() {
            let _ = writeln!(s, "{} {} {}/{}", r, c, v.numer(), v.denom());
        }
        s
    }

    pub fn from_triplet_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::parse(hl + 1, e.to_string()))?;
        if h.len() != 3 {
            return Err(Error::parse(hl + 1, "header must be `rows cols nnz`"));
        }
        let mut m = Self::zeros(h[0], h[1]);
        let mut last: Option<(usize, usize)> = None;
        let mut count = 0;
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::parse(ln + 1, "entry must be `row col num/den`"));
            }
            let r: usize = toks[0].parse().map_err(|_| Error::parse(ln + 1, "bad row"))?;
            let c: usize = toks[1].parse().map_err(|_| Error::parse(ln + 1, "bad col"))?;
            if r >= m.n_rows || c >= m.n_cols {
                return Err(Error::parse(ln + 1, "index out of bounds"));
            }
            if let Some(prev) = last {
                if prev >= (r, c) {
                    return Err(Error::parse(ln + 1, "entries not row-major sorted"));
                }
            }
            last = Some((r, c));
            let v = parse_rational(toks[2]).ok_or_else(|| Error::parse(ln + 1, "bad value"))?;
            if v.is_zero() {
                return Err(Error::parse(ln + 1, "stored zero"));
            }
            m.entries.insert((r, c), v);
            count += 1;
        }
        if count != h[2] {
            return Err(Error::parse(
                hl + 1,
                format!("header says {} entries, found {count}", h[2]),
            ));
        }
        Ok(m)
    }
}

pub(crate) fn parse_rational(tok: &str) -> Option<Rational> {
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}
