//! Complexes split by complexity, each column a cochain complex in total degree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{homology_dims, kernel_basis, ChainComplexSlice, EchelonBasis, Field, SparseMatrix, SparseVector};

/// Which complex a table or matrix came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComplexId {
    /// Normalized `Tot A_•`.
    TotA,
    /// The indecomposable quotient of `Tot A_•`.
    TotAIndecomposable,
    /// Normalized `Tot D_•`.
    TotD,
    /// Normalized `Tot P_•`.
    TotP,
    /// Normalized `Tot L^•`.
    TotL,
    /// The diagram complex `D_n`.
    Dn(usize),
    /// The quotient `P_n = D_n / D_n²`.
    Pn(usize),
}

impl ComplexId {
    pub fn name(&self) -> String {
        self.to_string()
    }

    /// Total degree of the level-`level` piece of complexity `i`.
    pub fn degree(&self, d: u32, i: usize, level: usize) -> i64 {
        match self {
            ComplexId::TotL => (d as i64 - 2) * i as i64 + 1 - level as i64,
            _ => (d as i64 - 1) * i as i64 - level as i64,
        }
    }

    /// Whether the columns are homological (differential lowers the degree).
    pub fn homological(&self) -> bool {
        matches!(self, ComplexId::TotL)
    }
}

impl fmt::Display for ComplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexId::TotA => write!(f, "totA"),
            ComplexId::TotAIndecomposable => write!(f, "totA-indec"),
            ComplexId::TotD => write!(f, "totD"),
            ComplexId::TotP => write!(f, "totP"),
            ComplexId::TotL => write!(f, "totL"),
            ComplexId::Dn(n) => write!(f, "D{n}"),
            ComplexId::Pn(n) => write!(f, "P{n}"),
        }
    }
}

impl FromStr for ComplexId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let parse_n = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|_| Error::Malformed(format!("bad complex id `{s}`")))
        };
        match lower.as_str() {
            "tota" => Ok(ComplexId::TotA),
            "tota-indec" => Ok(ComplexId::TotAIndecomposable),
            "totd" => Ok(ComplexId::TotD),
            "totp" => Ok(ComplexId::TotP),
            "totl" => Ok(ComplexId::TotL),
            _ if lower.starts_with('d') => Ok(ComplexId::Dn(parse_n(&lower[1..])?)),
            _ if lower.starts_with('p') => Ok(ComplexId::Pn(parse_n(&lower[1..])?)),
            _ => Err(Error::Malformed(format!("unknown complex `{s}`"))),
        }
    }
}

/// One graded piece of a column.
#[derive(Debug, Clone, PartialEq)]
pub struct Level<T> {
    /// The simplicial level (points `j`, `j'`, or `n + #internal`; for `D_n`/`P_n`
    /// the number of internal vertices).
    pub level: usize,
    /// Human-readable basis labels, in matrix index order.
    pub basis: Vec<String>,
    /// Differential to the next piece (total degree `+1`, or `-1` in a
    /// homological column); rows = its basis size.
    pub differential: SparseMatrix<T>,
}

/// The part of a complex in one complexity, indexed by total degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Column<T> {
    pub complexity: usize,
    /// Whether the differential lowers the total degree.
    pub homological: bool,
    pub pieces: BTreeMap<i64, Level<T>>,
}

impl<T: Field> Column<T> {
    pub fn new(complexity: usize) -> Self {
        Column {
            complexity,
            homological: false,
            pieces: BTreeMap::new(),
        }
    }

    pub fn new_homological(complexity: usize) -> Self {
        Column {
            homological: true,
            ..Column::new(complexity)
        }
    }

    fn key(&self, degree: i64) -> i64 {
        if self.homological {
            -degree
        } else {
            degree
        }
    }

    /// The column as a slice whose differentials raise the index; in a
    /// homological column the index is the negated total degree.
    pub fn slice(&self) -> ChainComplexSlice<T> {
        let mut c = ChainComplexSlice::new();
        for (&deg, piece) in &self.pieces {
            let k = self.key(deg);
            c.basis_sizes.insert(k, piece.basis.len());
            let rows = self.pieces.get(&self.key(k + 1)).map_or(0, |p| p.basis.len());
            // pieces with an empty successor carry a 0-row matrix
            let d = if piece.differential.n_rows() == rows {
                piece.differential.clone()
            } else {
                SparseMatrix::zeros(rows, piece.basis.len())
            };
            c.differentials.insert(k, d);
        }
        c
    }

    /// Homology dimensions keyed by total degree.
    pub fn homology(&self) -> Result<BTreeMap<i64, usize>> {
        Ok(homology_dims(&self.slice())?
            .into_iter()
            .map(|(k, h)| (self.key(k), h))
            .collect())
    }

    /// A cycle at `degree` that is not a boundary, if there is one.
    pub fn nonbounding_cycle(&self, degree: i64) -> Option<SparseVector<T>> {
        let slice = self.slice();
        let k = self.key(degree);
        let image = self.boundaries(&slice, k);
        kernel_basis(slice.differentials.get(&k)?)
            .into_iter()
            .find(|v| !image.contains(v))
    }

    /// Independent check that `v` is a cycle at `degree` and not a boundary.
    pub fn certify_nonbounding(&self, degree: i64, v: &SparseVector<T>) -> bool {
        let slice = self.slice();
        let k = self.key(degree);
        let Some(d_out) = slice.differentials.get(&k) else {
            return false;
        };
        !v.is_zero() && d_out.apply(v).is_zero() && !self.boundaries(&slice, k).contains(v)
    }

    fn boundaries(&self, slice: &ChainComplexSlice<T>, k: i64) -> EchelonBasis<T> {
        let mut image = EchelonBasis::new();
        if let Some(d_in) = slice.differentials.get(&(k - 1)) {
            for c in 0..d_in.n_cols() {
                image.insert(&d_in.column(c));
            }
        }
        image
    }

    pub fn level_of(&self, degree: i64) -> Option<usize> {
        self.pieces.get(&degree).map(|p| p.level)
    }
}

/// A complex split into complexity columns.
#[derive(Debug, Clone, PartialEq)]
pub struct BigradedComplex<T> {
    pub id: ComplexId,
    pub d: u32,
    pub columns: BTreeMap<usize, Column<T>>,
}

impl<T: Field> BigradedComplex<T> {
    pub fn new(id: ComplexId, d: u32) -> Self {
        BigradedComplex {
            id,
            d,
            columns: BTreeMap::new(),
        }
    }

    /// Degrees where some column has `d² ≠ 0`, as `(complexity, degree)`.
    pub fn d_squared_failures(&self) -> Result<Vec<(usize, i64)>> {
        let mut out = Vec::new();
        for (&i, col) in &self.columns {
            for k in col.slice().d_squared_failures()? {
                out.push((i, col.key(k)));
            }
        }
        Ok(out)
    }
}

/// Matrix of a linear map between two ordered bases; an image term outside
/// `target` is a consistency error.
pub fn assemble<K, R, F>(source: &[K], target: &[K], image: F) -> Result<SparseMatrix<R>>
where
    K: Ord + Clone + fmt::Display,
    R: Field,
    F: FnMut(&K) -> Result<crate::linalg::LinComb<K, R>>,
{
    assemble_with(source, target, image)
}

/// [`assemble`] for maps whose source and target keys may differ in type.
pub fn assemble_with<S, K, R, F>(source: &[S], target: &[K], mut image: F) -> Result<SparseMatrix<R>>
where
    S: fmt::Display,
    K: Ord + Clone + fmt::Display,
    R: Field,
    F: FnMut(&S) -> Result<crate::linalg::LinComb<K, R>>,
{
    let index: BTreeMap<&K, usize> = target.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let mut m = SparseMatrix::zeros(target.len(), source.len());
    for (c, x) in source.iter().enumerate() {
        for (y, coef) in image(x)?.iter() {
            let r = *index
                .get(y)
                .ok_or_else(|| Error::Consistency(format!("image of {x} contains {y}, outside the target basis")))?;
            m.add_entry(r, c, coef.clone());
        }
    }
    Ok(m)
}
