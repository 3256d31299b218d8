use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::arnold::{indecomposable_quotient, tot_a};
use crate::bigraded::ComplexId;
use crate::diagrams::Config;
use crate::error::Result;
use crate::graphcomplex::{d_n_complex, p_n_complex, tot_d, tot_p};
use crate::kohno::{tot_l, Kohno};
use crate::{QBigradedComplex, Rational};

/// One homology dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BettiCell {
    pub i: usize,
    pub level: usize,
    pub degree: i64,
    pub dim: usize,
}

impl BettiCell {
    /// `(p, q)` with `p = -level`, `p + q = degree`.
    pub fn pq(&self) -> (i64, i64) {
        let p = -(self.level as i64);
        (p, self.degree - p)
    }
}

/// A flat export row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub complex: String,
    pub d: u32,
    pub i: usize,
    pub level: usize,
    pub degree: i64,
    pub dim: usize,
}

/// Homology dimensions of a bigraded complex, one cell per nonempty piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub complex: ComplexId,
    pub d: u32,
    pub cells: Vec<BettiCell>,
}

impl BettiTable {
    pub fn from_complex(c: &QBigradedComplex) -> Result<Self> {
        let mut cells = Vec::new();
        for (&i, col) in &c.columns {
            for (degree, dim) in col.homology()? {
                let level = col.level_of(degree).unwrap_or(0);
                cells.push(BettiCell { i, level, degree, dim });
            }
        }
        cells.sort();
        Ok(BettiTable {
            complex: c.id,
            d: c.d,
            cells,
        })
    }

    /// Dimension at `(i, degree)`, zero outside the table.
    pub fn dim(&self, i: usize, degree: i64) -> usize {
        self.cells
            .iter()
            .find(|c| c.i == i && c.degree == degree)
            .map_or(0, |c| c.dim)
    }

    pub fn column(&self, i: usize) -> BTreeMap<i64, usize> {
        self.cells
            .iter()
            .filter(|c| c.i == i)
            .map(|c| (c.degree, c.dim))
            .collect()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &BettiCell> {
        self.cells.iter().filter(|c| c.dim > 0)
    }

    pub fn max_complexity(&self) -> usize {
        self.cells.iter().map(|c| c.i).max().unwrap_or(0)
    }

    pub fn rows(&self) -> Vec<BettiRow> {
        self.cells
            .iter()
            .map(|c| BettiRow {
                complex: self.complex.to_string(),
                d: self.d,
                i: c.i,
                level: c.level,
                degree: c.degree,
                dim: c.dim,
            })
            .collect()
    }
}

/// `(p, q) = (-j, (d-1)i)` for the homology spectral sequence.
pub fn pq(d: u32, i: usize, j: usize) -> (i64, i64) {
    (-(j as i64), (d as i64 - 1) * i as i64)
}

/// `(p', q') = (-j', (d-2)i + 1)` for the homotopy spectral sequence.
pub fn pq_prime(d: u32, i: usize, j_prime: usize) -> (i64, i64) {
    (-(j_prime as i64), (d as i64 - 2) * i as i64 + 1)
}

/// The Lie-side level matching `(i, j)`: `j' = j - i + 1`.
pub fn j_prime(i: usize, j: usize) -> Option<usize> {
    (j + 1).checked_sub(i)
}

/// Lazily built complexes for one configuration, shared between queries.
pub struct Session {
    cfg: Config,
    kohno: Kohno<Rational>,
    complexes: Mutex<HashMap<ComplexId, Arc<QBigradedComplex>>>,
}

impl Session {
    pub fn new(cfg: Config) -> Self {
        Session {
            cfg,
            kohno: Kohno::new(cfg),
            complexes: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    pub fn kohno(&self) -> &Kohno<Rational> {
        &self.kohno
    }

    /// Seed the session with a complex obtained elsewhere (e.g. from a cache).
    pub fn insert(&self, c: QBigradedComplex) {
        self.complexes
            .lock()
            .expect("session poisoned")
            .insert(c.id, Arc::new(c));
    }

    pub fn complex(&self, id: ComplexId) -> Result<Arc<QBigradedComplex>> {
        if let Some(c) = self.complexes.lock().expect("session poisoned").get(&id) {
            return Ok(c.clone());
        }
        let c = Arc::new(build(id, &self.cfg, &self.kohno)?);
        self.complexes
            .lock()
            .expect("session poisoned")
            .entry(id)
            .or_insert(c.clone());
        Ok(c)
    }

    pub fn betti(&self, id: ComplexId) -> Result<BettiTable> {
        BettiTable::from_complex(&*self.complex(id)?)
    }
}

fn build(id: ComplexId, cfg: &Config, kohno: &Kohno<Rational>) -> Result<QBigradedComplex> {
    match id {
        ComplexId::TotA => tot_a(cfg),
        ComplexId::TotAIndecomposable => indecomposable_quotient(cfg),
        ComplexId::TotD => tot_d(cfg),
        ComplexId::TotP => tot_p(cfg),
        ComplexId::TotL => tot_l(kohno),
        ComplexId::Dn(n) => d_n_complex(n, cfg),
        ComplexId::Pn(n) => p_n_complex(n, cfg),
    }
}

/// Homology table of one of the complexes at the given truncation.
pub fn betti(id: ComplexId, cfg: &Config) -> Result<BettiTable> {
    Session::new(*cfg).betti(id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bidegree_examples() {
        assert_eq!(pq(4, 1, 2), (-2, 3));
        assert_eq!(pq_prime(4, 1, 2), (-2, 3));
        assert_eq!(j_prime(2, 4), Some(3));
        for i in 1..4 {
            assert_eq!(j_prime(i, 2 * i), Some(i + 1));
        }
    }

    #[test]
    fn tot_a_bottom_class() {
        let cfg = Config::new(4, 1).unwrap();
        let t = betti(ComplexId::TotA, &cfg).unwrap();
        let cells: Vec<_> = t.nonzero().collect();
        assert_eq!(cells.len(), 1);
        assert_eq!((cells[0].i, cells[0].level), (1, 2));
        assert_eq!(cells[0].pq(), (-2, 3));
    }

    #[test]
    fn tot_p_bottom_class_has_degree_d_minus_3() {
        for d in [4, 5] {
            let t = betti(ComplexId::TotP, &Config::new(d, 1).unwrap()).unwrap();
            assert_eq!(t.dim(1, d as i64 - 3), 1);
        }
    }
}
