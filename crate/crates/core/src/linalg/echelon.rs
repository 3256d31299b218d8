use std::collections::BTreeMap;

use super::{Field, SparseVector};

#[derive(Debug, Clone)]
struct EchelonRow<T> {
    vector: BTreeMap<usize, T>,
    /// The row as a combination of inserted generators.
    origin: SparseVector<T>,
}

/// Incrementally built row-echelon basis of a subspace, remembering how each
/// row was obtained from the inserted generators.
///
/// Rows are keyed by their leading (smallest) index, normalized to 1 there.
/// Reduction clears every pivot coordinate, so the residual of a vector is a
/// canonical representative of its class modulo the span.
#[derive(Debug, Clone)]
pub struct EchelonBasis<T> {
    rows: BTreeMap<usize, EchelonRow<T>>,
    generators: usize,
}

impl<T: Field> Default for EchelonBasis<T> {
    fn default() -> Self {
        EchelonBasis {
            rows: BTreeMap::new(),
            generators: 0,
        }
    }
}

impl<T: Field> EchelonBasis<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors passed to [`insert`](Self::insert) so far.
    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, index: usize) -> bool {
        self.rows.contains_key(&index)
    }

    fn reduce_map(&self, v: &SparseVector<T>) -> (BTreeMap<usize, T>, SparseVector<T>) {
        let mut w: BTreeMap<usize, T> = v.iter().map(|(&k, c)| (k, c.clone())).collect();
        let mut coords = SparseVector::zero();
        let mut cursor = 0usize;
        loop {
            let next = w.range(cursor..).map(|(&k, _)| k).find(|k| self.rows.contains_key(k));
            let Some(p) = next else { break };
            let c = w.remove(&p).unwrap();
            let row = &self.rows[&p];
            for (&k, x) in row.vector.range(p + 1..) {
                let e = w.entry(k).or_insert_with(T::zero);
                *e = e.clone() - c.clone() * x.clone();
                if e.is_zero() {
                    w.remove(&k);
                }
            }
            coords.add_assign_scaled(&row.origin, &c);
            cursor = p + 1;
        }
        (w, coords)
    }

    /// Canonical residual of `v` modulo the span.
    pub fn reduce(&self, v: &SparseVector<T>) -> SparseVector<T> {
        self.reduce_map(v).0.into_iter().collect()
    }

    pub fn contains(&self, v: &SparseVector<T>) -> bool {
        self.reduce_map(v).0.is_empty()
    }

    /// Coordinates of `v` in terms of the inserted generators, if `v` lies in the span.
    pub fn solve(&self, v: &SparseVector<T>) -> Option<SparseVector<T>> {
        let (rest, coords) = self.reduce_map(v);
        rest.is_empty().then_some(coords)
    }

    /// Insert a generator; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &SparseVector<T>) -> bool {
        let id = self.generators;
        self.generators += 1;
        let (rest, coords) = self.reduce_map(v);
        let Some((&lead, lead_val)) = rest.iter().next() else {
            return false;
        };
        let inv = T::one() / lead_val.clone();
        let vector = rest.into_iter().map(|(k, x)| (k, x * inv.clone())).collect();
        let mut origin = SparseVector::single(id, T::one());
        origin.add_assign_scaled(&coords, &-T::one());
        let origin = origin.scaled(&inv);
        self.rows.insert(lead, EchelonRow { vector, origin });
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn v(entries: &[(usize, i64)]) -> SparseVector<Rational> {
        entries.iter().map(|&(k, x)| (k, Rational::from_i64(x))).collect()
    }

    #[test]
    fn solve_recovers_coordinates() {
        let mut e = EchelonBasis::new();
        let g0 = v(&[(0, 1), (1, 2)]);
        let g1 = v(&[(1, 1), (2, 1)]);
        assert!(e.insert(&g0));
        assert!(e.insert(&g1));
        assert!(!e.insert(&v(&[(0, 2), (1, 5), (2, 1)])));
        let target = v(&[(0, 3), (1, 4), (2, -2)]);
        let c = e.solve(&target).unwrap();
        let mut back = g0.scaled(&c.coeff(&0));
        back.add_assign_scaled(&g1, &c.coeff(&1));
        assert_eq!(back, target);
        assert!(e.solve(&v(&[(2, 1)])).is_none());
    }

    #[test]
    fn residual_is_canonical() {
        let mut e = EchelonBasis::new();
        e.insert(&v(&[(0, 1), (2, 1)]));
        let a = e.reduce(&v(&[(2, 5)]));
        let b = e.reduce(&v(&[(0, -1), (2, 4)]));
        assert_eq!(a, b);
    }
}
