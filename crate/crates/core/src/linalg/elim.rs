use std::collections::{BTreeMap, BTreeSet};

use super::{Field, SparseMatrix, SparseVector};

type Row<T> = Vec<(usize, T)>;

/// `p*a - q*b` on sorted sparse rows.
fn combine<T: Field>(p: &T, a: &[(usize, T)], q: &T, b: &[(usize, T)]) -> Row<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, p.clone() * a[i].1.clone()));
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(q.clone() * b[j].1.clone())));
            j += 1;
        } else {
            let v = p.clone() * a[i].1.clone() - q.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct Eliminator<T> {
    rows: Vec<Option<Row<T>>>,
    col_rows: Vec<BTreeSet<usize>>,
    by_len: BTreeSet<(usize, usize)>,
    singletons: BTreeSet<usize>,
}

impl<T: Field> Eliminator<T> {
    fn new(m: &SparseMatrix<T>) -> Self {
        let mut el = Eliminator {
            rows: Vec::with_capacity(m.n_rows()),
            col_rows: vec![BTreeSet::new(); m.n_cols()],
            by_len: BTreeSet::new(),
            singletons: BTreeSet::new(),
        };
        for (r, mut row) in m.rows().into_iter().enumerate() {
            T::make_primitive(&mut row);
            el.rows.push(None);
            el.insert_row(r, row);
        }
        el
    }

    fn touch_col(&mut self, c: usize) {
        if self.col_rows[c].len() == 1 {
            self.singletons.insert(c);
        } else {
            self.singletons.remove(&c);
        }
    }

    fn insert_row(&mut self, r: usize, row: Row<T>) {
        if row.is_empty() {
            self.rows[r] = None;
            return;
        }
        for &(c, _) in &row {
            self.col_rows[c].insert(r);
            self.touch_col(c);
        }
        self.by_len.insert((row.len(), r));
        self.rows[r] = Some(row);
    }

    fn take_row(&mut self, r: usize) -> Row<T> {
        let row = self.rows[r].take().expect("active row");
        self.by_len.remove(&(row.len(), r));
        for &(c, _) in &row {
            self.col_rows[c].remove(&r);
            self.touch_col(c);
        }
        row
    }

    /// Markowitz pivot: a column singleton if any (zero fill), otherwise the
    /// entry of least `(row_len-1)*(col_count-1)` among the shortest rows.
    /// Ties go to the lowest row, then the lowest column.
    fn choose_pivot(&self) -> Option<(usize, usize)> {
        if let Some(&c) = self.singletons.iter().next() {
            let r = *self.col_rows[c].iter().next().unwrap();
            return Some((r, c));
        }
        let &(min_len, _) = self.by_len.iter().next()?;
        let mut best: Option<(usize, usize, usize)> = None;
        for &(len, r) in self.by_len.range((min_len, 0)..(min_len + 1, 0)) {
            for (c, _) in self.rows[r].as_ref().unwrap() {
                let cost = (len - 1) * (self.col_rows[*c].len() - 1);
                let cand = (cost, r, *c);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    fn run(mut self) -> usize {
        let mut rank = 0;
        while let Some((r, c)) = self.choose_pivot() {
            let prow = self.take_row(r);
            let p = prow.iter().find(|(cc, _)| *cc == c).unwrap().1.clone();
            let targets: Vec<usize> = self.col_rows[c].iter().copied().collect();
            for r2 in targets {
                let row2 = self.take_row(r2);
                let a = row2.iter().find(|(cc, _)| *cc == c).unwrap().1.clone();
                let mut new_row = combine(&p, &row2, &a, &prow);
                T::make_primitive(&mut new_row);
                self.insert_row(r2, new_row);
            }
            rank += 1;
        }
        rank
    }
}

/// Rank over the field, by fraction-free sparse elimination with Markowitz pivoting.
pub fn rank<T: Field>(m: &SparseMatrix<T>) -> usize {
    if m.is_zero() {
        return 0;
    }
    Eliminator::new(m).run()
}

/// Straightforward dense Gaussian elimination; a slow second route for tests.
pub fn rank_dense_reference<T: Field>(m: &SparseMatrix<T>) -> usize {
    let mut a: Vec<Vec<T>> = vec![vec![T::zero(); m.n_cols()]; m.n_rows()];
    for (r, c, v) in m.entries() {
        a[r][c] = v.clone();
    }
    let mut rank = 0;
    for c in 0..m.n_cols() {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone() / pivot_row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column of
/// the reduced row echelon form, in increasing free-column order.
pub fn kernel_basis<T: Field>(m: &SparseMatrix<T>) -> Vec<SparseVector<T>> {
    let mut rows: Vec<BTreeMap<usize, T>> = m
        .rows()
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.into_iter().collect())
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (col, row index)
    let mut used = vec![false; rows.len()];
    for c in 0..m.n_cols() {
        let Some(p) = (0..rows.len()).find(|&r| !used[r] && rows[r].contains_key(&c)) else {
            continue;
        };
        used[p] = true;
        let inv = T::one() / rows[p][&c].clone();
        for v in rows[p].values_mut() {
            *v = v.clone() * inv.clone();
        }
        let prow = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == p {
                continue;
            }
            if let Some(f) = row.get(&c).cloned() {
                for (k, v) in &prow {
                    let e = row.entry(*k).or_insert_with(T::zero);
                    *e = e.clone() - f.clone() * v.clone();
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        pivots.push((c, p));
    }
    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|&(c, _)| c).collect();
    (0..m.n_cols())
        .filter(|c| !pivot_cols.contains(c))
        .map(|f| {
            let mut v = SparseVector::single(f, T::one());
            for &(pc, pr) in &pivots {
                if let Some(x) = rows[pr].get(&f) {
                    v.add_term(pc, -x.clone());
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_rational::Ratio;
    use num_traits::Zero;

    fn qm(rows: &[&[i64]]) -> SparseMatrix<Rational> {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::<Rational>::identity(2)), 2);
        assert_eq!(rank(&SparseMatrix::<Rational>::zeros(3, 4)), 0);
        assert_eq!(rank(&qm(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::<Rational>::identity(2)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::<Rational>::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&qm(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v.coeff(&0), -v.coeff(&1));
        assert!(!v.coeff(&0).is_zero());
    }

    #[test]
    fn rank_generic_over_fields() {
        let m = SparseMatrix::from_dense(&[
            vec![
                Ratio::<i64>::from_integer(2),
                Ratio::from_integer(4),
                Ratio::from_integer(0),
            ],
            vec![Ratio::from_integer(1), Ratio::from_integer(2), Ratio::from_integer(1)],
            vec![Ratio::from_integer(3), Ratio::from_integer(6), Ratio::from_integer(1)],
        ]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_dense_reference(&m), 2);
        assert_eq!(kernel_basis(&m).len(), 1);
    }

    #[test]
    fn fill_in_heavy_matrix() {
        // arrow matrix: dense first row and column
        let n = 30;
        let mut m = SparseMatrix::<Rational>::zeros(n, n);
        for k in 0..n {
            m.add_entry(0, k, Rational::from_i64(k as i64 + 1));
            m.add_entry(k, 0, Rational::from_i64(2 * k as i64 + 1));
            if k > 0 {
                m.add_entry(k, k, Rational::from_i64(3));
            }
        }
        assert_eq!(rank(&m), rank_dense_reference(&m));
    }
}
