use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use super::word::{lyndon_words, standard_bracketing, BracketWord};
use super::LieElement;
use crate::diagrams::Config;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Field, LinComb, SparseVector};

/// Letter index of `α_{ij}`, `i < j`.
pub(crate) fn letter(i: u8, j: u8) -> u8 {
    debug_assert!(i < j);
    let (i, j) = (i as usize, j as usize);
    ((j - 1) * (j - 2) / 2 + (i - 1)) as u8
}

fn n_letters(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Elements of the tensor algebra on the letters `α_{ij}`.
type Tensor<R> = LinComb<Vec<u8>, R>;

type ModelCache<R> = Mutex<HashMap<(usize, usize), Arc<Model<R>>>>;

/// The Drinfeld–Kohno Lie algebras `L^n` for one ambient dimension.
///
/// Computations happen in the enveloping algebra: a bracket expression is
/// expanded into the tensor algebra, reduced modulo the two-sided ideal of
/// the relations, and solved against the reduced images of the basis words.
/// Per-`(n, ℓ)` data are built on first use and shared between threads.
pub struct Kohno<R> {
    cfg: Config,
    models: ModelCache<R>,
}

struct Model<R> {
    n: usize,
    ideal: EchelonBasis<R>,
    basis: Vec<BracketWord>,
    reduced_basis: EchelonBasis<R>,
}

impl<R: Field> Kohno<R> {
    pub fn new(cfg: Config) -> Self {
        Kohno {
            cfg,
            models: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    /// Generators carry the shifted degree `d - 2`.
    fn odd(&self) -> bool {
        self.cfg.d_odd()
    }

    fn check(&self, n: usize, len: usize) -> Result<()> {
        self.cfg.check_complexity(len)?;
        self.cfg.check_points(n)
    }

    /// A basis of the length-`len` part of `L^n`: for each `k = 2..n`,
    /// Lyndon words in `α_{1k}, …, α_{k-1,k}` with standard bracketing, plus
    /// `[w, w]` for odd-length Lyndon `w` when `d` is odd.
    pub fn basis(&self, n: usize, len: usize) -> Result<Vec<BracketWord>> {
        self.check(n, len)?;
        Ok(self.model(n, len)?.basis.clone())
    }

    fn free_part(&self, k: usize, len: usize) -> Vec<BracketWord> {
        let leaf = |a: usize| BracketWord::gen(a as u8 + 1, k as u8);
        let mut out: Vec<BracketWord> = lyndon_words(k - 1, len)
            .iter()
            .map(|w| standard_bracketing(w, &leaf))
            .collect();
        if self.odd() && len.is_multiple_of(2) && (len / 2) % 2 == 1 {
            for w in lyndon_words(k - 1, len / 2) {
                let b = standard_bracketing(&w, &leaf);
                out.push(BracketWord::bracket(b.clone(), b));
            }
        }
        out
    }

    /// Basis words of `L^n` using every index `1..n`.
    pub fn normalized_basis(&self, n: usize, len: usize) -> Result<Vec<BracketWord>> {
        let full: Vec<u8> = (1..=n as u8).collect();
        Ok(self
            .basis(n, len)?
            .into_iter()
            .filter(|w| w.support() == full)
            .collect())
    }

    fn model(&self, n: usize, len: usize) -> Result<Arc<Model<R>>> {
        if let Some(m) = self.models.lock().expect("model cache poisoned").get(&(n, len)) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.build(n, len)?);
        self.models
            .lock()
            .expect("model cache poisoned")
            .entry((n, len))
            .or_insert(m.clone());
        Ok(m)
    }

    fn build(&self, n: usize, len: usize) -> Result<Model<R>> {
        let mut ideal = EchelonBasis::new();
        if len >= 2 {
            let relations = self.relations(n);
            let letters = n_letters(n);
            for before in 0..=len - 2 {
                let after = len - 2 - before;
                for u in (0..before).map(|_| 0..letters as u8).multi_cartesian_product_or_empty() {
                    for v in (0..after).map(|_| 0..letters as u8).multi_cartesian_product_or_empty() {
                        for r in &relations {
                            let mut g = Tensor::zero();
                            for (w, c) in r.iter() {
                                let word: Vec<u8> = u.iter().chain(w).chain(&v).copied().collect();
                                g.add_term(word, c.clone());
                            }
                            ideal.insert(&index_vector(&g, letters));
                        }
                    }
                }
            }
        }
        let mut model = Model {
            n,
            ideal,
            basis: Vec::new(),
            reduced_basis: EchelonBasis::new(),
        };
        if len >= 1 {
            for k in 2..=n {
                model.basis.extend(self.free_part(k, len));
            }
        }
        for w in &model.basis {
            let v = self.reduced(&model, &self.expand(w));
            if !model.reduced_basis.insert(&v) {
                return Err(Error::Consistency(format!("basis word {w} is dependent in L^{n}")));
            }
        }
        Ok(model)
    }

    /// Quadratic relations as tensors: `[α_{ij}, α_{kl}]` for disjoint
    /// pairs and `[α_{ij}, α_{ik} + α_{jk}]` for distinct triples.
    ///
    /// For even `d` the triple relation equals the cyclic form
    /// `[α_{ij}, α_{jk} + α_{ki}]`; for odd `d` the cyclic form would also
    /// kill `[α_{13}, α_{23}]`, so the form dual to the Arnold relation is used.
    fn relations(&self, n: usize) -> Vec<Tensor<R>> {
        let gens: Vec<(u8, u8)> = (1..=n as u8).tuple_combinations().collect();
        let mut out = Vec::new();
        for (a, b) in gens.iter().tuple_combinations() {
            if a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1 {
                out.push(self.bracket_tensors(&self.leaf(a.0, a.1), &self.leaf(b.0, b.1), 1, 1));
            }
        }
        for (i, j, k) in (1..=n as u8).tuple_combinations() {
            for (x, y, z) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                let mut rhs = self.leaf(x, z);
                rhs.add_assign(&self.leaf(y, z));
                out.push(self.bracket_tensors(&self.leaf(x, y), &rhs, 1, 1));
            }
        }
        out
    }

    fn leaf(&self, i: u8, j: u8) -> Tensor<R> {
        if i < j {
            Tensor::single(vec![letter(i, j)], R::one())
        } else {
            let s = if self.odd() { -R::one() } else { R::one() };
            Tensor::single(vec![letter(j, i)], s)
        }
    }

    /// `[x, y] = xy - (-1)^{|x||y|} yx` with shifted parities.
    fn bracket_tensors(&self, x: &Tensor<R>, y: &Tensor<R>, lx: usize, ly: usize) -> Tensor<R> {
        let both_odd = self.odd() && lx % 2 == 1 && ly % 2 == 1;
        let mut out = Tensor::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let c = ca.clone() * cb.clone();
                out.add_term(a.iter().chain(b).copied().collect(), c.clone());
                let c = if both_odd { c } else { -c };
                out.add_term(b.iter().chain(a).copied().collect(), c);
            }
        }
        out
    }

    fn expand(&self, w: &BracketWord) -> Tensor<R> {
        match w {
            BracketWord::Gen(i, j) => self.leaf(*i, *j),
            BracketWord::Bracket(x, y) => self.bracket_tensors(&self.expand(x), &self.expand(y), x.len(), y.len()),
        }
    }

    fn reduced(&self, model: &Model<R>, t: &Tensor<R>) -> SparseVector<R> {
        model.ideal.reduce(&index_vector(t, n_letters(model.n)))
    }

    fn solve(&self, model: &Model<R>, t: &Tensor<R>) -> Result<LieElement<R>> {
        let coords = model
            .reduced_basis
            .solve(&self.reduced(model, t))
            .ok_or_else(|| Error::Consistency("tensor is not in the span of the Lie basis".into()))?;
        Ok(LieElement::from_terms(
            model.n,
            coords.iter().map(|(&k, c)| (model.basis[k].clone(), c.clone())),
        ))
    }

    /// Express a bracket expression in the basis of `L^n`.
    pub fn rewrite(&self, n: usize, w: &BracketWord) -> Result<LieElement<R>> {
        w.check(n)?;
        self.check(n, w.len())?;
        let model = self.model(n, w.len())?;
        self.solve(&model, &self.expand(w))
    }

    /// Express a combination of bracket expressions of equal length in the basis.
    pub fn rewrite_combination(&self, n: usize, terms: &[(BracketWord, R)]) -> Result<LieElement<R>> {
        let mut out = LieElement::zero(n);
        for (w, c) in terms {
            out.add_assign_scaled(&self.rewrite(n, w)?, c);
        }
        Ok(out)
    }

    /// Apply a letter substitution `α_{ij} ↦ Σ c α_{kl}` (a Lie map
    /// `L^n → L^m`) to `x` and re-express the result in the basis of `L^m`.
    fn substitute(
        &self,
        x: &LieElement<R>,
        m: usize,
        image: impl Fn(u8, u8) -> Vec<(u8, u8)>,
    ) -> Result<LieElement<R>> {
        self.cfg.check_points(m)?;
        let mut out = LieElement::zero(m);
        let by_len = x.terms.iter().into_group_map_by(|(w, _)| w.len());
        for (len, terms) in by_len {
            let model = self.model(m, len)?;
            let mut total = Tensor::zero();
            for (w, c) in terms {
                let t = self.expand(w);
                for (word, coef) in t.iter() {
                    let mut acc = Tensor::single(Vec::new(), coef.clone() * c.clone());
                    for &l in word {
                        let (i, j) = unletter(l);
                        let mut img = Tensor::zero();
                        for (a, b) in image(i, j) {
                            img.add_assign(&self.leaf(a, b));
                        }
                        acc = concat(&acc, &img);
                        if acc.is_zero() {
                            break;
                        }
                    }
                    total.add_assign(&acc);
                }
            }
            let e = self.solve(&model, &total)?;
            out.add_assign(&e);
        }
        Ok(out)
    }

    /// Coface `d^k: L^n → L^{n+1}`, `0 ≤ k ≤ n+1`.
    pub fn coface(&self, k: usize, x: &LieElement<R>) -> Result<LieElement<R>> {
        let n = x.n;
        if k > n + 1 {
            return Err(Error::IndexOutOfRange {
                what: "coface",
                index: k,
                max: n + 1,
            });
        }
        let k = k as u8;
        self.substitute(x, n + 1, |i, j| {
            if j < k {
                vec![(i, j)]
            } else if j == k {
                vec![(i, j), (i, j + 1)]
            } else if i < k {
                vec![(i, j + 1)]
            } else if i == k {
                vec![(i, j + 1), (i + 1, j + 1)]
            } else {
                vec![(i + 1, j + 1)]
            }
        })
    }

    /// Codegeneracy `s^k: L^n → L^{n-1}`, `1 ≤ k ≤ n`.
    pub fn codegeneracy(&self, k: usize, x: &LieElement<R>) -> Result<LieElement<R>> {
        let n = x.n;
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange {
                what: "codegeneracy",
                index: k,
                max: n,
            });
        }
        let k = k as u8;
        self.substitute(x, n - 1, |i, j| {
            if j < k {
                vec![(i, j)]
            } else if j == k || i == k {
                vec![]
            } else if i < k {
                vec![(i, j - 1)]
            } else {
                vec![(i - 1, j - 1)]
            }
        })
    }

    /// `Σ_k (-1)^k d^k: L^n → L^{n+1}`.
    pub fn tot_differential(&self, x: &LieElement<R>) -> Result<LieElement<R>> {
        let mut out = LieElement::zero(x.n + 1);
        for k in 0..=x.n + 1 {
            let s = if k % 2 == 0 { R::one() } else { -R::one() };
            out.add_assign_scaled(&self.coface(k, x)?, &s);
        }
        Ok(out)
    }
}

fn unletter(l: u8) -> (u8, u8) {
    let mut j = 2u8;
    while (j as usize) * (j as usize - 1) / 2 <= l as usize {
        j += 1;
    }
    let base = (j as usize - 1) * (j as usize - 2) / 2;
    (l - base as u8 + 1, j)
}

fn concat<R: Field>(x: &Tensor<R>, y: &Tensor<R>) -> Tensor<R> {
    let mut out = Tensor::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term(a.iter().chain(b).copied().collect(), ca.clone() * cb.clone());
        }
    }
    out
}

fn index_vector<R: Field>(t: &Tensor<R>, letters: usize) -> SparseVector<R> {
    let mut v = SparseVector::zero();
    for (w, c) in t.iter() {
        let idx = w.iter().fold(0usize, |acc, &l| acc * letters + l as usize);
        v.add_term(idx, c.clone());
    }
    v
}

trait CartesianOrEmpty: Iterator + Sized {
    fn multi_cartesian_product_or_empty(self) -> Box<dyn Iterator<Item = Vec<u8>>>;
}

impl<I> CartesianOrEmpty for I
where
    I: Iterator<Item = std::ops::Range<u8>>,
{
    fn multi_cartesian_product_or_empty(self) -> Box<dyn Iterator<Item = Vec<u8>>> {
        let ranges: Vec<_> = self.collect();
        if ranges.is_empty() {
            Box::new(std::iter::once(Vec::new()))
        } else {
            Box::new(ranges.into_iter().multi_cartesian_product())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_round_trip() {
        let mut seen = Vec::new();
        for j in 2..=6u8 {
            for i in 1..j {
                let l = letter(i, j);
                assert_eq!(unletter(l), (i, j));
                seen.push(l);
            }
        }
        assert_eq!(seen, (0..15).collect::<Vec<u8>>());
    }
}
