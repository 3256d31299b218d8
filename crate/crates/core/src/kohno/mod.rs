//! The cosimplicial Drinfeld–Kohno Lie algebra `L^•`.
//!
//! `L^n` is generated by `α_{ij}`, `1 ≤ i < j ≤ n`, of degree `d - 1`, with
//! the Whitehead bracket of degree `-1`; equivalently a graded Lie algebra on
//! generators of shifted degree `d - 2`. Relations:
//! `[α_{ij}, α_{kl}] = 0` for disjoint pairs and
//! `[α_{ij}, α_{ik} + α_{jk}] = 0` for distinct `i, j, k`, with `α_{ji} = (-1)^d α_{ij}`.

mod model;
mod word;

use rayon::prelude::*;

pub use model::Kohno;
pub use word::{lyndon_words, standard_bracketing, BracketWord};

use crate::bigraded::{assemble_with, BigradedComplex, Column, ComplexId, Level};
use crate::diagrams::Config;
use crate::error::Result;
use crate::linalg::{Field, LinComb};

/// An element of `L^n` in basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElement<R> {
    pub n: usize,
    pub terms: LinComb<BracketWord, R>,
}

impl<R: Field> LieElement<R> {
    pub fn zero(n: usize) -> Self {
        LieElement {
            n,
            terms: LinComb::zero(),
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (BracketWord, R)>) -> Self {
        LieElement {
            n,
            terms: terms.into_iter().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, w: &BracketWord) -> R {
        self.terms.coeff(w)
    }

    pub fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        self.terms.add_assign(&other.terms);
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &R) {
        debug_assert_eq!(self.n, other.n);
        self.terms.add_assign_scaled(&other.terms, c);
    }
}

/// Total degree of the length-`i` part of `NL^{j'}`: `(d-2)i + 1 - j'`.
pub fn tot_degree(d: u32, i: usize, j_prime: usize) -> i64 {
    (d as i64 - 2) * i as i64 + 1 - j_prime as i64
}

/// The normalized totalization: for each complexity `i`, the homological
/// column `NL^2 → … → NL^{i+1}` with differential `Σ_k (-1)^k d^k`.
pub fn tot_l<R: Field>(kohno: &Kohno<R>) -> Result<BigradedComplex<R>> {
    let cfg = *kohno.config();
    let columns: Vec<Column<R>> = (0..=cfg.max_complexity)
        .into_par_iter()
        .map(|i| tot_l_column(kohno, i))
        .collect::<Result<_>>()?;
    let mut tot = BigradedComplex::new(ComplexId::TotL, cfg.d);
    for c in columns {
        tot.columns.insert(c.complexity, c);
    }
    Ok(tot)
}

pub fn tot_l_column<R: Field>(kohno: &Kohno<R>, i: usize) -> Result<Column<R>> {
    let cfg: Config = *kohno.config();
    let mut col = Column::new_homological(i);
    if i == 0 {
        return Ok(col);
    }
    let top = i + 1;
    let mut bases = Vec::new();
    for jp in 0..=top + 1 {
        bases.push(if (2..=top).contains(&jp) {
            kohno.normalized_basis(jp, i)?
        } else {
            Vec::new()
        });
    }
    for jp in 2..=top {
        let differential = assemble_with(&bases[jp], &bases[jp + 1], |w| {
            let x = LieElement::from_terms(jp, [(w.clone(), R::one())]);
            Ok(kohno.tot_differential(&x)?.terms)
        })?;
        col.pieces.insert(
            tot_degree(cfg.d, i, jp),
            Level {
                level: jp,
                basis: bases[jp].iter().map(ToString::to_string).collect(),
                differential,
            },
        );
    }
    Ok(col)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(x: i64) -> Rational {
        Rational::from_i64(x)
    }

    fn kohno(d: u32) -> Kohno<Rational> {
        Kohno::new(Config::new(d, 3).unwrap())
    }

    fn a(i: u8, j: u8) -> BracketWord {
        BracketWord::gen(i, j)
    }

    fn br(x: BracketWord, y: BracketWord) -> BracketWord {
        BracketWord::bracket(x, y)
    }

    #[test]
    fn rewrite_examples() {
        for d in [4, 5] {
            let k = kohno(d);
            assert!(k.rewrite(4, &br(a(1, 2), a(3, 4))).unwrap().is_zero());
            let cyclic = k
                .rewrite_combination(3, &[(br(a(1, 2), a(2, 3)), q(1)), (br(a(1, 2), a(3, 1)), q(1))])
                .unwrap();
            assert_eq!(cyclic.is_zero(), d % 2 == 0);
            let dual = k
                .rewrite_combination(3, &[(br(a(1, 2), a(1, 3)), q(1)), (br(a(1, 2), a(2, 3)), q(1))])
                .unwrap();
            assert!(dual.is_zero());
            assert!(!k.rewrite(3, &br(a(1, 3), a(2, 3))).unwrap().is_zero());
            let sq = k.rewrite(2, &br(a(1, 2), a(1, 2))).unwrap();
            assert_eq!(sq.is_zero(), d % 2 == 0);
            assert!(k.rewrite(2, &a(1, 3)).is_err());
        }
    }

    #[test]
    fn basis_dims() {
        for d in [4, 5] {
            let k = kohno(d);
            assert_eq!(k.basis(2, 1).unwrap().len(), 1);
            assert_eq!(k.basis(2, 2).unwrap().len(), (d % 2) as usize);
            assert_eq!(k.basis(3, 1).unwrap().len(), 3);
            assert_eq!(k.normalized_basis(2, 1).unwrap().len(), 1);
            assert!(k.normalized_basis(3, 1).unwrap().is_empty());
            assert_eq!(k.normalized_basis(2, 2).unwrap().len(), (d % 2) as usize);
        }
    }

    #[test]
    fn coface_and_codegeneracy_examples() {
        let k = kohno(4);
        let one = |n, w| LieElement::from_terms(n, [(w, q(1))]);
        let sum = |n, ws: &[BracketWord]| LieElement::from_terms(n, ws.iter().map(|w| (w.clone(), q(1))));
        assert_eq!(k.coface(0, &one(2, a(1, 2))).unwrap(), one(3, a(2, 3)));
        assert_eq!(k.coface(1, &one(2, a(1, 2))).unwrap(), sum(3, &[a(1, 3), a(2, 3)]));
        assert_eq!(k.coface(3, &one(2, a(1, 2))).unwrap(), one(3, a(1, 2)));
        assert!(k.codegeneracy(1, &one(2, a(1, 2))).unwrap().is_zero());
        assert_eq!(k.codegeneracy(2, &one(3, a(1, 3))).unwrap(), one(2, a(1, 2)));
        assert_eq!(k.codegeneracy(1, &one(3, a(2, 3))).unwrap(), one(2, a(1, 2)));
        assert!(k.coface(4, &one(2, a(1, 2))).is_err());
    }

    #[test]
    fn complexity_one_and_two() {
        for d in [4u32, 5] {
            let k = kohno(d);
            let c1 = tot_l_column(&k, 1).unwrap();
            assert_eq!(c1.homology().unwrap()[&(d as i64 - 3)], 1);
            let c2 = tot_l_column(&k, 2).unwrap();
            let h = c2.homology().unwrap();
            assert_eq!(h.get(&(2 * d as i64 - 5)).copied().unwrap_or(0), (d % 2) as usize);
        }
    }
}
