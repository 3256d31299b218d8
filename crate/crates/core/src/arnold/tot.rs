use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::monomial::{face, normalized_basis_a, reduce, ForestMonomial};
use crate::bigraded::{assemble, BigradedComplex, Column, ComplexId, Level};
use crate::diagrams::Config;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Field, LinComb, SparseMatrix, SparseVector};
use crate::sign::koszul_sign;

/// Total degree of a level-`j` element of complexity `i`.
pub fn tot_degree(d: u32, i: usize, j: usize) -> i64 {
    (d as i64 - 1) * i as i64 - j as i64
}

/// `Σ_k (-1)^k d_k`, projected to the normalized quotient.
pub fn tot_differential<R: Field>(m: &ForestMonomial, cfg: &Config) -> Result<LinComb<ForestMonomial, R>> {
    let mut out = LinComb::zero();
    for k in 0..=m.n() {
        let f = face::<R>(k, m, cfg)?;
        let sign = if k % 2 == 0 { R::one() } else { -R::one() };
        out.add_assign_scaled(&f, &sign);
    }
    Ok(out
        .into_terms()
        .into_iter()
        .filter(|(x, _)| !x.has_isolated_vertex())
        .collect())
}

/// The normalized totalization, one column per complexity `0..=max_complexity`.
pub fn tot_a<R: Field>(cfg: &Config) -> Result<BigradedComplex<R>> {
    let columns: Vec<Column<R>> = (0..=cfg.max_complexity)
        .into_par_iter()
        .map(|i| tot_a_column(i, cfg))
        .collect::<Result<_>>()?;
    let mut tot = BigradedComplex::new(ComplexId::TotA, cfg.d);
    for c in columns {
        tot.columns.insert(c.complexity, c);
    }
    Ok(tot)
}

pub fn tot_a_column<R: Field>(i: usize, cfg: &Config) -> Result<Column<R>> {
    let mut col = Column::new(i);
    if i == 0 {
        return Ok(col);
    }
    let bases: BTreeMap<usize, Vec<ForestMonomial>> = (i..=2 * i)
        .map(|j| Ok((j, normalized_basis_a(i, j, cfg)?)))
        .collect::<Result<_>>()?;
    for j in i + 1..=2 * i {
        let differential = assemble(&bases[&j], &bases[&(j - 1)], |m| tot_differential(m, cfg))?;
        col.pieces.insert(
            tot_degree(cfg.d, i, j),
            Level {
                level: j,
                basis: bases[&j].iter().map(ToString::to_string).collect(),
                differential,
            },
        );
    }
    Ok(col)
}

/// Shuffle product of two monomials: all order-preserving interleavings of
/// their points, with the Koszul sign of moving `[e_x, c_x, e_y, c_y]` to
/// `[e_merged, c_x, c_y]`.
pub fn shuffle_monomials<R: Field>(
    x: &ForestMonomial,
    y: &ForestMonomial,
    cfg: &Config,
) -> Result<LinComb<ForestMonomial, R>> {
    let (j1, j2) = (x.n(), y.n());
    let (i1, i2) = (x.complexity(), y.complexity());
    let n = j1 + j2;
    let chord_odd = cfg.segment_odd();
    let mut odd = vec![true; j1];
    odd.extend(std::iter::repeat_n(chord_odd, i1));
    odd.extend(std::iter::repeat_n(true, j2));
    odd.extend(std::iter::repeat_n(chord_odd, i2));

    let mut out = LinComb::zero();
    for subset in (1..=n as u8).combinations(j1) {
        let mut pos_x = Vec::with_capacity(j1);
        let mut pos_y = Vec::with_capacity(j2);
        let mut order = Vec::with_capacity(odd.len());
        for p in 1..=n as u8 {
            if subset.contains(&p) {
                order.push(pos_x.len());
                pos_x.push(p);
            } else {
                order.push(j1 + i1 + pos_y.len());
                pos_y.push(p);
            }
        }
        order.extend(j1..j1 + i1);
        order.extend(j1 + i1 + j2..odd.len());
        let sign = koszul_sign(&odd, &order);
        let word: Vec<(u8, u8)> = x
            .chords()
            .iter()
            .map(|&(a, b)| (pos_x[a as usize - 1], pos_x[b as usize - 1]))
            .chain(
                y.chords()
                    .iter()
                    .map(|&(a, b)| (pos_y[a as usize - 1], pos_y[b as usize - 1])),
            )
            .collect();
        let r = reduce::<R>(n, &word, cfg)?;
        out.add_assign_scaled(&r, &sign.scalar());
    }
    Ok(out)
}

/// Bilinear extension of [`shuffle_monomials`].
pub fn shuffle_product<R: Field>(
    x: &LinComb<ForestMonomial, R>,
    y: &LinComb<ForestMonomial, R>,
    cfg: &Config,
) -> Result<LinComb<ForestMonomial, R>> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let p = shuffle_monomials::<R>(a, b, cfg)?;
            out.add_assign_scaled(&p, &(ca.clone() * cb.clone()));
        }
    }
    Ok(out)
}

/// Deconcatenation at every position not crossed by a chord, with the Koszul
/// sign of moving `[e, c]` to `[e_pre, c_pre, e_suf, c_suf]`.
pub fn coconcatenation<R: Field>(m: &ForestMonomial, cfg: &Config) -> LinComb<(ForestMonomial, ForestMonomial), R> {
    let n = m.n();
    let chords = m.chords();
    let mut odd = vec![true; n];
    odd.extend(std::iter::repeat_n(cfg.segment_odd(), chords.len()));
    let mut out = LinComb::zero();
    for k in 0..=n as u8 {
        if chords.iter().any(|&(a, b)| a <= k && k < b) {
            continue;
        }
        // chords are sorted by larger endpoint, so the prefix chords come first
        let split = chords.iter().take_while(|c| c.1 <= k).count();
        let pre = ForestMonomial::new(k as usize, chords[..split].to_vec()).expect("prefix in normal form");
        let suf_chords = chords[split..].iter().map(|&(a, b)| (a - k, b - k)).collect();
        let suf = ForestMonomial::new(n - k as usize, suf_chords).expect("suffix in normal form");
        let k = k as usize;
        let order: Vec<usize> = (0..k)
            .chain(n..n + split)
            .chain(k..n)
            .chain(n + split..n + chords.len())
            .collect();
        out.add_term((pre, suf), koszul_sign(&odd, &order).scalar());
    }
    out
}

/// The quotient of the normalized totalization by the span of shuffle
/// products of positive-level elements, one column per complexity.
///
/// Fails with a consistency error if the differential does not preserve the
/// decomposables.
pub fn indecomposable_quotient<R: Field>(cfg: &Config) -> Result<BigradedComplex<R>> {
    let mut bases: BTreeMap<(usize, usize), Vec<ForestMonomial>> = BTreeMap::new();
    for i in 1..=cfg.max_complexity {
        for j in i..=2 * i {
            bases.insert((i, j), normalized_basis_a(i, j, cfg)?);
        }
    }
    let decomposables: BTreeMap<(usize, usize), EchelonBasis<R>> = bases
        .par_iter()
        .map(|(&(i, j), _)| Ok(((i, j), decomposable_span(i, j, &bases, cfg)?)))
        .collect::<Result<_>>()?;

    let mut tot = BigradedComplex::new(ComplexId::TotAIndecomposable, cfg.d);
    for i in 0..=cfg.max_complexity {
        let mut col = Column::new(i);
        for j in i + 1..=2 * i {
            let (src, tgt) = (&bases[&(i, j)], &bases[&(i, j - 1)]);
            let (dec_src, dec_tgt) = (&decomposables[&(i, j)], &decomposables[&(i, j - 1)]);
            let full = assemble(src, tgt, |m| tot_differential(m, cfg))?;
            // d must map decomposables into decomposables
            for g in decomposable_generators(i, j, &bases, cfg)? {
                if !dec_tgt.contains(&full.apply(&g)) {
                    return Err(Error::Consistency(format!(
                        "differential leaves the decomposables at complexity {i}, level {j}"
                    )));
                }
            }
            let keep_src: Vec<usize> = (0..src.len()).filter(|&c| !dec_src.is_pivot(c)).collect();
            let keep_tgt: Vec<usize> = (0..tgt.len()).filter(|&r| !dec_tgt.is_pivot(r)).collect();
            let tgt_pos: BTreeMap<usize, usize> = keep_tgt.iter().enumerate().map(|(k, &r)| (r, k)).collect();
            let mut differential = SparseMatrix::zeros(keep_tgt.len(), keep_src.len());
            for (c_new, &c) in keep_src.iter().enumerate() {
                let residual = dec_tgt.reduce(&full.column(c));
                for (r, x) in residual.iter() {
                    differential.add_entry(tgt_pos[r], c_new, x.clone());
                }
            }
            col.pieces.insert(
                tot_degree(cfg.d, i, j),
                Level {
                    level: j,
                    basis: keep_src.iter().map(|&c| src[c].to_string()).collect(),
                    differential,
                },
            );
        }
        tot.columns.insert(i, col);
    }
    Ok(tot)
}

fn decomposable_generators<R: Field>(
    i: usize,
    j: usize,
    bases: &BTreeMap<(usize, usize), Vec<ForestMonomial>>,
    cfg: &Config,
) -> Result<Vec<SparseVector<R>>> {
    let target = &bases[&(i, j)];
    let index: BTreeMap<&ForestMonomial, usize> = target.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut out = Vec::new();
    for i1 in 1..i {
        let i2 = i - i1;
        for j1 in i1 + 1..=(2 * i1).min(j) {
            let Some(j2) = j.checked_sub(j1) else { continue };
            let Some(right) = bases.get(&(i2, j2)) else { continue };
            for x in &bases[&(i1, j1)] {
                for y in right {
                    let p = shuffle_monomials::<R>(x, y, cfg)?;
                    let mut v = SparseVector::zero();
                    for (m, c) in p.iter() {
                        let k = index
                            .get(m)
                            .ok_or_else(|| Error::Consistency(format!("product term {m} is not normalized")))?;
                        v.add_term(*k, c.clone());
                    }
                    out.push(v);
                }
            }
        }
    }
    Ok(out)
}

fn decomposable_span<R: Field>(
    i: usize,
    j: usize,
    bases: &BTreeMap<(usize, usize), Vec<ForestMonomial>>,
    cfg: &Config,
) -> Result<EchelonBasis<R>> {
    let mut e = EchelonBasis::new();
    for g in decomposable_generators(i, j, bases, cfg)? {
        e.insert(&g);
    }
    Ok(e)
}
