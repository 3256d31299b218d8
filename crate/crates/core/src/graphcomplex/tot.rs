use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::ops::{differential_d, face_d, is_indecomposable, project_p, DnElement};
use crate::arnold::tot_degree;
use crate::bigraded::{assemble, BigradedComplex, Column, ComplexId, Level};
use crate::diagrams::{canonicalize_unchecked, enumerate_diagrams, enumerate_with_internal, Config, Diagram, Endpoint};
use crate::error::{Error, Result};
use crate::linalg::{Field, LinComb};
use crate::sign::{koszul_sign, Sign};

/// Normalized diagrams of complexity `i` with `n + #internal = level`,
/// optionally only the indecomposable ones.
pub fn normalized_basis_d(i: usize, level: usize, indecomposable: bool, cfg: &Config) -> Result<Vec<Diagram>> {
    cfg.check_complexity(i)?;
    let mut out = Vec::new();
    if i == 0 {
        return Ok(out);
    }
    for n in 1..=level.min(cfg.max_points) {
        let m = level - n;
        if m > cfg.max_internal {
            continue;
        }
        out.extend(
            enumerate_with_internal(n, i, m, cfg)?
                .into_iter()
                .filter(|g| !indecomposable || is_indecomposable(g)),
        );
    }
    out.sort();
    Ok(out)
}

/// `Σ_k (-1)^k d_k + (-1)^n d_D` on the orientation `[e_1, …, e_n, V, S]`,
/// projected to the normalized quotient.
pub fn tot_differential_d<R: Field>(g: &Diagram, cfg: &Config) -> Result<DnElement<R>> {
    let n = g.n_ext();
    let mut out = LinComb::zero();
    for k in 0..=n {
        out.add_assign_scaled(&face_d::<R>(k, g, cfg)?, &Sign::pow(k).scalar());
    }
    out.add_assign_scaled(&differential_d::<R>(g, cfg)?, &Sign::pow(n).scalar());
    Ok(out
        .into_terms()
        .into_iter()
        .filter(|(h, _)| !h.has_isolated_ext())
        .collect())
}

/// [`tot_differential_d`] followed by the projection to indecomposables.
pub fn tot_differential_p<R: Field>(g: &Diagram, cfg: &Config) -> Result<DnElement<R>> {
    Ok(project_p(&tot_differential_d(g, cfg)?))
}

fn tot_column<R: Field>(i: usize, indecomposable: bool, cfg: &Config) -> Result<Column<R>> {
    let mut col = Column::new(i);
    if i == 0 {
        return Ok(col);
    }
    let bases: BTreeMap<usize, Vec<Diagram>> = (1..=2 * i)
        .map(|l| Ok((l, normalized_basis_d(i, l, indecomposable, cfg)?)))
        .collect::<Result<_>>()?;
    for l in 2..=2 * i {
        let differential = if indecomposable {
            assemble(&bases[&l], &bases[&(l - 1)], |g| tot_differential_p(g, cfg))?
        } else {
            assemble(&bases[&l], &bases[&(l - 1)], |g| tot_differential_d(g, cfg))?
        };
        col.pieces.insert(
            tot_degree(cfg.d, i, l),
            Level {
                level: l,
                basis: bases[&l].iter().map(ToString::to_string).collect(),
                differential,
            },
        );
    }
    Ok(col)
}

pub fn tot_d_column<R: Field>(i: usize, cfg: &Config) -> Result<Column<R>> {
    tot_column(i, false, cfg)
}

pub fn tot_p_column<R: Field>(i: usize, cfg: &Config) -> Result<Column<R>> {
    tot_column(i, true, cfg)
}

fn collect<R: Field>(
    id: ComplexId,
    cfg: &Config,
    column: impl Fn(usize) -> Result<Column<R>> + Sync + Send,
) -> Result<BigradedComplex<R>> {
    let columns: Vec<Column<R>> = (0..=cfg.max_complexity)
        .into_par_iter()
        .map(column)
        .collect::<Result<_>>()?;
    let mut out = BigradedComplex::new(id, cfg.d);
    for c in columns {
        out.columns.insert(c.complexity, c);
    }
    Ok(out)
}

/// The normalized totalization of `D_•`.
pub fn tot_d<R: Field>(cfg: &Config) -> Result<BigradedComplex<R>> {
    collect(ComplexId::TotD, cfg, |i| tot_d_column(i, cfg))
}

/// The normalized totalization of `P_•`.
pub fn tot_p<R: Field>(cfg: &Config) -> Result<BigradedComplex<R>> {
    collect(ComplexId::TotP, cfg, |i| tot_p_column(i, cfg))
}

fn internal_column<R: Field>(n: usize, i: usize, indecomposable: bool, cfg: &Config) -> Result<Column<R>> {
    let mut col = Column::new(i);
    let mut by_m: BTreeMap<usize, Vec<Diagram>> = BTreeMap::new();
    for g in enumerate_diagrams(n, i, cfg)? {
        if !indecomposable || is_indecomposable(&g) {
            by_m.entry(g.n_int()).or_default().push(g);
        }
    }
    let empty = Vec::new();
    for (&m, basis) in &by_m {
        let target = m.checked_sub(1).and_then(|t| by_m.get(&t)).unwrap_or(&empty);
        let differential = assemble(basis, target, |g| {
            let dg = differential_d::<R>(g, cfg)?;
            Ok(if indecomposable { project_p(&dg) } else { dg })
        })?;
        col.pieces.insert(
            (cfg.d as i64 - 1) * i as i64 - m as i64,
            Level {
                level: m,
                basis: basis.iter().map(ToString::to_string).collect(),
                differential,
            },
        );
    }
    Ok(col)
}

/// `D_n` split by complexity, graded by `(d-1)i - #internal`.
pub fn d_n_complex<R: Field>(n: usize, cfg: &Config) -> Result<BigradedComplex<R>> {
    cfg.check_points(n)?;
    collect(ComplexId::Dn(n), cfg, |i| internal_column(n, i, false, cfg))
}

/// `P_n = D̄_n / D̄_n²` split by complexity.
pub fn p_n_complex<R: Field>(n: usize, cfg: &Config) -> Result<BigradedComplex<R>> {
    cfg.check_points(n)?;
    collect(ComplexId::Pn(n), cfg, |i| internal_column(n, i, true, cfg))
}

fn orientation_parity(g: &Diagram, cfg: &Config) -> Vec<bool> {
    let mut odd = vec![true; g.n_ext()];
    odd.extend(std::iter::repeat_n(cfg.vertex_odd(), g.n_int()));
    odd.extend(std::iter::repeat_n(cfg.segment_odd(), g.n_segments()));
    odd
}

fn canonical<R: Field>(g: &Diagram, sign: Sign, cfg: &Config) -> Option<(Diagram, R)> {
    canonicalize_unchecked(g, cfg).map(|(c, s)| (c, (sign * s).scalar()))
}

/// Shuffle product on the totalization: interleave the points and superimpose,
/// moving `[e_x, V_x, S_x, e_y, V_y, S_y]` to `[e, V_x, V_y, S_x, S_y]`.
pub fn tot_product_d<R: Field>(x: &Diagram, y: &Diagram, cfg: &Config) -> Result<DnElement<R>> {
    let (j1, j2) = (x.n_ext(), y.n_ext());
    let n = j1 + j2;
    cfg.check_points(n)?;
    let (mx, sx, my, sy) = (x.n_int(), x.n_segments(), y.n_int(), y.n_segments());
    let mut odd = orientation_parity(x, cfg);
    odd.extend(orientation_parity(y, cfg));
    let y0 = j1 + mx + sx;
    let mut out = LinComb::zero();
    for subset in (1..=n as u8).combinations(j1) {
        let (mut pos_x, mut pos_y, mut order) = (Vec::new(), Vec::new(), Vec::new());
        for p in 1..=n as u8 {
            if subset.contains(&p) {
                order.push(pos_x.len());
                pos_x.push(p);
            } else {
                order.push(y0 + pos_y.len());
                pos_y.push(p);
            }
        }
        order.extend(j1..j1 + mx);
        order.extend(y0 + j2..y0 + j2 + my);
        order.extend(j1 + mx..y0);
        order.extend(y0 + j2 + my..y0 + j2 + my + sy);
        let map = |e: Endpoint, pos: &[u8], shift: u8| match e {
            Endpoint::Ext(k) => Endpoint::Ext(pos[k as usize - 1]),
            Endpoint::Int(v) => Endpoint::Int(v + shift),
        };
        let segs = x
            .segments()
            .iter()
            .map(|&(a, b)| (map(a, &pos_x, 0), map(b, &pos_x, 0)))
            .chain(
                y.segments()
                    .iter()
                    .map(|&(a, b)| (map(a, &pos_y, mx as u8), map(b, &pos_y, mx as u8))),
            )
            .collect();
        let g = Diagram::from_raw(n, mx + my, segs);
        if let Some((c, coef)) = canonical::<R>(&g, koszul_sign(&odd, &order), cfg) {
            out.add_term(c, coef);
        }
    }
    Ok(out)
}

/// Cut the line at every position not crossed by a chord or by a connected
/// cluster of internal vertices, moving `[e, V, S]` to
/// `[e_pre, V_pre, S_pre, e_suf, V_suf, S_suf]`.
pub fn tot_coproduct_d<R: Field>(g: &Diagram, cfg: &Config) -> Result<LinComb<(Diagram, Diagram), R>> {
    let (n, m) = (g.n_ext(), g.n_int());
    let comp = g.components(false);
    // the range of points touched by each internal cluster
    let mut reach: BTreeMap<usize, (u8, u8)> = BTreeMap::new();
    for &(a, b) in g.segments() {
        for (p, q) in [(a, b), (b, a)] {
            if let (Endpoint::Int(v), Endpoint::Ext(k)) = (p, q) {
                let r = reach.entry(comp[n + v as usize]).or_insert((k, k));
                r.0 = r.0.min(k);
                r.1 = r.1.max(k);
            }
        }
    }
    if (0..m).any(|v| !reach.contains_key(&comp[n + v])) {
        return Err(Error::Inadmissible("internal cluster away from the line".into()));
    }
    let odd = orientation_parity(g, cfg);
    let side_of = |e: Endpoint, k: u8| match e {
        Endpoint::Ext(p) => p > k,
        Endpoint::Int(v) => reach[&comp[n + v as usize]].0 > k,
    };
    let mut out = LinComb::zero();
    for k in 0..=n as u8 {
        let crosses = g.segments().iter().any(|&(a, b)| match (a, b) {
            (Endpoint::Ext(p), Endpoint::Ext(q)) => p.min(q) <= k && k < p.max(q),
            _ => false,
        }) || reach.values().any(|&(lo, hi)| lo <= k && k < hi);
        if crosses {
            continue;
        }
        let mut halves = [Vec::new(), Vec::new()];
        let mut order = [Vec::new(), Vec::new()];
        let mut new_label = vec![0u8; m];
        let mut count = [0u8; 2];
        for p in 1..=n as u8 {
            order[usize::from(p > k)].push(p as usize - 1);
        }
        for (v, label) in new_label.iter_mut().enumerate() {
            let s = usize::from(side_of(Endpoint::Int(v as u8), k));
            *label = count[s];
            count[s] += 1;
            order[s].push(n + v);
        }
        for (t, &(a, b)) in g.segments().iter().enumerate() {
            let s = usize::from(side_of(a, k));
            let map = |e: Endpoint| match e {
                Endpoint::Ext(p) => Endpoint::Ext(if s == 1 { p - k } else { p }),
                Endpoint::Int(v) => Endpoint::Int(new_label[v as usize]),
            };
            halves[s].push((map(a), map(b)));
            order[s].push(n + m + t);
        }
        let [pre_segs, suf_segs] = halves;
        let pre = Diagram::from_raw(k as usize, count[0] as usize, pre_segs);
        let suf = Diagram::from_raw(n - k as usize, count[1] as usize, suf_segs);
        let [o0, o1] = order;
        let full: Vec<usize> = o0.into_iter().chain(o1).collect();
        let sign = koszul_sign(&odd, &full);
        let (Some((p, sp)), Some((q, sq))) = (canonicalize_unchecked(&pre, cfg), canonicalize_unchecked(&suf, cfg))
        else {
            continue;
        };
        out.add_term((p, q), (sign * sp * sq).scalar());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::Endpoint::*;
    use crate::Rational;

    fn cfg(d: u32, i: usize) -> Config {
        Config::new(d, i).unwrap()
    }

    #[test]
    fn chord_is_a_cycle() {
        for d in [4, 5] {
            let c = Diagram::chord(2, 1, 2).unwrap();
            assert!(tot_differential_d::<Rational>(&c, &cfg(d, 1)).unwrap().is_zero());
            let col = tot_d_column::<Rational>(1, &cfg(d, 1)).unwrap();
            assert_eq!(col.homology().unwrap()[&tot_degree(d, 1, 2)], 1);
        }
    }

    #[test]
    fn tripod_cycle_parity() {
        let tripod = canonicalize_unchecked(&Diagram::star(3, &[1, 2, 3]).unwrap(), &cfg(4, 2))
            .unwrap()
            .0;
        assert!(tot_differential_p::<Rational>(&tripod, &cfg(4, 2)).unwrap().is_zero());
        let dt = tot_differential_p::<Rational>(&tripod, &cfg(5, 2)).unwrap();
        assert!(!dt.is_zero());
        assert!(dt.keys().all(|g| g.n_ext() == 2));
    }

    #[test]
    fn product_unit_and_coproduct_counit() {
        let c = cfg(4, 2);
        let chord = Diagram::chord(2, 1, 2).unwrap();
        let unit = Diagram::trivial(0);
        let p: DnElement<Rational> = tot_product_d(&unit, &chord, &c).unwrap();
        assert_eq!(p, LinComb::single(chord.clone(), Rational::from_i64(1)));
        let cp: LinComb<_, Rational> = tot_coproduct_d(&chord, &c).unwrap();
        assert_eq!(cp.len(), 2);
        let g = Diagram::new(4, 0, vec![(Ext(1), Ext(2)), (Ext(3), Ext(4))]).unwrap();
        let cp: LinComb<_, Rational> = tot_coproduct_d(&g, &c).unwrap();
        assert_eq!(cp.len(), 3);
    }
}
