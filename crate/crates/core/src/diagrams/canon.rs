use std::collections::BTreeMap;

use itertools::Itertools;

use super::config::Config;
use super::diagram::{Diagram, Endpoint};
use crate::error::{Error, Result};
use crate::sign::{permutation_sign, sort_with_sign, Sign};

/// Canonical representative of `g`, with `g = sign · canonical`, or `None`
/// when an automorphism of `g` acts by `-1`.
pub fn canonicalize(g: &Diagram, cfg: &Config) -> Result<Option<(Diagram, Sign)>> {
    if let Some(why) = g.admissibility_violation() {
        return Err(Error::Inadmissible(why));
    }
    Ok(canonicalize_unchecked(g, cfg))
}

/// [`canonicalize`] without the admissibility check; used on intermediate
/// results that are admissible by construction.
pub fn canonicalize_unchecked(g: &Diagram, cfg: &Config) -> Option<(Diagram, Sign)> {
    if cfg.segment_odd() && g.has_parallel_segments() {
        return None;
    }
    let classes = colour_classes(g);
    let mut best: Option<(Vec<(Endpoint, Endpoint)>, Sign)> = None;
    for perm in class_relabelings(&classes, g.n_int()) {
        let (segs, sign) = relabel(g, &perm, cfg);
        match &best {
            None => best = Some((segs, sign)),
            Some((b, bs)) => match segs.cmp(b) {
                std::cmp::Ordering::Less => best = Some((segs, sign)),
                std::cmp::Ordering::Equal if sign != *bs => return None,
                _ => {}
            },
        }
    }
    let (segs, sign) = best.expect("at least the identity relabeling");
    Some((Diagram::from_raw(g.n_ext(), g.n_int(), segs), sign))
}

/// Apply the relabeling `perm[old] = new`, orient every segment as
/// `(min, max)` and sort; returns the new segment list and the sign relating
/// the two orientations.
fn relabel(g: &Diagram, perm: &[u8], cfg: &Config) -> (Vec<(Endpoint, Endpoint)>, Sign) {
    let map = |e: Endpoint| match e {
        Endpoint::Int(v) => Endpoint::Int(perm[v as usize]),
        x => x,
    };
    let mut sign = if cfg.vertex_odd() {
        let p: Vec<usize> = perm.iter().map(|&x| x as usize).collect();
        permutation_sign(&p)
    } else {
        Sign::Plus
    };
    let mut reversals = 0usize;
    let keys: Vec<(Endpoint, Endpoint)> = g
        .segments()
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (map(a), map(b));
            if a <= b {
                (a, b)
            } else {
                reversals += 1;
                (b, a)
            }
        })
        .collect();
    sign *= cfg.reversal_sign().powi(reversals);
    let (order, s) = sort_with_sign(&keys, cfg.segment_odd());
    sign *= s;
    (order.into_iter().map(|k| keys[k]).collect(), sign)
}

/// Colour refinement on internal vertices; returns the classes in invariant
/// order, each a list of old labels.
fn colour_classes(g: &Diagram) -> Vec<Vec<u8>> {
    let m = g.n_int();
    if m == 0 {
        return Vec::new();
    }
    // external neighbours and internal adjacency, with multiplicity
    let mut ext_nbrs: Vec<Vec<u8>> = vec![Vec::new(); m];
    let mut int_nbrs: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &(a, b) in g.segments() {
        for (x, y) in [(a, b), (b, a)] {
            if let Endpoint::Int(v) = x {
                match y {
                    Endpoint::Ext(k) => ext_nbrs[v as usize].push(k),
                    Endpoint::Int(w) => int_nbrs[v as usize].push(w as usize),
                }
            }
        }
    }
    for e in &mut ext_nbrs {
        e.sort_unstable();
    }
    let initial: Vec<(usize, Vec<u8>)> = (0..m)
        .map(|v| (ext_nbrs[v].len() + int_nbrs[v].len(), ext_nbrs[v].clone()))
        .collect();
    let mut colour = rank(&initial);
    let mut n_classes = colour.iter().max().map_or(0, |c| c + 1);
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..m)
            .map(|v| {
                let mut ns: Vec<usize> = int_nbrs[v].iter().map(|&w| colour[w]).collect();
                ns.sort_unstable();
                (colour[v], ns)
            })
            .collect();
        let next = rank(&sig);
        let count = next.iter().max().map_or(0, |c| c + 1);
        colour = next;
        if count == n_classes {
            break;
        }
        n_classes = count;
    }
    let mut classes = vec![Vec::new(); n_classes];
    for (v, &c) in colour.iter().enumerate() {
        classes[c].push(v as u8);
    }
    classes
}

/// Dense ranks of the distinct values, in sorted order.
fn rank<T: Ord + Clone>(values: &[T]) -> Vec<usize> {
    let ids: BTreeMap<T, usize> = values
        .iter()
        .cloned()
        .sorted()
        .dedup()
        .enumerate()
        .map(|(k, v)| (v, k))
        .collect();
    values.iter().map(|v| ids[v]).collect()
}

/// All relabelings that send class `c` onto a consecutive block of labels,
/// blocks in class order, as `perm[old] = new`.
fn class_relabelings(classes: &[Vec<u8>], m: usize) -> Vec<Vec<u8>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let per_class: Vec<Vec<Vec<u8>>> = classes
        .iter()
        .map(|c| c.iter().copied().permutations(c.len()).collect())
        .collect();
    per_class
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| {
            let mut perm = vec![0u8; m];
            for (new, old) in choice.into_iter().flatten().enumerate() {
                perm[old as usize] = new as u8;
            }
            perm
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Endpoint::*;

    fn cfg(d: u32) -> Config {
        Config::new(d, 3).unwrap()
    }

    #[test]
    fn double_chord() {
        let g = Diagram::new(2, 0, vec![(Ext(1), Ext(2)), (Ext(1), Ext(2))]).unwrap();
        assert!(canonicalize(&g, &cfg(4)).unwrap().is_none());
        assert!(canonicalize(&g, &cfg(5)).unwrap().is_some());
    }

    #[test]
    fn swapping_odd_segments_flips_sign() {
        let g = Diagram::new(3, 0, vec![(Ext(1), Ext(2)), (Ext(2), Ext(3))]).unwrap();
        let h = Diagram::new(3, 0, vec![(Ext(2), Ext(3)), (Ext(1), Ext(2))]).unwrap();
        let (cg, sg) = canonicalize(&g, &cfg(4)).unwrap().unwrap();
        let (ch, sh) = canonicalize(&h, &cfg(4)).unwrap().unwrap();
        assert_eq!(cg, ch);
        assert_eq!(sg * sh, Sign::Minus);
        let (_, sg) = canonicalize(&g, &cfg(5)).unwrap().unwrap();
        let (_, sh) = canonicalize(&h, &cfg(5)).unwrap().unwrap();
        assert_eq!(sg, sh);
    }

    #[test]
    fn reversal_sign() {
        let g = Diagram::chord(2, 2, 1).unwrap();
        let (c, s) = canonicalize(&g, &cfg(5)).unwrap().unwrap();
        assert_eq!(c, Diagram::chord(2, 1, 2).unwrap());
        assert_eq!(s, Sign::Minus);
        assert_eq!(canonicalize(&g, &cfg(4)).unwrap().unwrap().1, Sign::Plus);
    }

    #[test]
    fn idempotent() {
        let g = Diagram::new(
            2,
            2,
            vec![
                (Int(1), Ext(1)),
                (Int(0), Int(1)),
                (Int(0), Ext(2)),
                (Int(1), Int(0)),
                (Ext(2), Int(0)),
            ],
        )
        .unwrap();
        for d in [4, 5] {
            if let Some((c, _)) = canonicalize_unchecked(&g, &cfg(d)) {
                let (c2, s2) = canonicalize(&c, &cfg(d)).unwrap().unwrap();
                assert_eq!(c, c2);
                assert_eq!(s2, Sign::Plus);
            }
        }
    }

    #[test]
    fn inadmissible_rejected() {
        assert!(canonicalize(&Diagram::star(2, &[1, 2]).unwrap(), &cfg(4)).is_err());
    }
}
