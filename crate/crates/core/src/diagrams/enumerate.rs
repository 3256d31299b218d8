use std::collections::BTreeSet;

use itertools::Itertools;

use super::canon::canonicalize_unchecked;
use super::config::Config;
use super::diagram::{Diagram, Endpoint};
use crate::error::{Error, Result};
use crate::sign::Sign;

/// Canonical diagrams on `n` points, complexity `i`, exactly `m` internal
/// vertices, with every external point used.
pub fn enumerate_with_internal(n: usize, i: usize, m: usize, cfg: &Config) -> Result<Vec<Diagram>> {
    check_bounds(n, i, cfg)?;
    if m > cfg.max_internal {
        return Err(Error::Truncation {
            what: "internal vertices",
            value: m,
            bound: cfg.max_internal,
        });
    }
    if i == 0 {
        return Ok(if n == 0 && m == 0 {
            vec![Diagram::trivial(0)]
        } else {
            Vec::new()
        });
    }
    if n + m > 2 * i {
        return Ok(Vec::new());
    }
    let mut search = Search::new(n, m, m + i, cfg);
    search.run();
    Ok(search.found.into_iter().collect())
}

/// Canonical diagrams on `n` points, complexity `i`, with no isolated point.
pub fn enumerate_normalized(n: usize, i: usize, cfg: &Config) -> Result<Vec<Diagram>> {
    check_bounds(n, i, cfg)?;
    if n == 0 {
        return enumerate_with_internal(0, i, 0, cfg);
    }
    let mut out = Vec::new();
    for m in 0..=(2 * i - n.min(2 * i)) {
        out.extend(enumerate_with_internal(n, i, m, cfg)?);
    }
    Ok(out)
}

/// A basis of `D_n` in complexity `i`: normalized diagrams on every subset
/// of the `n` points.
pub fn enumerate_diagrams(n: usize, i: usize, cfg: &Config) -> Result<Vec<Diagram>> {
    check_bounds(n, i, cfg)?;
    let mut out = BTreeSet::new();
    for size in 0..=n.min(2 * i) {
        let normalized = enumerate_normalized(size, i, cfg)?;
        if normalized.is_empty() {
            continue;
        }
        for subset in (1..=n as u8).combinations(size) {
            for g in &normalized {
                let h = relabel_points(g, n, &subset);
                let (c, s) = canonicalize_unchecked(&h, cfg).expect("relabeling keeps nonzero");
                debug_assert_eq!(s, Sign::Plus);
                out.insert(c);
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn check_bounds(n: usize, i: usize, cfg: &Config) -> Result<()> {
    cfg.check_complexity(i)?;
    cfg.check_points(n)
}

/// Send point `k` of `g` to `subset[k - 1]` on a line with `n` points.
pub(crate) fn relabel_points(g: &Diagram, n: usize, subset: &[u8]) -> Diagram {
    let map = |e: Endpoint| match e {
        Endpoint::Ext(k) => Endpoint::Ext(subset[k as usize - 1]),
        x => x,
    };
    let segs = g.segments().iter().map(|&(a, b)| (map(a), map(b))).collect();
    Diagram::from_raw(n, g.n_int(), segs)
}

/// Labeled search over multiplicities of vertex pairs in lexicographic order.
struct Search<'a> {
    n: usize,
    m: usize,
    cfg: &'a Config,
    pairs: Vec<(usize, usize)>,
    /// index into `pairs` after which vertex `v` has all its segments
    closes: Vec<Vec<usize>>,
    valence: Vec<usize>,
    chosen: Vec<(usize, usize)>,
    budget: usize,
    found: BTreeSet<Diagram>,
}

impl<'a> Search<'a> {
    fn new(n: usize, m: usize, k: usize, cfg: &'a Config) -> Self {
        let v = n + m;
        let pairs: Vec<(usize, usize)> = (0..v).tuple_combinations().collect();
        let mut closes = vec![Vec::new(); pairs.len()];
        for x in 0..v {
            // last pair involving x
            if let Some(p) = pairs.iter().rposition(|&(a, b)| a == x || b == x) {
                closes[p].push(x);
            }
        }
        Search {
            n,
            m,
            cfg,
            pairs,
            closes,
            valence: vec![0; v],
            chosen: Vec::new(),
            budget: k,
            found: BTreeSet::new(),
        }
    }

    fn required(&self, x: usize) -> usize {
        if x < self.n {
            1
        } else {
            3
        }
    }

    fn deficit(&self) -> usize {
        (0..self.n + self.m)
            .map(|x| self.required(x).saturating_sub(self.valence[x]))
            .sum()
    }

    fn run(&mut self) {
        if self.n + self.m < 2 {
            return;
        }
        self.step(0);
    }

    fn step(&mut self, p: usize) {
        if p == self.pairs.len() {
            if self.budget == 0 {
                self.accept();
            }
            return;
        }
        if self.deficit() > 2 * self.budget {
            return;
        }
        let (a, b) = self.pairs[p];
        let max_mult = if self.cfg.segment_odd() { 1 } else { self.budget };
        for mult in 0..=max_mult.min(self.budget) {
            self.valence[a] += mult;
            self.valence[b] += mult;
            self.budget -= mult;
            for _ in 0..mult {
                self.chosen.push((a, b));
            }
            if self.closed_ok(p) {
                self.step(p + 1);
            }
            for _ in 0..mult {
                self.chosen.pop();
            }
            self.budget += mult;
            self.valence[a] -= mult;
            self.valence[b] -= mult;
        }
    }

    fn closed_ok(&self, p: usize) -> bool {
        self.closes[p].iter().all(|&x| {
            if self.valence[x] < self.required(x) {
                return false;
            }
            // internal valences non-increasing
            x < self.n + 1 || self.valence[x - 1] >= self.valence[x]
        })
    }

    fn endpoint(&self, x: usize) -> Endpoint {
        if x < self.n {
            Endpoint::Ext(x as u8 + 1)
        } else {
            Endpoint::Int((x - self.n) as u8)
        }
    }

    fn accept(&mut self) {
        let segs = self
            .chosen
            .iter()
            .map(|&(a, b)| (self.endpoint(a), self.endpoint(b)))
            .collect();
        let g = Diagram::from_raw(self.n, self.m, segs);
        if !g.is_admissible() {
            return;
        }
        if let Some((c, _)) = canonicalize_unchecked(&g, self.cfg) {
            self.found.insert(c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        for d in [4, 5] {
            let cfg = Config::new(d, 3).unwrap();
            let two = enumerate_diagrams(2, 1, &cfg).unwrap();
            assert_eq!(two, vec![Diagram::chord(2, 1, 2).unwrap()]);
            assert!(enumerate_with_internal(2, 1, 1, &cfg).unwrap().is_empty());
        }
        let cfg = Config::new(4, 3).unwrap();
        let tripod = canonicalize_unchecked(&Diagram::star(3, &[1, 2, 3]).unwrap(), &cfg)
            .unwrap()
            .0;
        assert_eq!(enumerate_with_internal(3, 2, 1, &cfg).unwrap(), vec![tripod]);
    }

    #[test]
    fn complexity_zero_is_the_trivial_diagram() {
        let cfg = Config::new(4, 2).unwrap();
        assert_eq!(enumerate_diagrams(3, 0, &cfg).unwrap(), vec![Diagram::trivial(3)]);
    }

    #[test]
    fn truncation() {
        let cfg = Config::new(4, 2).unwrap();
        assert!(enumerate_diagrams(2, 3, &cfg).is_err());
        assert!(enumerate_diagrams(5, 2, &cfg).is_err());
    }
}
