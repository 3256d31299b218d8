use std::fmt;

use crate::error::{Error, Result};

/// A segment endpoint. External points are 1-based, internal vertices 0-based.
/// External points sort before internal vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Ext(u8),
    Int(u8),
}

impl Endpoint {
    pub fn is_ext(self) -> bool {
        matches!(self, Endpoint::Ext(_))
    }

    pub fn is_int(self) -> bool {
        matches!(self, Endpoint::Int(_))
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Ext(k) => write!(f, "e{k}"),
            Endpoint::Int(v) => write!(f, "i{v}"),
        }
    }
}

/// A diagram with its orientation in normal order (see the module docs).
///
/// Construction only checks that indices are in range; admissibility is a
/// separate predicate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n_ext: u8,
    n_int: u8,
    segments: Vec<(Endpoint, Endpoint)>,
}

impl Diagram {
    pub fn new(n_ext: usize, n_int: usize, segments: Vec<(Endpoint, Endpoint)>) -> Result<Self> {
        if n_ext > 64 || n_int > 64 || segments.len() > 128 {
            return Err(Error::Malformed("diagram too large".into()));
        }
        for &(a, b) in &segments {
            for e in [a, b] {
                match e {
                    Endpoint::Ext(k) if k == 0 || k as usize > n_ext => {
                        return Err(Error::IndexOutOfRange {
                            what: "external vertex",
                            index: k as usize,
                            max: n_ext,
                        })
                    }
                    Endpoint::Int(v) if v as usize >= n_int => {
                        return Err(Error::IndexOutOfRange {
                            what: "internal vertex",
                            index: v as usize + 1,
                            max: n_int,
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(Diagram {
            n_ext: n_ext as u8,
            n_int: n_int as u8,
            segments,
        })
    }

    pub(crate) fn from_raw(n_ext: usize, n_int: usize, segments: Vec<(Endpoint, Endpoint)>) -> Self {
        debug_assert!(Diagram::new(n_ext, n_int, segments.clone()).is_ok());
        Diagram {
            n_ext: n_ext as u8,
            n_int: n_int as u8,
            segments,
        }
    }

    /// The diagram with `n` isolated external points and nothing else.
    pub fn trivial(n: usize) -> Self {
        Diagram::from_raw(n, 0, Vec::new())
    }

    pub fn chord(n: usize, a: u8, b: u8) -> Result<Self> {
        Diagram::new(n, 0, vec![(Endpoint::Ext(a), Endpoint::Ext(b))])
    }

    /// One internal vertex joined to each listed external point.
    pub fn star(n: usize, legs: &[u8]) -> Result<Self> {
        Diagram::new(
            n,
            1,
            legs.iter().map(|&k| (Endpoint::Int(0), Endpoint::Ext(k))).collect(),
        )
    }

    pub fn n_ext(&self) -> usize {
        self.n_ext as usize
    }

    pub fn n_int(&self) -> usize {
        self.n_int as usize
    }

    pub fn segments(&self) -> &[(Endpoint, Endpoint)] {
        &self.segments
    }

    pub fn n_segments(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty() && self.n_int == 0
    }

    /// `#segments - #internal`; negative values only for inadmissible input.
    pub fn complexity(&self) -> i64 {
        self.segments.len() as i64 - self.n_int as i64
    }

    /// Degree inside `D_n`: `(d-1)·#segments - d·#internal`.
    pub fn degree(&self, d: u32) -> i64 {
        (d as i64 - 1) * self.segments.len() as i64 - d as i64 * self.n_int as i64
    }

    /// Degree inside a totalization, with the external points desuspended.
    pub fn total_degree(&self, d: u32) -> i64 {
        self.degree(d) - self.n_ext as i64
    }

    pub fn is_chord(&self, s: usize) -> bool {
        let (a, b) = self.segments[s];
        a.is_ext() && b.is_ext()
    }

    pub fn has_internal(&self) -> bool {
        self.n_int > 0
    }

    pub fn ext_valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.n_ext()];
        for &(a, b) in &self.segments {
            for e in [a, b] {
                if let Endpoint::Ext(k) = e {
                    val[k as usize - 1] += 1;
                }
            }
        }
        val
    }

    pub fn int_valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.n_int()];
        for &(a, b) in &self.segments {
            for e in [a, b] {
                if let Endpoint::Int(v) = e {
                    val[v as usize] += 1;
                }
            }
        }
        val
    }

    pub fn has_isolated_ext(&self) -> bool {
        self.ext_valences().contains(&0)
    }

    pub fn has_loop(&self) -> bool {
        self.segments.iter().any(|(a, b)| a == b)
    }

    /// Whether two segments join the same pair of vertices.
    pub fn has_parallel_segments(&self) -> bool {
        let mut keys: Vec<_> = self
            .segments
            .iter()
            .map(|&(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        keys.sort();
        keys.windows(2).any(|w| w[0] == w[1])
    }

    /// Union-find over all vertices; externals are `0..n_ext`, internals follow.
    pub(crate) fn components(&self, through_ext: bool) -> Vec<usize> {
        let n = self.n_ext() + self.n_int();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for &(a, b) in &self.segments {
            if !through_ext && (a.is_ext() || b.is_ext()) {
                continue;
            }
            let (x, y) = (self.vertex_index(a), self.vertex_index(b));
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }

    pub(crate) fn vertex_index(&self, e: Endpoint) -> usize {
        match e {
            Endpoint::Ext(k) => k as usize - 1,
            Endpoint::Int(v) => self.n_ext() + v as usize,
        }
    }

    /// The three admissibility conditions: internal valence at least 3, no
    /// loops, every internal vertex joined by a path to an external one.
    pub fn is_admissible(&self) -> bool {
        if self.has_loop() {
            return false;
        }
        if self.int_valences().iter().any(|&v| v < 3) {
            return false;
        }
        let comp = self.components(true);
        let ext_roots: Vec<usize> = (0..self.n_ext()).map(|k| comp[k]).collect();
        (0..self.n_int()).all(|v| ext_roots.contains(&comp[self.n_ext() + v]))
    }

    /// Why a diagram fails admissibility, for error messages.
    pub(crate) fn admissibility_violation(&self) -> Option<String> {
        if self.has_loop() {
            return Some("segment joins a vertex to itself".into());
        }
        if let Some(v) = self.int_valences().iter().position(|&v| v < 3) {
            return Some(format!("internal vertex {v} has valence below 3"));
        }
        if !self.is_admissible() {
            return Some("internal vertex not connected to the line".into());
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Endpoint::*;

    #[test]
    fn admissibility_examples() {
        assert!(Diagram::chord(2, 1, 2).unwrap().is_admissible());
        assert!(!Diagram::new(2, 0, vec![(Ext(1), Ext(1))]).unwrap().is_admissible());
        assert!(!Diagram::star(2, &[1, 2]).unwrap().is_admissible());
        assert!(Diagram::star(3, &[1, 2, 3]).unwrap().is_admissible());
        // a component floating off the line
        let floating = Diagram::new(
            1,
            4,
            vec![
                (Int(0), Int(1)),
                (Int(0), Int(2)),
                (Int(0), Int(3)),
                (Int(1), Int(2)),
                (Int(1), Int(3)),
                (Int(2), Int(3)),
            ],
        )
        .unwrap();
        assert!(!floating.is_admissible());
    }

    #[test]
    fn malformed_indices_rejected() {
        assert!(Diagram::new(2, 0, vec![(Ext(0), Ext(1))]).is_err());
        assert!(Diagram::new(2, 0, vec![(Ext(1), Ext(3))]).is_err());
        assert!(Diagram::new(2, 1, vec![(Int(1), Ext(1))]).is_err());
    }

    #[test]
    fn degrees() {
        let tripod = Diagram::star(3, &[1, 2, 3]).unwrap();
        assert_eq!(tripod.complexity(), 2);
        assert_eq!(tripod.degree(4), 3 * 3 - 4);
        assert_eq!(tripod.total_degree(4), 2);
        assert_eq!(Diagram::chord(2, 1, 2).unwrap().total_degree(4), 1);
    }
}
