use std::fmt;

use crate::error::{Error, Result};

/// A bracket expression in the generators `α_{ij}`.
///
/// A leaf `(i, j)` with `i > j` stands for `α_{ij} = (-1)^d α_{ji}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BracketWord {
    Gen(u8, u8),
    Bracket(Box<BracketWord>, Box<BracketWord>),
}

impl BracketWord {
    pub fn gen(i: u8, j: u8) -> Self {
        BracketWord::Gen(i, j)
    }

    pub fn bracket(x: BracketWord, y: BracketWord) -> Self {
        BracketWord::Bracket(Box::new(x), Box::new(y))
    }

    /// Number of leaves (the complexity).
    pub fn len(&self) -> usize {
        match self {
            BracketWord::Gen(..) => 1,
            BracketWord::Bracket(x, y) => x.len() + y.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whitehead degree: `ℓ(d-1) - (ℓ-1)`.
    pub fn degree(&self, d: u32) -> i64 {
        let l = self.len() as i64;
        l * (d as i64 - 1) - (l - 1)
    }

    pub fn leaves(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<(u8, u8)>) {
        match self {
            BracketWord::Gen(i, j) => out.push((*i, *j)),
            BracketWord::Bracket(x, y) => {
                x.collect_leaves(out);
                y.collect_leaves(out);
            }
        }
    }

    /// Sorted set of indices appearing in the leaves.
    pub fn support(&self) -> Vec<u8> {
        let mut s: Vec<u8> = self.leaves().into_iter().flat_map(|(i, j)| [i, j]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn check(&self, n: usize) -> Result<()> {
        for (i, j) in self.leaves() {
            for x in [i, j] {
                if x == 0 || x as usize > n {
                    return Err(Error::IndexOutOfRange {
                        what: "generator index",
                        index: x as usize,
                        max: n,
                    });
                }
            }
            if i == j {
                return Err(Error::Malformed(format!("generator α_({i},{i})")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::Gen(i, j) => write!(f, "a{i}_{j}"),
            BracketWord::Bracket(x, y) => write!(f, "[{x},{y}]"),
        }
    }
}

/// Lyndon words of length `len` over `0..alphabet`, in lexicographic order
/// (Duval's algorithm).
pub fn lyndon_words(alphabet: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if alphabet == 0 || len == 0 {
        return out;
    }
    let mut w = vec![0usize];
    loop {
        if w.len() == len {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(alphabet - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(x) => *x += 1,
            None => break,
        }
    }
    out
}

/// Standard bracketing `[u, v]`, `v` the longest proper Lyndon suffix.
pub fn standard_bracketing(w: &[usize], leaf: &impl Fn(usize) -> BracketWord) -> BracketWord {
    if w.len() == 1 {
        return leaf(w[0]);
    }
    let split = (1..w.len())
        .find(|&k| is_lyndon(&w[k..]))
        .expect("suffix of length 1 is Lyndon");
    BracketWord::bracket(
        standard_bracketing(&w[..split], leaf),
        standard_bracketing(&w[split..], leaf),
    )
}

fn is_lyndon(w: &[usize]) -> bool {
    (1..w.len()).all(|k| w[k..] > *w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyndon_counts_follow_necklace_formula() {
        // Witt: 2 letters → 2, 1, 2, 3, 6, 9
        let counts: Vec<usize> = (1..=6).map(|l| lyndon_words(2, l).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(lyndon_words(3, 2).len(), 3);
        assert!(lyndon_words(2, 3).iter().all(|w| is_lyndon(w)));
    }

    #[test]
    fn bracketing() {
        let leaf = |k: usize| BracketWord::gen(k as u8 + 1, 9);
        let b = standard_bracketing(&[0, 0, 1], &leaf);
        assert_eq!(b.to_string(), "[a1_9,[a1_9,a2_9]]");
        let b = standard_bracketing(&[0, 1, 1], &leaf);
        assert_eq!(b.to_string(), "[[a1_9,a2_9],a2_9]");
    }
}
