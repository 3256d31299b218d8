use std::fmt;

use crate::diagrams::Config;
use crate::error::{Error, Result};
use crate::linalg::{Field, LinComb};
use crate::sign::{sort_with_sign, Sign};

/// A normal-form monomial `a_{i_1 j_1} ⋯ a_{i_k j_k}` in `A_n`: `i < j` in
/// every chord, larger endpoints strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForestMonomial {
    n: u8,
    chords: Vec<(u8, u8)>,
}

impl ForestMonomial {
    pub fn new(n: usize, chords: Vec<(u8, u8)>) -> Result<Self> {
        check_n(n)?;
        for &(a, b) in &chords {
            check_index(a, n)?;
            check_index(b, n)?;
            if a >= b {
                return Err(Error::Malformed(format!("chord ({a},{b}) not increasing")));
            }
        }
        if chords.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(Error::Malformed("larger endpoints must strictly increase".into()));
        }
        Ok(ForestMonomial { n: n as u8, chords })
    }

    /// The unit of `A_n`.
    pub fn unit(n: usize) -> Self {
        ForestMonomial {
            n: n as u8,
            chords: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn chords(&self) -> &[(u8, u8)] {
        &self.chords
    }

    pub fn complexity(&self) -> usize {
        self.chords.len()
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.n()];
        for &(a, b) in &self.chords {
            val[a as usize - 1] += 1;
            val[b as usize - 1] += 1;
        }
        val
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.valences().contains(&0)
    }

    /// Total degree inside the totalization: `(d-1)i - n`.
    pub fn total_degree(&self, d: u32) -> i64 {
        (d as i64 - 1) * self.complexity() as i64 - self.n as i64
    }
}

impl fmt::Display for ForestMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chords.is_empty() {
            return write!(f, "1[{}]", self.n);
        }
        for (a, b) in &self.chords {
            write!(f, "a({a},{b})")?;
        }
        write!(f, "[{}]", self.n)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > 64 {
        return Err(Error::Malformed(format!("too many vertices: {n}")));
    }
    Ok(())
}

fn check_index(a: u8, n: usize) -> Result<()> {
    if a == 0 || a as usize > n {
        return Err(Error::IndexOutOfRange {
            what: "vertex",
            index: a as usize,
            max: n,
        });
    }
    Ok(())
}

/// Rewrite the product `a_{w_0} a_{w_1} ⋯` in the normal-form basis of `A_n`.
pub fn reduce<R: Field>(n: usize, word: &[(u8, u8)], cfg: &Config) -> Result<LinComb<ForestMonomial, R>> {
    check_n(n)?;
    let mut sign = Sign::Plus;
    let mut chords = Vec::with_capacity(word.len());
    for &(a, b) in word {
        check_index(a, n)?;
        check_index(b, n)?;
        if a == b {
            return Err(Error::Malformed(format!("generator a_({a},{a})")));
        }
        if a < b {
            chords.push((a, b));
        } else {
            sign *= cfg.reversal_sign();
            chords.push((b, a));
        }
    }
    let mut out = LinComb::zero();
    rewrite(n as u8, chords, sign, cfg.segment_odd(), &mut out);
    Ok(out)
}

/// `a_{ij} a_{kj} = a_{ik} a_{kj} - a_{ik} a_{ij}` for `i < k < j`, in either parity.
fn rewrite<R: Field>(n: u8, chords: Vec<(u8, u8)>, sign: Sign, odd: bool, out: &mut LinComb<ForestMonomial, R>) {
    let mut seen = chords.clone();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return;
    }
    let keys: Vec<u8> = chords.iter().map(|c| c.1).collect();
    let (order, s) = sort_with_sign(&keys, odd);
    let mut sorted: Vec<(u8, u8)> = order.into_iter().map(|k| chords[k]).collect();
    let mut sign = sign * s;
    let Some(t) = (0..sorted.len().saturating_sub(1)).find(|&t| sorted[t].1 == sorted[t + 1].1) else {
        out.add_term(ForestMonomial { n, chords: sorted }, sign.scalar());
        return;
    };
    if sorted[t].0 > sorted[t + 1].0 {
        sorted.swap(t, t + 1);
        sign *= Sign::from_odd(odd);
    }
    let ((i, j), (k, _)) = (sorted[t], sorted[t + 1]);
    let mut first = sorted.clone();
    first[t] = (i, k);
    first[t + 1] = (k, j);
    let mut second = sorted;
    second[t] = (i, k);
    second[t + 1] = (i, j);
    rewrite(n, first, sign, odd, out);
    rewrite(n, second, -sign, odd, out);
}

/// Face `d_k: A_n → A_{n-1}`, `0 ≤ k ≤ n`.
pub fn face<R: Field>(k: usize, m: &ForestMonomial, cfg: &Config) -> Result<LinComb<ForestMonomial, R>> {
    let n = m.n();
    if k > n || n == 0 {
        return Err(Error::IndexOutOfRange {
            what: "face",
            index: k,
            max: n,
        });
    }
    let val = m.valences();
    if k == 0 || k == n {
        let v = if k == 0 { 1 } else { n };
        if val[v - 1] != 0 {
            return Ok(LinComb::zero());
        }
        let shift = u8::from(k == 0);
        let chords = m.chords.iter().map(|&(a, b)| (a - shift, b - shift)).collect();
        return Ok(LinComb::single(ForestMonomial { n: n as u8 - 1, chords }, R::one()));
    }
    let k = k as u8;
    if m.chords.contains(&(k, k + 1)) {
        return Ok(LinComb::zero());
    }
    let collapse = |v: u8| if v <= k { v } else { v - 1 };
    let word: Vec<(u8, u8)> = m.chords.iter().map(|&(a, b)| (collapse(a), collapse(b))).collect();
    reduce(n - 1, &word, cfg)
}

/// Degeneracy `s_k: A_n → A_{n+1}`, `1 ≤ k ≤ n+1`: a new isolated vertex at `k`.
pub fn degeneracy(k: usize, m: &ForestMonomial) -> Result<ForestMonomial> {
    let n = m.n();
    if k == 0 || k > n + 1 {
        return Err(Error::IndexOutOfRange {
            what: "degeneracy",
            index: k,
            max: n + 1,
        });
    }
    check_n(n + 1)?;
    let k = k as u8;
    let up = |v: u8| if v >= k { v + 1 } else { v };
    Ok(ForestMonomial {
        n: m.n + 1,
        chords: m.chords.iter().map(|&(a, b)| (up(a), up(b))).collect(),
    })
}

/// All normal-form monomials of complexity `i` in `A_n`.
pub fn basis_a(n: usize, i: usize, cfg: &Config) -> Result<Vec<ForestMonomial>> {
    cfg.check_complexity(i)?;
    cfg.check_points(n)?;
    let mut out = Vec::new();
    basis_rec(n as u8, 2, i, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Normal-form monomials of complexity `i` on `j` vertices with no isolated
/// vertex; empty unless `i + 1 ≤ j ≤ 2i`.
pub fn normalized_basis_a(i: usize, j: usize, cfg: &Config) -> Result<Vec<ForestMonomial>> {
    let mut out = basis_a(j, i, cfg)?;
    out.retain(|m| !m.has_isolated_vertex());
    Ok(out)
}

/// The product `x·y` in `A_n`.
pub fn product_a<R: Field>(x: &ForestMonomial, y: &ForestMonomial, cfg: &Config) -> Result<LinComb<ForestMonomial, R>> {
    if x.n != y.n {
        return Err(Error::Shape(format!("product in A_{} and A_{}", x.n, y.n)));
    }
    let word: Vec<(u8, u8)> = x.chords.iter().chain(&y.chords).copied().collect();
    reduce(x.n(), &word, cfg)
}

fn basis_rec(n: u8, v: u8, left: usize, chords: &mut Vec<(u8, u8)>, out: &mut Vec<ForestMonomial>) {
    if left == 0 {
        out.push(ForestMonomial {
            n,
            chords: chords.clone(),
        });
        return;
    }
    if v > n || ((n - v + 1) as usize) < left {
        return;
    }
    for u in 1..v {
        chords.push((u, v));
        basis_rec(n, v + 1, left - 1, chords, out);
        chords.pop();
    }
    basis_rec(n, v + 1, left, chords, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn cfg(d: u32) -> Config {
        Config::new(d, 3).unwrap()
    }

    fn mono(n: usize, c: &[(u8, u8)]) -> ForestMonomial {
        ForestMonomial::new(n, c.to_vec()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        for d in [4, 5] {
            let r: LinComb<_, Rational> = reduce(3, &[(1, 3), (3, 2), (2, 3)], &cfg(d)).unwrap();
            assert!(r.is_zero());
            let r: LinComb<_, Rational> = reduce(2, &[(1, 2), (1, 2)], &cfg(d)).unwrap();
            assert!(r.is_zero());
            let r: LinComb<_, Rational> = reduce(3, &[(1, 3), (2, 3)], &cfg(d)).unwrap();
            assert_eq!(r.len(), 2);
            assert_eq!(r.coeff(&mono(3, &[(1, 2), (2, 3)])), Rational::from_i64(1));
            assert_eq!(r.coeff(&mono(3, &[(1, 2), (1, 3)])), Rational::from_i64(-1));
        }
        assert!(reduce::<Rational>(2, &[(1, 3)], &cfg(4)).is_err());
    }

    #[test]
    fn faces_and_degeneracies() {
        let c = cfg(4);
        assert!(face::<Rational>(1, &mono(2, &[(1, 2)]), &c).unwrap().is_zero());
        let r: LinComb<_, Rational> = face(0, &mono(3, &[(2, 3)]), &c).unwrap();
        assert_eq!(r, LinComb::single(mono(2, &[(1, 2)]), Rational::from_i64(1)));
        let r: LinComb<_, Rational> = face(2, &mono(3, &[(1, 3)]), &c).unwrap();
        assert_eq!(r, LinComb::single(mono(2, &[(1, 2)]), Rational::from_i64(1)));
        let a12 = mono(2, &[(1, 2)]);
        assert_eq!(degeneracy(1, &a12).unwrap(), mono(3, &[(2, 3)]));
        assert_eq!(degeneracy(2, &a12).unwrap(), mono(3, &[(1, 3)]));
        assert_eq!(degeneracy(3, &a12).unwrap(), mono(3, &[(1, 2)]));
        assert!(degeneracy(4, &a12).is_err());
        assert!(face::<Rational>(3, &a12, &c).is_err());
    }

    #[test]
    fn normalized_dims() {
        let c = cfg(4);
        assert_eq!(normalized_basis_a(1, 2, &c).unwrap(), vec![mono(2, &[(1, 2)])]);
        assert!(normalized_basis_a(1, 3, &c).unwrap().is_empty());
        assert_eq!(normalized_basis_a(2, 3, &c).unwrap().len(), 2);
        assert!(normalized_basis_a(2, 5, &c).unwrap().is_empty());
        let dims: Vec<usize> = (0..=3).map(|i| basis_a(4, i, &c).unwrap().len()).collect();
        assert_eq!(dims, vec![1, 6, 11, 6]);
    }
}
