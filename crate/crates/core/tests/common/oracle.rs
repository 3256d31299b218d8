//! Brute-force references, independent of the library: plain modular
//! Gaussian elimination over dense rows, and algebras written out in full.

#![allow(dead_code)]

use std::collections::HashMap;

const P: i64 = 1_000_000_007;

fn inv(a: i64) -> i64 {
    let (mut base, mut e, mut acc) = (a.rem_euclid(P), P - 2, 1i64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    acc
}

/// Rank of a set of sparse integer rows modulo a large prime.
pub fn rank(rows: Vec<HashMap<usize, i64>>) -> usize {
    let mut pivots: HashMap<usize, HashMap<usize, i64>> = HashMap::new();
    for row in rows {
        let mut row: HashMap<usize, i64> = row
            .into_iter()
            .map(|(k, v)| (k, v.rem_euclid(P)))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&lead) = row.keys().min() {
            match pivots.get(&lead) {
                Some(p) => {
                    let f = row[&lead];
                    for (&k, &v) in p {
                        let e = row.entry(k).or_insert(0);
                        *e = (*e - f * v).rem_euclid(P);
                    }
                    row.retain(|_, v| *v != 0);
                }
                None => {
                    let s = inv(row[&lead]);
                    row.values_mut().for_each(|v| *v = *v * s % P);
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn chords(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|j| (1..j).map(move |i| (i, j))).collect()
}

fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if len < k {
        return vec![];
    }
    let mut out = subsets(len - 1, k);
    for mut s in subsets(len - 1, k - 1) {
        s.push(len - 1);
        out.push(s);
    }
    out
}

/// Sort a generator word, returning the sorted word and the Koszul sign
/// (`odd` generators anticommute); `None` if a generator repeats.
fn sort_word(word: &[usize], odd: bool) -> Option<(Vec<usize>, i64)> {
    let mut w = word.to_vec();
    let mut sign = 1;
    for a in 0..w.len() {
        for b in 0..w.len() - 1 - a {
            if w[b] > w[b + 1] {
                w.swap(b, b + 1);
                if odd {
                    sign = -sign;
                }
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((w, sign))
}

/// `dim A_n` in complexity `i`, from the exterior (d even) or square-zero
/// commutative (d odd) algebra on the `a_{jk}` modulo the ideal of the
/// three-term relations.
pub fn arnold_dim(n: usize, i: usize, d: u32) -> usize {
    let gens = chords(n);
    let odd = d.is_multiple_of(2);
    let flip = if d.is_multiple_of(2) { 1 } else { -1 };
    let index: HashMap<(usize, usize), usize> = gens.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let monomials = subsets(gens.len(), i);
    if i < 2 {
        return monomials.len();
    }
    let column: HashMap<Vec<usize>, usize> = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
    // a_{pq} with p > q written as ±a_{qp}
    let gen = |p: usize, q: usize| {
        if p < q {
            (index[&(p, q)], 1)
        } else {
            (index[&(q, p)], flip)
        }
    };
    let mut rows = Vec::new();
    for (j, k, l) in (1..=n).flat_map(|j| (j + 1..=n).flat_map(move |k| (k + 1..=n).map(move |l| (j, k, l)))) {
        let terms = [(gen(j, k), gen(k, l)), (gen(k, l), gen(l, j)), (gen(l, j), gen(j, k))];
        for rest in subsets(gens.len(), i - 2) {
            let mut row = HashMap::new();
            for &((x, sx), (y, sy)) in &terms {
                let mut word = vec![x, y];
                word.extend(&rest);
                if let Some((w, s)) = sort_word(&word, odd) {
                    *row.entry(column[&w]).or_insert(0) += s * sx * sy;
                }
            }
            rows.push(row);
        }
    }
    monomials.len() - rank(rows)
}

type Tensor = HashMap<Vec<usize>, i64>;

fn bracket(x: &Tensor, px: bool, y: &Tensor, py: bool) -> Tensor {
    let mut out = Tensor::new();
    let s = if px && py { -1 } else { 1 };
    for (u, a) in x {
        for (v, b) in y {
            let mut uv = u.clone();
            uv.extend(v);
            *out.entry(uv).or_insert(0) += a * b;
            let mut vu = v.clone();
            vu.extend(u);
            *out.entry(vu).or_insert(0) -= s * a * b;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn rows_of(elements: &[Tensor], column: &mut HashMap<Vec<usize>, usize>) -> Vec<HashMap<usize, i64>> {
    elements
        .iter()
        .map(|t| {
            let mut row = HashMap::new();
            for (w, &c) in t {
                let next = column.len();
                let k = *column.entry(w.clone()).or_insert(next);
                *row.entry(k).or_insert(0) += c;
            }
            row
        })
        .collect()
}

/// `dim L^n` in bracket length `len`: the span of right-normed brackets of
/// generators in the tensor algebra, modulo the Lie ideal generated by the
/// relations. Generators are odd when `d` is odd.
pub fn kohno_dim(n: usize, len: usize, d: u32) -> usize {
    let gens = chords(n);
    let odd = d % 2 == 1;
    let flip = if d.is_multiple_of(2) { 1 } else { -1 };
    let letter = |p: usize, q: usize| -> Tensor {
        let (k, s) = if p < q {
            (gens.iter().position(|&c| c == (p, q)).unwrap(), 1)
        } else {
            (gens.iter().position(|&c| c == (q, p)).unwrap(), flip)
        };
        Tensor::from([(vec![k], s)])
    };
    let letters: Vec<Tensor> = gens.iter().map(|&(p, q)| letter(p, q)).collect();
    // parity of a homogeneous element of bracket length m
    let parity = |m: usize| odd && m % 2 == 1;

    let mut free: Vec<Tensor> = letters.clone();
    for m in 1..len {
        free = free
            .iter()
            .flat_map(|t| letters.iter().map(move |g| bracket(g, odd, t, parity(m))))
            .collect();
    }

    let mut relations = Vec::new();
    for &(a, b) in &gens {
        for &(c, e) in &gens {
            if a != c && a != e && b != c && b != e {
                relations.push(bracket(&letter(a, b), odd, &letter(c, e), odd));
            }
        }
    }
    for p in 1..=n {
        for q in 1..=n {
            for r in 1..=n {
                if p != q && q != r && p != r {
                    let mut sum = letter(p, r);
                    for (w, c) in letter(q, r) {
                        *sum.entry(w).or_insert(0) += c;
                    }
                    relations.push(bracket(&letter(p, q), odd, &sum, odd));
                }
            }
        }
    }
    let mut ideal = relations;
    for m in 2..len {
        ideal = ideal
            .iter()
            .flat_map(|t| letters.iter().map(move |g| bracket(g, odd, t, parity(m))))
            .collect();
    }
    if len < 2 {
        ideal.clear();
    }
    let mut column = HashMap::new();
    let free_rank = rank(rows_of(&free, &mut column));
    let ideal_rank = rank(rows_of(&ideal, &mut column));
    free_rank - ideal_rank
}

/// Witt's formula: the dimension of the length-`len` part of the free Lie
/// algebra on `m` even generators.
pub fn witt(m: usize, len: usize) -> usize {
    fn mobius(mut k: usize) -> i64 {
        let mut out = 1;
        let mut p = 2;
        while p * p <= k {
            if k.is_multiple_of(p) {
                k /= p;
                if k.is_multiple_of(p) {
                    return 0;
                }
                out = -out;
            }
            p += 1;
        }
        if k > 1 {
            -out
        } else {
            out
        }
    }
    let total: i64 = (1..=len)
        .filter(|e| len.is_multiple_of(*e))
        .map(|e| mobius(e) * (m as i64).pow((len / e) as u32))
        .sum();
    (total / len as i64) as usize
}

/// Coefficient of `t^i` in `∏_{k=1}^{n-1} (1 + k t)`, by direct expansion
/// over `(i)`-subsets of `1..n-1`.
pub fn product_formula(n: usize, i: usize) -> usize {
    subsets(n.saturating_sub(1), i)
        .iter()
        .map(|s| s.iter().map(|&k| k + 1).product::<usize>())
        .sum()
}
