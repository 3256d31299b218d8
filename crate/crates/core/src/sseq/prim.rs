use std::collections::BTreeMap;

use super::table::{BettiTable, Session};
use crate::bigraded::ComplexId;
use crate::error::{Error, Result};

/// Generator counts of a free graded-commutative algebra (polynomial on even,
/// exterior on odd total degree) with the given Hilbert series, keyed by
/// `(complexity, degree)`.
///
/// Fails if the table is not the Hilbert series of such an algebra on the
/// window (a negative generator count).
pub fn generator_counts(table: &BettiTable) -> Result<BTreeMap<(usize, i64), usize>> {
    let max = table.max_complexity();
    let mut gens: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for i in 1..=max {
        let series = free_series(&gens, i);
        for (degree, dim) in table.column(i) {
            let predicted = series.get(&(i, degree)).copied().unwrap_or(0);
            let count = dim as i64 - predicted;
            if count < 0 {
                return Err(Error::Consistency(format!(
                    "{}: products alone give {predicted} classes at (i={i}, degree {degree}), homology has {dim}",
                    table.complex
                )));
            }
            if count > 0 {
                gens.insert((i, degree), count as usize);
            }
        }
        if let Some((&(j, degree), &p)) = series
            .iter()
            .find(|(&(j, deg), &p)| j == i && p > 0 && table.dim(j, deg) == 0)
        {
            return Err(Error::Consistency(format!(
                "{}: products give {p} classes at (i={j}, degree {degree}) where homology vanishes",
                table.complex
            )));
        }
    }
    Ok(gens)
}

/// Hilbert series of the free graded-commutative algebra on `gens`, up to
/// complexity `max`.
fn free_series(gens: &BTreeMap<(usize, i64), usize>, max: usize) -> BTreeMap<(usize, i64), i64> {
    let mut series = BTreeMap::from([((0usize, 0i64), 1i64)]);
    for (&(a, b), &mult) in gens {
        for _ in 0..mult {
            let mut next = BTreeMap::new();
            for (&(i, deg), &c) in &series {
                let mut k = 0;
                while i + k * a <= max {
                    *next.entry((i + k * a, deg + k as i64 * b)).or_insert(0) += c;
                    if b % 2 != 0 && k == 1 {
                        break;
                    }
                    k += 1;
                }
            }
            series = next;
        }
    }
    series
}

/// Dimensions of the primitives of `H(Tot A)`: the homology of the
/// indecomposable quotient, checked cell by cell against the generator
/// counts of `H(Tot A)` read as a free graded-commutative algebra.
pub fn prim_dims(session: &Session) -> Result<BettiTable> {
    let quotient = session.betti(ComplexId::TotAIndecomposable)?;
    let generators = generator_counts(&session.betti(ComplexId::TotA)?)?;
    let mut witnesses = Vec::new();
    for c in &quotient.cells {
        let g = generators.get(&(c.i, c.degree)).copied().unwrap_or(0);
        if g != c.dim {
            witnesses.push(format!(
                "(i={}, degree {}): quotient {}, generators {g}",
                c.i, c.degree, c.dim
            ));
        }
    }
    for (&(i, degree), &g) in &generators {
        if quotient.dim(i, degree) == 0 {
            witnesses.push(format!("(i={i}, degree {degree}): quotient 0, generators {g}"));
        }
    }
    if !witnesses.is_empty() {
        return Err(Error::Consistency(format!(
            "primitive dimensions disagree: {}",
            witnesses.join("; ")
        )));
    }
    Ok(quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::Config;
    use crate::sseq::BettiCell;

    fn table(cells: &[(usize, i64, usize)]) -> BettiTable {
        BettiTable {
            complex: ComplexId::TotA,
            d: 4,
            cells: cells
                .iter()
                .map(|&(i, degree, dim)| BettiCell {
                    i,
                    level: 0,
                    degree,
                    dim,
                })
                .collect(),
        }
    }

    #[test]
    fn exterior_and_polynomial_generators() {
        // one odd generator: its square vanishes
        let g = generator_counts(&table(&[(1, 1, 1), (2, 2, 1)])).unwrap();
        assert_eq!(g, BTreeMap::from([((1, 1), 1), ((2, 2), 1)]));
        // one even generator: its square survives
        let g = generator_counts(&table(&[(1, 2, 1), (2, 4, 1)])).unwrap();
        assert_eq!(g, BTreeMap::from([((1, 2), 1)]));
        assert!(generator_counts(&table(&[(1, 2, 1), (2, 4, 0)])).is_err());
    }

    #[test]
    fn bottom_primitive() {
        for d in [4, 5] {
            let s = Session::new(Config::new(d, 2).unwrap());
            let p = prim_dims(&s).unwrap();
            assert_eq!(p.dim(1, d as i64 - 3), 1);
        }
    }
}
