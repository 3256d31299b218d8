//! The simplicial algebra `A_•` of Arnold algebras, its normalized
//! totalization with the shuffle product and coconcatenation, and the
//! indecomposable quotient.
//!
//! `A_n` is generated by `a_{ij}`, `1 ≤ i ≠ j ≤ n`, of degree `d - 1`, with
//! `a_{ji} = (-1)^d a_{ij}`, `a_{ij}² = 0` and the three-term relation. A
//! monomial is in normal form when each vertex is the larger endpoint of at
//! most one chord and chords are listed by larger endpoint.

mod monomial;
mod tot;

use serde::{Deserialize, Serialize};

pub use monomial::{basis_a, degeneracy, face, normalized_basis_a, product_a, reduce, ForestMonomial};
pub use tot::{
    coconcatenation, indecomposable_quotient, shuffle_monomials, shuffle_product, tot_a, tot_a_column, tot_degree,
    tot_differential,
};

/// Position of a cell: complexity `i` and simplicial level `j`, with the two
/// reported gradings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub i: usize,
    pub j: usize,
}

impl Bidegree {
    pub fn new(i: usize, j: usize) -> Self {
        Bidegree { i, j }
    }

    /// `(p, q) = (-j, (d-1)i)`.
    pub fn pq(&self, d: u32) -> (i64, i64) {
        (-(self.j as i64), (d as i64 - 1) * self.i as i64)
    }

    /// The level `j' = j - i + 1` on the Lie side.
    pub fn j_prime(&self) -> i64 {
        self.j as i64 - self.i as i64 + 1
    }

    /// `(p', q') = (-j', (d-2)i + 1)`.
    pub fn pq_prime(&self, d: u32) -> (i64, i64) {
        (-self.j_prime(), (d as i64 - 2) * self.i as i64 + 1)
    }

    pub fn total_degree(&self, d: u32) -> i64 {
        let (p, q) = self.pq(d);
        p + q
    }
}
