//! Betti tables of the bigraded complexes, bidegree bookkeeping, primitive
//! dimensions, and the verification reports comparing the complexes.

mod prim;
mod table;
mod verify;

pub use prim::{generator_counts, prim_dims};
pub use table::{betti, j_prime, pq, pq_prime, BettiCell, BettiRow, BettiTable, Session};
pub use verify::{
    arnold_dim, expected_cycles, representative, verify, verify_all, verify_cycles, verify_d_squared,
    verify_diagram_homology, verify_primitives, verify_quotient_homology, verify_simplicial, verify_support,
    verify_tot_d, verify_tot_p, Claim, CycleRepresentative, Verdict, VerificationReport, MAX_POINTS_CHECKED,
};
