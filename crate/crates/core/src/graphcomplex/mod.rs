//! The diagram complexes `D_n` (contraction differential, superimposition
//! product), their indecomposable quotients `P_n`, the simplicial structure
//! on `D_•`, and the totalizations `Tot D_•` and `Tot P_•`.
//!
//! `ibar` sends chord diagrams to Arnold monomials and kills everything with
//! an internal vertex; it is a map of simplicial algebras `D_• → A_•`.

mod ops;
mod tot;

pub use ops::{
    degeneracy_d, differential_d, differential_d_comb, face_d, ibar, ibar_comb, is_indecomposable, pieces, product_d,
    product_d_comb, project_p, DnElement,
};
pub use tot::{
    d_n_complex, normalized_basis_d, p_n_complex, tot_coproduct_d, tot_d, tot_d_column, tot_differential_d,
    tot_differential_p, tot_p, tot_p_column, tot_product_d,
};
