//! SLOCC invariants of n-qubit pure states.
//!
//! For a bipartition S|S̄ of the qubits, the coefficient matrix C is the
//! amplitude vector reshaped with rows indexed by S. The square matrix
//! F = V_|S| C V_|S̄| Cᵀ, with V_k the k-fold Kronecker power of
//! v = [[0, 1], [-1, 0]], transforms by similarity under det-1 local
//! operators, so every coefficient of its characteristic polynomial is an
//! SLOCC invariant. This crate builds F, extracts those polynomials,
//! evaluates the closed-form three- and four-qubit invariants and uses the
//! polynomials to prove pairs of states SLOCC-inequivalent.

pub mod charpoly;
pub mod closed_forms;
pub mod equivalence;
pub mod error;
pub mod fmatrix;
pub mod matrix;
pub mod partition;
pub mod sampler;
pub mod selftest;
pub mod state;

pub use charpoly::{cayley_hamilton_residual, char_poly, char_poly_matrix, eval_charpoly, CharPoly};
pub use closed_forms::{
    epr_epr, f1_3, inv_dxt, inv_dxt_array, inv_h, inv_l, inv_m, invariants, relation_residuals,
    tangle3, InvariantSet, RelationResidualReport,
};
pub use equivalence::{
    canonical_partitions, compare_projective, compare_strict, fingerprint, Fingerprint, Mode,
    Outcome, Verdict, Witness,
};
pub use error::{Error, Result};
pub use fmatrix::{apply_local_ops, build_f, transform_f, v_kron, FMatrix, LocalOperator};
pub use matrix::{det, CMatrix, C64};
pub use partition::{build_coeff_matrix, parse_partition, CoeffMatrix, Partition};
pub use sampler::{
    random_invertible, random_invertible_ops, random_local_ops, random_sl2, random_state,
    SeededGenerator,
};
pub use state::{parse_state, serialize_state, state_norm, PureState};
