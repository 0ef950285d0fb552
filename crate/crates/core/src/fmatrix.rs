//! The square matrix F(ψ) = V_i C V_{n-i} Cᵀ, local operations on states,
//! and the similarity law F(ψ') = [(A)ᵀ]⁻¹ F(ψ) Aᵀ for det-1 operators.

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, C64, ONE, ZERO};
use crate::partition::{build_coeff_matrix, Partition};
use crate::state::PureState;

/// Tolerance on |det - 1| for an operator to count as unimodular.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// An invertible single-qubit operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalOperator {
    m: [[C64; 2]; 2],
}

impl LocalOperator {
    pub fn new(m: [[C64; 2]; 2]) -> Result<Self> {
        let op = Self { m };
        let d = op.det();
        if !(d.re.is_finite() && d.im.is_finite()) || d.norm() == 0.0 {
            return Err(Error::SingularOperator(d.norm()));
        }
        Ok(op)
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Result<Self> {
        let c = |x: f64| C64::new(x, 0.0);
        Self::new([[c(m[0][0]), c(m[0][1])], [c(m[1][0]), c(m[1][1])]])
    }

    pub fn identity() -> Self {
        Self {
            m: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    pub fn entries(&self) -> [[C64; 2]; 2] {
        self.m
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn is_unimodular(&self) -> bool {
        (self.det() - ONE).norm() <= UNIMODULAR_TOL
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        let fro2: f64 = self.m.iter().flatten().map(|z| z.norm_sqr()).sum();
        let d2 = self.det().norm_sqr();
        let disc = (fro2 * fro2 - 4.0 * d2).max(0.0).sqrt();
        ((fro2 + disc) / 2.0).sqrt()
    }

    pub fn scaled(&self, c: C64) -> Result<Self> {
        Self::new([
            [self.m[0][0] * c, self.m[0][1] * c],
            [self.m[1][0] * c, self.m[1][1] * c],
        ])
    }

    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_rows(&self.m)
    }

    /// (Aᵀ)⁻¹ = adj(A)ᵀ / det.
    fn inverse_transpose(&self) -> CMatrix {
        let d = self.det();
        let [[a, b], [c, e]] = self.m;
        CMatrix::from_rows(&[[e / d, -c / d], [-b / d, a / d]])
    }
}

/// The unimodular `v = iσ_y = [[0, 1], [-1, 0]]`.
pub fn v_matrix() -> CMatrix {
    CMatrix::from_real_rows(&[[0.0, 1.0], [-1.0, 0.0]])
}

/// k-fold Kronecker power of `v`, 1 <= k <= 10. A signed permutation matrix
/// supported on the anti-diagonal.
pub fn v_kron(k: usize) -> Result<CMatrix> {
    if !(1..=10).contains(&k) {
        return Err(Error::KronPowerOutOfRange(k));
    }
    Ok(v_kron_unchecked(k))
}

// Entry (r, dim-1-r) of v^{⊗k} is (-1)^{popcount(r)}: each factor contributes
// +1 on its 0 row and -1 on its 1 row.
fn v_kron_unchecked(k: usize) -> CMatrix {
    let dim = 1usize << k;
    let mut m = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        let sign = if r.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        m[(r, dim - 1 - r)] = C64::new(sign, 0.0);
    }
    m
}

#[derive(Clone, Debug, PartialEq)]
pub struct FMatrix {
    pub partition: Partition,
    pub entries: CMatrix,
}

impl FMatrix {
    pub fn dim(&self) -> usize {
        self.entries.rows()
    }
}

pub fn build_f(s: &PureState, p: &Partition) -> Result<FMatrix> {
    let c = build_coeff_matrix(s, p)?.entries;
    let i = p.row_size();
    let rows_v = v_kron_unchecked(i);
    let cols_v = v_kron_unchecked(p.n() - i);
    // V_i C V_{n-i} Cᵀ; V's are permutations, so (V_i C)(V_{n-i} Cᵀ).
    let left = rows_v.matmul(&c);
    let right = cols_v.matmul(&c.transpose());
    Ok(FMatrix {
        partition: p.clone(),
        entries: left.matmul(&right),
    })
}

/// (A₁ ⊗ ... ⊗ Aₙ)|ψ⟩, with `ops[q-1]` acting on qubit q.
pub fn apply_local_ops(s: &PureState, ops: &[LocalOperator]) -> Result<PureState> {
    let n = s.n();
    if ops.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: ops.len(),
        });
    }
    let mut amps = s.amps().to_vec();
    for (q, op) in ops.iter().enumerate() {
        let bit = 1usize << (n - 1 - q);
        let [[a, b], [c, d]] = op.m;
        for k in 0..amps.len() {
            if k & bit != 0 {
                continue;
            }
            let x0 = amps[k];
            let x1 = amps[k | bit];
            amps[k] = a * x0 + b * x1;
            amps[k | bit] = c * x0 + d * x1;
        }
    }
    PureState::new(amps)
}

/// Right-hand side of the similarity law, for det-1 operators listed in
/// row-block order.
pub fn transform_f(f: &FMatrix, ops_on_row_block: &[LocalOperator]) -> Result<FMatrix> {
    let i = f.partition.row_size();
    if ops_on_row_block.len() != i {
        return Err(Error::ArityMismatch {
            expected: i,
            got: ops_on_row_block.len(),
        });
    }
    if let Some(op) = ops_on_row_block.iter().find(|op| !op.is_unimodular()) {
        return Err(Error::NotUnimodular((op.det() - ONE).norm()));
    }
    let mut a_t = CMatrix::identity(1);
    let mut a_t_inv = CMatrix::identity(1);
    for op in ops_on_row_block {
        a_t = a_t.kron(&op.to_matrix().transpose());
        a_t_inv = a_t_inv.kron(&op.inverse_transpose());
    }
    Ok(FMatrix {
        partition: f.partition.clone(),
        entries: a_t_inv.matmul(&f.entries).matmul(&a_t),
    })
}

/// Picks `ops[q-1]` for each q of the row block, in row-block order.
pub fn row_block_ops(p: &Partition, ops: &[LocalOperator]) -> Vec<LocalOperator> {
    p.row_block().iter().map(|&q| ops[q - 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::det;
    use crate::partition::parse_partition;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn v_kron_small_cases() {
        assert_eq!(v_kron(1).unwrap(), v_matrix());
        let expect = CMatrix::from_real_rows(&[
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(v_kron(2).unwrap(), expect);
        let v3 = v_kron(3).unwrap();
        assert_eq!(v3[(0, 7)], r(1.0));
        assert_eq!(v3[(7, 0)], r(-1.0));
    }

    #[test]
    fn v_kron_matches_repeated_kron() {
        let mut m = v_matrix();
        for k in 2..=6 {
            m = m.kron(&v_matrix());
            assert_eq!(v_kron(k).unwrap(), m, "k = {k}");
        }
    }

    #[test]
    fn v_kron_det_is_one() {
        for k in 1..=10 {
            let d = det(&v_kron(k).unwrap()).unwrap();
            assert_eq!(d, ONE, "k = {k}");
        }
    }

    #[test]
    fn v_kron_range() {
        assert_eq!(v_kron(0), Err(Error::KronPowerOutOfRange(0)));
        assert_eq!(v_kron(11), Err(Error::KronPowerOutOfRange(11)));
    }

    #[test]
    fn f_of_named_states() {
        let h = 0.5;
        let ghz3 = PureState::ghz(3).unwrap();
        let f = build_f(&ghz3, &parse_partition("1|23", 3).unwrap()).unwrap();
        let expect = CMatrix::from_real_rows(&[[h, 0.0], [0.0, -h]]);
        assert!(f.entries.max_abs_diff(&expect) < 1e-15);

        let w3 = PureState::w(3).unwrap();
        let f = build_f(&w3, &parse_partition("1|23", 3).unwrap()).unwrap();
        let expect = CMatrix::from_real_rows(&[[0.0, 0.0], [2.0 / 3.0, 0.0]]);
        assert!(f.entries.max_abs_diff(&expect) < 1e-15);

        let ghz4 = PureState::ghz(4).unwrap();
        let f = build_f(&ghz4, &parse_partition("1|234", 4).unwrap()).unwrap();
        let expect = CMatrix::from_real_rows(&[[-h, 0.0], [0.0, -h]]);
        assert!(f.entries.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn oversized_row_block_is_rank_deficient() {
        let s = PureState::from_real(&[0.3, -1.0, 0.2, 0.7, 1.1, 0.4, -0.5, 0.9]).unwrap();
        let f = build_f(&s, &parse_partition("12|3", 3).unwrap()).unwrap();
        assert_eq!(f.dim(), 4);
        assert!(det(&f.entries).unwrap().norm() < 1e-14);
    }

    #[test]
    fn identity_ops_leave_state_unchanged() {
        let s = PureState::from_real(&[0.3, -1.0, 0.2, 0.7, 1.1, 0.4, -0.5, 0.9]).unwrap();
        let out = apply_local_ops(&s, &[LocalOperator::identity(); 3]).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn v_on_zero_gives_minus_one() {
        let s = PureState::basis(1, 0).unwrap();
        let v = LocalOperator::from_real([[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        let out = apply_local_ops(&s, &[v]).unwrap();
        assert_eq!(out.amps(), &[ZERO, r(-1.0)]);
    }

    #[test]
    fn diagonal_op_on_first_qubit_of_ghz3() {
        let s = PureState::ghz(3).unwrap();
        let a = LocalOperator::from_real([[2.0, 0.0], [0.0, 0.5]]).unwrap();
        let id = LocalOperator::identity();
        let out = apply_local_ops(&s, &[a, id, id]).unwrap();
        assert!((out.amp(0).re - 2f64.sqrt()).abs() < 1e-15);
        assert!((out.amp(7).re - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn apply_errors() {
        let s = PureState::ghz(3).unwrap();
        assert!(matches!(
            apply_local_ops(&s, &[LocalOperator::identity(); 2]),
            Err(Error::ArityMismatch { expected: 3, got: 2 })
        ));
        assert!(matches!(
            LocalOperator::from_real([[1.0, 2.0], [2.0, 4.0]]),
            Err(Error::SingularOperator(_))
        ));
    }

    #[test]
    fn transform_identity_and_trace() {
        let f = FMatrix {
            partition: parse_partition("1|23", 3).unwrap(),
            entries: CMatrix::from_real_rows(&[[0.5, 0.0], [0.0, -0.5]]),
        };
        let same = transform_f(&f, &[LocalOperator::identity()]).unwrap();
        assert_eq!(same, f);

        let a = LocalOperator::new([[r(2.0), C64::new(0.0, 1.0)], [r(1.0), C64::new(1.0, 0.5)]])
            .unwrap();
        let root = a.det().sqrt();
        let a = a.scaled(root.inv()).unwrap();
        let g = transform_f(&f, &[a]).unwrap();
        assert!((g.entries.trace() - f.entries.trace()).norm() < 1e-12);
    }

    #[test]
    fn transform_rejects_non_unimodular() {
        let f = FMatrix {
            partition: parse_partition("1|23", 3).unwrap(),
            entries: CMatrix::identity(2),
        };
        let a = LocalOperator::from_real([[2.0, 0.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(transform_f(&f, &[a]), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn op_norm_of_diagonal() {
        let a = LocalOperator::from_real([[3.0, 0.0], [0.0, 0.25]]).unwrap();
        assert!((a.op_norm() - 3.0).abs() < 1e-14);
    }
}
