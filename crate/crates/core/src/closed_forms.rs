//! Closed-form three- and four-qubit invariants, and residuals of the
//! identities tying them to characteristic polynomials of F.
//!
//! Degrees in the amplitudes: F₁⁽³⁾ 4, H 2, L 4, M 4, D_xt 6.
//!
//! `dxt` is defined through the quartic polynomial of F_{12|34}:
//! `dxt = -(a1 + 6HM + HL) / 4`. The degree-6 array determinant
//! (rows 2 and 3 merged into one) is kept as `dxt_array`; it is itself an invariant
//! and satisfies `a1 = -4 dxt_array - HL`, so `dxt = dxt_array - 3HM/2`.

use serde::Serialize;

use crate::charpoly::char_poly;
use crate::error::{Error, Result};
use crate::fmatrix::build_f;
use crate::matrix::{det, CMatrix, C64};
use crate::partition::Partition;
use crate::state::PureState;

fn require(s: &PureState, n: usize) -> Result<&[C64]> {
    if s.n() != n {
        return Err(Error::WrongQubitCount {
            expected: if n == 3 { "3" } else { "4" },
            got: s.n(),
        });
    }
    Ok(s.amps())
}

/// 4[(a0a7 - a1a6 - a2a5 + a3a4)² + 4(a0a3 - a1a2)(a5a6 - a4a7)].
pub fn f1_3(s: &PureState) -> Result<C64> {
    let a = require(s, 3)?;
    let i1 = a[0] * a[7] - a[1] * a[6] - a[2] * a[5] + a[3] * a[4];
    Ok(4.0 * (i1 * i1 + 4.0 * (a[0] * a[3] - a[1] * a[2]) * (a[5] * a[6] - a[4] * a[7])))
}

/// 3-tangle, |F₁⁽³⁾|.
pub fn tangle3(s: &PureState) -> Result<f64> {
    f1_3(s).map(|z| z.norm())
}

pub fn inv_h(s: &PureState) -> Result<C64> {
    let a = require(s, 4)?;
    Ok(2.0
        * (a[0] * a[15] - a[1] * a[14] - a[2] * a[13] + a[3] * a[12] - a[4] * a[11]
            + a[5] * a[10]
            + a[6] * a[9]
            - a[7] * a[8]))
}

fn det_of_indices(a: &[C64], layout: [[usize; 4]; 4]) -> C64 {
    let rows: Vec<Vec<C64>> = layout
        .iter()
        .map(|r| r.iter().map(|&k| a[k]).collect())
        .collect();
    det(&CMatrix::from_rows(&rows)).expect("4x4 is square")
}

pub fn inv_l(s: &PureState) -> Result<C64> {
    let a = require(s, 4)?;
    Ok(det_of_indices(
        a,
        [[0, 4, 8, 12], [1, 5, 9, 13], [2, 6, 10, 14], [3, 7, 11, 15]],
    ))
}

pub fn inv_m(s: &PureState) -> Result<C64> {
    let a = require(s, 4)?;
    Ok(det_of_indices(
        a,
        [[0, 8, 2, 10], [1, 9, 3, 11], [4, 12, 6, 14], [5, 13, 7, 15]],
    ))
}

/// The degree-6 array read as a 3x3 determinant with its two middle
/// rows summed.
pub fn inv_dxt_array(s: &PureState) -> Result<C64> {
    let a = require(s, 4)?;
    let row1 = [
        a[0] * a[6] - a[2] * a[4],
        a[0] * a[7] + a[1] * a[6] - a[2] * a[5] - a[3] * a[4],
        a[1] * a[7] - a[3] * a[5],
    ];
    let row2 = [
        a[0] * a[14] + a[6] * a[8],
        a[0] * a[15] + a[6] * a[9] + a[1] * a[14] + a[7] * a[8],
        a[1] * a[15] + a[7] * a[9],
    ];
    let row3 = [
        -a[2] * a[12] - a[4] * a[10],
        -a[2] * a[13] - a[3] * a[12] - a[4] * a[11] - a[5] * a[10],
        -a[3] * a[13] - a[5] * a[11],
    ];
    let row4 = [
        a[8] * a[14] - a[10] * a[12],
        a[8] * a[15] + a[9] * a[14] - a[10] * a[13] - a[11] * a[12],
        a[9] * a[15] - a[11] * a[13],
    ];
    let middle = [row2[0] + row3[0], row2[1] + row3[1], row2[2] + row3[2]];
    Ok(det(&CMatrix::from_rows(&[row1, middle, row4])).expect("3x3 is square"))
}

fn partition_12_34() -> Partition {
    Partition::new(4, vec![1, 2]).expect("valid for n = 4")
}

fn partition_1_234() -> Partition {
    Partition::new(4, vec![1]).expect("valid for n = 4")
}

/// Degree-6 invariant fixed by a1 = -4 D_xt - 6HM - HL on F_{12|34}.
pub fn inv_dxt(s: &PureState) -> Result<C64> {
    require(s, 4)?;
    let a1 = char_poly(&build_f(s, &partition_12_34())?)?.coeff(1);
    let (h, l, m) = (inv_h(s)?, inv_l(s)?, inv_m(s)?);
    Ok(-(a1 + 6.0 * h * m + h * l) / 4.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "qubits")]
pub enum InvariantSet {
    #[serde(rename = "3")]
    Three { f1_3: C64, tangle3: f64 },
    #[serde(rename = "4")]
    Four {
        h: C64,
        l: C64,
        m: C64,
        dxt: C64,
        dxt_array: C64,
    },
}

pub fn invariants(s: &PureState) -> Result<InvariantSet> {
    match s.n() {
        3 => {
            let f = f1_3(s)?;
            Ok(InvariantSet::Three {
                f1_3: f,
                tangle3: f.norm(),
            })
        }
        4 => Ok(InvariantSet::Four {
            h: inv_h(s)?,
            l: inv_l(s)?,
            m: inv_m(s)?,
            dxt: inv_dxt(s)?,
            dxt_array: inv_dxt_array(s)?,
        }),
        n => Err(Error::WrongQubitCount {
            expected: "3 or 4",
            got: n,
        }),
    }
}

/// Deviations of each identity, divided by max(1, |ψ|^degree).
///
/// Three-qubit states fill `a0_vs_f1`; four-qubit states fill the rest.
/// `quartic_a1_array` uses the array determinant in place of D_xt and
/// is expected to be nonzero whenever HM ≠ 0; `quartic_a1_merged` checks
/// a1 = -4 dxt_array - HL.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RelationResidualReport {
    pub a0_vs_f1: Option<f64>,
    pub f1_vs_h: Option<f64>,
    pub quadratic_vs_h: Option<f64>,
    pub quartic_a3: Option<f64>,
    pub quartic_a2: Option<f64>,
    pub quartic_a1: Option<f64>,
    pub quartic_a0: Option<f64>,
    pub quartic_a1_array: Option<f64>,
    pub quartic_a1_merged: Option<f64>,
}

impl RelationResidualReport {
    /// (name, residual) for every populated identity that must vanish.
    pub fn gating(&self) -> Vec<(&'static str, f64)> {
        [
            ("a0_vs_f1", self.a0_vs_f1),
            ("f1_vs_h", self.f1_vs_h),
            ("quadratic_vs_h", self.quadratic_vs_h),
            ("quartic_a3", self.quartic_a3),
            ("quartic_a2", self.quartic_a2),
            ("quartic_a1", self.quartic_a1),
            ("quartic_a0", self.quartic_a0),
            ("quartic_a1_merged", self.quartic_a1_merged),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }

    pub fn max_gating(&self) -> f64 {
        self.gating().into_iter().map(|(_, v)| v).fold(0.0, f64::max)
    }
}

pub fn relation_residuals(s: &PureState) -> Result<RelationResidualReport> {
    let norm = s.norm();
    let scaled = |dev: f64, degree: i32| dev / norm.powi(degree).max(1.0);
    match s.n() {
        3 => {
            let p = Partition::new(3, vec![1])?;
            let a0 = char_poly(&build_f(s, &p)?)?.coeff(0);
            Ok(RelationResidualReport {
                a0_vs_f1: Some(scaled((a0 + f1_3(s)? / 4.0).norm(), 4)),
                ..Default::default()
            })
        }
        4 => {
            let (h, l, m) = (inv_h(s)?, inv_l(s)?, inv_m(s)?);
            let dxt = inv_dxt(s)?;
            let dxt_array = inv_dxt_array(s)?;

            let f1 = build_f(s, &partition_1_234())?;
            let target = CMatrix::identity(2).scale(-h / 2.0);
            let f1_vs_h = scaled(f1.entries.max_abs_diff(&target), 2);
            let p1 = char_poly(&f1)?;
            let quadratic_vs_h = scaled((p1.coeff(0) - h * h / 4.0).norm(), 4)
                .max(scaled((p1.coeff(1) - h).norm(), 2));

            let q = char_poly(&build_f(s, &partition_12_34())?)?;
            let a1_rhs = |d: C64| -4.0 * d - 6.0 * h * m - h * l;
            Ok(RelationResidualReport {
                f1_vs_h: Some(f1_vs_h),
                quadratic_vs_h: Some(quadratic_vs_h),
                quartic_a3: Some(scaled((q.coeff(3) + h).norm(), 2)),
                quartic_a2: Some(scaled((q.coeff(2) - (h * h / 4.0 + 2.0 * (l + 2.0 * m))).norm(), 4)),
                quartic_a1: Some(scaled((q.coeff(1) - a1_rhs(dxt)).norm(), 6)),
                quartic_a0: Some(scaled((q.coeff(0) - l * l).norm(), 8)),
                quartic_a1_array: Some(scaled((q.coeff(1) - a1_rhs(dxt_array)).norm(), 6)),
                quartic_a1_merged: Some(scaled((q.coeff(1) - (-4.0 * dxt_array - h * l)).norm(), 6)),
                ..Default::default()
            })
        }
        n => Err(Error::WrongQubitCount {
            expected: "3 or 4",
            got: n,
        }),
    }
}

/// EPR pairs on qubits (1,3) and (2,4): a0 = a5 = a10 = a15 = 1/2.
pub fn epr_epr() -> PureState {
    let mut amps = vec![0.0; 16];
    for k in [0, 5, 10, 15] {
        amps[k] = 0.5;
    }
    PureState::from_real(&amps).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_c(z: C64, re: f64) {
        assert!((z - C64::new(re, 0.0)).norm() < 1e-15, "{z} != {re}");
    }

    #[test]
    fn three_qubit_values() {
        let ghz = PureState::ghz(3).unwrap();
        let w = PureState::w(3).unwrap();
        assert_c(f1_3(&ghz).unwrap(), 1.0);
        assert_c(f1_3(&w).unwrap(), 0.0);
        assert_c(f1_3(&PureState::basis(3, 0).unwrap()).unwrap(), 0.0);
        assert!((tangle3(&ghz).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(tangle3(&w).unwrap(), 0.0);
        let big = ghz.scaled(C64::new(2.0, 0.0)).unwrap();
        assert!((tangle3(&big).unwrap() - 16.0).abs() < 1e-13);
    }

    #[test]
    fn four_qubit_values() {
        let ghz = PureState::ghz(4).unwrap();
        let epr = epr_epr();
        let zero = PureState::basis(4, 0).unwrap();
        assert_c(inv_h(&ghz).unwrap(), 1.0);
        assert_c(inv_h(&zero).unwrap(), 0.0);
        assert_c(inv_h(&epr).unwrap(), 1.0);
        assert_c(inv_l(&ghz).unwrap(), 0.0);
        assert_c(inv_l(&epr).unwrap(), 0.0625);
        assert_c(inv_l(&zero).unwrap(), 0.0);
        for s in [&ghz, &epr, &zero] {
            assert_c(inv_m(s).unwrap(), 0.0);
            assert_c(inv_dxt(s).unwrap(), 0.0);
            assert_c(inv_dxt_array(s).unwrap(), 0.0);
        }
    }

    #[test]
    fn wrong_qubit_count() {
        let s = PureState::ghz(4).unwrap();
        assert!(matches!(f1_3(&s), Err(Error::WrongQubitCount { got: 4, .. })));
        let s = PureState::ghz(3).unwrap();
        assert!(inv_h(&s).is_err());
        assert!(inv_l(&s).is_err());
        assert!(inv_m(&s).is_err());
        assert!(inv_dxt(&s).is_err());
        assert!(relation_residuals(&PureState::ghz(5).unwrap()).is_err());
        assert!(invariants(&PureState::ghz(2).unwrap()).is_err());
    }

    #[test]
    fn golden_residuals() {
        for s in [PureState::ghz(4).unwrap(), epr_epr()] {
            let r = relation_residuals(&s).unwrap();
            assert!(r.max_gating() <= 1e-12, "{r:?}");
            assert!(r.quartic_a1_array.unwrap() <= 1e-12);
        }
        let r = relation_residuals(&PureState::ghz(3).unwrap()).unwrap();
        assert!(r.a0_vs_f1.unwrap() <= 1e-12);
        assert!(r.f1_vs_h.is_none());
    }

    #[test]
    fn dxt_is_array_minus_three_halves_hm() {
        let s = PureState::from_real(&[
            0.3, -0.1, 0.7, 0.2, -0.4, 0.5, 0.1, 0.9, 0.6, -0.3, 0.2, -0.8, 0.4, 0.1, -0.2, 0.35,
        ])
        .unwrap();
        let (h, m) = (inv_h(&s).unwrap(), inv_m(&s).unwrap());
        let expect = inv_dxt_array(&s).unwrap() - 1.5 * h * m;
        assert!((inv_dxt(&s).unwrap() - expect).norm() < 1e-12);
    }
}
