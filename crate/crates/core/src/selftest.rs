//! Monte Carlo identity suite behind `slocc selftest` and the acceptance
//! tests.
//!
//! Every trial draws its own generator from `(seed, trial)`, and residuals
//! are max-reduced, so the report does not depend on thread scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::{cayley_hamilton_residual, char_poly};
use crate::closed_forms::{f1_3, inv_dxt, inv_dxt_array, inv_h, inv_l, inv_m, relation_residuals};
use crate::equivalence::{
    canonical_partitions, compare_projective, compare_strict, fingerprint, Outcome,
};
use crate::error::{Error, Result};
use crate::fmatrix::{apply_local_ops, build_f, row_block_ops, transform_f, LocalOperator};
use crate::matrix::{det, CMatrix, C64};
use crate::partition::Partition;
use crate::sampler::{random_invertible_ops, random_local_ops, random_state, SeededGenerator};
use crate::state::PureState;

/// Tolerance of the strict comparator in the invariance checks.
pub const INVARIANCE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    /// Informational checks are reported but do not affect `passed`.
    pub gating: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub qubits: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SelftestReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct CheckSpec {
    name: &'static str,
    tolerance: f64,
    gating: bool,
}

const fn gate(name: &'static str, tolerance: f64) -> CheckSpec {
    CheckSpec {
        name,
        tolerance,
        gating: true,
    }
}

// Counts (false positives) use tolerance 0: any occurrence fails.
const CHECKS_3: &[CheckSpec] = &[
    gate("similarity_law", 1e-9),
    gate("f_1x23_closed_form", 1e-12),
    gate("a0_vs_f1", 1e-10),
    gate("charpoly_invariance", INVARIANCE_TOL),
    gate("closed_form_invariance", INVARIANCE_TOL),
    gate("strict_false_positives", 0.0),
    gate("projective_false_positives", 0.0),
    gate("homogeneity", 1e-10),
    gate("cayley_hamilton", 1e-9),
    gate("det_cross_check", 1e-10),
];

const CHECKS_4: &[CheckSpec] = &[
    gate("similarity_law", 1e-9),
    gate("f1_vs_h", 1e-10),
    gate("quadratic_vs_h", 1e-10),
    gate("quartic_a3", 1e-9),
    gate("quartic_a2", 1e-9),
    gate("quartic_a1", 1e-9),
    gate("quartic_a0", 1e-9),
    gate("quartic_a1_merged", 1e-9),
    CheckSpec {
        name: "quartic_a1_array",
        tolerance: 1e-9,
        gating: false,
    },
    gate("charpoly_invariance", INVARIANCE_TOL),
    gate("closed_form_invariance", INVARIANCE_TOL),
    gate("strict_false_positives", 0.0),
    gate("projective_false_positives", 0.0),
    gate("homogeneity", 1e-10),
    gate("cayley_hamilton", 1e-9),
    gate("det_cross_check", 1e-10),
];

pub fn run_selftest(qubits: usize, trials: usize, seed: u64, tol: f64) -> Result<SelftestReport> {
    let specs = match qubits {
        3 => CHECKS_3,
        4 => CHECKS_4,
        q => {
            return Err(Error::InvalidArgument(format!(
                "selftest supports 3 or 4 qubits, got {q}"
            )))
        }
    };
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let partitions = canonical_partitions(qubits);

    let maxima = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut gen = SeededGenerator::for_trial(seed, t);
            let row = run_trial(qubits, &partitions, &mut gen, tol)?;
            Ok(specs
                .iter()
                .map(|s| {
                    row.iter()
                        .find(|(k, _)| *k == s.name)
                        .map(|(_, v)| *v)
                        .unwrap_or(f64::NAN)
                })
                .collect::<Vec<f64>>())
        })
        .try_reduce(
            || vec![0.0; specs.len()],
            |a, b| Ok(a.into_iter().zip(b).map(|(x, y)| nan_max(x, y)).collect()),
        )?;

    let checks: Vec<CheckResult> = specs
        .iter()
        .zip(maxima)
        .map(|(s, v)| CheckResult {
            name: s.name,
            max_residual: v,
            tolerance: s.tolerance,
            gating: s.gating,
            passed: v <= s.tolerance,
        })
        .collect();
    let passed = checks.iter().filter(|c| c.gating).all(|c| c.passed);
    Ok(SelftestReport {
        qubits,
        trials,
        seed,
        tol,
        checks,
        passed,
    })
}

// NaN marks a broken computation and must survive the reduction.
fn nan_max(x: f64, y: f64) -> f64 {
    if x.is_nan() || y.is_nan() {
        f64::NAN
    } else {
        x.max(y)
    }
}

fn rel(x: C64, y: C64) -> f64 {
    (x - y).norm() / 1f64.max(x.norm()).max(y.norm())
}

/// I1-form of F_{1|23} for three qubits.
pub fn f_1x23_closed_form(s: &PureState) -> CMatrix {
    let a = s.amps();
    let i1 = a[0] * a[7] - a[1] * a[6] - a[2] * a[5] + a[3] * a[4];
    CMatrix::from_rows(&[
        [i1, 2.0 * (a[4] * a[7] - a[5] * a[6])],
        [-2.0 * (a[0] * a[3] - a[1] * a[2]), -i1],
    ])
}

fn closed_forms_of(s: &PureState) -> Result<Vec<C64>> {
    Ok(match s.n() {
        3 => vec![f1_3(s)?],
        _ => vec![inv_h(s)?, inv_l(s)?, inv_m(s)?, inv_dxt(s)?, inv_dxt_array(s)?],
    })
}

/// (invariant, degree) pairs used by the homogeneity check.
fn graded_invariants(s: &PureState) -> Result<Vec<(C64, i32)>> {
    Ok(match s.n() {
        3 => vec![(f1_3(s)?, 4)],
        _ => vec![
            (inv_h(s)?, 2),
            (inv_l(s)?, 4),
            (inv_m(s)?, 4),
            (inv_dxt(s)?, 6),
            (inv_dxt_array(s)?, 6),
        ],
    })
}

pub const HOMOGENEITY_FACTORS: [C64; 3] = [
    C64::new(2.0, 0.0),
    C64::new(0.0, 1.0),
    C64::new(1.0, 1.0),
];

/// max relative deviation of inv(c ψ) from c^degree inv(ψ).
pub fn homogeneity_residual(s: &PureState) -> Result<f64> {
    let base = graded_invariants(s)?;
    let mut worst = 0.0f64;
    for c in HOMOGENEITY_FACTORS {
        let scaled = graded_invariants(&s.scaled(c)?)?;
        for ((x, d), (y, _)) in base.iter().zip(scaled) {
            let expect = c.powi(*d) * x;
            let floor = c.norm().powi(*d) * 1e-300;
            worst = worst.max((y - expect).norm() / expect.norm().max(floor));
        }
    }
    Ok(worst)
}

/// |a_0 - det F| / max(1, |det F|), determinant by pivoted elimination.
pub fn det_cross_check(f: &CMatrix) -> Result<f64> {
    let p = crate::charpoly::char_poly_matrix(f)?;
    let d = det(f)?;
    let sign = if f.rows().is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((p.coeff(0) - sign * d).norm() / d.norm().max(1.0))
}

/// Normalized similarity-law deviation over all given partitions.
pub fn similarity_residual(
    s: &PureState,
    ops: &[LocalOperator],
    partitions: &[Partition],
) -> Result<f64> {
    let moved = apply_local_ops(s, ops)?;
    let max_op = ops.iter().map(LocalOperator::op_norm).fold(0.0, f64::max);
    let scale = s.norm().powi(2) * max_op.powi(2 * s.n() as i32);
    let mut worst = 0.0f64;
    for p in partitions {
        let lhs = build_f(&moved, p)?;
        let rhs = transform_f(&build_f(s, p)?, &row_block_ops(p, ops))?;
        worst = worst.max(lhs.entries.max_abs_diff(&rhs.entries) / scale.max(1.0));
    }
    Ok(worst)
}

fn run_trial(
    n: usize,
    partitions: &[Partition],
    gen: &mut SeededGenerator,
    tol: f64,
) -> Result<Vec<(&'static str, f64)>> {
    let s = random_state(n, gen)?;
    let ops = random_local_ops(n, gen)?;
    let moved = apply_local_ops(&s, &ops)?;
    let projective_ops = random_invertible_ops(n, gen)?;
    let projected = apply_local_ops(&s, &projective_ops)?;

    let mut out = vec![("similarity_law", similarity_residual(&s, &ops, partitions)?)];

    let rr = relation_residuals(&s)?;
    if n == 3 {
        let f = build_f(&s, &partitions[0])?;
        out.push(("f_1x23_closed_form", f.entries.max_abs_diff(&f_1x23_closed_form(&s))));
    }
    let pairs = [
        ("a0_vs_f1", rr.a0_vs_f1),
        ("f1_vs_h", rr.f1_vs_h),
        ("quadratic_vs_h", rr.quadratic_vs_h),
        ("quartic_a3", rr.quartic_a3),
        ("quartic_a2", rr.quartic_a2),
        ("quartic_a1", rr.quartic_a1),
        ("quartic_a0", rr.quartic_a0),
        ("quartic_a1_merged", rr.quartic_a1_merged),
        ("quartic_a1_array", rr.quartic_a1_array),
    ];
    out.extend(pairs.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))));

    let fa = fingerprint(&s)?;
    let fb = fingerprint(&moved)?;
    let mut inv = 0.0f64;
    for (ea, eb) in fa.entries.iter().zip(&fb.entries) {
        for (x, y) in ea.charpoly.coeffs().iter().zip(eb.charpoly.coeffs()) {
            inv = inv.max(rel(*x, *y));
        }
    }
    out.push(("charpoly_invariance", inv));

    let closed = closed_forms_of(&s)?
        .into_iter()
        .zip(closed_forms_of(&moved)?)
        .map(|(x, y)| rel(x, y))
        .fold(0.0, f64::max);
    out.push(("closed_form_invariance", closed));

    let strict = compare_strict(&fa, &fb, tol)?;
    let strict_rev = compare_strict(&fb, &fa, tol)?;
    let fp = [strict, strict_rev]
        .iter()
        .filter(|v| v.outcome == Outcome::Inequivalent)
        .count();
    out.push(("strict_false_positives", fp as f64));

    let fc = fingerprint(&projected)?;
    let proj = [compare_projective(&fa, &fc, tol)?, compare_projective(&fc, &fa, tol)?];
    let pfp = proj.iter().filter(|v| v.outcome == Outcome::Inequivalent).count();
    out.push(("projective_false_positives", pfp as f64));

    out.push(("homogeneity", homogeneity_residual(&s)?));

    let mut ch = 0.0f64;
    let mut dc = 0.0f64;
    for state in [&s, &moved] {
        for p in partitions {
            let f = build_f(state, p)?;
            let cp = char_poly(&f)?;
            ch = ch.max(cayley_hamilton_residual(&cp, &f.entries));
            dc = dc.max(det_cross_check(&f.entries)?);
        }
    }
    out.push(("cayley_hamilton", ch));
    out.push(("det_cross_check", dc));
    Ok(out)
}
