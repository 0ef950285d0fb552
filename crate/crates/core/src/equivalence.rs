//! SLOCC-inequivalence tests on characteristic-polynomial fingerprints.
//!
//! Equal fingerprints are necessary for SLOCC equivalence, not sufficient,
//! so a match is reported as `Indistinguishable`.

use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::{char_poly, CharPoly};
use crate::error::{Error, Result};
use crate::fmatrix::build_f;
use crate::matrix::C64;
use crate::partition::Partition;
use crate::state::PureState;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Canonical partitions: a fixed list for n = 3, 4; otherwise every
/// ascending row block of size <= n/2, by size then lexicographically.
pub fn canonical_partitions(n: usize) -> Vec<Partition> {
    let rows: Vec<Vec<usize>> = match n {
        3 => vec![vec![1], vec![2], vec![3]],
        4 => vec![
            vec![1],
            vec![2],
            vec![3],
            vec![1, 2],
            vec![1, 3],
            vec![1, 4],
        ],
        _ => {
            let mut out = Vec::new();
            for size in 1..=n / 2 {
                combinations(n, size, 1, &mut Vec::new(), &mut out);
            }
            out
        }
    };
    rows.into_iter()
        .map(|r| Partition::new(n, r).expect("canonical partition is valid"))
        .collect()
}

fn combinations(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for q in start..=n {
        cur.push(q);
        combinations(n, k, q + 1, cur, out);
        cur.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FingerprintEntry {
    pub partition: String,
    pub charpoly: CharPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fingerprint {
    pub n: usize,
    /// Norm of the source state; F scales with its square.
    pub state_norm: f64,
    pub entries: Vec<FingerprintEntry>,
}

impl Fingerprint {
    pub fn get(&self, label: &str) -> Option<&CharPoly> {
        self.entries
            .iter()
            .find(|e| e.partition == label)
            .map(|e| &e.charpoly)
    }
}

pub fn fingerprint(s: &PureState) -> Result<Fingerprint> {
    let entries = canonical_partitions(s.n())
        .par_iter()
        .map(|p| {
            Ok(FingerprintEntry {
                partition: p.label(),
                charpoly: char_poly(&build_f(s, p)?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fingerprint {
        n: s.n(),
        state_norm: s.norm(),
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Inequivalent,
    Indistinguishable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strict,
    Projective,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub partition: String,
    /// Index j of the coefficient a_j.
    pub coefficient: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub mode: Mode,
}

impl Verdict {
    fn indistinguishable(mode: Mode) -> Self {
        Self {
            outcome: Outcome::Indistinguishable,
            witness: None,
            mode,
        }
    }

    fn inequivalent(mode: Mode, partition: &str, coefficient: usize, reason: String) -> Self {
        Self {
            outcome: Outcome::Inequivalent,
            witness: Some(Witness {
                partition: partition.to_string(),
                coefficient,
                reason,
            }),
            mode,
        }
    }
}

fn check_pair(a: &Fingerprint, b: &Fingerprint, tol: f64) -> Result<()> {
    if a.n != b.n || a.entries.len() != b.entries.len() {
        return Err(Error::ArityMismatch {
            expected: a.n,
            got: b.n,
        });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Coefficientwise comparison for det-1 SLOCC. A pair differs when
/// |a_j - b_j| > tol * max(1, |a_j|, |b_j|).
pub fn compare_strict(a: &Fingerprint, b: &Fingerprint, tol: f64) -> Result<Verdict> {
    check_pair(a, b, tol)?;
    for (ea, eb) in a.entries.iter().zip(&b.entries) {
        for (j, (x, y)) in ea.charpoly.coeffs().iter().zip(eb.charpoly.coeffs()).enumerate() {
            let scale = 1f64.max(x.norm()).max(y.norm());
            if (x - y).norm() > tol * scale {
                return Ok(Verdict::inequivalent(
                    Mode::Strict,
                    &ea.partition,
                    j,
                    format!("a_{j}: {} vs {}", fmt_c(*x), fmt_c(*y)),
                ));
            }
        }
    }
    Ok(Verdict::indistinguishable(Mode::Strict))
}

fn fmt_c(z: C64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// Characteristic scale of F: max over j < m of |a_j|^(1/(m-j)).
fn char_scale(f: &Fingerprint) -> f64 {
    f.entries
        .iter()
        .flat_map(|e| {
            let p = &e.charpoly;
            (0..p.degree()).map(move |j| p.coeff(j).norm().powf(1.0 / p.weight(j) as f64))
        })
        .fold(0.0, f64::max)
}

/// a_j counts as zero below tol * scale^w, or below the rounding floor
/// (sqrt(eps) |ψ|²)^w that null-cone states leave behind.
fn is_zero(x: C64, w: i32, scale: f64, state_norm: f64, tol: f64) -> bool {
    let floor = f64::EPSILON.sqrt() * state_norm * state_norm;
    x.norm() <= tol * scale.powi(w) || x.norm() <= floor.powi(w)
}

struct Term<'a> {
    partition: &'a str,
    j: usize,
    a: C64,
    b: C64,
    w: i32,
}

fn cross_ratio_holds(s: &Term, t: &Term, tol: f64) -> bool {
    // (b_s / a_s)^{w_t} == (b_t / a_t)^{w_s}, cleared of denominators.
    let x = s.a.powi(t.w) * t.b.powi(s.w);
    let y = s.b.powi(t.w) * t.a.powi(s.w);
    (x - y).norm() <= tol * (s.w + t.w) as f64 * x.norm().max(y.norm())
}

/// Comparison modulo the rescaling a_j -> s^(m-j) a_j induced by invertible
/// (not necessarily det-1) local operators, with one common s for all
/// partitions.
pub fn compare_projective(a: &Fingerprint, b: &Fingerprint, tol: f64) -> Result<Verdict> {
    check_pair(a, b, tol)?;
    let (ra, rb) = (char_scale(a), char_scale(b));

    let mut per_partition: Vec<Vec<Term>> = Vec::with_capacity(a.entries.len());
    for (ea, eb) in a.entries.iter().zip(&b.entries) {
        let (pa, pb) = (&ea.charpoly, &eb.charpoly);
        let mut terms = Vec::new();
        for j in 0..pa.degree() {
            let w = pa.weight(j) as i32;
            let (x, y) = (pa.coeff(j), pb.coeff(j));
            let za = is_zero(x, w, ra, a.state_norm, tol);
            let zb = is_zero(y, w, rb, b.state_norm, tol);
            if za != zb {
                return Ok(Verdict::inequivalent(
                    Mode::Projective,
                    &ea.partition,
                    j,
                    format!("zero pattern: a_{j} = {} vs {}", fmt_c(x), fmt_c(y)),
                ));
            }
            if !za {
                terms.push(Term {
                    partition: &ea.partition,
                    j,
                    a: x,
                    b: y,
                    w,
                });
            }
        }
        for (i, s) in terms.iter().enumerate() {
            for t in &terms[i + 1..] {
                if !cross_ratio_holds(s, t, tol) {
                    return Ok(Verdict::inequivalent(
                        Mode::Projective,
                        &ea.partition,
                        t.j,
                        format!("cross-ratio of a_{} and a_{} differs", s.j, t.j),
                    ));
                }
            }
        }
        per_partition.push(terms);
    }

    // One representative per partition, checked against a global reference.
    // Picking by the geometric mean of both normalized magnitudes keeps the
    // choice symmetric in (a, b).
    let normalized = |t: &Term| {
        let e = 1.0 / t.w as f64;
        (t.a.norm().powf(e) / ra.max(f64::MIN_POSITIVE)) * (t.b.norm().powf(e) / rb.max(f64::MIN_POSITIVE))
    };
    let reps: Vec<&Term> = per_partition
        .iter()
        .filter_map(|terms| terms.iter().max_by(|x, y| normalized(x).total_cmp(&normalized(y))))
        .collect();
    if let Some(reference) = reps.iter().copied().max_by(|x, y| normalized(x).total_cmp(&normalized(y))) {
        for t in &reps {
            if !cross_ratio_holds(reference, t, tol) {
                return Ok(Verdict::inequivalent(
                    Mode::Projective,
                    t.partition,
                    t.j,
                    format!("implied scale differs from partition {}", reference.partition),
                ));
            }
        }
    }
    Ok(Verdict::indistinguishable(Mode::Projective))
}
