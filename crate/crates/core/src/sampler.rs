//! Seeded random states and local operators.
//!
//! Stream: ChaCha8 seeded with `seed_from_u64(seed)`; normals from
//! `rand_distr::StandardNormal`. Trial `t` of a run seeded with `s` uses the
//! generator seeded with `splitmix64(s ^ t)`, so concurrent trials give the
//! same aggregate regardless of scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::fmatrix::LocalOperator;
use crate::matrix::C64;
use crate::state::{check_qubits, PureState};

const MAX_ATTEMPTS: usize = 1000;
const MIN_ABS_DET: f64 = 0.1;
const MAX_OP_NORM: f64 = 4.0;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct SeededGenerator {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededGenerator {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent generator for trial `index` of a run seeded with `seed`.
    pub fn for_trial(seed: u64, index: u64) -> Self {
        Self::new(splitmix64(seed ^ index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn complex_normal(&mut self) -> C64 {
        let re = self.normal();
        let im = self.normal();
        C64::new(re, im)
    }

    /// Log-uniform modulus in [1/2, 2] with uniform phase.
    fn scale_factor(&mut self) -> C64 {
        let r = 2f64.powf(self.rng.random_range(-1.0..=1.0));
        let phi = self.rng.random_range(0.0..std::f64::consts::TAU);
        C64::from_polar(r, phi)
    }

    fn gaussian_operator(&mut self) -> Option<LocalOperator> {
        let m = [
            [self.complex_normal(), self.complex_normal()],
            [self.complex_normal(), self.complex_normal()],
        ];
        let op = LocalOperator::new(m).ok()?;
        (op.det().norm() >= MIN_ABS_DET).then_some(op)
    }
}

/// Gaussian amplitudes, scaled to unit norm.
pub fn random_state(n: usize, gen: &mut SeededGenerator) -> Result<PureState> {
    check_qubits(n)?;
    loop {
        let amps: Vec<C64> = (0..1usize << n).map(|_| gen.complex_normal()).collect();
        if let Ok(s) = PureState::new(amps) {
            return Ok(s.normalized());
        }
    }
}

/// det-1 operator: Gaussian entries, reject |det| < 0.1, divide by the
/// principal square root of det, reject operator norm > 4.
pub fn random_sl2(gen: &mut SeededGenerator) -> Result<LocalOperator> {
    for _ in 0..MAX_ATTEMPTS {
        let Some(op) = gen.gaussian_operator() else {
            continue;
        };
        let op = op.scaled(op.det().sqrt().inv())?;
        if op.op_norm() <= MAX_OP_NORM && op.is_unimodular() {
            return Ok(op);
        }
    }
    Err(Error::SamplerExhausted(MAX_ATTEMPTS))
}

/// Invertible operator with non-unit determinant: a det-1 draw times a
/// scalar of modulus in [1/2, 2] and random phase.
pub fn random_invertible(gen: &mut SeededGenerator) -> Result<LocalOperator> {
    let op = random_sl2(gen)?;
    let c = gen.scale_factor();
    op.scaled(c)
}

pub fn random_local_ops(n: usize, gen: &mut SeededGenerator) -> Result<Vec<LocalOperator>> {
    check_qubits(n)?;
    (0..n).map(|_| random_sl2(gen)).collect()
}

pub fn random_invertible_ops(n: usize, gen: &mut SeededGenerator) -> Result<Vec<LocalOperator>> {
    check_qubits(n)?;
    (0..n).map(|_| random_invertible(gen)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_states() {
        let a = random_state(3, &mut SeededGenerator::new(42)).unwrap();
        let b = random_state(3, &mut SeededGenerator::new(42)).unwrap();
        assert_eq!(a, b);
        let c = random_state(2, &mut SeededGenerator::new(7)).unwrap();
        let d = random_state(2, &mut SeededGenerator::new(8)).unwrap();
        assert_ne!(c, d);
    }

    #[test]
    fn unit_norm() {
        for seed in 0..20 {
            let s = random_state(4, &mut SeededGenerator::new(seed)).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn qubit_range() {
        let mut g = SeededGenerator::new(0);
        assert!(random_state(0, &mut g).is_err());
        assert!(random_state(11, &mut g).is_err());
        assert!(random_local_ops(11, &mut g).is_err());
    }

    #[test]
    fn sl2_draws() {
        let mut g = SeededGenerator::new(3);
        let mut prev = None;
        for _ in 0..200 {
            let a = random_sl2(&mut g).unwrap();
            assert!((a.det() - C64::new(1.0, 0.0)).norm() <= 1e-12);
            assert!(a.op_norm() <= 4.0);
            assert_ne!(Some(a), prev);
            prev = Some(a);
        }
    }

    #[test]
    fn local_op_lists() {
        let ops = random_local_ops(3, &mut SeededGenerator::new(1)).unwrap();
        assert_eq!(ops.len(), 3);
        assert!(ops.iter().all(LocalOperator::is_unimodular));
        let again = random_local_ops(4, &mut SeededGenerator::new(9)).unwrap();
        assert_eq!(again, random_local_ops(4, &mut SeededGenerator::new(9)).unwrap());
        assert_eq!(random_local_ops(1, &mut SeededGenerator::new(2)).unwrap().len(), 1);
    }

    #[test]
    fn invertible_ops_are_not_unimodular() {
        let ops = random_invertible_ops(4, &mut SeededGenerator::new(5)).unwrap();
        assert!(ops.iter().any(|op| !op.is_unimodular()));
    }

    #[test]
    fn trial_generators_differ() {
        let a = SeededGenerator::for_trial(42, 0).seed();
        let b = SeededGenerator::for_trial(42, 1).seed();
        assert_ne!(a, b);
    }
}
