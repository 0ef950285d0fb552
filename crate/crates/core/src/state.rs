//! n-qubit pure states and the JSON state file format.
//!
//! `amps[k]` is the coefficient of the basis ket |q1 q2 ... qn> where q1 is
//! the most significant bit of `k`. For two qubits, `amps[1]` is |01>.
//! States are never normalized implicitly.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matrix::{C64, ZERO};

pub const MAX_QUBITS: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n: usize,
    amps: Vec<C64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDocument {
    n: usize,
    amplitudes: Vec<[f64; 2]>,
}

impl PureState {
    /// Validates and wraps an amplitude vector. The qubit count is inferred
    /// from the length.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::LengthNotPowerOfTwo(len));
        }
        let n = len.trailing_zeros() as usize;
        if !(1..=MAX_QUBITS).contains(&n) {
            return Err(Error::QubitCountOutOfRange(n));
        }
        if let Some(k) = amps.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::NonFiniteAmplitude(k));
        }
        if amps.iter().all(|a| *a == ZERO) {
            return Err(Error::ZeroState);
        }
        Ok(Self { n, amps })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// The computational basis state |k> on `n` qubits.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        check_qubits(n)?;
        if k >= 1 << n {
            return Err(Error::InvalidArgument(format!(
                "basis index {k} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[k] = C64::new(1.0, 0.0);
        Self::new(amps)
    }

    /// (|0...0> + |1...1>)/sqrt(2).
    pub fn ghz(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let mut amps = vec![ZERO; 1 << n];
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[0] = h;
        amps[(1 << n) - 1] = h;
        Self::new(amps)
    }

    /// Equal superposition of the n single-excitation kets.
    pub fn w(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let mut amps = vec![ZERO; 1 << n];
        let a = C64::new(1.0 / (n as f64).sqrt(), 0.0);
        for q in 0..n {
            amps[1 << q] = a;
        }
        Self::new(amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn amp(&self, k: usize) -> C64 {
        self.amps[k]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Multiplies every amplitude by `c`.
    pub fn scaled(&self, c: C64) -> Result<Self> {
        Self::new(self.amps.iter().map(|&a| a * c).collect())
    }

    /// Unit-norm copy.
    pub fn normalized(&self) -> Self {
        let s = 1.0 / self.norm();
        Self {
            n: self.n,
            amps: self.amps.iter().map(|&a| a * s).collect(),
        }
    }
}

pub fn state_norm(s: &PureState) -> f64 {
    s.norm()
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCountOutOfRange(n))
    }
}

/// Parses a `{"n": <int>, "amplitudes": [[re, im], ...]}` document.
pub fn parse_state(text: &str) -> Result<PureState> {
    let doc: StateDocument =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    let len = doc.amplitudes.len();
    if !len.is_power_of_two() {
        return Err(Error::LengthNotPowerOfTwo(len));
    }
    check_qubits(doc.n)?;
    let expected = 1usize << doc.n;
    if len != expected {
        return Err(Error::LengthMismatch {
            declared: doc.n,
            len,
            expected,
        });
    }
    PureState::new(
        doc.amplitudes
            .into_iter()
            .map(|[re, im]| C64::new(re, im))
            .collect(),
    )
}

/// Canonical single-line document; `parse_state` recovers the state bit-exactly.
pub fn serialize_state(s: &PureState) -> String {
    let mut out = format!("{{\"n\":{},\"amplitudes\":[", s.n);
    for (k, a) in s.amps.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push('[');
        out.push_str(&format_number(a.re));
        out.push(',');
        out.push_str(&format_number(a.im));
        out.push(']');
    }
    out.push_str("]}");
    out
}

/// Shortest decimal text that parses back to the same binary64. Integral
/// values print without a fractional part.
pub fn format_number(x: f64) -> String {
    if x == 0.0 && x.is_sign_negative() {
        "-0.0".to_string()
    } else if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basis_state() {
        let s = parse_state(r#"{"n":1,"amplitudes":[[1,0],[0,0]]}"#).unwrap();
        assert_eq!(s.n(), 1);
        assert_eq!(s.amps(), &[C64::new(1.0, 0.0), ZERO]);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn parses_ghz3_verbatim() {
        let text = r#"{"n":3,"amplitudes":[[0.7071067811865476,0],[0,0],[0,0],[0,0],
            [0,0],[0,0],[0,0],[0.7071067811865476,0]]}"#;
        let s = parse_state(text).unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.amp(0).re, 0.7071067811865476);
        assert_eq!(s.amp(7).re, std::f64::consts::FRAC_1_SQRT_2);
    }

    #[test]
    fn rejects_length_six() {
        let text = r#"{"n":3,"amplitudes":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}"#;
        let err = parse_state(text).unwrap_err();
        assert_eq!(err, Error::LengthNotPowerOfTwo(6));
        assert!(err.to_string().contains("length not power of two"));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            parse_state("{not json"),
            Err(Error::MalformedDocument(_))
        ));
        assert!(matches!(
            parse_state(r#"{"n":2,"amplitudes":[[1,0],[0,0]]}"#),
            Err(Error::LengthMismatch { declared: 2, len: 2, expected: 4 })
        ));
        assert_eq!(
            parse_state(r#"{"n":1,"amplitudes":[[0,0],[0,0]]}"#),
            Err(Error::ZeroState)
        );
        assert!(matches!(
            parse_state(r#"{"n":1,"amplitudes":[[1e400,0],[0,0]]}"#),
            Err(Error::MalformedDocument(_))
        ));
        assert_eq!(
            parse_state(r#"{"n":0,"amplitudes":[[1,0]]}"#),
            Err(Error::QubitCountOutOfRange(0))
        );
    }

    #[test]
    fn non_finite_rejected_by_constructor() {
        let amps = vec![C64::new(f64::NAN, 0.0), ZERO];
        assert_eq!(PureState::new(amps), Err(Error::NonFiniteAmplitude(0)));
    }

    #[test]
    fn serializes_basis_state_canonically() {
        let s = PureState::basis(1, 0).unwrap();
        assert_eq!(serialize_state(&s), r#"{"n":1,"amplitudes":[[1,0],[0,0]]}"#);
    }

    #[test]
    fn w3_round_trip() {
        let s = PureState::w(3).unwrap();
        assert_eq!(s.amp(1).re, 1.0 / 3f64.sqrt());
        assert_eq!(parse_state(&serialize_state(&s)).unwrap(), s);
    }

    #[test]
    fn negative_zero_survives() {
        let s = PureState::new(vec![C64::new(-0.0, 1.0), C64::new(1.0, -0.0)]).unwrap();
        let back = parse_state(&serialize_state(&s)).unwrap();
        assert!(back.amp(0).re.is_sign_negative());
        assert!(back.amp(1).im.is_sign_negative());
    }

    #[test]
    fn norms() {
        assert_eq!(PureState::basis(3, 0).unwrap().norm(), 1.0);
        let ones = PureState::from_real(&[1.0; 8]).unwrap();
        assert!((state_norm(&ones) - 8f64.sqrt()).abs() < 1e-15);
        assert!((PureState::ghz(4).unwrap().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_qubit_index_convention() {
        // |01>: q1 = 0, q2 = 1 -> index 1
        let s = PureState::basis(2, 1).unwrap();
        assert_eq!(s.amp(0b01), C64::new(1.0, 0.0));
        assert_eq!(s.amp(0b10), ZERO);
    }
}
