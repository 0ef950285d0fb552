//! Monic characteristic polynomials by the Faddeev-LeVerrier trace recursion.

use serde::Serialize;

use crate::error::Result;
use crate::fmatrix::FMatrix;
use crate::matrix::{CMatrix, C64, ONE, ZERO};

/// Coefficients `[a_0, ..., a_m]` of det(λI - F), lowest degree first,
/// `a_m == 1`. For the even dimensions F always has, this equals
/// det(F - λI).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharPoly {
    coeffs: Vec<C64>,
}

impl CharPoly {
    /// Wraps coefficients that are already monic. Panics otherwise.
    pub fn from_coeffs(coeffs: Vec<C64>) -> Self {
        assert!(
            coeffs.last() == Some(&ONE),
            "characteristic polynomial must be monic"
        );
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> C64 {
        self.coeffs[j]
    }

    /// Homogeneity weight of a_j: it scales as s^(m-j) when F scales by s.
    pub fn weight(&self, j: usize) -> usize {
        self.degree() - j
    }

    /// Horner evaluation.
    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * x + a)
    }
}

pub fn eval_charpoly(p: &CharPoly, x: C64) -> C64 {
    p.eval(x)
}

/// Characteristic polynomial of a square matrix.
///
/// M_0 = 0, M_k = A M_{k-1} + a_{m-k+1} I, a_{m-k} = -tr(A M_k) / k.
pub fn char_poly_matrix(a: &CMatrix) -> Result<CharPoly> {
    a.require_square()?;
    let m = a.rows();
    let mut coeffs = vec![ZERO; m + 1];
    coeffs[m] = ONE;
    let mut mk = CMatrix::zeros(m, m);
    for k in 1..=m {
        let mut next = a.matmul(&mk);
        next.add_diagonal(coeffs[m - k + 1]);
        let am = a.matmul(&next);
        coeffs[m - k] = -am.trace() / k as f64;
        mk = next;
    }
    Ok(CharPoly { coeffs })
}

pub fn char_poly(f: &FMatrix) -> Result<CharPoly> {
    char_poly_matrix(&f.entries)
}

/// max |Σ a_j A^j| / max(1, max|A_ij|^m). Zero in exact arithmetic.
pub fn cayley_hamilton_residual(p: &CharPoly, a: &CMatrix) -> f64 {
    let m = a.rows();
    let mut acc = CMatrix::zeros(m, m);
    for &c in p.coeffs().iter().rev() {
        acc = a.matmul(&acc);
        acc.add_diagonal(c);
    }
    let scale = a.max_abs().powi(m as i32).max(1.0);
    acc.max_abs() / scale
}
