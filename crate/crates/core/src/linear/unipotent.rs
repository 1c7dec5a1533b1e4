//! Quasi-unipotence certificates and matrix orders.

use serde::Serialize;

use super::cyclotomic::RationalNorm;
use super::matrix::Matrix;
use super::poly::{cyclotomic, euler_phi, lcm, Poly};
use super::scalar::{format_rational, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum QuasiUnipotence {
    /// All eigenvalues are roots of unity; `(M^order - I)^nilpotency = 0`.
    QuasiUnipotent {
        order: u64,
        nilpotency: usize,
        /// `(d, multiplicity)` of each `Phi_d` dividing the rational norm of
        /// the characteristic polynomial.
        cyclotomic_factors: Vec<(u64, usize)>,
    },
    /// The characteristic polynomial has a factor that is not cyclotomic.
    NotQuasiUnipotent { residual_factor: Vec<String> },
}

impl QuasiUnipotence {
    pub fn is_quasi_unipotent(&self) -> bool {
        matches!(self, QuasiUnipotence::QuasiUnipotent { .. })
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            QuasiUnipotence::QuasiUnipotent { order, .. } => Some(*order),
            QuasiUnipotence::NotQuasiUnipotent { .. } => None,
        }
    }
}

/// Every `d` with `phi(d) <= degree`, found by scanning `d <= 2 degree^2 + 1`
/// (valid because `phi(d) >= sqrt(d / 2)`).
pub fn cyclotomic_candidates(degree: usize) -> Vec<u64> {
    let bound = 2 * (degree as u64).pow(2) + 1;
    (1..=bound)
        .filter(|&d| euler_phi(d) <= degree as u64)
        .collect()
}

/// Strips cyclotomic factors from a monic rational polynomial.
pub(crate) fn strip_cyclotomic(p: &Poly<Rational>) -> (Vec<(u64, usize)>, Poly<Rational>) {
    let deg = p.degree().unwrap_or(0);
    let mut rest = p.clone();
    let mut found = Vec::new();
    for d in cyclotomic_candidates(deg) {
        let phi_d: Poly<Rational> = cyclotomic(d);
        let mut mult = 0;
        loop {
            if rest.degree().unwrap_or(0) < phi_d.degree().unwrap() {
                break;
            }
            let (q, r) = rest.div_rem(&phi_d).expect("nonzero divisor");
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            found.push((d, mult));
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    (found, rest)
}

/// Decides whether some power of `m` is unipotent.
pub fn is_quasi_unipotent<S: RationalNorm>(m: &Matrix<S>) -> QuasiUnipotence {
    let n = m.rows();
    let norm = S::norm_poly(&m.charpoly());
    let (factors, rest) = strip_cyclotomic(&norm);
    if rest.degree() != Some(0) {
        return QuasiUnipotence::NotQuasiUnipotent {
            residual_factor: rest.coeffs().iter().map(format_rational).collect(),
        };
    }
    let order = factors.iter().fold(1, |acc, &(d, _)| lcm(acc, d));
    let shifted = m.pow(order).sub(&Matrix::identity(n));
    let mut acc = Matrix::identity(n);
    let mut nilpotency = None;
    for k in 1..=n.max(1) {
        acc = acc.mul(&shifted);
        if acc.is_zero() {
            nilpotency = Some(k);
            break;
        }
    }
    let nilpotency = nilpotency.expect("cyclotomic charpoly forces (M^q - I)^m = 0");
    QuasiUnipotence::QuasiUnipotent {
        order,
        nilpotency,
        cyclotomic_factors: factors,
    }
}

/// Least `q <= cutoff` with `m^q = I`.
pub fn matrix_order<S: Scalar>(m: &Matrix<S>, cutoff: u64) -> Option<u64> {
    let mut acc = m.clone();
    for q in 1..=cutoff {
        if acc.is_identity() {
            return Some(q);
        }
        acc = acc.mul(m);
    }
    None
}
