//! Intertwiners, isomorphism testing and trace fingerprints.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{RepError, Representation};
use crate::linear::{Matrix, Scalar};

/// Basis of `{B : rho2(s) B = B rho1(s) for all generators s}`.
pub fn intertwiners<S: Scalar>(
    rho1: &Representation<S>,
    rho2: &Representation<S>,
) -> Result<Vec<Matrix<S>>, RepError> {
    rho1.same_group(rho2)?;
    let m = rho1.dim();
    let n = m * m;
    let mut rows: Vec<Vec<S>> = Vec::new();
    for (x, y) in rho1.images().iter().zip(rho2.images()) {
        for i in 0..m {
            for j in 0..m {
                let mut row = vec![S::zero(); n];
                for k in 0..m {
                    row[k * m + j] = row[k * m + j].clone() + y[(i, k)].clone();
                    row[i * m + k] = row[i * m + k].clone() - x[(k, j)].clone();
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..n)
            .map(|k| {
                let mut v = vec![S::zero(); n];
                v[k] = S::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    Ok(basis.into_iter().map(|v| Matrix::from_vec(m, m, v)).collect())
}

/// Search parameters for [`are_isomorphic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoConfig {
    pub seed: u64,
    /// Random integer combinations tried after the basis elements.
    pub random_trials: usize,
    /// Coefficients of random combinations lie in `-range..=range`.
    pub coefficient_range: i64,
    /// Largest grid `(m+1)^k` evaluated exhaustively.
    pub grid_budget: u64,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig { seed: 0, random_trials: 16, coefficient_range: 7, grid_budget: 4096 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsoVerdict<S> {
    /// `witness * rho1(s) * witness^-1 = rho2(s)` for every generator.
    Yes { witness: Matrix<S> },
    No { reason: String },
    /// No invertible intertwiner was found in a space of this dimension.
    Inconclusive { intertwiner_dim: usize },
}

impl<S> IsoVerdict<S> {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::No { .. })
    }
}

fn combination<S: Scalar>(basis: &[Matrix<S>], coeffs: &[i64]) -> Matrix<S> {
    let m = basis[0].rows();
    basis
        .iter()
        .zip(coeffs)
        .filter(|(_, &c)| c != 0)
        .fold(Matrix::zeros(m, m), |acc, (b, &c)| acc.add(&b.scale(&S::from_i64(c))))
}

/// Decides whether `rho2 = g rho1 g^-1` for some invertible `g`.
///
/// The determinant of a generic intertwiner is a polynomial of degree `m` in
/// the `k` basis coordinates, so it vanishes identically iff it vanishes on
/// the grid `{0..m}^k`; the grid is evaluated when it fits in the budget.
pub fn are_isomorphic<S: Scalar>(
    rho1: &Representation<S>,
    rho2: &Representation<S>,
    cfg: &IsoConfig,
) -> Result<IsoVerdict<S>, RepError> {
    rho1.same_group(rho2)?;
    for (k, (x, y)) in rho1.images().iter().zip(rho2.images()).enumerate() {
        if x.trace() != y.trace() {
            return Ok(IsoVerdict::No { reason: format!("traces differ on generator {}", k + 1) });
        }
    }
    let basis = intertwiners(rho1, rho2)?;
    if basis.is_empty() {
        return Ok(IsoVerdict::No { reason: "no nonzero intertwiner".into() });
    }
    for b in &basis {
        if !b.det().is_zero() {
            return Ok(IsoVerdict::Yes { witness: b.clone() });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let r = cfg.coefficient_range.max(1);
    for _ in 0..cfg.random_trials {
        let coeffs: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-r..=r)).collect();
        let g = combination(&basis, &coeffs);
        if !g.det().is_zero() {
            return Ok(IsoVerdict::Yes { witness: g });
        }
    }
    let m = rho1.dim() as u64;
    let k = basis.len() as u32;
    let fits = (m + 1).checked_pow(k).is_some_and(|n| n <= cfg.grid_budget);
    if fits {
        let mut coeffs = vec![0i64; basis.len()];
        loop {
            let g = combination(&basis, &coeffs);
            if !g.det().is_zero() {
                return Ok(IsoVerdict::Yes { witness: g });
            }
            let mut pos = 0;
            while pos < coeffs.len() && coeffs[pos] == m as i64 {
                coeffs[pos] = 0;
                pos += 1;
            }
            if pos == coeffs.len() {
                break;
            }
            coeffs[pos] += 1;
        }
        return Ok(IsoVerdict::No { reason: "every intertwiner is singular".into() });
    }
    Ok(IsoVerdict::Inconclusive { intertwiner_dim: basis.len() })
}

/// Conjugation-invariant hash of the traces of all reduced words of length
/// at most `max_len` (hex-encoded SHA-256).
pub fn fingerprint<S: Scalar>(rho: &Representation<S>, max_len: usize) -> String {
    let r = rho.rank() as i32;
    let letters: Vec<i32> = (1..=r).flat_map(|k| [k, -k]).collect();
    let mut hasher = Sha256::new();
    hasher.update(format!("dim={};", rho.dim()));
    let mut layer: Vec<(i32, Matrix<S>)> = vec![(0, Matrix::identity(rho.dim()))];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for (last, m) in &layer {
            for &l in &letters {
                if *last == -l {
                    continue;
                }
                let p = m.mul(rho.letter_matrix(l));
                hasher.update(p.trace().canonical_key());
                hasher.update(";");
                next.push((l, p));
            }
        }
        layer = next;
    }
    hex::encode(hasher.finalize())
}
