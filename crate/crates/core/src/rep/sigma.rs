//! The additive map read off from block-unipotent representations.

use super::{RepError, Representation};
use crate::linear::{Matrix, Scalar};
use crate::word::Word;

/// Off-diagonal blocks `f_s` of images `[[I, f_s], [0, I]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaMap<S> {
    pub d1: usize,
    pub d2: usize,
    pub values: Vec<Matrix<S>>,
}

impl<S: Scalar> SigmaMap<S> {
    /// Value on a homology class given in generator coordinates.
    pub fn on_class(&self, class: &[i64]) -> Matrix<S> {
        self.values
            .iter()
            .zip(class)
            .fold(Matrix::zeros(self.d1, self.d2), |acc, (f, &c)| acc.add(&f.scale(&S::from_i64(c))))
    }

    pub fn on_word(&self, w: &Word) -> Matrix<S> {
        self.on_class(&w.abelianize())
    }
}

fn is_block_unipotent<S: Scalar>(m: &Matrix<S>, d1: usize) -> bool {
    let n = m.rows();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let in_f = i < d1 && j >= d1;
            in_f || m[(i, j)] == if i == j { S::one() } else { S::zero() }
        })
    })
}

pub fn sigma_extract<S: Scalar>(rho: &Representation<S>, d1: usize) -> Result<SigmaMap<S>, RepError> {
    let m = rho.dim();
    if d1 > m {
        return Err(RepError::DimensionMismatch(d1, m));
    }
    let mut values = Vec::with_capacity(rho.rank());
    for (k, x) in rho.images().iter().enumerate() {
        if !is_block_unipotent(x, d1) {
            return Err(RepError::NotBlockUnipotent(k));
        }
        values.push(x.submatrix(0..d1, d1..m));
    }
    Ok(SigmaMap { d1, d2: m - d1, values })
}
