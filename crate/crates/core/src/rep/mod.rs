//! Finite-dimensional representations of surface groups and their invariants.

mod closure;
mod iso;
mod sigma;
mod structure;

pub use closure::{finite_image_closure, quasiunipotent_on_set, Closure, WordVerdict};
pub use iso::{are_isomorphic, fingerprint, intertwiners, IsoConfig, IsoVerdict};
pub use sigma::{sigma_extract, SigmaMap};
pub(crate) use structure::eigenvalue_candidates;
pub use structure::{
    algebra_dim, burnside_span_dim, dual_basis_expand, invariant_subspace, semisimplify,
    DualExpansion, InvariantOutcome, Semisimplification,
};

use thiserror::Error;

use crate::linear::{Cyc, LinearError, Matrix, Scalar};
use crate::surface::{standard_presentation, Presentation, SurfaceSig};
use crate::word::{letter_index, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("image of generator {0} is not a square matrix of the common dimension")]
    Dimension(usize),
    #[error("image of generator {0} is singular")]
    Singular(usize),
    #[error("relator {0} does not evaluate to the identity")]
    RelatorViolated(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("different surface groups")]
    SurfaceMismatch,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("matrices do not span the endomorphism algebra")]
    NotSpanning,
    #[error("generator {0} is not of the form [[I, f], [0, I]]")]
    NotBlockUnipotent(usize),
    #[error("expected a one-dimensional representation")]
    NotRankOne,
}

impl From<LinearError> for RepError {
    fn from(_: LinearError) -> Self {
        RepError::NotSpanning
    }
}

/// Generator images of a homomorphism `pi_1 -> GL_m(K)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<S> {
    sig: SurfaceSig,
    presentation: Presentation,
    dim: usize,
    images: Vec<Matrix<S>>,
    inverses: Vec<Matrix<S>>,
}

/// Representations over cyclotomic fields.
pub type CycRep = Representation<Cyc>;

impl<S: Scalar> Representation<S> {
    /// Representation of the standard presentation of `sig`.
    pub fn new(sig: SurfaceSig, images: Vec<Matrix<S>>) -> Result<Self, RepError> {
        Self::with_presentation(sig, standard_presentation(sig), images)
    }

    /// Representation of an arbitrary presentation of the surface group of
    /// `sig`; relators are checked.
    pub fn with_presentation(
        sig: SurfaceSig,
        presentation: Presentation,
        images: Vec<Matrix<S>>,
    ) -> Result<Self, RepError> {
        if images.len() != presentation.rank() {
            return Err(RepError::ImageCount { expected: presentation.rank(), got: images.len() });
        }
        let dim = images.first().map_or(1, |m| m.rows());
        let mut inverses = Vec::with_capacity(images.len());
        for (k, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(RepError::Dimension(k));
            }
            inverses.push(m.inverse().map_err(|_| RepError::Singular(k))?);
        }
        let rep = Representation { sig, presentation, dim, images, inverses };
        for (k, rel) in rep.presentation.relators.iter().enumerate() {
            if !rep.evaluate(rel)?.is_identity() {
                return Err(RepError::RelatorViolated(k));
            }
        }
        Ok(rep)
    }

    /// The trivial representation of dimension `dim`.
    pub fn trivial(sig: SurfaceSig, dim: usize) -> Self {
        let r = sig.rank();
        Self::new(sig, vec![Matrix::identity(dim); r]).expect("identity images")
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[Matrix<S>] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Matrix<S>] {
        &self.inverses
    }

    pub fn letter_matrix(&self, l: i32) -> &Matrix<S> {
        let k = letter_index(l);
        if l > 0 {
            &self.images[k]
        } else {
            &self.inverses[k]
        }
    }

    pub fn evaluate(&self, u: &Word) -> Result<Matrix<S>, RepError> {
        if u.rank() != self.rank() {
            return Err(RepError::Word(WordError::RankMismatch(u.rank(), self.rank())));
        }
        Ok(u
            .letters()
            .iter()
            .fold(Matrix::identity(self.dim), |acc, &l| acc.mul(self.letter_matrix(l))))
    }

    /// Same group and presentation, new images.
    pub fn with_images(&self, images: Vec<Matrix<S>>) -> Result<Self, RepError> {
        Self::with_presentation(self.sig, self.presentation.clone(), images)
    }

    /// `g rho g^-1`.
    pub fn conjugate(&self, g: &Matrix<S>) -> Result<Self, RepError> {
        let gi = g.inverse().map_err(|_| RepError::Singular(usize::MAX))?;
        self.with_images(self.images.iter().map(|m| g.mul(m).mul(&gi)).collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, RepError> {
        if self.presentation != other.presentation {
            return Err(RepError::SurfaceMismatch);
        }
        self.with_images(
            self.images.iter().zip(&other.images).map(|(a, b)| a.direct_sum(b)).collect(),
        )
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|m| m.is_identity())
    }

    pub(crate) fn same_group(&self, other: &Self) -> Result<(), RepError> {
        if self.dim != other.dim {
            return Err(RepError::DimensionMismatch(self.dim, other.dim));
        }
        if self.presentation != other.presentation {
            return Err(RepError::SurfaceMismatch);
        }
        Ok(())
    }
}

/// Equality key of a matrix.
pub fn matrix_key<S: Scalar>(m: &Matrix<S>) -> String {
    let parts: Vec<String> = m.data().iter().map(|x| x.canonical_key()).collect();
    format!("{}x{}[{}]", m.rows(), m.cols(), parts.join(";"))
}

/// All freely reduced words of length `1..=max_len`, in shortlex order.
pub fn reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::identity(rank)];
    let letters: Vec<i32> = (1..=rank as i32).flat_map(|k| [k, -k]).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.letters().last() == Some(&-l) {
                    continue;
                }
                let mut ls = w.letters().to_vec();
                ls.push(l);
                next.push(Word::from_letters(rank, &ls));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
