//! Finite image detection and quasi-unipotence on word sets.

use std::collections::HashSet;

use serde::Serialize;

use super::{matrix_key, Representation};
use crate::linear::{is_quasi_unipotent, Matrix, QuasiUnipotence, RationalNorm, Scalar};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq)]
pub enum Closure<S> {
    Finite { order: usize, elements: Vec<Matrix<S>> },
    CutoffExceeded { explored: usize },
}

impl<S> Closure<S> {
    pub fn order(&self) -> Option<usize> {
        match self {
            Closure::Finite { order, .. } => Some(*order),
            Closure::CutoffExceeded { .. } => None,
        }
    }
}

/// Breadth-first closure of the image group under right multiplication by
/// generator images, stopping once more than `cutoff` elements are found.
pub fn finite_image_closure<S: Scalar>(rho: &Representation<S>, cutoff: usize) -> Closure<S> {
    let id = Matrix::identity(rho.dim());
    let mut seen = HashSet::from([matrix_key(&id)]);
    let mut elements = vec![id];
    let mut next = 0;
    while next < elements.len() {
        let x = elements[next].clone();
        next += 1;
        for g in rho.images() {
            let y = x.mul(g);
            if seen.insert(matrix_key(&y)) {
                if elements.len() >= cutoff {
                    return Closure::CutoffExceeded { explored: elements.len() };
                }
                elements.push(y);
            }
        }
    }
    Closure::Finite { order: elements.len(), elements }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WordVerdict {
    pub word: String,
    pub verdict: QuasiUnipotence,
}

/// Applies the quasi-unipotence test to the image of each word.
pub fn quasiunipotent_on_set<S: RationalNorm>(rho: &Representation<S>, words: &[Word]) -> Vec<WordVerdict> {
    let names = &rho.presentation().names;
    words
        .iter()
        .map(|w| WordVerdict {
            word: w.format(names),
            verdict: is_quasi_unipotent(&rho.evaluate(w).expect("word over the representation's generators")),
        })
        .collect()
}
