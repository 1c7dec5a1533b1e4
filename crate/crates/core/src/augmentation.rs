//! Unipotent representations on truncated free group algebras.
//!
//! `Q[F_k] / I^n` is modeled by the truncated Magnus algebra: noncommutative
//! polynomials in `x_1, ..., x_k` modulo monomials of degree `n`, with
//! `g_i -> 1 + x_i`. The free group acts on it by conjugation.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::linear::{Matrix, Rational, Scalar};
use crate::mcg::{act, MappingClass};
use crate::rep::{are_isomorphic, IsoConfig, IsoVerdict, RepError, Representation};
use crate::surface::SurfaceSig;
use crate::word::{letter_index, Pi1Endo, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AugmentationError {
    #[error("surface {0} does not have a free fundamental group")]
    NotFree(SurfaceSig),
    #[error("truncation degree must be at least {0}")]
    Truncation(usize),
    #[error("word of rank {0} used with algebra of rank {1}")]
    RankMismatch(usize, usize),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Element of the truncated algebra, coefficients indexed by monomials
/// ordered by degree and then lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedElement {
    k: usize,
    n: usize,
    coeffs: Vec<Rational>,
}

/// `sum_{i<n} k^i`.
pub fn truncated_dim(k: usize, n: usize) -> usize {
    (0..n).map(|i| k.pow(i as u32)).sum()
}

fn degree_offset(k: usize, d: usize) -> usize {
    truncated_dim(k, d)
}

/// Degree and letters of the monomial at `index`.
pub fn monomial(k: usize, index: usize) -> Vec<usize> {
    let mut d = 0;
    while degree_offset(k, d + 1) <= index {
        d += 1;
    }
    let mut rest = index - degree_offset(k, d);
    let mut letters = vec![0; d];
    for slot in letters.iter_mut().rev() {
        *slot = rest % k;
        rest /= k;
    }
    letters
}

fn monomial_index(k: usize, letters: &[usize]) -> usize {
    degree_offset(k, letters.len()) + letters.iter().fold(0, |acc, &l| acc * k + l)
}

impl TruncatedElement {
    pub fn zero(k: usize, n: usize) -> Self {
        TruncatedElement { k, n, coeffs: vec![Rational::from_i64(0); truncated_dim(k, n)] }
    }

    pub fn one(k: usize, n: usize) -> Self {
        Self::basis(k, n, 0)
    }

    pub fn basis(k: usize, n: usize, index: usize) -> Self {
        let mut e = Self::zero(k, n);
        e.coeffs[index] = Rational::from_i64(1);
        e
    }

    /// The monomial `x_{letters[0]} x_{letters[1]} ...` (zero if too long).
    pub fn from_monomial(k: usize, n: usize, letters: &[usize]) -> Self {
        if letters.len() >= n {
            return Self::zero(k, n);
        }
        Self::basis(k, n, monomial_index(k, letters))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, letters: &[usize]) -> Rational {
        if letters.len() >= self.n {
            return Rational::from_i64(0);
        }
        self.coeffs[monomial_index(self.k, letters)].clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        TruncatedElement { k: self.k, n: self.n, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        TruncatedElement { k: self.k, n: self.n, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.k, self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let u = monomial(self.k, i);
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let v = monomial(self.k, j);
                if u.len() + v.len() < self.n {
                    let mut w = u.clone();
                    w.extend(&v);
                    out.coeffs[monomial_index(self.k, &w)] += a * b;
                }
            }
        }
        out
    }
}

/// Magnus image of a word: `g_i -> 1 + x_i`, `g_i^-1 -> sum_j (-x_i)^j`.
pub fn magnus_embed(u: &Word, k: usize, n: usize) -> Result<TruncatedElement, AugmentationError> {
    if u.rank() != k {
        return Err(AugmentationError::RankMismatch(u.rank(), k));
    }
    let one = TruncatedElement::one(k, n);
    Ok(u.letters().iter().fold(one.clone(), |acc, &l| {
        let i = letter_index(l);
        let factor = if l > 0 {
            one.add(&TruncatedElement::from_monomial(k, n, &[i]))
        } else {
            (0..n).fold(TruncatedElement::zero(k, n), |s, j| {
                let mut t = TruncatedElement::from_monomial(k, n, &vec![i; j]);
                if j % 2 == 1 {
                    t = TruncatedElement::zero(k, n).sub(&t);
                }
                s.add(&t)
            })
        };
        acc.mul(&factor)
    }))
}

fn columns_to_matrix<S: Scalar>(cols: Vec<TruncatedElement>) -> Matrix<S> {
    let cols: Vec<Vec<S>> = cols
        .into_iter()
        .map(|c| c.coeffs.iter().map(S::from_rational).collect())
        .collect();
    Matrix::from_columns(&cols)
}

/// Matrix of `v -> E(w) v E(w)^-1`.
fn conjugation_matrix<S: Scalar>(w: &Word, k: usize, n: usize) -> Matrix<S> {
    let e = magnus_embed(w, k, n).expect("rank checked");
    let ei = magnus_embed(&w.invert(), k, n).expect("rank checked");
    columns_to_matrix((0..truncated_dim(k, n)).map(|m| e.mul(&TruncatedElement::basis(k, n, m)).mul(&ei)).collect())
}

/// The conjugation representation on `Q[F_k] / I^n` for a surface with free
/// fundamental group of rank `k`.
pub fn conjugation_rep<S: Scalar>(sig: SurfaceSig, n: usize) -> Result<Representation<S>, AugmentationError> {
    if sig.is_closed() {
        return Err(AugmentationError::NotFree(sig));
    }
    if n < 1 {
        return Err(AugmentationError::Truncation(1));
    }
    let k = sig.rank();
    let images = (0..k).map(|i| conjugation_matrix(&Word::generator(k, i), k, n)).collect();
    Ok(Representation::new(sig, images)?)
}

/// Matrix of the algebra automorphism `E(u) -> E(e(u))` induced by `e`.
pub fn induced_automorphism<S: Scalar>(e: &Pi1Endo, n: usize) -> Matrix<S> {
    let k = e.rank();
    let shifted: Vec<TruncatedElement> = e
        .images()
        .iter()
        .map(|w| magnus_embed(w, k, n).expect("rank").sub(&TruncatedElement::one(k, n)))
        .collect();
    columns_to_matrix(
        (0..truncated_dim(k, n))
            .map(|m| {
                monomial(k, m)
                    .iter()
                    .fold(TruncatedElement::one(k, n), |acc, &i| acc.mul(&shifted[i]))
            })
            .collect(),
    )
}

/// Whether `m` preserves the degree filtration and acts trivially on each
/// graded piece.
pub fn is_graded_unitriangular<S: Scalar>(m: &Matrix<S>, k: usize) -> bool {
    let deg = |i: usize| monomial(k, i).len();
    (0..m.rows()).all(|r| {
        (0..m.cols()).all(|c| {
            let x = &m[(r, c)];
            if deg(r) < deg(c) || (deg(r) == deg(c) && r != c) {
                x.is_zero()
            } else if r == c {
                *x == S::one()
            } else {
                true
            }
        })
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedEntry {
    pub generator: String,
    pub fixed: bool,
    /// `explicit` when the induced algebra automorphism verifies, otherwise
    /// the isomorphism search verdict.
    pub source: String,
    pub witness: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedReport {
    pub rank: usize,
    pub truncation: usize,
    pub dimension: usize,
    pub trivial: bool,
    /// Set when the representation is trivial although `n > 1`.
    pub discrepancy: Option<String>,
    pub all_fixed: bool,
    pub entries: Vec<FixedEntry>,
}

/// Checks that every mapping class in `gens` fixes the isomorphism class of
/// the conjugation representation.
pub fn verify_mcg_fixed(
    sig: SurfaceSig,
    n: usize,
    gens: &[MappingClass],
    cfg: &IsoConfig,
) -> Result<FixedReport, AugmentationError> {
    let rho: Representation<Rational> = conjugation_rep(sig, n)?;
    let mut entries = Vec::new();
    for gen in gens {
        for (label, e) in [(format!("T{}", gen.label), &gen.forward), (format!("t{}", gen.label), &gen.backward)] {
            let moved = act(e, &rho)?;
            let phi: Matrix<Rational> = induced_automorphism(e, n);
            let explicit = rho.images().iter().zip(moved.images()).all(|(x, y)| phi.mul(x) == y.mul(&phi))
                && !phi.det().is_zero();
            let (fixed, source, witness) = if explicit {
                (true, "explicit".to_string(), Some(phi))
            } else {
                match are_isomorphic(&rho, &moved, cfg)? {
                    IsoVerdict::Yes { witness } => (true, "search".into(), Some(witness)),
                    IsoVerdict::No { .. } => (false, "search".into(), None),
                    IsoVerdict::Inconclusive { .. } => (false, "inconclusive".into(), None),
                }
            };
            entries.push(FixedEntry {
                generator: label,
                fixed,
                source,
                witness: witness.map(|w| {
                    w.to_rows()
                        .iter()
                        .map(|r| r.iter().map(crate::linear::scalar::format_rational).collect())
                        .collect()
                }),
            });
        }
    }
    let trivial = rho.is_trivial();
    Ok(FixedReport {
        rank: sig.rank(),
        truncation: n,
        dimension: rho.dim(),
        trivial,
        discrepancy: (trivial && n > 1).then(|| {
            format!("conjugation action is trivial at n = {n}: g u g^-1 - u lies in I^2 for every u")
        }),
        all_fixed: entries.iter().all(|e| e.fixed),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::scalar::rat;
    use crate::mcg::mcg_generators;

    fn torus() -> SurfaceSig {
        SurfaceSig::new(1, 1, 0)
    }

    #[test]
    fn magnus_examples() {
        let one = magnus_embed(&Word::identity(2), 2, 3).unwrap();
        assert_eq!(one, TruncatedElement::one(2, 3));
        let a = magnus_embed(&Word::generator(2, 0), 2, 3).unwrap();
        assert_eq!(a, TruncatedElement::one(2, 3).add(&TruncatedElement::from_monomial(2, 3, &[0])));
        let ai = magnus_embed(&Word::generator(2, 0).invert(), 2, 3).unwrap();
        assert_eq!(ai.coefficient(&[]), rat(1, 1));
        assert_eq!(ai.coefficient(&[0]), rat(-1, 1));
        assert_eq!(ai.coefficient(&[0, 0]), rat(1, 1));
        assert_eq!(a.mul(&ai), TruncatedElement::one(2, 3));
        assert!(magnus_embed(&Word::identity(3), 2, 3).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let r2: Representation<Rational> = conjugation_rep(torus(), 2).unwrap();
        assert!(r2.is_trivial());
        let r3: Representation<Rational> = conjugation_rep(torus(), 3).unwrap();
        assert_eq!(r3.dim(), 7);
        let a = &r3.images()[0];
        // x2 -> x2 + x1 x2 - x2 x1
        let col = a.column(monomial_index(2, &[1]));
        assert_eq!(col[monomial_index(2, &[1])], rat(1, 1));
        assert_eq!(col[monomial_index(2, &[0, 1])], rat(1, 1));
        assert_eq!(col[monomial_index(2, &[1, 0])], rat(-1, 1));
        assert_eq!(a.column(0), TruncatedElement::one(2, 3).coeffs().to_vec());
        let shifted = a.sub(&Matrix::identity(7));
        assert!(shifted.pow(3).is_zero());
        assert!(!shifted.is_zero());
        assert!(is_graded_unitriangular(a, 2));
    }

    #[test]
    fn fixed_by_twists() {
        let gens = mcg_generators(torus()).unwrap();
        let report = verify_mcg_fixed(torus(), 3, &gens, &IsoConfig::default()).unwrap();
        assert!(report.all_fixed && !report.trivial && report.discrepancy.is_none());
        assert!(report.entries.iter().all(|e| e.source == "explicit"));
        let report = verify_mcg_fixed(torus(), 2, &gens, &IsoConfig::default()).unwrap();
        assert!(report.trivial && report.discrepancy.is_some());
    }
}
