//! Surface signatures, standard presentations and the curve atlas.
//!
//! Generators of `pi_1` are named `a1, b1, ..., ag, bg` followed by loops
//! `p1, ..., p_{P-1}` around all but the last of the `P = n + b` punctures
//! and boundary components (first the punctures, then the boundaries).
//! The closed surface relator is `[a1,b1]...[ag,bg]`. For open surfaces the
//! group is free and the last peripheral loop is `(p1...p_{P-1})^-1 [a1,b1]...[ag,bg]`.
//!
//! Homology coordinates follow the generator order. The intersection form is
//! the one of the capped-off closed surface with `<a_i, b_i> = +1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linear::{EchelonBasis, Rational, Scalar};
use crate::word::{letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("unsupported surface signature {0}")]
    Unsupported(SurfaceSig),
    #[error("curve `{0}` is not in the atlas")]
    UnknownCurve(String),
    #[error("curves `{0}` and `{1}` intersect")]
    NotDisjoint(String, String),
    #[error("curve collection separates the surface")]
    Separating,
    #[error("cutting along `{0}` is not supported")]
    UnsupportedCut(String),
    #[error("vector of length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
}

/// Genus, punctures and boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: usize,
    pub punctures: usize,
    pub boundary: usize,
}

impl std::fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(g={}, n={}, b={})", self.genus, self.punctures, self.boundary)
    }
}

impl SurfaceSig {
    pub fn new(genus: usize, punctures: usize, boundary: usize) -> Self {
        SurfaceSig { genus, punctures, boundary }
    }

    pub fn closed(genus: usize) -> Self {
        SurfaceSig::new(genus, 0, 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64 - self.boundary as i64
    }

    pub fn peripheral_count(&self) -> usize {
        self.punctures + self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.peripheral_count() == 0
    }

    /// Rank of the free group `pi_1` (open case) or number of generators.
    pub fn rank(&self) -> usize {
        if self.is_closed() {
            2 * self.genus
        } else {
            2 * self.genus + self.peripheral_count() - 1
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.euler_characteristic() < 0
    }
}

/// Generators, relators and peripheral words of a surface group (or of a
/// finite-index subgroup, see [`crate::covers`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub names: Vec<String>,
    /// Empty for free groups.
    pub relators: Vec<Word>,
    pub peripherals: Vec<Word>,
}

impl Presentation {
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }
}

pub fn generator_names(sig: SurfaceSig) -> Vec<String> {
    let mut names = Vec::with_capacity(sig.rank());
    for i in 1..=sig.genus {
        names.push(format!("a{i}"));
        names.push(format!("b{i}"));
    }
    for j in 1..sig.peripheral_count() {
        names.push(format!("p{j}"));
    }
    names
}

/// `[a1,b1]...[ag,bg]` in the standard generators.
pub fn surface_word(sig: SurfaceSig) -> Word {
    let r = sig.rank();
    (0..sig.genus).fold(Word::identity(r), |acc, i| {
        acc.mul(&Word::commutator(&Word::generator(r, 2 * i), &Word::generator(r, 2 * i + 1)))
    })
}

pub fn standard_presentation(sig: SurfaceSig) -> Presentation {
    let names = generator_names(sig);
    let r = sig.rank();
    let prod = surface_word(sig);
    if sig.is_closed() {
        return Presentation { names, relators: vec![prod], peripherals: Vec::new() };
    }
    let p_count = sig.peripheral_count();
    let mut peripherals: Vec<Word> = (0..p_count - 1)
        .map(|j| Word::generator(r, 2 * sig.genus + j))
        .collect();
    let loops = peripherals.iter().fold(Word::identity(r), |acc, p| acc.mul(p));
    peripherals.push(loops.invert().mul(&prod));
    Presentation { names, relators: Vec::new(), peripherals }
}

/// Which family an atlas curve belongs to (1-based handle indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    /// `a_i`
    A(usize),
    /// `b_i`
    B(usize),
    /// Chain curve between handles `i` and `i+1`.
    C(usize),
    /// Genus zero: curve around consecutive peripheral loops `p_j, p_{j+1}`.
    E(usize),
}

impl CurveKind {
    pub fn name(&self) -> String {
        match self {
            CurveKind::A(i) => format!("a{i}"),
            CurveKind::B(i) => format!("b{i}"),
            CurveKind::C(i) => format!("c{i}"),
            CurveKind::E(i) => format!("e{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardCurve {
    pub kind: CurveKind,
    pub name: String,
    /// Based representative of the free homotopy class.
    pub word: Word,
    pub h1: Vec<i64>,
    pub separating: bool,
}

/// Atlas curves together with their geometric intersection table.
#[derive(Debug, Clone)]
pub struct Atlas {
    pub sig: SurfaceSig,
    pub presentation: Presentation,
    pub curves: Vec<StandardCurve>,
    /// Geometric intersection numbers, symmetric.
    pub intersections: Vec<Vec<u32>>,
}

fn atlas_supported(sig: SurfaceSig) -> bool {
    sig.is_hyperbolic() || (sig.genus == 1 && sig.peripheral_count() >= 1)
}

/// Standard curves: `a_i`, `b_i`, the chain curves `c_i` (so that the
/// Humphries curves are present), and for genus zero the curves `e_j`
/// enclosing `p_j, p_{j+1}`.
pub fn standard_curves(sig: SurfaceSig) -> Result<Atlas, SurfaceError> {
    if !atlas_supported(sig) {
        return Err(SurfaceError::Unsupported(sig));
    }
    let r = sig.rank();
    let presentation = standard_presentation(sig);
    let gen = |k: usize| Word::generator(r, k);
    let mut curves = Vec::new();
    for i in 0..sig.genus {
        curves.push((CurveKind::A(i + 1), gen(2 * i)));
        curves.push((CurveKind::B(i + 1), gen(2 * i + 1)));
    }
    for i in 0..sig.genus.saturating_sub(1) {
        // b_i a_i^-1 b_i^-1 a_{i+1}
        let w = Word::from_letters(
            r,
            &[
                letter(2 * i + 1, false),
                letter(2 * i, true),
                letter(2 * i + 1, true),
                letter(2 * i + 2, false),
            ],
        );
        curves.push((CurveKind::C(i + 1), w));
    }
    if sig.genus == 0 {
        for j in 0..sig.peripheral_count().saturating_sub(2) {
            if j + 1 < sig.peripheral_count() - 1 {
                curves.push((CurveKind::E(j + 1), gen(j).mul(&gen(j + 1))));
            }
        }
    }
    let curves: Vec<StandardCurve> = curves
        .into_iter()
        .map(|(kind, word)| {
            let h1 = word.abelianize();
            let separating = reduce_mod_boundary(sig, &h1).iter().all(|&x| x == 0);
            StandardCurve { kind, name: kind.name(), word, h1, separating }
        })
        .collect();
    let intersections = curves
        .iter()
        .map(|x| curves.iter().map(|y| geometric_intersection(x.kind, y.kind)).collect())
        .collect();
    Ok(Atlas { sig, presentation, curves, intersections })
}

fn geometric_intersection(x: CurveKind, y: CurveKind) -> u32 {
    use CurveKind::*;
    match (x, y) {
        (A(i), B(j)) | (B(j), A(i)) if i == j => 1,
        (B(j), C(i)) | (C(i), B(j)) if j == i || j == i + 1 => 1,
        (E(i), E(j)) if i.abs_diff(j) == 1 => 2,
        _ => 0,
    }
}

impl Atlas {
    pub fn index_of(&self, name: &str) -> Result<usize, SurfaceError> {
        self.curves
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| SurfaceError::UnknownCurve(name.to_string()))
    }

    pub fn curve(&self, name: &str) -> Result<&StandardCurve, SurfaceError> {
        Ok(&self.curves[self.index_of(name)?])
    }

    /// Atlas curve meeting `name` exactly once, used as the transverse loop.
    pub fn dual_curve(&self, name: &str) -> Result<&StandardCurve, SurfaceError> {
        let k = self.index_of(name)?;
        let dual = match self.curves[k].kind {
            CurveKind::A(i) => format!("b{i}"),
            CurveKind::B(i) => format!("a{i}"),
            CurveKind::C(i) => format!("b{i}"),
            CurveKind::E(_) => return Err(SurfaceError::UnsupportedCut(name.to_string())),
        };
        self.curve(&dual)
    }

    /// Humphries generating curves: `a1, b1` for genus one, and the chain
    /// `a1, b1, c1, b2, ..., c_{g-1}, bg` plus `a2` for `g >= 2`.
    pub fn humphries(&self) -> Vec<&StandardCurve> {
        let g = self.sig.genus;
        let mut names = vec!["a1".to_string(), "b1".to_string()];
        if g >= 2 {
            for i in 1..g {
                names.push(format!("c{i}"));
                names.push(format!("b{}", i + 1));
            }
            names.push("a2".to_string());
        }
        if g == 0 {
            names.clear();
        }
        names.iter().filter_map(|n| self.curve(n).ok()).collect()
    }
}

fn check_len(sig: SurfaceSig, x: &[i64]) -> Result<(), SurfaceError> {
    if x.len() != sig.rank() {
        return Err(SurfaceError::Dimension { expected: sig.rank(), got: x.len() });
    }
    Ok(())
}

/// Intersection pairing induced from the capped-off closed surface.
pub fn intersection_pairing(sig: SurfaceSig, x: &[i64], y: &[i64]) -> Result<i64, SurfaceError> {
    check_len(sig, x)?;
    check_len(sig, y)?;
    Ok((0..sig.genus)
        .map(|i| x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i])
        .sum())
}

/// Image in `H_1` modulo peripheral classes; coordinates on `a_i, b_i`.
pub fn reduce_mod_boundary(sig: SurfaceSig, x: &[i64]) -> Vec<i64> {
    x[..2 * sig.genus].to_vec()
}

pub fn is_nontrivial_mod_boundary(sig: SurfaceSig, u: &Word) -> bool {
    reduce_mod_boundary(sig, &u.abelianize()).iter().any(|&c| c != 0)
}

fn check_disjoint(atlas: &Atlas, idx: &[usize]) -> Result<(), SurfaceError> {
    for (k, &i) in idx.iter().enumerate() {
        for &j in &idx[k + 1..] {
            if i == j || atlas.intersections[i][j] != 0 {
                return Err(SurfaceError::NotDisjoint(
                    atlas.curves[i].name.clone(),
                    atlas.curves[j].name.clone(),
                ));
            }
        }
    }
    Ok(())
}

/// Whether pairwise disjoint atlas curves have connected complement: their
/// classes in the capped-off homology must be linearly independent.
pub fn is_jointly_nonseparating(atlas: &Atlas, names: &[&str]) -> Result<bool, SurfaceError> {
    let idx = names
        .iter()
        .map(|n| atlas.index_of(n))
        .collect::<Result<Vec<_>, _>>()?;
    check_disjoint(atlas, &idx)?;
    let dim = 2 * atlas.sig.genus;
    let mut basis = EchelonBasis::<Rational>::new(dim);
    for &i in &idx {
        let v: Vec<Rational> = reduce_mod_boundary(atlas.sig, &atlas.curves[i].h1)
            .into_iter()
            .map(Rational::from_i64)
            .collect();
        if dim == 0 || !basis.insert(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The surface cut open along atlas curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub sig: SurfaceSig,
    /// Generators of the image of `pi_1` of the cut surface.
    pub embedding: Vec<Word>,
    /// Two boundary words per cut curve.
    pub boundary_words: Vec<Word>,
}

/// Cuts along a jointly non-separating set of `a_i` / `b_i` curves.
pub fn cut_along(atlas: &Atlas, names: &[&str]) -> Result<CutResult, SurfaceError> {
    let sig = atlas.sig;
    if !is_jointly_nonseparating(atlas, names)? && !names.is_empty() {
        return Err(SurfaceError::Separating);
    }
    let r = sig.rank();
    let gen = |k: usize| Word::generator(r, k);
    let mut cut_handles = vec![None; sig.genus];
    for n in names {
        match atlas.curve(n)?.kind {
            CurveKind::A(i) => cut_handles[i - 1] = Some(true),
            CurveKind::B(i) => cut_handles[i - 1] = Some(false),
            _ => return Err(SurfaceError::UnsupportedCut(n.to_string())),
        }
    }
    let mut embedding = Vec::new();
    let mut boundary_words = Vec::new();
    let mut dropped = false;
    for (i, cut) in cut_handles.iter().enumerate() {
        let (a, b) = (gen(2 * i), gen(2 * i + 1));
        match cut {
            None => {
                embedding.push(a);
                embedding.push(b);
            }
            Some(along_a) => {
                let (x, y) = if *along_a { (a, b) } else { (b, a) };
                let other_side = y.mul(&x).mul(&y.invert());
                boundary_words.push(x.clone());
                boundary_words.push(other_side.clone());
                embedding.push(x);
                // in the closed case one boundary word is a product of the others
                if sig.is_closed() && !dropped {
                    dropped = true;
                } else {
                    embedding.push(other_side);
                }
            }
        }
    }
    for j in 0..sig.peripheral_count().saturating_sub(1) {
        embedding.push(gen(2 * sig.genus + j));
    }
    let k = names.len();
    let cut_sig = SurfaceSig::new(sig.genus - k, sig.punctures, sig.boundary + 2 * k);
    Ok(CutResult { sig: cut_sig, embedding, boundary_words })
}
