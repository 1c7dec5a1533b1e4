//! Finite covers given by permutation actions of the surface group on sheets.
//!
//! Sheets are numbered from 0 and the group acts on the right: the sheet
//! reached from `i` along generator `s` is `perms[s][i]`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use thiserror::Error;

use crate::linear::Scalar;
use crate::rep::{sigma_extract, RepError, Representation};
use crate::surface::{standard_presentation, Presentation, SurfaceSig};
use crate::word::{letter, letter_index, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("expected {expected} permutations, got {got}")]
    PermCount { expected: usize, got: usize },
    #[error("permutation {0} is not a permutation of 0..{1}")]
    InvalidPerm(usize, usize),
    #[error("the action on sheets is not transitive")]
    Intransitive,
    #[error("the relator acts nontrivially on sheet {0}")]
    RelatorViolated(usize),
    #[error("basepoint {0} out of range")]
    Basepoint(usize),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("representation is not on the standard presentation of the base")]
    NonStandard,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationCover {
    pub base: SurfaceSig,
    pub degree: usize,
    pub perms: Vec<Vec<usize>>,
    pub basepoint: usize,
    pub sig: SurfaceSig,
}

fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Cycle decomposition of a permutation, each cycle starting at its least sheet.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = p[i];
        }
        out.push(cycle);
    }
    out
}

fn is_transitive(perms: &[Vec<usize>], degree: usize) -> bool {
    let mut seen = vec![false; degree];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for p in perms {
            for j in [p[i], invert_perm(p)[i]] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

impl PermutationCover {
    /// Sheet reached from `sheet` along `w`.
    pub fn act(&self, sheet: usize, w: &Word) -> usize {
        w.letters().iter().fold(sheet, |i, &l| {
            let p = &self.perms[letter_index(l)];
            if l > 0 {
                p[i]
            } else {
                p.iter().position(|&x| x == i).expect("permutation")
            }
        })
    }

    /// Permutation induced by `w` (as the images of all sheets).
    pub fn word_perm(&self, w: &Word) -> Vec<usize> {
        (0..self.degree).map(|i| self.act(i, w)).collect()
    }
}

/// Validates permutation data and computes the cover's signature from the
/// cycle structure of the peripheral loops and `chi' = d chi`.
pub fn cover_from_permutations(
    base: SurfaceSig,
    perms: Vec<Vec<usize>>,
    basepoint: usize,
) -> Result<PermutationCover, CoverError> {
    let pres = standard_presentation(base);
    if perms.len() != pres.rank() {
        return Err(CoverError::PermCount { expected: pres.rank(), got: perms.len() });
    }
    let degree = perms.first().map_or(1, Vec::len);
    for (k, p) in perms.iter().enumerate() {
        let set: BTreeSet<usize> = p.iter().copied().collect();
        if p.len() != degree || set.len() != degree || set.iter().any(|&x| x >= degree) {
            return Err(CoverError::InvalidPerm(k, degree));
        }
    }
    if basepoint >= degree.max(1) {
        return Err(CoverError::Basepoint(basepoint));
    }
    if degree > 0 && !is_transitive(&perms, degree) {
        return Err(CoverError::Intransitive);
    }
    let mut cover = PermutationCover { base, degree, perms, basepoint, sig: base };
    for rel in &pres.relators {
        for i in 0..degree {
            if cover.act(i, rel) != i {
                return Err(CoverError::RelatorViolated(i));
            }
        }
    }
    let mut punctures = 0;
    let mut boundary = 0;
    for (j, p) in pres.peripherals.iter().enumerate() {
        let c = cycles(&cover.word_perm(p)).len();
        if j < base.punctures {
            punctures += c;
        } else {
            boundary += c;
        }
    }
    let chi = degree as i64 * base.euler_characteristic();
    let genus = ((2 - chi - punctures as i64 - boundary as i64) / 2) as usize;
    cover.sig = SurfaceSig::new(genus, punctures, boundary);
    Ok(cover)
}

/// Schreier transversal and the induced presentation of the subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierData {
    /// `transversal[i]` carries the basepoint sheet to sheet `i`.
    pub transversal: Vec<Word>,
    /// `t_i s t_{i.s}^-1` for every non-tree edge `(i, s)`.
    pub generators: Vec<Word>,
    /// Subgroup presentation on the Schreier generators `y1, y2, ...`.
    pub presentation: Presentation,
    pub sig: SurfaceSig,
    edge_index: HashMap<(usize, usize), usize>,
}

impl SchreierData {
    /// Rewrites a base word lying in the subgroup in the Schreier generators.
    pub fn rewrite(&self, cover: &PermutationCover, w: &Word) -> Option<Word> {
        let rank = self.generators.len();
        let mut sheet = cover.basepoint;
        let mut out = Vec::new();
        for &l in w.letters() {
            let s = letter_index(l);
            let (from, inverse) = if l > 0 {
                (sheet, false)
            } else {
                (cover.act(sheet, &Word::from_letters(w.rank(), &[l])), true)
            };
            if let Some(&k) = self.edge_index.get(&(from, s)) {
                out.push(letter(k, inverse));
            }
            sheet = cover.act(sheet, &Word::from_letters(w.rank(), &[l]));
        }
        (sheet == cover.basepoint).then(|| Word::from_letters(rank, &out))
    }
}

pub fn schreier(cover: &PermutationCover) -> SchreierData {
    let pres = standard_presentation(cover.base);
    let r = pres.rank();
    let d = cover.degree;
    let mut transversal: Vec<Option<Word>> = vec![None; d];
    transversal[cover.basepoint] = Some(Word::identity(r));
    let mut tree = BTreeSet::new();
    let mut queue = VecDeque::from([cover.basepoint]);
    while let Some(i) = queue.pop_front() {
        let ti = transversal[i].clone().expect("visited");
        for s in 0..r {
            let j = cover.perms[s][i];
            if transversal[j].is_none() {
                transversal[j] = Some(ti.mul(&Word::generator(r, s)));
                tree.insert((i, s));
                queue.push_back(j);
            }
            let k = invert_perm(&cover.perms[s])[i];
            if transversal[k].is_none() {
                transversal[k] = Some(ti.mul(&Word::generator(r, s).invert()));
                tree.insert((k, s));
                queue.push_back(k);
            }
        }
    }
    let transversal: Vec<Word> = transversal.into_iter().map(|t| t.expect("transitive")).collect();
    let mut generators = Vec::new();
    let mut edge_index = HashMap::new();
    for i in 0..d {
        for s in 0..r {
            if tree.contains(&(i, s)) {
                continue;
            }
            let j = cover.perms[s][i];
            edge_index.insert((i, s), generators.len());
            generators.push(transversal[i].mul(&Word::generator(r, s)).mul(&transversal[j].invert()));
        }
    }
    let names = (1..=generators.len()).map(|k| format!("y{k}")).collect();
    let mut data = SchreierData {
        transversal,
        generators,
        presentation: Presentation { names, relators: Vec::new(), peripherals: Vec::new() },
        sig: cover.sig,
        edge_index,
    };
    let conj = |t: &Word, w: &Word| t.mul(w).mul(&t.invert());
    let relators = pres
        .relators
        .iter()
        .flat_map(|rel| data.transversal.iter().map(move |t| conj(t, rel)))
        .map(|w| data.rewrite(cover, &w).expect("relator lifts to every sheet"))
        .collect();
    let mut peripherals = Vec::new();
    for p in &pres.peripherals {
        for c in cycles(&cover.word_perm(p)) {
            let lifted = conj(&data.transversal[c[0]], &p.pow(c.len() as i64));
            peripherals.push(data.rewrite(cover, &lifted).expect("closed lift"));
        }
    }
    data.presentation.relators = relators;
    data.presentation.peripherals = peripherals;
    data
}

/// Restriction of `rho` to the subgroup of the cover, on the Schreier generators.
pub fn pullback<S: Scalar>(
    rho: &Representation<S>,
    cover: &PermutationCover,
) -> Result<Representation<S>, CoverError> {
    if *rho.presentation() != standard_presentation(cover.base) {
        return Err(CoverError::NonStandard);
    }
    let data = schreier(cover);
    let images = data
        .generators
        .iter()
        .map(|w| rho.evaluate(w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Representation::with_presentation(cover.sig, data.presentation, images)?)
}

/// A component of the preimage of a closed curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveComponent {
    pub sheets: Vec<usize>,
    pub degree: usize,
    /// `t_i w^degree t_i^-1` in the base group.
    pub word: Word,
}

pub fn curve_preimage(cover: &PermutationCover, curve: &Word) -> Vec<CurveComponent> {
    let data = schreier(cover);
    cycles(&cover.word_perm(curve))
        .into_iter()
        .map(|sheets| {
            let t = &data.transversal[sheets[0]];
            let word = t.mul(&curve.pow(sheets.len() as i64)).mul(&t.invert());
            CurveComponent { degree: sheets.len(), sheets, word }
        })
        .collect()
}

/// Outcome of comparing the additive maps of a block-unipotent
/// representation and its pullback through homology of the cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareReport {
    pub checked: usize,
    pub commutes: bool,
}

pub fn sigma_cover_square<S: Scalar>(
    rho: &Representation<S>,
    cover: &PermutationCover,
    d1: usize,
) -> Result<SquareReport, CoverError> {
    let sigma = sigma_extract(rho, d1)?;
    let lifted = pullback(rho, cover)?;
    let sigma_cover = sigma_extract(&lifted, d1)?;
    let data = schreier(cover);
    let commutes = data
        .generators
        .iter()
        .zip(&sigma_cover.values)
        .all(|(w, v)| sigma.on_word(w) == *v);
    Ok(SquareReport { checked: data.generators.len(), commutes })
}

fn all_perms(d: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// Relabels sheets in breadth-first order from `start`.
fn relabel(perms: &[Vec<usize>], start: usize) -> Vec<Vec<usize>> {
    let d = perms[0].len();
    let mut label = vec![usize::MAX; d];
    let mut order = vec![start];
    label[start] = 0;
    let mut k = 0;
    while k < order.len() {
        let i = order[k];
        k += 1;
        for p in perms {
            let j = p[i];
            if label[j] == usize::MAX {
                label[j] = order.len();
                order.push(j);
            }
        }
    }
    perms
        .iter()
        .map(|p| order.iter().map(|&i| label[p[i]]).collect())
        .collect()
}

/// Representative of the relabeling class of a transitive tuple.
pub fn canonical_form(perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (0..perms[0].len()).map(|s| relabel(perms, s)).min().expect("nonempty")
}

/// All connected covers of degree `1..=max_degree`, one per isomorphism class.
pub fn enumerate(base: SurfaceSig, max_degree: usize) -> Vec<PermutationCover> {
    let r = standard_presentation(base).rank();
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let perms = all_perms(d);
        let total = perms.len().pow(r as u32);
        let mut found: Vec<Vec<Vec<usize>>> = (0..total)
            .into_par_iter()
            .filter_map(|mut code| {
                let tuple: Vec<Vec<usize>> = (0..r)
                    .map(|_| {
                        let p = perms[code % perms.len()].clone();
                        code /= perms.len();
                        p
                    })
                    .collect();
                let canon = canonical_form(&tuple);
                (canon == tuple && cover_from_permutations(base, tuple.clone(), 0).is_ok()).then_some(tuple)
            })
            .collect();
        found.sort();
        out.extend(found.into_iter().map(|t| cover_from_permutations(base, t, 0).expect("validated")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::scalar::rat;
    use crate::linear::{Matrix, Rational};

    fn torus() -> SurfaceSig {
        SurfaceSig::new(1, 1, 0)
    }

    fn swap_cover() -> PermutationCover {
        cover_from_permutations(torus(), vec![vec![1, 0], vec![0, 1]], 0).unwrap()
    }

    #[test]
    fn construction() {
        let id = cover_from_permutations(torus(), vec![vec![0], vec![0]], 0).unwrap();
        assert_eq!(id.sig, torus());
        let c = swap_cover();
        assert_eq!(c.sig, SurfaceSig::new(1, 2, 0));
        assert_eq!(c.sig.euler_characteristic(), -2);
        assert_eq!(
            cover_from_permutations(torus(), vec![vec![0, 1], vec![0, 1]], 0),
            Err(CoverError::Intransitive)
        );
        let g2 = SurfaceSig::closed(2);
        let c = cover_from_permutations(g2, vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 1]], 0).unwrap();
        assert_eq!(c.sig, SurfaceSig::closed(3));
    }

    #[test]
    fn schreier_generators() {
        let id = cover_from_permutations(torus(), vec![vec![0], vec![0]], 0).unwrap();
        assert_eq!(schreier(&id).generators, vec![Word::generator(2, 0), Word::generator(2, 1)]);
        let c = swap_cover();
        let data = schreier(&c);
        assert_eq!(data.generators.len(), 3);
        for (k, w) in data.generators.iter().enumerate() {
            assert_eq!(c.act(0, w), 0);
            assert_eq!(data.rewrite(&c, w).unwrap(), Word::generator(3, k));
        }
        assert_eq!(data.presentation.peripherals.len(), 2);
    }

    #[test]
    fn pullbacks() {
        let t = Representation::<Rational>::trivial(torus(), 2);
        let p = pullback(&t, &swap_cover()).unwrap();
        assert_eq!(p.rank(), 3);
        assert!(p.is_trivial());
        let rho = Representation::new(torus(), vec![Matrix::diagonal(vec![rat(2, 1)]), Matrix::diagonal(vec![rat(3, 1)])]).unwrap();
        let id = cover_from_permutations(torus(), vec![vec![0], vec![0]], 0).unwrap();
        assert_eq!(pullback(&rho, &id).unwrap().images(), rho.images());
        let g2 = SurfaceSig::closed(2);
        let c = cover_from_permutations(g2, vec![vec![1, 2, 0], vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]], 0).unwrap();
        let data = schreier(&c);
        assert_eq!(data.generators.len(), 3 * 3 + 1);
        assert_eq!(data.presentation.relators.len(), 3);
        let t = Representation::<Rational>::trivial(g2, 1);
        assert!(pullback(&t, &c).is_ok());
    }

    #[test]
    fn preimages() {
        let id = cover_from_permutations(torus(), vec![vec![0], vec![0]], 0).unwrap();
        assert_eq!(curve_preimage(&id, &Word::generator(2, 0)).len(), 1);
        let c = swap_cover();
        let a = curve_preimage(&c, &Word::generator(2, 0));
        assert_eq!((a.len(), a[0].degree), (1, 2));
        let b = curve_preimage(&c, &Word::generator(2, 1));
        assert_eq!(b.iter().map(|x| x.degree).collect::<Vec<_>>(), vec![1, 1]);
        for comp in a.iter().chain(&b) {
            assert_eq!(c.act(0, &comp.word), 0);
        }
    }

    #[test]
    fn free_group_cover_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|d| enumerate(torus(), d).iter().filter(|c| c.degree == d).count())
            .collect();
        assert_eq!(counts, vec![1, 3, 7, 26]);
    }
}
