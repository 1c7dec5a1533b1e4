//! Free-group words and endomorphisms given by generator images.
//!
//! A letter is a nonzero `i32`: `k + 1` stands for generator `k` and
//! `-(k + 1)` for its inverse. Words are always kept freely reduced.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
    #[error("endomorphism needs {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
}

pub type Letter = i32;

pub fn letter(index: usize, inverse: bool) -> Letter {
    let l = index as i32 + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn letter_index(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// Freely reduced word over `rank` generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.letters)
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, index: usize) -> Self {
        assert!(index < rank, "generator {index} out of range for rank {rank}");
        Word { rank, letters: vec![letter(index, false)] }
    }

    /// Reduces an arbitrary letter sequence.
    pub fn reduce(rank: usize, raw: impl IntoIterator<Item = Letter>) -> Result<Self, WordError> {
        let mut out = Vec::new();
        for l in raw {
            if l == 0 || letter_index(l) >= rank {
                return Err(WordError::IndexOutOfRange {
                    index: if l == 0 { usize::MAX } else { letter_index(l) },
                    rank,
                });
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { rank, letters: out })
    }

    /// Like [`Word::reduce`] but panics on bad indices; for literals in code.
    pub fn from_letters(rank: usize, raw: &[Letter]) -> Self {
        Self::reduce(rank, raw.iter().copied()).expect("valid letters")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Word) -> Result<(), WordError> {
        if self.rank != other.rank {
            Err(WordError::RankMismatch(self.rank, other.rank))
        } else {
            Ok(())
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        self.check_rank(other)?;
        Ok(self.mul(other))
    }

    /// Product; panics on rank mismatch.
    pub fn mul(&self, other: &Word) -> Word {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word { rank: self.rank, letters: out }
    }

    pub fn invert(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::identity(self.rank), |acc, _| acc.mul(&base))
    }

    /// `x y x^-1 y^-1`
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.mul(y).mul(&x.invert()).mul(&y.invert())
    }

    /// `self = conjugator * core * conjugator^-1` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut i = 0;
        while i < l.len() / 2 && l[i] == -l[l.len() - 1 - i] {
            i += 1;
        }
        let core = Word { rank: self.rank, letters: l[i..l.len() - i].to_vec() };
        let conj = Word { rank: self.rank, letters: l[..i].to_vec() };
        (core, conj)
    }

    /// Conjugacy in the free group: some cyclic rotation of the cyclic
    /// reductions agree. Returns `w` with `self = w other w^-1`.
    pub fn conjugator_to(&self, other: &Word) -> Option<Word> {
        if self.rank != other.rank {
            return None;
        }
        let (cs, ws) = self.cyclic_reduce();
        let (co, wo) = other.cyclic_reduce();
        if cs.len() != co.len() {
            return None;
        }
        let n = cs.len();
        if n == 0 {
            return Some(Word::identity(self.rank));
        }
        for shift in 0..n {
            if (0..n).all(|j| cs.letters[(j + shift) % n] == co.letters[j]) {
                // cs = p co p^-1 where p = first `shift` letters of cs
                let p = Word { rank: self.rank, letters: cs.letters[..shift].to_vec() };
                return Some(ws.mul(&p).mul(&wo.invert()));
            }
        }
        None
    }

    pub fn is_conjugate(&self, other: &Word) -> bool {
        self.conjugator_to(other).is_some()
    }

    /// Exponent-sum vector.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for &l in &self.letters {
            v[letter_index(l)] += if l > 0 { 1 } else { -1 };
        }
        v
    }

    /// Reads the same letters in a larger ambient rank.
    pub fn widen(&self, rank: usize) -> Word {
        assert!(rank >= self.rank);
        Word { rank, letters: self.letters.clone() }
    }

    pub fn format(&self, names: &[String]) -> String {
        self.letters
            .iter()
            .map(|&l| {
                let name = &names[letter_index(l)];
                if l > 0 {
                    name.clone()
                } else {
                    invert_name(name)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `"a1 B2 a1"`; an uppercase initial marks an inverse letter.
    pub fn parse(s: &str, names: &[String]) -> Result<Word, WordError> {
        let rank = names.len();
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" || tok == "e" {
                continue;
            }
            let (name, inverse) = match tok.chars().next() {
                Some(c) if c.is_uppercase() => (lower_initial(tok), true),
                _ => (tok.to_string(), false),
            };
            let idx = names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| WordError::UnknownName(tok.to_string()))?;
            letters.push(letter(idx, inverse));
        }
        Word::reduce(rank, letters)
    }
}

fn lower_initial(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_lowercase().collect::<String>() + c.as_str(),
        None => String::new(),
    }
}

fn invert_name(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().collect::<String>() + c.as_str(),
        None => String::new(),
    }
}

/// Endomorphism of a free group (or of a one-relator quotient), given by the
/// images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pi1Endo {
    rank: usize,
    images: Vec<Word>,
}

impl Pi1Endo {
    pub fn new(rank: usize, images: Vec<Word>) -> Result<Self, WordError> {
        if images.len() != rank {
            return Err(WordError::ImageCount { expected: rank, got: images.len() });
        }
        if let Some(w) = images.iter().find(|w| w.rank != rank) {
            return Err(WordError::RankMismatch(rank, w.rank));
        }
        Ok(Pi1Endo { rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        Pi1Endo {
            rank,
            images: (0..rank).map(|k| Word::generator(rank, k)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        *self == Pi1Endo::identity(self.rank)
    }

    pub fn apply(&self, u: &Word) -> Result<Word, WordError> {
        if u.rank != self.rank {
            return Err(WordError::RankMismatch(self.rank, u.rank));
        }
        let mut out = Vec::with_capacity(u.len() * 2);
        for &l in &u.letters {
            let img = &self.images[letter_index(l)];
            if l > 0 {
                for &x in &img.letters {
                    push_reduced(&mut out, x);
                }
            } else {
                for &x in img.letters.iter().rev() {
                    push_reduced(&mut out, -x);
                }
            }
        }
        Ok(Word { rank: self.rank, letters: out })
    }

    /// `first ∘ second`: apply `second`, then `first`.
    pub fn compose(first: &Pi1Endo, second: &Pi1Endo) -> Result<Pi1Endo, WordError> {
        if first.rank != second.rank {
            return Err(WordError::RankMismatch(first.rank, second.rank));
        }
        let images = second
            .images
            .iter()
            .map(|w| first.apply(w))
            .collect::<Result<_, _>>()?;
        Ok(Pi1Endo { rank: first.rank, images })
    }

    /// Non-negative power.
    pub fn pow(&self, n: u64) -> Pi1Endo {
        (0..n).fold(Pi1Endo::identity(self.rank), |acc, _| {
            Pi1Endo::compose(self, &acc).expect("same rank")
        })
    }

    /// Induced map on `H_1`, as a matrix whose column `j` is the class of
    /// the image of generator `j`.
    pub fn h1_matrix(&self) -> Vec<Vec<i64>> {
        let cols: Vec<Vec<i64>> = self.images.iter().map(|w| w.abelianize()).collect();
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| cols[j][i]).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(raw: &[Letter]) -> Word {
        Word::from_letters(2, raw)
    }

    #[test]
    fn reduction_examples() {
        assert!(w(&[1, -1]).is_empty());
        assert!(w(&[]).is_empty());
        assert_eq!(w(&[1, 2, -2, 1]).letters(), &[1, 1]);
        assert!(Word::reduce(2, [3]).is_err());
    }

    #[test]
    fn group_operations() {
        assert!(w(&[1]).concat(&w(&[-1])).unwrap().is_empty());
        assert_eq!(w(&[1, 2]).invert().letters(), &[-2, -1]);
        let (core, conj) = w(&[2, 1, -2]).cyclic_reduce();
        assert_eq!(core, w(&[1]));
        assert_eq!(conj, w(&[2]));
        assert!(w(&[1]).concat(&Word::identity(3)).is_err());
    }

    #[test]
    fn endomorphism_examples() {
        let e = Pi1Endo::new(2, vec![w(&[1]), w(&[2, 1])]).unwrap();
        assert_eq!(e.apply(&w(&[2])).unwrap(), w(&[2, 1]));
        let ee = Pi1Endo::compose(&e, &e).unwrap();
        assert_eq!(ee.apply(&w(&[2])).unwrap(), w(&[2, 1, 1]));
        assert_eq!(Pi1Endo::compose(&Pi1Endo::identity(2), &e).unwrap(), e);
        assert_eq!(e.h1_matrix(), vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(w(&[1, 2, -1]).abelianize(), vec![0, 1]);
        assert_eq!(Word::identity(2).abelianize(), vec![0, 0]);
        assert_eq!(Word::commutator(&w(&[1]), &w(&[2])).abelianize(), vec![0, 0]);
    }

    #[test]
    fn names_round_trip() {
        let names: Vec<String> = ["a1", "b1", "a2", "b2"].iter().map(|s| s.to_string()).collect();
        let u = Word::parse("a1 B2 a1", &names).unwrap();
        assert_eq!(u.letters(), &[1, -4, 1]);
        assert_eq!(u.format(&names), "a1 B2 a1");
        assert!(Word::parse("q7", &names).is_err());
    }

    fn arb_word(rank: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..rank, any::<bool>()), 0..12)
            .prop_map(move |ls| Word::reduce(rank, ls.into_iter().map(|(k, s)| letter(k, s))).unwrap())
    }

    fn arb_endo(rank: usize) -> impl Strategy<Value = Pi1Endo> {
        prop::collection::vec(arb_word(rank), rank).prop_map(move |im| Pi1Endo::new(rank, im).unwrap())
    }

    proptest! {
        #[test]
        fn reduce_idempotent_and_length(u in arb_word(3), v in arb_word(3)) {
            let again = Word::reduce(3, u.letters().iter().copied()).unwrap();
            prop_assert_eq!(&again, &u);
            prop_assert!(u.mul(&v).len() <= u.len() + v.len());
            prop_assert!(u.mul(&u.invert()).is_empty());
        }

        #[test]
        fn apply_is_homomorphic(e in arb_endo(3), u in arb_word(3), v in arb_word(3)) {
            let lhs = e.apply(&u.mul(&v)).unwrap();
            let rhs = e.apply(&u).unwrap().mul(&e.apply(&v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compose_is_associative(e1 in arb_endo(2), e2 in arb_endo(2), e3 in arb_endo(2), u in arb_word(2)) {
            let a = Pi1Endo::compose(&Pi1Endo::compose(&e1, &e2).unwrap(), &e3).unwrap();
            let b = Pi1Endo::compose(&e1, &Pi1Endo::compose(&e2, &e3).unwrap()).unwrap();
            prop_assert_eq!(&a, &b);
            let direct = e1.apply(&e2.apply(&e3.apply(&u).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(a.apply(&u).unwrap(), direct);
        }

        #[test]
        fn cyclic_reduce_recomposes(u in arb_word(3)) {
            let (core, conj) = u.cyclic_reduce();
            prop_assert_eq!(conj.mul(&core).mul(&conj.invert()), u.clone());
            let c = u.conjugator_to(&core).unwrap();
            prop_assert_eq!(c.mul(&core).mul(&c.invert()), u);
        }

        #[test]
        fn abelianize_additive(u in arb_word(3), v in arb_word(3)) {
            let s: Vec<i64> = u.abelianize().iter().zip(v.abelianize()).map(|(a, b)| a + b).collect();
            prop_assert_eq!(u.mul(&v).abelianize(), s);
        }
    }
}
