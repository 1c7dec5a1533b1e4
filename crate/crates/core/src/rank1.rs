//! One-dimensional representations as points of `(Q/Z)^{2g}` and their orbits
//! under the symplectic group.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::linear::scalar::frac_mod_one;
use crate::linear::{Cyc, Rational, Scalar};
use crate::rep::{RepError, Representation};

/// Point of `(Q/Z)^{2g}`; coordinates in `[0, 1)`, ordered `a1, b1, a2, b2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPoint {
    pub coords: Vec<Rational>,
}

impl TorsionPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        TorsionPoint { coords: coords.iter().map(frac_mod_one).collect() }
    }

    pub fn zero(dim: usize) -> Self {
        TorsionPoint { coords: vec![Rational::zero(); dim] }
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> u64 {
        self.coords.iter().fold(1u64, |acc, c| {
            let d: u64 = c.denom().try_into().expect("denominator fits in u64");
            acc.lcm(&d)
        })
    }

    pub fn apply(&self, m: &[Vec<i64>]) -> TorsionPoint {
        let coords = m
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.coords)
                    .fold(Rational::zero(), |acc, (&a, x)| acc + x * Rational::from_i64(a))
            })
            .collect();
        TorsionPoint::new(coords)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rank1Point {
    Torsion(TorsionPoint),
    /// The value on this generator is not a root of unity.
    NonTorsion { generator: usize },
}

/// Normalized logarithms of the values on `a_i, b_i`. Values on peripheral
/// generators are ignored.
pub fn rank1_to_point(rho: &Representation<Cyc>) -> Result<Rank1Point, RepError> {
    if rho.dim() != 1 {
        return Err(RepError::NotRankOne);
    }
    let g = rho.sig().genus;
    let mut coords = Vec::with_capacity(2 * g);
    for (k, m) in rho.images().iter().take(2 * g).enumerate() {
        match m[(0, 0)].root_of_unity_log() {
            Some((e, n)) => coords.push(Rational::new((e as i64).into(), (n as i64).into())),
            None => return Ok(Rank1Point::NonTorsion { generator: k }),
        }
    }
    Ok(Rank1Point::Torsion(TorsionPoint::new(coords)))
}

/// The symplectic form `sum x_{a_i} y_{b_i} - x_{b_i} y_{a_i}` as a matrix.
pub fn symplectic_form(g: usize) -> Vec<Vec<i64>> {
    let mut j = vec![vec![0; 2 * g]; 2 * g];
    for i in 0..g {
        j[2 * i][2 * i + 1] = 1;
        j[2 * i + 1][2 * i] = -1;
    }
    j
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a.len())
        .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn is_symplectic(m: &[Vec<i64>]) -> bool {
    let j = symplectic_form(m.len() / 2);
    mat_mul(&mat_mul(&transpose(m), &j), m) == j
}

/// `x -> x + <x, v> v`.
pub fn transvection(v: &[i64]) -> Vec<Vec<i64>> {
    let n = v.len();
    let j = symplectic_form(n / 2);
    // <e_c, v> = (J v)_c
    let jv: Vec<i64> = j.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
    (0..n)
        .map(|r| (0..n).map(|c| i64::from(r == c) + jv[c] * v[r]).collect())
        .collect()
}

/// `S, T` for genus one; transvections along the Humphries classes
/// `a1, b1, b1 - ... ` otherwise.
pub fn sp_generators(g: usize) -> Vec<Vec<Vec<i64>>> {
    if g == 1 {
        return vec![vec![vec![0, -1], vec![1, 0]], vec![vec![1, 1], vec![0, 1]]];
    }
    let unit = |k: usize| {
        let mut v = vec![0; 2 * g];
        v[k] = 1;
        v
    };
    let mut classes = vec![unit(0), unit(1)];
    for i in 0..g - 1 {
        let mut c = vec![0; 2 * g];
        c[2 * i] = -1;
        c[2 * i + 2] = 1;
        classes.push(c);
        classes.push(unit(2 * i + 3));
    }
    classes.push(unit(2));
    classes.iter().map(|v| transvection(v)).collect()
}

fn inverse_symplectic(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    // M^-1 = -J M^T J
    let j = symplectic_form(m.len() / 2);
    mat_mul(&mat_mul(&j, &transpose(m)), &j)
        .into_iter()
        .map(|r| r.into_iter().map(|x| -x).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpOrbit {
    Finite { size: usize, points: Vec<TorsionPoint> },
    CutoffExceeded { explored: usize },
}

impl SpOrbit {
    pub fn size(&self) -> Option<usize> {
        match self {
            SpOrbit::Finite { size, .. } => Some(*size),
            SpOrbit::CutoffExceeded { .. } => None,
        }
    }
}

/// Orbit of `p` under `Sp(2g, Z)` acting on coordinates.
pub fn sp_orbit(p: &TorsionPoint, cutoff: usize) -> SpOrbit {
    let g = p.coords.len() / 2;
    if g == 0 {
        return SpOrbit::Finite { size: 1, points: vec![p.clone()] };
    }
    let mut gens = sp_generators(g);
    let inverses: Vec<_> = gens.iter().map(|m| inverse_symplectic(m)).collect();
    gens.extend(inverses);
    let mut seen = HashSet::from([p.clone()]);
    let mut points = vec![p.clone()];
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(x) = queue.pop_front() {
        for m in &gens {
            let y = x.apply(m);
            if seen.insert(y.clone()) {
                if points.len() >= cutoff {
                    return SpOrbit::CutoffExceeded { explored: points.len() };
                }
                points.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    SpOrbit::Finite { size: points.len(), points }
}

/// Coordinates `q_i + sum_k n_ik t_k` with independent transcendental symbols `t_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolicPoint {
    pub rational: Vec<Rational>,
    /// `symbolic[i][k]` is the coefficient of `t_k` in coordinate `i`.
    pub symbolic: Vec<Vec<i64>>,
}

impl SymbolicPoint {
    pub fn apply(&self, m: &[Vec<i64>]) -> SymbolicPoint {
        let syms = self.symbolic.first().map_or(0, Vec::len);
        let rational = m
            .iter()
            .map(|row| {
                frac_mod_one(&row.iter().zip(&self.rational).fold(Rational::zero(), |acc, (&a, x)| {
                    acc + x * Rational::from_i64(a)
                }))
            })
            .collect();
        let symbolic = m
            .iter()
            .map(|row| {
                (0..syms)
                    .map(|k| row.iter().zip(&self.symbolic).map(|(&a, s)| a * s[k]).sum())
                    .collect()
            })
            .collect();
        SymbolicPoint { rational, symbolic }
    }

    pub fn format(&self) -> Vec<String> {
        self.rational
            .iter()
            .zip(&self.symbolic)
            .map(|(q, s)| {
                let mut parts = vec![crate::linear::scalar::format_rational(q)];
                for (k, &c) in s.iter().enumerate() {
                    if c != 0 {
                        parts.push(format!("{c}*t{}", k + 1));
                    }
                }
                parts.join(" + ")
            })
            .collect()
    }
}

/// Iterates `m` from `p`, returning `steps + 1` points.
pub fn escape_trace(p: &SymbolicPoint, m: &[Vec<i64>], steps: usize) -> Vec<SymbolicPoint> {
    let mut out = vec![p.clone()];
    for _ in 0..steps {
        let next = out.last().expect("nonempty").apply(m);
        out.push(next);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Rank1Verdict {
    /// The values on `a_i, b_i` are roots of unity. `order` is the order of
    /// the image, absent if a peripheral value has infinite order.
    FiniteImage { order: Option<u64>, point: Vec<String>, orbit_size: Option<usize> },
    /// The orbit escapes: `trace` lists distinct points of one orbit.
    McgInfinite { generator: usize, trace: Vec<Vec<String>> },
}

/// Torsion points have finite orbits and finite image; any non-torsion
/// coordinate yields an unbounded orbit under iterated transvections.
pub fn torsion_criterion(rho: &Representation<Cyc>, cutoff: usize, trace_len: usize) -> Result<Rank1Verdict, RepError> {
    let point = rank1_to_point(rho)?;
    let g = rho.sig().genus;
    match point {
        Rank1Point::Torsion(p) => {
            let order = rho
                .images()
                .iter()
                .try_fold(1u64, |acc, m| Some(acc.lcm(&m[(0, 0)].root_of_unity_order()?)));
            Ok(Rank1Verdict::FiniteImage {
                order,
                point: p.coords.iter().map(crate::linear::scalar::format_rational).collect(),
                orbit_size: sp_orbit(&p, cutoff).size(),
            })
        }
        Rank1Point::NonTorsion { generator } => {
            let sym = symbolic_point(rho);
            let m = escaping_generator(&sym, g).expect("a transvection moves a symbolic coordinate");
            let trace = escape_trace(&sym, &m, trace_len).iter().map(SymbolicPoint::format).collect();
            Ok(Rank1Verdict::McgInfinite { generator, trace })
        }
    }
}

/// Rational coordinates for roots of unity, one fresh symbol for every other value.
fn symbolic_point(rho: &Representation<Cyc>) -> SymbolicPoint {
    let n = 2 * rho.sig().genus;
    let mut rational = Vec::with_capacity(n);
    let mut symbolic = vec![vec![0; n]; n];
    for (k, m) in rho.images().iter().take(n).enumerate() {
        match m[(0, 0)].root_of_unity_log() {
            Some((e, q)) => rational.push(Rational::new((e as i64).into(), (q as i64).into())),
            None => {
                rational.push(Rational::zero());
                symbolic[k][k] = 1;
            }
        }
    }
    SymbolicPoint { rational, symbolic }
}

/// A transvection along a coordinate class that moves the symbolic part of
/// `p`; its iterates grow linearly.
pub fn escaping_generator(p: &SymbolicPoint, g: usize) -> Option<Vec<Vec<i64>>> {
    (0..2 * g)
        .map(|k| {
            let mut v = vec![0; 2 * g];
            v[k] = 1;
            transvection(&v)
        })
        .find(|m| p.apply(m).symbolic != p.symbolic)
}

/// `(0, t)` in genus one: the standard symbolic non-torsion point.
pub fn symbolic_example() -> SymbolicPoint {
    SymbolicPoint { rational: vec![Rational::zero(), Rational::zero()], symbolic: vec![vec![0], vec![1]] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::scalar::rat;
    use crate::linear::Matrix;
    use crate::surface::SurfaceSig;

    fn rank1(a: Cyc, b: Cyc) -> Representation<Cyc> {
        Representation::new(SurfaceSig::new(1, 1, 0), vec![Matrix::diagonal(vec![a]), Matrix::diagonal(vec![b])]).unwrap()
    }

    #[test]
    fn points() {
        let t = rank1(Cyc::integer(1), Cyc::integer(1));
        assert_eq!(rank1_to_point(&t).unwrap(), Rank1Point::Torsion(TorsionPoint::zero(2)));
        let h = rank1(Cyc::integer(-1), Cyc::integer(1));
        assert_eq!(rank1_to_point(&h).unwrap(), Rank1Point::Torsion(TorsionPoint::new(vec![rat(1, 2), rat(0, 1)])));
        let z = rank1(Cyc::root_of_unity(3, 1), Cyc::integer(1));
        assert_eq!(rank1_to_point(&z).unwrap(), Rank1Point::Torsion(TorsionPoint::new(vec![rat(1, 3), rat(0, 1)])));
        let two = rank1(Cyc::integer(2), Cyc::integer(1));
        assert_eq!(rank1_to_point(&two).unwrap(), Rank1Point::NonTorsion { generator: 0 });
    }

    #[test]
    fn generators_are_symplectic() {
        for g in 1..=3 {
            let gens = sp_generators(g);
            assert_eq!(gens.len(), if g == 1 { 2 } else { 2 * g + 1 });
            assert!(gens.iter().all(|m| is_symplectic(m)));
        }
    }

    #[test]
    fn orbits() {
        assert_eq!(sp_orbit(&TorsionPoint::zero(2), 100).size(), Some(1));
        assert_eq!(sp_orbit(&TorsionPoint::new(vec![rat(1, 2), rat(0, 1)]), 100).size(), Some(3));
        assert_eq!(sp_orbit(&TorsionPoint::new(vec![rat(1, 3), rat(0, 1)]), 100).size(), Some(8));
    }

    #[test]
    fn criterion() {
        let t = rank1(Cyc::integer(1), Cyc::integer(1));
        assert!(matches!(torsion_criterion(&t, 100, 10).unwrap(), Rank1Verdict::FiniteImage { order: Some(1), .. }));
        let z6 = rank1(Cyc::root_of_unity(6, 1), Cyc::integer(1));
        assert!(matches!(
            torsion_criterion(&z6, 100, 10).unwrap(),
            Rank1Verdict::FiniteImage { order: Some(6), orbit_size: Some(_), .. }
        ));
        let two = rank1(Cyc::integer(2), Cyc::integer(1));
        match torsion_criterion(&two, 100, 60).unwrap() {
            Rank1Verdict::McgInfinite { trace, .. } => {
                let distinct: HashSet<_> = trace.iter().collect();
                assert_eq!(distinct.len(), 61);
            }
            other => panic!("{other:?}"),
        }
        let p = symbolic_example();
        let t = vec![vec![1, 1], vec![0, 1]];
        let trace = escape_trace(&p, &t, 50);
        assert_eq!(trace.iter().collect::<HashSet<_>>().len(), 51);
    }
}
