//! Dehn twist automorphisms of surface groups.
//!
//! The positive twist about `g` acts on homology by `x -> x + <x, g> g`.
//! With `<a_i, b_i> = +1` this gives `T_a(b) = b a^-1` and `T_b(a) = a b`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::{
    intersection_pairing, standard_curves, Atlas, CurveKind, SurfaceError, SurfaceSig,
};
use crate::word::{Pi1Endo, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("twist about `{curve}` failed validation: {reason}")]
    Invalid { curve: String, reason: String },
    #[error("no generating set for {0}")]
    Unsupported(SurfaceSig),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistSpec {
    pub curve: String,
    pub power: i64,
}

impl TwistSpec {
    pub fn new(curve: impl Into<String>, power: i64) -> Self {
        TwistSpec { curve: curve.into(), power }
    }
}

/// A mapping class given by an automorphism together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingClass {
    /// Generator label used in witness words, e.g. `a1` for the twist about `a1`.
    pub label: String,
    pub forward: Pi1Endo,
    pub backward: Pi1Endo,
}

impl MappingClass {
    pub fn inverse(&self) -> MappingClass {
        MappingClass {
            label: self.label.clone(),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }
}

/// Builds `x -> images` from substitutions on a few generators.
fn substitution(rank: usize, subs: Vec<(usize, Word)>) -> Pi1Endo {
    let mut images: Vec<Word> = (0..rank).map(|k| Word::generator(rank, k)).collect();
    for (k, w) in subs {
        images[k] = w;
    }
    Pi1Endo::new(rank, images).expect("substitution images have the ambient rank")
}

/// Positive twist and its inverse about an atlas curve, or a half-twist
/// exchanging two punctures (`half = true`, genus zero only).
fn primitive(atlas: &Atlas, kind: CurveKind, half: bool) -> (Pi1Endo, Pi1Endo) {
    let r = atlas.sig.rank();
    let g = |k: usize| Word::generator(r, k);
    match kind {
        CurveKind::A(i) => {
            let (a, b) = (g(2 * i - 2), g(2 * i - 1));
            (
                substitution(r, vec![(2 * i - 1, b.mul(&a.invert()))]),
                substitution(r, vec![(2 * i - 1, b.mul(&a))]),
            )
        }
        CurveKind::B(i) => {
            let (a, b) = (g(2 * i - 2), g(2 * i - 1));
            (
                substitution(r, vec![(2 * i - 2, a.mul(&b))]),
                substitution(r, vec![(2 * i - 2, a.mul(&b.invert()))]),
            )
        }
        CurveKind::C(i) => {
            let (a, b) = (g(2 * i - 2), g(2 * i - 1));
            let (a2, b2) = (g(2 * i), g(2 * i + 1));
            let c = b.mul(&a.invert()).mul(&b.invert()).mul(&a2);
            let ci = c.invert();
            let bab = b.mul(&a).mul(&b.invert());
            (
                substitution(
                    r,
                    vec![
                        (2 * i - 1, c.mul(&b)),
                        (2 * i, c.mul(&bab)),
                        (2 * i + 1, b2.mul(&ci)),
                    ],
                ),
                substitution(
                    r,
                    vec![
                        (2 * i - 1, ci.mul(&b)),
                        (2 * i, ci.mul(&bab).mul(&c).mul(&c)),
                        (2 * i + 1, b2.mul(&c)),
                    ],
                ),
            )
        }
        CurveKind::E(j) => {
            let (p, q) = (g(j - 1), g(j));
            if half {
                let forward = substitution(r, vec![(j - 1, p.mul(&q).mul(&p.invert())), (j, p.clone())]);
                let backward = substitution(r, vec![(j - 1, q.clone()), (j, q.invert().mul(&p).mul(&q))]);
                (forward, backward)
            } else {
                let e = p.mul(&q);
                let conj = |x: &Word, y: &Word| x.mul(y).mul(&x.invert());
                (
                    substitution(r, vec![(j - 1, conj(&e, &p)), (j, conj(&e, &q))]),
                    substitution(r, vec![(j - 1, conj(&e.invert(), &p)), (j, conj(&e.invert(), &q))]),
                )
            }
        }
    }
}

fn power_of(forward: &Pi1Endo, backward: &Pi1Endo, power: i64) -> Pi1Endo {
    if power >= 0 {
        forward.pow(power as u64)
    } else {
        backward.pow(power.unsigned_abs())
    }
}

/// Homology transvection `x -> x + power <x, g> g` as a column matrix.
pub fn transvection_matrix(sig: SurfaceSig, class: &[i64], power: i64) -> Vec<Vec<i64>> {
    let r = sig.rank();
    let mut m = vec![vec![0i64; r]; r];
    for j in 0..r {
        let mut e = vec![0i64; r];
        e[j] = 1;
        let t = intersection_pairing(sig, &e, class).expect("lengths match");
        for i in 0..r {
            m[i][j] = e[i] + power * t * class[i];
        }
    }
    m
}

/// Checks that `endo` preserves the relator and permutes peripheral words up
/// to conjugacy.
pub fn check_surface_automorphism(atlas: &Atlas, endo: &Pi1Endo) -> Result<(), String> {
    let pres = &atlas.presentation;
    for rel in &pres.relators {
        let img = endo.apply(rel).map_err(|e| e.to_string())?;
        if !img.is_conjugate(rel) {
            return Err("relator not preserved".into());
        }
    }
    for (k, p) in pres.peripherals.iter().enumerate() {
        let img = endo.apply(p).map_err(|e| e.to_string())?;
        if !pres.peripherals.iter().any(|q| img.is_conjugate(q)) {
            return Err(format!("peripheral {} not preserved", k + 1));
        }
    }
    Ok(())
}

fn validate(atlas: &Atlas, name: &str, power: i64, endo: &Pi1Endo) -> Result<(), TwistError> {
    let curve = atlas.curve(name)?;
    let fail = |reason: String| TwistError::Invalid { curve: name.to_string(), reason };
    if endo.h1_matrix() != transvection_matrix(atlas.sig, &curve.h1, power) {
        return Err(fail("homology action is not the transvection".into()));
    }
    let img = endo.apply(&curve.word).map_err(|e| fail(e.to_string()))?;
    if !img.is_conjugate(&curve.word) {
        return Err(fail("curve not fixed".into()));
    }
    check_surface_automorphism(atlas, endo).map_err(fail)
}

/// `T_g^power` on `pi_1`, validated against the transvection identity and
/// relator/peripheral preservation.
pub fn twist_auto(sig: SurfaceSig, spec: &TwistSpec) -> Result<Pi1Endo, TwistError> {
    twist_in(&standard_curves(sig)?, spec)
}

pub fn twist_in(atlas: &Atlas, spec: &TwistSpec) -> Result<Pi1Endo, TwistError> {
    let kind = atlas.curve(&spec.curve)?.kind;
    let (f, b) = primitive(atlas, kind, false);
    let endo = power_of(&f, &b, spec.power);
    validate(atlas, &spec.curve, spec.power, &endo)?;
    Ok(endo)
}

/// Twist generators used for orbit search.
///
/// Genus at least one: the Humphries twists. Genus zero with at least four
/// peripheral components: twists about the curves `e_j` around `p_j, p_{j+1}`
/// and half-twists `s_j` exchanging punctures `j` and `j+1`.
pub fn mcg_generators(sig: SurfaceSig) -> Result<Vec<MappingClass>, TwistError> {
    let atlas = standard_curves(sig).map_err(|_| TwistError::Unsupported(sig))?;
    let mut out = Vec::new();
    if sig.genus >= 1 {
        for curve in atlas.humphries() {
            let (forward, backward) = primitive(&atlas, curve.kind, false);
            validate(&atlas, &curve.name, 1, &forward)?;
            out.push(MappingClass { label: curve.name.clone(), forward, backward });
        }
        return Ok(out);
    }
    if sig.peripheral_count() < 4 {
        return Err(TwistError::Unsupported(sig));
    }
    for curve in &atlas.curves {
        let (forward, backward) = primitive(&atlas, curve.kind, false);
        validate(&atlas, &curve.name, 1, &forward)?;
        out.push(MappingClass { label: curve.name.clone(), forward, backward });
    }
    for j in 1..sig.punctures.min(sig.peripheral_count() - 1) {
        let (forward, backward) = primitive(&atlas, CurveKind::E(j), true);
        let name = format!("s{j}");
        check_surface_automorphism(&atlas, &forward)
            .map_err(|reason| TwistError::Invalid { curve: name.clone(), reason })?;
        out.push(MappingClass { label: name, forward, backward });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(sig: SurfaceSig) -> Vec<String> {
        crate::surface::generator_names(sig)
    }

    #[test]
    fn punctured_torus_twists() {
        let s = SurfaceSig::new(1, 1, 0);
        let ta = twist_auto(s, &TwistSpec::new("a1", 1)).unwrap();
        let f: Vec<String> = ta.images().iter().map(|w| w.format(&names(s))).collect();
        assert_eq!(f, vec!["a1", "b1 A1"]);
        assert_eq!(ta.h1_matrix(), vec![vec![1, -1], vec![0, 1]]);
        let inv = twist_auto(s, &TwistSpec::new("a1", -1)).unwrap();
        assert_eq!(inv.images()[1].format(&names(s)), "b1 a1");
        assert!(twist_auto(s, &TwistSpec::new("a1", 0)).unwrap().is_identity());
        let sq = Pi1Endo::compose(&ta, &ta).unwrap();
        assert_eq!(sq, twist_auto(s, &TwistSpec::new("a1", 2)).unwrap());
        assert!(twist_auto(s, &TwistSpec::new("c1", 1)).is_err());
    }

    #[test]
    fn inverses_compose_to_identity() {
        for sig in [SurfaceSig::closed(2), SurfaceSig::new(3, 1, 1), SurfaceSig::new(0, 3, 2)] {
            for gen in mcg_generators(sig).unwrap() {
                assert!(Pi1Endo::compose(&gen.forward, &gen.backward).unwrap().is_identity(), "{}", gen.label);
                assert!(Pi1Endo::compose(&gen.backward, &gen.forward).unwrap().is_identity(), "{}", gen.label);
            }
        }
    }

    #[test]
    fn generating_set_sizes() {
        assert_eq!(mcg_generators(SurfaceSig::new(1, 1, 0)).unwrap().len(), 2);
        assert_eq!(mcg_generators(SurfaceSig::closed(2)).unwrap().len(), 5);
        assert_eq!(mcg_generators(SurfaceSig::closed(3)).unwrap().len(), 7);
        assert_eq!(mcg_generators(SurfaceSig::new(0, 4, 0)).unwrap().len(), 4);
        assert!(mcg_generators(SurfaceSig::new(0, 3, 0)).is_err());
    }
}
