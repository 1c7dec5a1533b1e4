//! Fixed example representations used by the regression suites and the CLI.

use crate::augmentation::conjugation_rep;
use crate::linear::{Cyc, Matrix, Rational, Scalar};
use crate::rep::CycRep;
use crate::surface::SurfaceSig;
use crate::Representation;

/// Matrix of the permutation `i -> p[i]` acting on coordinate vectors.
pub fn permutation_matrix<S: Scalar>(p: &[usize]) -> Matrix<S> {
    let n = p.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &j) in p.iter().enumerate() {
        m[(j, i)] = S::one();
    }
    m
}

fn perm_rep(sig: SurfaceSig, perms: &[&[usize]]) -> CycRep {
    Representation::new(sig, perms.iter().map(|p| permutation_matrix(p)).collect())
        .expect("permutation images satisfy the relator")
}

/// One-dimensional representation with values `zeta_{q_k}^{e_k}`.
pub fn rank1_rep(sig: SurfaceSig, values: &[(u64, i64)]) -> CycRep {
    Representation::new(
        sig,
        values.iter().map(|&(q, e)| Matrix::diagonal(vec![Cyc::root_of_unity(q, e)])).collect(),
    )
    .expect("rank one images commute")
}

pub fn punctured_torus() -> SurfaceSig {
    SurfaceSig::new(1, 1, 0)
}

/// `a -> (12)`, `b -> (123)` on the once-punctured torus.
pub fn s3_torus() -> CycRep {
    perm_rep(punctured_torus(), &[&[1, 0, 2], &[1, 2, 0]])
}

/// `a -> (12)`, `b -> (1234)` on the once-punctured torus.
pub fn s4_torus() -> CycRep {
    perm_rep(punctured_torus(), &[&[1, 0, 2, 3], &[1, 2, 3, 0]])
}

/// Genus two, `a2 = b1`, `b2 = a1` so that the relator is trivial.
pub fn s3_genus2() -> CycRep {
    perm_rep(SurfaceSig::closed(2), &[&[1, 0, 2], &[1, 2, 0], &[1, 2, 0], &[1, 0, 2]])
}

/// Torus with two punctures through `S_4`.
pub fn s4_twice_punctured_torus() -> CycRep {
    perm_rep(SurfaceSig::new(1, 2, 0), &[&[1, 0, 2, 3], &[1, 2, 3, 0], &[2, 1, 0, 3]])
}

/// Conjugation representation on `Q[F_2] / I^3`.
pub fn augmentation_torus() -> CycRep {
    to_cyc(&conjugation_rep(punctured_torus(), 3).expect("free group"))
}

/// Copies a rational representation into the cyclotomic field.
pub fn to_cyc(rho: &Representation<Rational>) -> CycRep {
    Representation::with_presentation(
        rho.sig(),
        rho.presentation().clone(),
        rho.images().iter().map(|m| m.map(|x| Cyc::rational(x.clone()))).collect(),
    )
    .expect("same relators")
}

/// Ten representations with finite mapping class group orbits.
pub fn mcg_finite_family() -> Vec<(&'static str, CycRep)> {
    let t = punctured_torus();
    vec![
        ("rank1 (-1, 1)", rank1_rep(t, &[(2, 1), (1, 0)])),
        ("rank1 (z3, 1)", rank1_rep(t, &[(3, 1), (1, 0)])),
        ("rank1 (z4, z6)", rank1_rep(t, &[(4, 1), (6, 1)])),
        ("rank1 (z5^2, z5)", rank1_rep(t, &[(5, 2), (5, 1)])),
        ("rank1 genus 2", rank1_rep(SurfaceSig::closed(2), &[(2, 1), (1, 0), (1, 0), (1, 0)])),
        ("S3 torus", s3_torus()),
        ("S4 torus", s4_torus()),
        ("S3 genus 2", s3_genus2()),
        ("S4 twice punctured torus", s4_twice_punctured_torus()),
        ("augmentation k=2 n=3", augmentation_torus()),
    ]
}

/// `chi1 + chi2` with `chi1 = (a -> -1, b -> 1)` and `chi2 = (a -> -1, b -> -1)`;
/// the twist about `a` exchanges the two characters.
pub fn swapped_characters() -> CycRep {
    Representation::new(
        punctured_torus(),
        vec![
            Matrix::diagonal(vec![Cyc::integer(-1), Cyc::integer(-1)]),
            Matrix::diagonal(vec![Cyc::integer(1), Cyc::integer(-1)]),
        ],
    )
    .expect("diagonal images")
}

/// `a -> [[1, 2], [0, 1]]`, `b -> [[1, 3], [0, 1]]`.
pub fn block_unipotent_torus() -> CycRep {
    let u = |f: i64| {
        Matrix::from_rows(vec![
            vec![Cyc::integer(1), Cyc::integer(f)],
            vec![Cyc::integer(0), Cyc::integer(1)],
        ])
    };
    Representation::new(punctured_torus(), vec![u(2), u(3)]).expect("unipotent images")
}
