//! Algebra spans, invariant subspaces and semisimplification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{intertwiners, reduced_words, RepError, Representation};
use crate::linear::unipotent::strip_cyclotomic;
use crate::linear::{rational_roots, EchelonBasis, Matrix, RationalNorm, Scalar};
use crate::word::Word;

fn flatten<S: Scalar>(m: &Matrix<S>) -> Vec<S> {
    m.data().to_vec()
}

/// Dimension of the span of `rho(w)` over all words of length at most `max_len`.
pub fn burnside_span_dim<S: Scalar>(rho: &Representation<S>, max_len: usize) -> usize {
    let m = rho.dim();
    let mut basis = EchelonBasis::new(m * m);
    basis.insert(&flatten(&Matrix::<S>::identity(m)));
    for w in reduced_words(rho.rank(), max_len) {
        if basis.len() == m * m {
            break;
        }
        basis.insert(&flatten(&rho.evaluate(&w).expect("same rank")));
    }
    basis.len()
}

/// Basis of the associative algebra generated by the images.
fn algebra_basis<S: Scalar>(rho: &Representation<S>) -> Vec<Matrix<S>> {
    let m = rho.dim();
    let mut span = EchelonBasis::new(m * m);
    let id = Matrix::identity(m);
    span.insert(&flatten(&id));
    let mut found = vec![id];
    let mut next = 0;
    while next < found.len() && span.len() < m * m {
        let x = found[next].clone();
        next += 1;
        for g in rho.images() {
            let y = x.mul(g);
            if span.insert(&flatten(&y)) {
                found.push(y);
            }
        }
    }
    found
}

/// Dimension of the algebra generated by the images (`m^2` iff absolutely irreducible).
pub fn algebra_dim<S: Scalar>(rho: &Representation<S>) -> usize {
    algebra_basis(rho).len()
}

/// Coefficients of `rho(target)` against the trace-dual basis of `rho(g_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualExpansion<S> {
    /// `Tr(rho(g_i)^-1 rho(target))`.
    pub coefficients: Vec<S>,
    /// `e_j` with `Tr(rho(g_i)^-1 e_j) = delta_ij`.
    pub dual_basis: Vec<Matrix<S>>,
    /// `sum_i coefficients[i] e_i`.
    pub reconstruction: Matrix<S>,
}

pub fn dual_basis_expand<S: Scalar>(
    rho: &Representation<S>,
    basis: &[Word],
    target: &Word,
) -> Result<DualExpansion<S>, RepError> {
    let m = rho.dim();
    if basis.len() != m * m {
        return Err(RepError::NotSpanning);
    }
    let invs = basis
        .iter()
        .map(|w| rho.evaluate(&w.invert()))
        .collect::<Result<Vec<_>, RepError>>()?;
    // Tr(N e) = <vec(N^T), vec(e)>
    let gram = Matrix::from_rows(invs.iter().map(|n| flatten(&n.transpose())).collect());
    let solved = gram.inverse().map_err(|_| RepError::NotSpanning)?;
    let dual_basis: Vec<Matrix<S>> =
        (0..m * m).map(|j| Matrix::from_vec(m, m, solved.column(j))).collect();
    let value = rho.evaluate(target)?;
    let coefficients: Vec<S> = invs.iter().map(|n| n.mul(&value).trace()).collect();
    let reconstruction = dual_basis
        .iter()
        .zip(&coefficients)
        .fold(Matrix::zeros(m, m), |acc, (e, c)| acc.add(&e.scale(c)));
    Ok(DualExpansion { coefficients, dual_basis, reconstruction })
}

#[derive(Debug, Clone, PartialEq)]
pub enum InvariantOutcome<S> {
    /// Basis of a proper nonzero subspace stable under every generator.
    Subspace(Vec<Vec<S>>),
    /// The images span the full matrix algebra.
    Irreducible { algebra_dim: usize },
    /// No stable subspace was found, but the algebra is not the full matrix
    /// algebra; the representation may split only over a larger field.
    Undetermined { algebra_dim: usize },
}

/// Smallest subspace containing `v` and stable under `mats`.
fn spin<S: Scalar>(mats: &[Matrix<S>], v: &[S]) -> EchelonBasis<S> {
    let mut span = EchelonBasis::new(v.len());
    if !span.insert(v) {
        return span;
    }
    let mut queue = vec![v.to_vec()];
    while let Some(x) = queue.pop() {
        for m in mats {
            let y = m.mul_vec(&x);
            if span.insert(&y) {
                queue.push(y);
            }
        }
    }
    span
}

pub(crate) fn eigenvalue_candidates<S: RationalNorm>(x: &Matrix<S>) -> Vec<S> {
    let norm = S::norm_poly(&x.charpoly());
    let mut out: Vec<S> = rational_roots(&norm).iter().map(S::from_rational).collect();
    let (factors, _) = strip_cyclotomic(&norm);
    for (d, _) in factors {
        if d <= 2 {
            continue;
        }
        for k in (1..d).filter(|k| num_integer::gcd(*k, d) == 1) {
            if let Some(z) = S::root_of_unity_elem(d, k) {
                out.push(z);
            }
        }
    }
    out
}

fn find_stable<S: RationalNorm>(mats: &[Matrix<S>], probes: &[Matrix<S>], m: usize) -> Option<Vec<Vec<S>>> {
    let proper = |b: &EchelonBasis<S>| b.len() < m;
    for i in 0..m {
        let mut e = vec![S::zero(); m];
        e[i] = S::one();
        let b = spin(mats, &e);
        if proper(&b) {
            return Some(b.vectors());
        }
    }
    for x in probes {
        for lambda in eigenvalue_candidates(x) {
            let shifted = x.sub(&Matrix::identity(m).scale(&lambda));
            for v in shifted.nullspace() {
                let b = spin(mats, &v);
                if proper(&b) {
                    return Some(b.vectors());
                }
            }
        }
    }
    None
}

/// Finds a proper stable subspace, or certifies irreducibility via the
/// dimension of the generated algebra.
///
/// Candidate vectors are spun up from coordinate vectors and from
/// eigenvectors of generator images, algebra elements and commutant
/// elements. The same search runs on the transposed images, whose stable
/// subspaces give stable subspaces of `rho` by orthogonal complement.
pub fn invariant_subspace<S: RationalNorm>(rho: &Representation<S>, seed: u64) -> InvariantOutcome<S> {
    let m = rho.dim();
    let alg = algebra_basis(rho);
    if alg.len() == m * m {
        return InvariantOutcome::Irreducible { algebra_dim: alg.len() };
    }
    let mut probes: Vec<Matrix<S>> = rho.images().to_vec();
    probes.extend(intertwiners(rho, rho).expect("same group").into_iter().filter(|b| b.as_scalar().is_none()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4 {
        let combo = alg.iter().fold(Matrix::zeros(m, m), |acc, b| {
            acc.add(&b.scale(&S::from_i64(rng.gen_range(-5..=5))))
        });
        probes.push(combo);
    }
    probes.extend(alg.iter().skip(1).cloned());
    let mats = rho.images().to_vec();
    if let Some(w) = find_stable(&mats, &probes, m) {
        return InvariantOutcome::Subspace(w);
    }
    let mats_t: Vec<Matrix<S>> = mats.iter().map(|x| x.transpose()).collect();
    let probes_t: Vec<Matrix<S>> = probes.iter().map(|x| x.transpose()).collect();
    if let Some(u) = find_stable(&mats_t, &probes_t, m) {
        let complement = Matrix::from_rows(u).nullspace();
        return InvariantOutcome::Subspace(Matrix::row_space(&complement, m));
    }
    InvariantOutcome::Undetermined { algebra_dim: alg.len() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Semisimplification<S> {
    /// Block-diagonal direct sum of the factors.
    pub rep: Representation<S>,
    pub factors: Vec<Representation<S>>,
    /// Whether every factor was certified irreducible.
    pub complete: bool,
    /// Traces of the input and output agree on all words of length at most 3.
    pub character_preserved: bool,
}

fn split<S: RationalNorm>(
    rho: &Representation<S>,
    seed: u64,
    factors: &mut Vec<Representation<S>>,
    complete: &mut bool,
) {
    let m = rho.dim();
    let w = match invariant_subspace(rho, seed) {
        InvariantOutcome::Subspace(w) => w,
        InvariantOutcome::Irreducible { .. } => {
            factors.push(rho.clone());
            return;
        }
        InvariantOutcome::Undetermined { .. } => {
            *complete = false;
            factors.push(rho.clone());
            return;
        }
    };
    let k = w.len();
    let mut span = EchelonBasis::new(m);
    let mut columns = Vec::with_capacity(m);
    for v in &w {
        span.insert(v);
        columns.push(v.clone());
    }
    for i in 0..m {
        let mut e = vec![S::zero(); m];
        e[i] = S::one();
        if span.insert(&e) {
            columns.push(e);
        }
    }
    let p = Matrix::from_columns(&columns);
    let pi = p.inverse().expect("completed basis");
    let conj: Vec<Matrix<S>> = rho.images().iter().map(|x| pi.mul(x).mul(&p)).collect();
    let sub: Vec<Matrix<S>> = conj.iter().map(|x| x.submatrix(0..k, 0..k)).collect();
    let quo: Vec<Matrix<S>> = conj.iter().map(|x| x.submatrix(k..m, k..m)).collect();
    let sub = rho.with_images(sub).expect("restriction to a stable subspace");
    let quo = rho.with_images(quo).expect("quotient by a stable subspace");
    split(&sub, seed, factors, complete);
    split(&quo, seed, factors, complete);
}

/// Direct sum of composition factors found by recursive splitting.
pub fn semisimplify<S: RationalNorm>(rho: &Representation<S>, seed: u64) -> Semisimplification<S> {
    let mut factors = Vec::new();
    let mut complete = true;
    split(rho, seed, &mut factors, &mut complete);
    let images = (0..rho.rank())
        .map(|s| {
            factors[1..]
                .iter()
                .fold(factors[0].images()[s].clone(), |acc, f| acc.direct_sum(&f.images()[s]))
        })
        .collect();
    let rep = rho.with_images(images).expect("direct sum of factors");
    let character_preserved = reduced_words(rho.rank(), 3).iter().all(|w| {
        rep.evaluate(w).expect("same rank").trace() == rho.evaluate(w).expect("same rank").trace()
    });
    Semisimplification { rep, factors, complete, character_preserved }
}
