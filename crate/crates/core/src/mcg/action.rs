//! Precomposition action, twist intertwiners and reducibility after cutting.

use thiserror::Error;

use super::twist::{twist_in, TwistError, TwistSpec};
use crate::linear::{matrix_order, EchelonBasis, Matrix, RationalNorm, Scalar};
use crate::rep::{are_isomorphic, eigenvalue_candidates, IsoConfig, IsoVerdict, RepError, Representation};
use crate::surface::{cut_along, standard_curves, standard_presentation, Atlas, CutResult};
use crate::word::Pi1Endo;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McgError {
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("representation is not given on the standard presentation")]
    NonStandardPresentation,
    #[error("no twist intertwiner with m <= {0}")]
    NotFound(u64),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("the intertwiner has no eigenvalue in the coefficient field")]
    NoEigenspace,
}

/// `(e . rho)(s) = rho(e(s))`.
pub fn act<S: Scalar>(e: &Pi1Endo, rho: &Representation<S>) -> Result<Representation<S>, RepError> {
    let images = e
        .images()
        .iter()
        .map(|w| rho.evaluate(w))
        .collect::<Result<Vec<_>, _>>()?;
    rho.with_images(images)
}

pub(crate) fn atlas_for<S: Scalar>(rho: &Representation<S>) -> Result<Atlas, McgError> {
    if *rho.presentation() != standard_presentation(rho.sig()) {
        return Err(McgError::NonStandardPresentation);
    }
    Ok(standard_curves(rho.sig()).map_err(TwistError::from)?)
}

/// `rho(T^m s) = g rho(s) g^-1` for every generator `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistIntertwiner<S> {
    pub m: u64,
    pub g: Matrix<S>,
}

fn verify_twist_intertwiner<S: Scalar>(
    rho: &Representation<S>,
    twisted: &Representation<S>,
    g: &Matrix<S>,
) -> bool {
    rho.images()
        .iter()
        .zip(twisted.images())
        .all(|(x, y)| g.mul(x) == y.mul(g))
}

/// Least `m <= m_max` such that `T_curve^m . rho` is conjugate to `rho`.
/// When the twisted representation equals `rho` the witness is the identity.
pub fn find_twist_intertwiner<S: Scalar>(
    rho: &Representation<S>,
    curve: &str,
    m_max: u64,
    cfg: &IsoConfig,
) -> Result<Option<TwistIntertwiner<S>>, McgError> {
    let atlas = atlas_for(rho)?;
    let t = twist_in(&atlas, &TwistSpec::new(curve, 1))?;
    let mut twisted = rho.clone();
    for m in 1..=m_max {
        twisted = act(&t, &twisted)?;
        let g = if twisted.images() == rho.images() {
            Matrix::identity(rho.dim())
        } else {
            match are_isomorphic(rho, &twisted, cfg)? {
                IsoVerdict::Yes { witness } => witness,
                _ => continue,
            }
        };
        if !verify_twist_intertwiner(rho, &twisted, &g) {
            return Err(McgError::Certificate(format!("intertwiner at m = {m} does not verify")));
        }
        return Ok(Some(TwistIntertwiner { m, g }));
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq)]
pub enum CutReducibility<S> {
    /// The intertwiner is scalar, so `rho(curve)^m = I`; `order` is the
    /// exact order of `rho(curve)`.
    Scalar { m: u64, order: u64, dual_curve: String },
    /// An eigenspace of a non-scalar intertwiner, stable under the image of
    /// the fundamental group of the cut surface.
    Subspace { m: u64, g: Matrix<S>, eigenvalue: S, basis: Vec<Vec<S>>, cut: CutResult },
}

/// Splits into the scalar and non-scalar cases of a twist intertwiner about
/// a non-separating atlas curve, and certifies the outcome exactly.
pub fn reducibility_after_cut<S: RationalNorm>(
    rho: &Representation<S>,
    curve: &str,
    m_max: u64,
    cfg: &IsoConfig,
) -> Result<CutReducibility<S>, McgError> {
    let atlas = atlas_for(rho)?;
    let TwistIntertwiner { m, g } =
        find_twist_intertwiner(rho, curve, m_max, cfg)?.ok_or(McgError::NotFound(m_max))?;
    let gamma = atlas.curve(curve).map_err(TwistError::from)?;
    if g.as_scalar().is_some() {
        let dual = atlas.dual_curve(curve).map_err(TwistError::from)?;
        let t_m = twist_in(&atlas, &TwistSpec::new(curve, m as i64))?;
        let moved = rho.evaluate(&t_m.apply(&dual.word).map_err(RepError::from)?)?;
        if moved != rho.evaluate(&dual.word)? {
            return Err(McgError::Certificate("rho(T^m delta) != rho(delta)".into()));
        }
        let image = rho.evaluate(&gamma.word)?;
        let order = matrix_order(&image, m)
            .ok_or_else(|| McgError::Certificate("rho(curve)^m != I".into()))?;
        return Ok(CutReducibility::Scalar { m, order, dual_curve: dual.name.clone() });
    }
    let cut = cut_along(&atlas, &[curve]).map_err(TwistError::from)?;
    let n = rho.dim();
    for lambda in eigenvalue_candidates(&g) {
        let basis = g.sub(&Matrix::identity(n).scale(&lambda)).nullspace();
        if basis.is_empty() {
            continue;
        }
        let mut span = EchelonBasis::new(n);
        for v in &basis {
            span.insert(v);
        }
        for h in &cut.embedding {
            let x = rho.evaluate(h)?;
            if !basis.iter().all(|v| span.contains(&x.mul_vec(v))) {
                return Err(McgError::Certificate("eigenspace not stable under the cut surface".into()));
            }
        }
        return Ok(CutReducibility::Subspace { m, g, eigenvalue: lambda, basis, cut });
    }
    Err(McgError::NoEigenspace)
}
