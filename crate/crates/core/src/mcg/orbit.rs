//! Orbits of isomorphism classes under a set of mapping classes.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::action::act;
use super::twist::MappingClass;
use crate::linear::Scalar;
use crate::rep::{are_isomorphic, fingerprint, IsoConfig, IsoVerdict, RepError, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitConfig {
    /// Maximum number of distinct classes stored.
    pub cutoff: usize,
    pub fingerprint_len: usize,
    pub workers: usize,
    pub iso: IsoConfig,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig { cutoff: 1000, fingerprint_len: 2, workers: 1, iso: IsoConfig::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitStatus {
    Finite,
    CutoffExceeded,
}

/// One step of a witness path: generator index and direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub generator: usize,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitElement<S> {
    pub rep: Representation<S>,
    pub fingerprint: String,
    /// Steps applied in order to the base point.
    pub witness: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport<S> {
    pub status: OrbitStatus,
    pub elements: Vec<OrbitElement<S>>,
    /// Isomorphism tests that returned inconclusive; the size is then only
    /// an upper bound on the number of classes.
    pub inconclusive: usize,
    /// Unexpanded classes when the cutoff was hit.
    pub frontier: usize,
    pub generators: Vec<String>,
    pub config: OrbitConfig,
}

impl<S> OrbitReport<S> {
    pub fn size(&self) -> Option<usize> {
        (self.status == OrbitStatus::Finite).then_some(self.elements.len())
    }
}

/// Parent index, step, image and its fingerprint.
type Candidate<S> = (usize, Step, Representation<S>, String);

/// `Ta1` for the twist about `a1`, `ta1` for its inverse.
pub fn witness_label(gens: &[MappingClass], step: Step) -> String {
    let prefix = if step.inverse { "t" } else { "T" };
    format!("{prefix}{}", gens[step.generator].label)
}

pub fn format_witness(gens: &[MappingClass], witness: &[Step]) -> String {
    witness.iter().map(|&s| witness_label(gens, s)).collect::<Vec<_>>().join(" ")
}

pub fn parse_witness(gens: &[MappingClass], text: &str) -> Option<Vec<Step>> {
    text.split_whitespace()
        .map(|tok| {
            let (head, label) = tok.split_at(1);
            let inverse = match head {
                "T" => false,
                "t" => true,
                _ => return None,
            };
            let generator = gens.iter().position(|g| g.label == label)?;
            Some(Step { generator, inverse })
        })
        .collect()
}

/// Applies the witness steps to `rho`.
pub fn replay<S: Scalar>(
    rho: &Representation<S>,
    gens: &[MappingClass],
    witness: &[Step],
) -> Result<Representation<S>, RepError> {
    witness.iter().try_fold(rho.clone(), |acc, s| {
        let g = &gens[s.generator];
        act(if s.inverse { &g.backward } else { &g.forward }, &acc)
    })
}

enum Membership {
    Known,
    New { inconclusive: usize },
}

fn classify<S: Scalar>(
    candidate: &Representation<S>,
    fp: &str,
    elements: &[OrbitElement<S>],
    buckets: &HashMap<String, Vec<usize>>,
    cfg: &IsoConfig,
) -> Result<Membership, RepError> {
    let mut inconclusive = 0;
    for &k in buckets.get(fp).map(Vec::as_slice).unwrap_or(&[]) {
        let stored = &elements[k].rep;
        if stored.images() == candidate.images() {
            return Ok(Membership::Known);
        }
        match are_isomorphic(stored, candidate, cfg)? {
            IsoVerdict::Yes { .. } => return Ok(Membership::Known),
            IsoVerdict::No { .. } => {}
            IsoVerdict::Inconclusive { .. } => inconclusive += 1,
        }
    }
    Ok(Membership::New { inconclusive })
}

/// Breadth-first search over generators and their inverses. Candidates are
/// bucketed by fingerprint and compared by [`are_isomorphic`]; the frontier
/// is expanded in parallel and merged in a fixed order.
pub fn orbit<S: Scalar>(
    rho: &Representation<S>,
    gens: &[MappingClass],
    cfg: &OrbitConfig,
) -> Result<OrbitReport<S>, RepError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| orbit_inner(rho, gens, cfg))
}

fn orbit_inner<S: Scalar>(
    rho: &Representation<S>,
    gens: &[MappingClass],
    cfg: &OrbitConfig,
) -> Result<OrbitReport<S>, RepError> {
    let steps: Vec<Step> = (0..gens.len())
        .flat_map(|g| [Step { generator: g, inverse: false }, Step { generator: g, inverse: true }])
        .collect();
    let fp0 = fingerprint(rho, cfg.fingerprint_len);
    let mut elements = vec![OrbitElement { rep: rho.clone(), fingerprint: fp0.clone(), witness: Vec::new() }];
    let mut buckets: HashMap<String, Vec<usize>> = HashMap::from([(fp0, vec![0])]);
    let mut inconclusive = 0;
    let mut layer = vec![0usize];
    let mut status = OrbitStatus::Finite;
    let mut frontier = 0;
    'search: while !layer.is_empty() {
        let tasks: Vec<(usize, Step)> =
            layer.iter().flat_map(|&k| steps.iter().map(move |&s| (k, s))).collect();
        let candidates: Vec<Result<Candidate<S>, RepError>> = tasks
            .par_iter()
            .map(|&(k, s)| {
                let g = &gens[s.generator];
                let image = act(if s.inverse { &g.backward } else { &g.forward }, &elements[k].rep)?;
                let fp = fingerprint(&image, cfg.fingerprint_len);
                Ok((k, s, image, fp))
            })
            .collect();
        let mut next = Vec::new();
        for (idx, c) in candidates.into_iter().enumerate() {
            let (k, s, image, fp) = c?;
            match classify(&image, &fp, &elements, &buckets, &cfg.iso)? {
                Membership::Known => {}
                Membership::New { inconclusive: inc } => {
                    if elements.len() >= cfg.cutoff {
                        status = OrbitStatus::CutoffExceeded;
                        frontier = layer.len() - idx / steps.len() + next.len();
                        break 'search;
                    }
                    inconclusive += inc;
                    let mut witness = elements[k].witness.clone();
                    witness.push(s);
                    buckets.entry(fp.clone()).or_default().push(elements.len());
                    next.push(elements.len());
                    elements.push(OrbitElement { rep: image, fingerprint: fp, witness });
                }
            }
        }
        layer = next;
    }
    Ok(OrbitReport {
        status,
        elements,
        inconclusive,
        frontier,
        generators: gens.iter().map(|g| g.label.clone()).collect(),
        config: *cfg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{Cyc, Matrix};
    use crate::mcg::mcg_generators;
    use crate::surface::SurfaceSig;

    fn torus() -> SurfaceSig {
        SurfaceSig::new(1, 1, 0)
    }

    fn rank1(a: Cyc, b: Cyc) -> Representation<Cyc> {
        Representation::new(torus(), vec![Matrix::diagonal(vec![a]), Matrix::diagonal(vec![b])]).unwrap()
    }

    #[test]
    fn small_orbits() {
        let gens = mcg_generators(torus()).unwrap();
        let cfg = OrbitConfig::default();
        let t = Representation::<Cyc>::trivial(torus(), 2);
        assert_eq!(orbit(&t, &gens, &cfg).unwrap().size(), Some(1));
        let rho = rank1(Cyc::integer(-1), Cyc::integer(1));
        let report = orbit(&rho, &gens, &cfg).unwrap();
        assert_eq!(report.size(), Some(3));
        for e in &report.elements {
            assert_eq!(replay(&rho, &gens, &e.witness).unwrap(), e.rep);
            let text = format_witness(&gens, &e.witness);
            assert_eq!(parse_witness(&gens, &text).unwrap(), e.witness);
        }
        let infinite = rank1(Cyc::integer(2), Cyc::integer(1));
        let cut = OrbitConfig { cutoff: 50, ..cfg };
        let report = orbit(&infinite, &gens, &cut).unwrap();
        assert_eq!(report.status, OrbitStatus::CutoffExceeded);
        assert_eq!(report.elements.len(), 50);
    }

    #[test]
    fn worker_count_does_not_change_reports() {
        let gens = mcg_generators(torus()).unwrap();
        let rho = rank1(Cyc::root_of_unity(3, 1), Cyc::integer(1));
        let one = orbit(&rho, &gens, &OrbitConfig::default()).unwrap();
        let four = orbit(&rho, &gens, &OrbitConfig { workers: 4, ..OrbitConfig::default() }).unwrap();
        assert_eq!(one.size(), Some(8));
        assert_eq!(one.elements, four.elements);
    }
}
