use mcg_finite::augmentation::{conjugation_rep, verify_mcg_fixed};
use mcg_finite::covers::{enumerate, pullback};
use mcg_finite::json::{
    cover_to_json, cyc_to_json, matrix_from_json, matrix_to_json, rational_matrix_to_json, rational_to_json,
    rep_to_json, surface_to_json,
};
use mcg_finite::linear::scalar::parse_rational;
use mcg_finite::linear::is_quasi_unipotent;
use mcg_finite::mcg::{
    format_witness, mcg_generators, orbit, reducibility_after_cut, twist_auto, CutReducibility, OrbitConfig,
    OrbitStatus, TwistSpec,
};
use mcg_finite::rank1::{sp_orbit, torsion_criterion, SpOrbit, TorsionPoint};
use mcg_finite::rep::{
    finite_image_closure, invariant_subspace, quasiunipotent_on_set, reduced_words, semisimplify, sigma_extract,
    Closure, InvariantOutcome, IsoConfig, Semisimplification,
};
use mcg_finite::surface::{
    cut_along, generator_names, intersection_pairing, is_nontrivial_mod_boundary, standard_curves, SurfaceSig,
};
use mcg_finite::{Cyc, CycRep, Rational, Representation};
use serde_json::{json, Value};

use crate::args::{CheckCmd, Command, CoverCmd, ExamplesCmd, GlobalOpts, Rank1Cmd, RepSource, SigmaCmd, TwistCmd, VerifyCmd};
use crate::input::{instances, load_cover, parse_surface, CliError};
use crate::lemmas;

/// Result payload and whether every checked property held.
pub struct Outcome {
    pub result: Value,
    pub holds: bool,
}

impl From<Value> for Outcome {
    fn from(result: Value) -> Self {
        Outcome { result, holds: true }
    }
}

pub fn iso_config(g: &GlobalOpts) -> IsoConfig {
    IsoConfig { seed: g.seed, ..IsoConfig::default() }
}

pub fn orbit_config(g: &GlobalOpts) -> OrbitConfig {
    OrbitConfig {
        cutoff: g.cutoff as usize,
        fingerprint_len: g.fingerprint_len,
        workers: g.workers as usize,
        iso: iso_config(g),
    }
}

pub fn run(cmd: &Command, g: &GlobalOpts) -> Result<Outcome, CliError> {
    match cmd {
        Command::Instances => Ok(json!(instances()
            .iter()
            .map(|(n, r)| json!({"name": n, "surface": surface_to_json(r.sig()), "dim": r.dim()}))
            .collect::<Vec<_>>())
        .into()),
        Command::Orbit(src) => orbit_cmd(&src.load()?, g).map(Into::into),
        Command::Twist(TwistCmd::Apply { curve, power, surface, rep }) => twist_apply(curve, *power, surface, rep),
        Command::Cover(c) => cover_cmd(c, g),
        Command::Cut { surface, curves, rep } => cut_cmd(surface, curves, rep, g),
        Command::Check(c) => check_cmd(c, g),
        Command::Semisimplify(src) => Ok(semisimplification_json(&semisimplify(&src.load()?, g.seed)).into()),
        Command::Sigma(c) => sigma_cmd(c),
        Command::Rank1(c) => rank1_cmd(c, g),
        Command::Examples(ExamplesCmd::Augmentation { rank, trunc, verify }) => augmentation_cmd(*rank, *trunc, *verify, g),
        Command::Verify(VerifyCmd::Lemma { name }) => lemmas::run(*name, g),
    }
}

fn orbit_cmd(rho: &CycRep, g: &GlobalOpts) -> Result<Value, CliError> {
    let gens = mcg_generators(rho.sig()).map_err(CliError::pre)?;
    let report = orbit(rho, &gens, &orbit_config(g)).map_err(CliError::pre)?;
    let elements: Vec<Value> = report
        .elements
        .iter()
        .map(|e| json!({"fingerprint": e.fingerprint, "witness": format_witness(&gens, &e.witness)}))
        .collect();
    Ok(json!({
        "status": report.status,
        "verdict": match report.status {
            OrbitStatus::Finite => "finite",
            OrbitStatus::CutoffExceeded => "cutoff_exceeded",
        },
        "size": report.size(),
        "explored": report.elements.len(),
        "frontier": report.frontier,
        "inconclusive": report.inconclusive,
        "generators": report.generators,
        "elements": elements,
    }))
}

fn surface_or_rep(surface: &Option<String>, rep: &RepSource) -> Result<(SurfaceSig, Option<CycRep>), CliError> {
    let rho = if rep.is_given() { Some(rep.load()?) } else { None };
    let sig = match (surface, &rho) {
        (Some(s), Some(r)) => {
            let sig = parse_surface(s)?;
            if sig != r.sig() {
                return Err(CliError::Precondition(format!("surface {sig} does not match the representation")));
            }
            sig
        }
        (Some(s), None) => parse_surface(s)?,
        (None, Some(r)) => r.sig(),
        (None, None) => return Err(CliError::Parse("give --surface or a representation".into())),
    };
    Ok((sig, rho))
}

fn twist_apply(curve: &str, power: i64, surface: &Option<String>, rep: &RepSource) -> Result<Outcome, CliError> {
    let (sig, rho) = surface_or_rep(surface, rep)?;
    let e = twist_auto(sig, &TwistSpec::new(curve, power)).map_err(CliError::pre)?;
    let names = generator_names(sig);
    let images: serde_json::Map<String, Value> =
        names.iter().zip(e.images()).map(|(n, w)| (n.clone(), json!(w.format(&names)))).collect();
    let mut out = json!({
        "surface": surface_to_json(sig),
        "curve": curve,
        "power": power,
        "images": images,
        "h1_matrix": e.h1_matrix(),
    });
    if let Some(rho) = rho {
        let moved = mcg_finite::mcg::act(&e, &rho).map_err(CliError::pre)?;
        out["representation"] = rep_to_json(&moved);
    }
    Ok(out.into())
}

fn cover_cmd(c: &CoverCmd, g: &GlobalOpts) -> Result<Outcome, CliError> {
    match c {
        CoverCmd::Enumerate { surface, max_degree } => {
            let sig = parse_surface(surface)?;
            let covers = enumerate(sig, *max_degree);
            let counts: Vec<usize> = (1..=*max_degree).map(|d| covers.iter().filter(|c| c.degree == d).count()).collect();
            Ok(json!({
                "surface": surface_to_json(sig),
                "max_degree": max_degree,
                "counts": counts,
                "covers": covers.iter().map(cover_to_json).collect::<Vec<_>>(),
            })
            .into())
        }
        CoverCmd::Pullback { cover, rep } => {
            let rho = rep.load()?;
            let cover = load_cover(cover, Some(rho.sig()))?;
            if cover.base != rho.sig() {
                return Err(CliError::Precondition("cover base differs from the representation's surface".into()));
            }
            let up = pullback(&rho, &cover)?;
            let closure = |r: &CycRep| finite_image_closure(r, g.cutoff as usize).order();
            Ok(json!({
                "cover": cover_to_json(&cover),
                "representation": rep_to_json(&up),
                "base_image_order": closure(&rho),
                "pullback_image_order": closure(&up),
            })
            .into())
        }
    }
}

fn cut_cmd(surface: &Option<String>, curves: &[String], rep: &RepSource, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let (sig, rho) = surface_or_rep(surface, rep)?;
    let atlas = standard_curves(sig).map_err(CliError::pre)?;
    let names: Vec<&str> = curves.iter().map(String::as_str).collect();
    let cut = cut_along(&atlas, &names).map_err(CliError::pre)?;
    let gen_names = generator_names(sig);
    let mut out = json!({
        "surface": surface_to_json(sig),
        "curves": curves,
        "cut_surface": surface_to_json(cut.sig),
        "embedding": cut.embedding.iter().map(|w| w.format(&gen_names)).collect::<Vec<_>>(),
        "boundary_words": cut.boundary_words.iter().map(|w| w.format(&gen_names)).collect::<Vec<_>>(),
    });
    if let Some(rho) = rho {
        let [curve] = curves else {
            return Err(CliError::Precondition("reducibility after cut takes a single curve".into()));
        };
        out["reducibility"] = match reducibility_after_cut(&rho, curve, g.cutoff, &iso_config(g)).map_err(CliError::pre)? {
            CutReducibility::Scalar { m, order, dual_curve } => json!({
                "case": "scalar", "m": m, "order": order, "dual_curve": dual_curve,
            }),
            CutReducibility::Subspace { m, g, eigenvalue, basis, .. } => json!({
                "case": "subspace",
                "m": m,
                "intertwiner": matrix_to_json(&g),
                "eigenvalue": cyc_to_json(&eigenvalue),
                "basis": vectors_json(&basis),
            }),
        };
    }
    Ok(out.into())
}

pub fn vectors_json(vs: &[Vec<Cyc>]) -> Value {
    json!(vs.iter().map(|v| v.iter().map(cyc_to_json).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Reduced words up to `max_len` that are nontrivial modulo boundary.
pub fn nontrivial_words(sig: SurfaceSig, max_len: usize) -> Vec<mcg_finite::Word> {
    reduced_words(sig.rank(), max_len)
        .into_iter()
        .filter(|w| is_nontrivial_mod_boundary(sig, w))
        .collect()
}

fn check_cmd(c: &CheckCmd, g: &GlobalOpts) -> Result<Outcome, CliError> {
    match c {
        CheckCmd::Quasiunipotent { matrix, rep } => {
            if let Some(text) = matrix {
                let v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
                let m = matrix_from_json(&v)?;
                if !m.is_square() {
                    return Err(CliError::Precondition("matrix is not square".into()));
                }
                let cert = is_quasi_unipotent(&m);
                return Ok(json!({"verdict": cert.is_quasi_unipotent(), "certificate": cert}).into());
            }
            let rho = rep.load()?;
            let words = nontrivial_words(rho.sig(), g.fingerprint_len.max(1));
            let verdicts = quasiunipotent_on_set(&rho, &words);
            let all = verdicts.iter().all(|v| v.verdict.is_quasi_unipotent());
            Ok(json!({"verdict": all, "words_checked": verdicts.len(), "certificates": verdicts}).into())
        }
        CheckCmd::FiniteImage(src) => {
            let rho = src.load()?;
            Ok(match finite_image_closure(&rho, g.cutoff as usize) {
                Closure::Finite { order, .. } => json!({"verdict": "finite", "order": order}),
                Closure::CutoffExceeded { explored } => json!({"verdict": "cutoff_exceeded", "explored": explored}),
            }
            .into())
        }
        CheckCmd::Irreducible(src) => {
            let rho = src.load()?;
            Ok(match invariant_subspace(&rho, g.seed) {
                InvariantOutcome::Subspace(basis) => {
                    json!({"verdict": "reducible", "invariant_subspace": vectors_json(&basis)})
                }
                InvariantOutcome::Irreducible { algebra_dim } => {
                    json!({"verdict": "irreducible", "algebra_dim": algebra_dim})
                }
                InvariantOutcome::Undetermined { algebra_dim } => {
                    json!({"verdict": "undetermined", "algebra_dim": algebra_dim})
                }
            }
            .into())
        }
    }
}

pub fn semisimplification_json(ss: &Semisimplification<Cyc>) -> Value {
    json!({
        "representation": rep_to_json(&ss.rep),
        "factor_dims": ss.factors.iter().map(Representation::dim).collect::<Vec<_>>(),
        "complete": ss.complete,
        "character_preserved": ss.character_preserved,
    })
}

fn sigma_cmd(c: &SigmaCmd) -> Result<Outcome, CliError> {
    match c {
        SigmaCmd::Extract { d1, rep } => {
            let rho = rep.load()?;
            let sigma = sigma_extract(&rho, *d1).map_err(CliError::pre)?;
            let names = generator_names(rho.sig());
            let values: serde_json::Map<String, Value> =
                names.iter().zip(&sigma.values).map(|(n, m)| (n.clone(), matrix_to_json(m))).collect();
            Ok(json!({"d1": sigma.d1, "d2": sigma.d2, "values": values}).into())
        }
        SigmaCmd::TwistTransform { d1, curve, power, rep } => {
            let rho = rep.load()?;
            let sig = rho.sig();
            let atlas = standard_curves(sig).map_err(CliError::pre)?;
            let gamma = atlas.curve(curve).map_err(CliError::pre)?;
            let e = twist_auto(sig, &TwistSpec::new(curve, *power)).map_err(CliError::pre)?;
            let moved = mcg_finite::mcg::act(&e, &rho).map_err(CliError::pre)?;
            let before = sigma_extract(&rho, *d1).map_err(CliError::pre)?;
            let after = sigma_extract(&moved, *d1).map_err(CliError::pre)?;
            let s_gamma = before.on_class(&gamma.h1);
            let names = generator_names(sig);
            let mut rows = Vec::new();
            let mut holds = true;
            for (k, name) in names.iter().enumerate() {
                let mut delta = vec![0; sig.rank()];
                delta[k] = 1;
                let t = intersection_pairing(sig, &delta, &gamma.h1).map_err(CliError::pre)?;
                let predicted = before.values[k].add(&s_gamma.scale(&Cyc::integer(power * t)));
                let ok = predicted == after.values[k];
                holds &= ok;
                rows.push(json!({
                    "generator": name,
                    "sigma": matrix_to_json(&before.values[k]),
                    "sigma_twisted": matrix_to_json(&after.values[k]),
                    "predicted": matrix_to_json(&predicted),
                    "equal": ok,
                }));
            }
            Ok(Outcome { result: json!({"curve": curve, "power": power, "holds": holds, "generators": rows}), holds })
        }
    }
}

fn point_json(p: &TorsionPoint) -> Value {
    json!(p.coords.iter().map(rational_to_json).collect::<Vec<_>>())
}

fn rank1_cmd(c: &Rank1Cmd, g: &GlobalOpts) -> Result<Outcome, CliError> {
    match c {
        Rank1Cmd::Orbit { point } => {
            let coords = point
                .iter()
                .map(|s| parse_rational(s.trim()).ok_or_else(|| CliError::Parse(format!("bad rational `{s}`"))))
                .collect::<Result<Vec<Rational>, _>>()?;
            if coords.is_empty() || coords.len() % 2 != 0 {
                return Err(CliError::Precondition("a point needs an even, positive number of coordinates".into()));
            }
            let p = TorsionPoint::new(coords);
            Ok(match sp_orbit(&p, g.cutoff as usize) {
                SpOrbit::Finite { size, points } => json!({
                    "point": point_json(&p),
                    "verdict": "finite",
                    "size": size,
                    "orbit": points.iter().map(point_json).collect::<Vec<_>>(),
                }),
                SpOrbit::CutoffExceeded { explored } => {
                    json!({"point": point_json(&p), "verdict": "cutoff_exceeded", "explored": explored})
                }
            }
            .into())
        }
        Rank1Cmd::Criterion { trace_len, rep } => {
            let rho = rep.load()?;
            let verdict = torsion_criterion(&rho, g.cutoff as usize, *trace_len).map_err(CliError::pre)?;
            Ok(json!(verdict).into())
        }
    }
}

/// Surface whose fundamental group is free of rank `k`.
fn free_surface(k: usize) -> SurfaceSig {
    if k.is_multiple_of(2) {
        SurfaceSig::new(k / 2, 1, 0)
    } else {
        SurfaceSig::new(0, k + 1, 0)
    }
}

fn augmentation_cmd(rank: usize, trunc: usize, verify: bool, g: &GlobalOpts) -> Result<Outcome, CliError> {
    if rank == 0 {
        return Err(CliError::Precondition("rank must be positive".into()));
    }
    let sig = free_surface(rank);
    let rho: Representation<Rational> = conjugation_rep(sig, trunc).map_err(CliError::pre)?;
    let mut out = json!({
        "surface": surface_to_json(sig),
        "rank": rank,
        "truncation": trunc,
        "dimension": rho.dim(),
        "trivial": rho.is_trivial(),
        "images": rho.images().iter().map(rational_matrix_to_json).collect::<Vec<_>>(),
    });
    let mut holds = true;
    if verify {
        let gens = mcg_generators(sig).map_err(CliError::pre)?;
        let report = verify_mcg_fixed(sig, trunc, &gens, &iso_config(g)).map_err(CliError::pre)?;
        holds = report.all_fixed;
        out["verdict"] = json!(if report.all_fixed { "fixed" } else { "not_fixed" });
        out["report"] = json!(report);
    }
    Ok(Outcome { result: out, holds })
}
