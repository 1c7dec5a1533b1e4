//! Acceptance suite: one pass/fail line per criterion, each with a runtime limit.
//!
//! Expected values come from oracles written here, independently of the
//! library code under test.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use mcg_finite::augmentation::{conjugation_rep, monomial, verify_mcg_fixed};
use mcg_finite::covers::{enumerate, pullback, schreier, sigma_cover_square, cover_from_permutations};
use mcg_finite::instances::{
    block_unipotent_torus, mcg_finite_family, punctured_torus, rank1_rep, s3_torus, s4_torus,
    swapped_characters, to_cyc,
};
use mcg_finite::linear::poly::cyclotomic;
use mcg_finite::linear::scalar::rat;
use mcg_finite::linear::{is_quasi_unipotent, Poly};
use mcg_finite::mcg::{
    act, find_twist_intertwiner, mcg_generators, orbit, reducibility_after_cut, twist_auto,
    CutReducibility, OrbitConfig, TwistSpec,
};
use mcg_finite::rank1::{escape_trace, sp_orbit, symbolic_example, TorsionPoint};
use mcg_finite::rep::{
    are_isomorphic, finite_image_closure, reduced_words, semisimplify, sigma_extract, IsoConfig,
};
use mcg_finite::surface::{standard_curves, standard_presentation, SurfaceSig};
use mcg_finite::{Cyc, CycRep, Matrix, Pi1Endo, QMatrix, Rational, Representation, Word};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------- oracles ----------

/// `<x, y>` with `<a_i, b_i> = 1`, written out coordinate by coordinate.
fn pairing(g: usize, x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..g {
        s += x[2 * i] * y[2 * i + 1];
        s -= x[2 * i + 1] * y[2 * i];
    }
    s
}

fn transvection_oracle(g: usize, r: usize, class: &[i64], power: i64) -> Vec<Vec<i64>> {
    let mut cols = Vec::new();
    for j in 0..r {
        let mut x = vec![0; r];
        x[j] = 1;
        let t = pairing(g, &x, class);
        cols.push((0..r).map(|i| x[i] + power * t * class[i]).collect::<Vec<i64>>());
    }
    (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect()
}

fn q(x: i64) -> Cyc {
    Cyc::integer(x)
}

fn random_gl2(rng: &mut ChaCha8Rng) -> Matrix<Cyc> {
    loop {
        let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-4..=4)).collect();
        if e[0] * e[3] - e[1] * e[2] != 0 {
            return Matrix::from_rows(vec![vec![q(e[0]), q(e[1])], vec![q(e[2]), q(e[3])]]);
        }
    }
}

/// Random 2-dimensional representation. Closed surfaces use `a2 = b1`,
/// `b2 = a1` and commuting pairs for later handles so that the relator holds.
fn random_rep(sig: SurfaceSig, rng: &mut ChaCha8Rng) -> CycRep {
    let r = sig.rank();
    let images: Vec<Matrix<Cyc>> = if sig.is_closed() {
        let a1 = random_gl2(rng);
        let b1 = random_gl2(rng);
        let mut v = vec![a1.clone(), b1.clone(), b1, a1];
        for _ in 2..sig.genus {
            let x = random_gl2(rng);
            v.push(x.clone());
            v.push(x.mul(&x));
        }
        v
    } else {
        (0..r).map(|_| random_gl2(rng)).collect()
    };
    Representation::new(sig, images).expect("relator holds by construction")
}

fn surfaces() -> Vec<SurfaceSig> {
    let mut out = Vec::new();
    for g in 1..=3 {
        for n in 0..=2 {
            for b in 0..=(2 - n) {
                let s = SurfaceSig::new(g, n, b);
                if s.euler_characteristic() < 0 {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn iso_or_equal(x: &CycRep, y: &CycRep) -> bool {
    x == y || are_isomorphic(x, y, &IsoConfig::default()).map(|v| v.is_yes()).unwrap_or(false)
}

// ---------- criteria ----------

fn twist_validity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for sig in surfaces() {
        let atlas = standard_curves(sig).map_err(|e| e.to_string())?;
        let pres = standard_presentation(sig);
        for c in &atlas.curves {
            for power in [1, -1, 2] {
                let e = twist_auto(sig, &TwistSpec::new(&c.name, power)).map_err(|e| e.to_string())?;
                let expected = transvection_oracle(sig.genus, sig.rank(), &c.h1, power);
                ensure(e.h1_matrix() == expected, || format!("{sig}: H1 action of T_{}^{power}", c.name))?;
                for rel in &pres.relators {
                    ensure(e.apply(rel).unwrap().is_conjugate(rel), || format!("{sig}: relator under T_{}", c.name))?;
                }
                for p in &pres.peripherals {
                    ensure(e.apply(p).unwrap().is_conjugate(p), || format!("{sig}: peripheral under T_{}", c.name))?;
                }
            }
        }
        let reps: Vec<CycRep> = (0..20).map(|_| random_rep(sig, &mut rng)).collect();
        for (i, x) in atlas.curves.iter().enumerate() {
            for (j, y) in atlas.curves.iter().enumerate().skip(i + 1) {
                if atlas.intersections[i][j] != 0 {
                    continue;
                }
                let tx = twist_auto(sig, &TwistSpec::new(&x.name, 1)).unwrap();
                let ty = twist_auto(sig, &TwistSpec::new(&y.name, 1)).unwrap();
                for rho in &reps {
                    let xy = act(&tx, &act(&ty, rho).unwrap()).unwrap();
                    let yx = act(&ty, &act(&tx, rho).unwrap()).unwrap();
                    ensure(iso_or_equal(&xy, &yx), || format!("{sig}: T_{} and T_{} do not commute", x.name, y.name))?;
                }
            }
        }
    }
    Ok(())
}

fn braid_relations() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for sig in surfaces() {
        let atlas = standard_curves(sig).unwrap();
        let humphries: Vec<String> = atlas.humphries().iter().map(|c| c.name.clone()).collect();
        let reps: Vec<CycRep> = (0..10).map(|_| random_rep(sig, &mut rng)).collect();
        for (i, x) in humphries.iter().enumerate() {
            for y in humphries.iter().skip(i + 1) {
                let (ix, iy) = (atlas.index_of(x).unwrap(), atlas.index_of(y).unwrap());
                if atlas.intersections[ix][iy] != 1 {
                    continue;
                }
                let tx = twist_auto(sig, &TwistSpec::new(x, 1)).unwrap();
                let ty = twist_auto(sig, &TwistSpec::new(y, 1)).unwrap();
                let xyx = Pi1Endo::compose(&tx, &Pi1Endo::compose(&ty, &tx).unwrap()).unwrap();
                let yxy = Pi1Endo::compose(&ty, &Pi1Endo::compose(&tx, &ty).unwrap()).unwrap();
                ensure(xyx.h1_matrix() == yxy.h1_matrix(), || format!("{sig}: braid relation on H1 for {x}, {y}"))?;
                for rho in &reps {
                    let l = act(&xyx, rho).unwrap();
                    let r = act(&yxy, rho).unwrap();
                    ensure(iso_or_equal(&l, &r), || format!("{sig}: braid relation on reps for {x}, {y}"))?;
                }
            }
        }
    }
    Ok(())
}

/// Orbit of `(i, j)` under all of `SL_2(Z/q)`.
fn sl2_orbit_oracle(qq: i64, v: (i64, i64)) -> usize {
    let mut orbit = BTreeSet::new();
    for a in 0..qq {
        for b in 0..qq {
            for c in 0..qq {
                for d in 0..qq {
                    if (a * d - b * c).rem_euclid(qq) == 1 % qq {
                        orbit.insert(((a * v.0 + b * v.1).rem_euclid(qq), (c * v.0 + d * v.1).rem_euclid(qq)));
                    }
                }
            }
        }
    }
    orbit.len()
}

fn rank1_criterion() -> Check {
    for qq in 1..=6i64 {
        for i in 0..qq {
            for j in 0..qq {
                let p = TorsionPoint::new(vec![rat(i, qq), rat(j, qq)]);
                let size = sp_orbit(&p, 10_000).size().ok_or("sp_orbit did not terminate")?;
                let expected = sl2_orbit_oracle(qq, (i, j));
                ensure(size == expected, || format!("q = {qq}, point ({i},{j}): {size} vs {expected}"))?;
            }
        }
    }
    let half = sp_orbit(&TorsionPoint::new(vec![rat(1, 2), rat(0, 1)]), 100).size();
    let third = sp_orbit(&TorsionPoint::new(vec![rat(1, 3), rat(0, 1)]), 100).size();
    ensure(half == Some(3) && third == Some(8), || format!("sizes {half:?}, {third:?}"))?;
    let trace = escape_trace(&symbolic_example(), &[vec![1, 1], vec![0, 1]], 60);
    let distinct: HashSet<_> = trace.iter().collect();
    ensure(distinct.len() >= 50, || format!("escape trace has {} distinct points", distinct.len()))
}

fn dehn_conjugate() -> Check {
    let cfg = IsoConfig::default();
    for (name, rho) in mcg_finite_family() {
        let gens = mcg_generators(rho.sig()).unwrap();
        let report = orbit(&rho, &gens, &OrbitConfig::default()).map_err(|e| e.to_string())?;
        let bound = report.size().ok_or_else(|| format!("{name}: orbit not finite"))? as u64;
        let atlas = standard_curves(rho.sig()).unwrap();
        for curve in atlas.humphries() {
            let found = find_twist_intertwiner(&rho, &curve.name, bound, &cfg)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{name}: no intertwiner for {}", curve.name))?;
            ensure(found.m >= 1 && found.m <= bound, || format!("{name}: m = {} > {bound}", found.m))?;
            let t = twist_auto(rho.sig(), &TwistSpec::new(&curve.name, found.m as i64)).unwrap();
            let gi = found.g.inverse().map_err(|_| format!("{name}: singular witness"))?;
            for k in 0..rho.rank() {
                let delta = Word::generator(rho.rank(), k);
                let lhs = rho.evaluate(&t.apply(&delta).unwrap()).unwrap();
                let rhs = found.g.mul(&rho.evaluate(&delta).unwrap()).mul(&gi);
                ensure(lhs == rhs, || format!("{name}: witness fails on generator {k} for {}", curve.name))?;
            }
        }
    }
    Ok(())
}

fn exact_sequence_mechanics() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let u = |f: i64| Matrix::from_rows(vec![vec![q(1), q(f)], vec![q(0), q(1)]]);
    let mut cases = vec![block_unipotent_torus()];
    let g2 = SurfaceSig::closed(2);
    cases.push(Representation::new(g2, (0..4).map(|_| u(rng.gen_range(-5..=5))).collect()).unwrap());
    for rho in &cases {
        let sig = rho.sig();
        let sigma = sigma_extract(rho, 1).map_err(|e| e.to_string())?;
        let words = reduced_words(rho.rank(), 2);
        for x in &words {
            for y in &words {
                let xy = x.mul(y);
                let sum = sigma.on_word(x).add(&sigma.on_word(y));
                ensure(sigma.on_word(&xy) == sum, || "sigma not additive".into())?;
                let block = rho.evaluate(&xy).unwrap().submatrix(0..1, 1..2);
                ensure(block == sum, || "sigma differs from the block of rho".into())?;
            }
        }
        for curve in &standard_curves(sig).unwrap().curves {
            for m in -2..=3i64 {
                let twisted = act(&twist_auto(sig, &TwistSpec::new(&curve.name, m)).unwrap(), rho).unwrap();
                let sigma2 = sigma_extract(&twisted, 1).map_err(|e| e.to_string())?;
                let s_gamma = sigma.on_class(&curve.h1)[(0, 0)].clone();
                for k in 0..rho.rank() {
                    let mut delta = vec![0; rho.rank()];
                    delta[k] = 1;
                    let expected = sigma.values[k][(0, 0)].clone()
                        + Cyc::integer(m * pairing(sig.genus, &delta, &curve.h1)) * s_gamma.clone();
                    ensure(sigma2.values[k][(0, 0)] == expected, || {
                        format!("{sig}: twist transform fails for T_{}^{m} on generator {k}", curve.name)
                    })?;
                }
            }
        }
    }
    let cover = cover_from_permutations(punctured_torus(), vec![vec![1, 0], vec![0, 1]], 0).unwrap();
    let square = sigma_cover_square(&block_unipotent_torus(), &cover, 1).map_err(|e| e.to_string())?;
    ensure(square.commutes && square.checked == 3, || format!("{square:?}"))
}

/// Characteristic polynomial of a 3x3 integer matrix from its invariants.
fn charpoly3(m: &[[i64; 3]; 3]) -> Vec<i64> {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0])
        + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
        + (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    vec![-det, minors, -tr, 1]
}

/// Exact division of monic integer polynomials, `None` if a remainder is left.
fn divide(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let d = den.len() - 1;
    if num.len() <= d {
        return None;
    }
    let mut rem = num.to_vec();
    let mut quot = vec![0; num.len() - d];
    for k in (d..rem.len()).rev() {
        let c = rem[k];
        quot[k - d] = c;
        for (j, &x) in den.iter().enumerate() {
            rem[k - d + j] -= c * x;
        }
    }
    rem.iter().all(|&x| x == 0).then_some(quot)
}

/// Cyclotomic polynomials by repeated division of `x^n - 1`.
fn phi_oracle(n: usize) -> Vec<i64> {
    let mut p = vec![0; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = divide(&p, &phi_oracle(d)).expect("divides");
        }
    }
    p
}

/// Degree-3 charpoly is a product of cyclotomic factors of degree <= 3.
fn qu_oracle(cp: &[i64]) -> bool {
    fn rec(p: Vec<i64>) -> bool {
        if p.len() == 1 {
            return true;
        }
        (1..=18).any(|d| {
            let f = phi_oracle(d);
            f.len() <= p.len() && divide(&p, &f).is_some_and(rec)
        })
    }
    rec(cp.to_vec())
}

fn quasi_unipotence() -> Check {
    for d in 1..=30u64 {
        let c: QMatrix = Matrix::companion(&cyclotomic(d));
        // brute force: least e with C^e = I is the order of a primitive d-th root
        let mut acc = c.clone();
        let mut order = 1;
        while !acc.is_identity() {
            acc = acc.mul(&c);
            order += 1;
        }
        let verdict = is_quasi_unipotent(&c);
        ensure(verdict.order() == Some(order), || format!("Phi_{d}: {verdict:?} vs order {order}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut tested = 0;
    while tested < 20 {
        let mut m = [[0i64; 3]; 3];
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = rng.gen_range(-3..=3);
            }
        }
        let cp = charpoly3(&m);
        if qu_oracle(&cp) {
            continue;
        }
        tested += 1;
        let mat: QMatrix = Matrix::from_rows(m.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect());
        let lib_cp: Poly<Rational> = mat.charpoly();
        ensure(lib_cp.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect::<Vec<i64>>() == cp, || {
            format!("charpoly mismatch on {m:?}")
        })?;
        ensure(!is_quasi_unipotent(&mat).is_quasi_unipotent(), || format!("{m:?} reported quasi-unipotent"))?;
    }
    for (rho, n) in [(s3_torus(), 6), (s4_torus(), 24)] {
        let order = finite_image_closure(&rho, 1000).order().ok_or("closure did not finish")?;
        ensure(n % order == 0, || format!("closure order {order} does not divide {n}"))?;
    }
    let gens_cfg = OrbitConfig::default();
    for (name, rho) in mcg_finite_family() {
        let gens = mcg_generators(rho.sig()).unwrap();
        let size = orbit(&rho, &gens, &gens_cfg).unwrap().size().ok_or(format!("{name}: infinite"))?;
        let ss = semisimplify(&rho, 0);
        ensure(ss.character_preserved, || format!("{name}: character changed"))?;
        let ss_size = orbit(&ss.rep, &gens, &gens_cfg).unwrap().size();
        ensure(ss_size.is_some_and(|s| s <= size), || format!("{name}: semisimplified orbit {ss_size:?} > {size}"))?;
    }
    Ok(())
}

fn covers_check() -> Check {
    let base = punctured_torus();
    let covers = enumerate(base, 4);
    let counts: Vec<usize> = (1..=4).map(|d| covers.iter().filter(|c| c.degree == d).count()).collect();
    ensure(counts == vec![1, 3, 7, 26], || format!("cover counts {counts:?}"))?;
    let bases = [(s3_torus(), 6usize), (s4_torus(), 24)];
    for c in &covers {
        let d = c.degree as i64;
        ensure(c.sig.euler_characteristic() == d * base.euler_characteristic(), || format!("chi of {c:?}"))?;
        let data = schreier(c);
        ensure(data.generators.len() == c.degree + 1, || format!("Schreier count for {c:?}"))?;
        for (rho, order) in &bases {
            let up = pullback(rho, c).map_err(|e| e.to_string())?;
            let sub = finite_image_closure(&up, 1000).order().ok_or("pullback closure did not finish")?;
            ensure(order % sub == 0, || format!("pullback order {sub} does not divide {order}"))?;
        }
    }
    Ok(())
}

fn augmentation_example() -> Check {
    let sig = punctured_torus();
    let rho = to_cyc(&conjugation_rep(sig, 3).map_err(|e| e.to_string())?);
    ensure(rho.dim() == 1 + 2 + 4, || format!("dimension {}", rho.dim()))?;
    let id = Matrix::<Cyc>::identity(7);
    for w in reduced_words(2, 3) {
        let x = rho.evaluate(&w).unwrap();
        ensure(x.sub(&id).pow(3).is_zero(), || "not unipotent".into())?;
        for r in 0..7 {
            for c in 0..7 {
                let (dr, dc) = (monomial(2, r).len(), monomial(2, c).len());
                let expected = if r == c { Cyc::one() } else { Cyc::zero() };
                if dr <= dc {
                    ensure(x[(r, c)] == expected, || format!("graded block entry ({r},{c})"))?;
                }
            }
        }
    }
    ensure(!rho.is_trivial(), || "trivial at n = 3".into())?;
    let ss = semisimplify(&rho, 0);
    ensure(ss.rep.is_trivial() && ss.rep.dim() == 7 && ss.complete, || "semisimplification not trivial".into())?;
    let gens = mcg_generators(sig).unwrap();
    let report = verify_mcg_fixed(sig, 3, &gens, &IsoConfig::default()).map_err(|e| e.to_string())?;
    ensure(report.all_fixed, || "not fixed".into())?;
    for (entry, e) in report.entries.iter().zip(gens.iter().flat_map(|g| [&g.forward, &g.backward])) {
        let w = entry.witness.as_ref().ok_or("missing witness")?;
        let w: Matrix<Cyc> = Matrix::from_rows(
            w.iter()
                .map(|r| r.iter().map(|s| Cyc::rational(mcg_finite::linear::scalar::parse_rational(s).unwrap())).collect())
                .collect(),
        );
        let moved = act(e, &rho).unwrap();
        for (x, y) in rho.images().iter().zip(moved.images()) {
            ensure(w.mul(x) == y.mul(&w), || format!("witness for {} fails", entry.generator))?;
        }
    }
    let r2 = verify_mcg_fixed(sig, 2, &gens, &IsoConfig::default()).map_err(|e| e.to_string())?;
    ensure(r2.trivial && r2.discrepancy.is_some(), || "n = 2 discrepancy not reported".into())
}

fn cut_reducibility() -> Check {
    let cfg = IsoConfig::default();
    let sum = swapped_characters();
    match reducibility_after_cut(&sum, "a1", 6, &cfg).map_err(|e| e.to_string())? {
        CutReducibility::Subspace { basis, cut, g, .. } => {
            ensure(g.as_scalar().is_none(), || "intertwiner is scalar".into())?;
            ensure(!basis.is_empty() && basis.len() < 2, || "eigenspace not proper".into())?;
            for h in &cut.embedding {
                let x = sum.evaluate(h).unwrap();
                for v in &basis {
                    let image = x.mul_vec(v);
                    // image must be a multiple of v (W is a line)
                    let stable = (0..2).all(|i| (0..2).all(|j| image[i].clone() * v[j].clone() == image[j].clone() * v[i].clone()));
                    ensure(stable, || "W not stable under a cut generator".into())?;
                }
            }
        }
        other => return Err(format!("expected a subspace, got {other:?}")),
    }
    let t = punctured_torus();
    let mut rank1 = vec![rank1_rep(t, &[(1, 0), (1, 0)])];
    for qa in 1..=6u64 {
        for qb in [1u64, 2, 3] {
            rank1.push(rank1_rep(t, &[(qa, 1), (qb, 1)]));
        }
    }
    rank1.push(rank1_rep(SurfaceSig::closed(2), &[(2, 1), (3, 1), (4, 1), (1, 0)]));
    for rho in &rank1 {
        for curve in standard_curves(rho.sig()).unwrap().humphries() {
            match reducibility_after_cut(rho, &curve.name, 12, &cfg).map_err(|e| e.to_string())? {
                CutReducibility::Scalar { m, order, .. } => {
                    let value = rho.evaluate(&curve.word).unwrap();
                    ensure(value.pow(m).is_identity(), || format!("rho({})^{m} != 1", curve.name))?;
                    let true_order = (1..=m).find(|&k| value.pow(k).is_identity()).unwrap();
                    ensure(order == true_order, || format!("order {order} vs {true_order}"))?;
                }
                other => return Err(format!("rank one gave {other:?}")),
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 twist validity", twist_validity, 30),
        ("2 braid relations", braid_relations, 30),
        ("3 rank-1 torsion criterion", rank1_criterion, 10),
        ("4 twist intertwiners", dehn_conjugate, 120),
        ("5 exact sequence mechanics", exact_sequence_mechanics, 10),
        ("6 quasi-unipotence and finite image", quasi_unipotence, 60),
        ("7 covers", covers_check, 60),
        ("8 augmentation example", augmentation_example, 60),
        ("9 reducibility after cut", cut_reducibility, 30),
    ];
    let mut failures = Vec::new();
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        match (&result, over) {
            (Ok(()), false) => println!("PASS criterion {name} ({:.2}s, limit {limit}s)", elapsed.as_secs_f64()),
            (Ok(()), true) => {
                println!("FAIL criterion {name}: {:.2}s exceeds {limit}s", elapsed.as_secs_f64());
                failures.push(name);
            }
            (Err(e), _) => {
                println!("FAIL criterion {name}: {e}");
                failures.push(name);
            }
        }
    }
    if !failures.is_empty() {
        eprintln!("failed: {failures:?}");
        std::process::exit(1);
    }
}
