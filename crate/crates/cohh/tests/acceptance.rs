//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use cohh::coalgebra::FinCoalgebra;
use cohh::comodule::{comodule_to_module, hom_colinear, shadow_report, Bicomodule, Side};
use cohh::dg::{
    cohh_complex, cohh_envelope, conormalized_cobar, cotor, derived_shadow_theta, dg_cohh, Complex, GradedBicomodule,
    GradedCoalgebra,
};
use cohh::instances::{
    corpus_coalgebras, left_pieces, random_bicomodule, random_colinear, random_invertible, random_left_comodule,
    random_right_comodule, right_pieces, sweedler_right_two,
};
use cohh::linalg::{Field, Matrix, Subspace};
use cohh::traces::{
    bicat_trace, colinear_trace, cyclicity_check, euler_characteristic, evaluation_pairing, hattori_stallings_rank,
    hs_cotrace, morita_comatrix, short_exact_from_subcomodule, trace_pairing, DualPair, TraceError,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn q() -> Field {
    Field::Rationals
}

fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn k(field: Field) -> Arc<FinCoalgebra> {
    Arc::new(FinCoalgebra::trivial(field))
}

/// Random colinear endomorphisms plus the identity.
fn endomorphisms(m: &Bicomodule, rng: &mut ChaCha8Rng, count: usize) -> Vec<Matrix> {
    let mut out = vec![Matrix::identity(m.field(), m.dim())];
    for _ in 0..count {
        out.push(random_colinear(m, m, rng).expect("hom space"));
    }
    out
}

fn shadow_suite() -> Outcome {
    let mut checked = 0;
    for (field, seed) in [(fp(7), 101), (q(), 202)] {
        let pool = corpus_coalgebras(field);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // (M2c, M2c) has no nonzero bicomodule of dimension at most 3.
        let closing: Vec<_> = pool.iter().filter(|(n, _)| *n != "M2c").collect();
        for i in 0..50 {
            let (cn, c) = *closing.choose(&mut rng).unwrap();
            let (dn, d) = pool.choose(&mut rng).unwrap();
            let m = random_bicomodule((cn, c), (dn, d), 3, &mut rng).map_err(err)?;
            let n = random_bicomodule((dn, d), (cn, c), 3, &mut rng).map_err(err)?;
            let p = random_bicomodule((cn, c), (cn, c), 3, &mut rng).map_err(err)?;
            let r = shadow_report(&m, &n, Some(&p)).map_err(err)?;
            ensure(r.all_pass() && r.hexagon == Some(true) && r.unit == Some(true), || {
                format!("instance {i} over {} ({cn}, {dn}): {r:?}", field.spec())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} instances"))
}

fn trace_agreement() -> Outcome {
    let (mut left, mut right, mut skipped) = (0, 0, 0);
    for (field, seed) in [(q(), 11), (fp(7), 12), (fp(2), 13)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, c) in corpus_coalgebras(field) {
            let mut lefts = left_pieces(name, &c);
            lefts.push(Bicomodule::cofree(&c, 2, &k(field)));
            let mut rights = right_pieces(name, &c);
            for _ in 0..3 {
                lefts.push(random_left_comodule(name, &c, 3, &mut rng).map_err(err)?);
                rights.push(random_right_comodule(name, &c, 3, &mut rng).map_err(err)?);
            }
            for m in &lefts {
                let pair = match DualPair::injective_left(m) {
                    Ok(p) => p,
                    Err(TraceError::NotInjectiveComodule) => {
                        skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(format!("{name}: {e}")),
                };
                for f in endomorphisms(m, &mut rng, 2) {
                    let b = bicat_trace(&pair, &f).map_err(err)?;
                    let h = hs_cotrace(m, &f).map_err(err)?.functional;
                    ensure(b == h, || format!("left {name} over {}: {b:?} vs {h:?}", field.spec()))?;
                    left += 1;
                }
            }
            for m in &rights {
                let pair = DualPair::findim_right(m).map_err(err)?;
                for f in endomorphisms(m, &mut rng, 2) {
                    let b = bicat_trace(&pair, &f).map_err(err)?;
                    let t = colinear_trace(m, &f).map_err(err)?.coordinates;
                    ensure(b == t, || format!("right {name} over {}: {b:?} vs {t:?}", field.spec()))?;
                    right += 1;
                }
            }
        }
    }
    ensure(left > 0 && right > 0 && skipped > 0, || "a class of instances was never exercised".into())?;
    Ok(format!("{left} injective-left and {right} right comparisons, {skipped} non-injective comodules rejected"))
}

fn cyclicity() -> Outcome {
    let mut checked = 0;
    for (field, seed) in [(q(), 31), (fp(5), 32)] {
        let pool = corpus_coalgebras(field);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..12 {
            let (name, c) = pool.choose(&mut rng).unwrap();
            let (m, n) = if i % 3 == 2 {
                let cof = Bicomodule::cofree(c, 1, &k(field));
                (cof.clone(), cof.direct_sum(&left_pieces(name, c)[0]).map_err(err)?)
            } else {
                (
                    random_right_comodule(name, c, 3, &mut rng).map_err(err)?,
                    random_right_comodule(name, c, 3, &mut rng).map_err(err)?,
                )
            };
            let pair = |x: &Bicomodule| {
                if x.left().dim() == 1 {
                    DualPair::findim_right(x)
                } else {
                    DualPair::injective_left(x)
                }
            };
            let (pm, pn) = match (pair(&m), pair(&n)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(TraceError::NotInjectiveComodule), _) | (_, Err(TraceError::NotInjectiveComodule)) => continue,
                (Err(e), _) | (_, Err(e)) => return Err(err(e)),
            };
            let f = random_colinear(&m, &n, &mut rng).map_err(err)?;
            let g = random_colinear(&n, &m, &mut rng).map_err(err)?;
            ensure(cyclicity_check(&pm, &pn, &f, &g).map_err(err)?, || format!("pair {i} over {name}"))?;
            checked += 1;
        }
    }
    ensure(checked >= 20, || format!("only {checked} pairs were dualizable"))?;
    Ok(format!("{checked} pairs"))
}

/// Whether `M → M/S` has a colinear section.
fn has_section(ses: &cohh::traces::ShortExact) -> Result<bool, String> {
    let homs = hom_colinear(&ses.quotient, &ses.total).map_err(err)?.basis;
    let f = ses.total.field();
    let n = ses.quotient.dim();
    let flat = |x: &Matrix| x.to_dense().concat();
    if homs.is_empty() {
        return Ok(false);
    }
    let rows = homs.iter().map(|h| flat(&ses.projection.mul(h))).collect();
    let span = Subspace::row_span(&Matrix::from_dense(f, rows, n * n));
    Ok(span.contains_vector(&flat(&Matrix::identity(f, n))))
}

fn additivity() -> Outcome {
    let (mut sequences, mut nonsplit, mut maps) = (0, 0, 0);
    let mut cases: Vec<(Bicomodule, Subspace, bool)> = Vec::new();
    for p in [2, 3, 5, 7] {
        let sw = Arc::new(FinCoalgebra::sweedler(fp(p)));
        let r2 = sweedler_right_two(&sw);
        let sub = Subspace::row_span(&Matrix::from_i64(fp(p), &[vec![1, 0]]));
        cases.push((r2.clone(), sub.clone(), false));
        let twisted = r2.direct_sum(&r2).map_err(err)?;
        let sub2 = Subspace::row_span(&Matrix::from_i64(fp(p), &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]));
        cases.push((twisted, sub2, false));
    }
    for (field, seed) in [(q(), 41), (fp(3), 42)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, c) in corpus_coalgebras(field) {
            for _ in 0..6 {
                let m = random_right_comodule(name, &c, 3, &mut rng).map_err(err)?;
                let e = random_colinear(&m, &m, &mut rng).map_err(err)?;
                let s = Subspace::image(&e);
                if s.dim() > 0 && s.dim() < m.dim() {
                    cases.push((m, s, true));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for (m, s, maybe_split) in &cases {
        let ses = short_exact_from_subcomodule(m, s).map_err(err)?;
        let basis = ses.compatible_endomorphisms();
        let mut candidates = basis.clone();
        let f = m.field();
        let mut combo = Matrix::zeros(f, m.dim(), m.dim());
        for b in &basis {
            combo = combo.add(&b.scale(&cohh::instances::random_scalar(f, &mut rng)));
        }
        candidates.push(combo);
        for g in &candidates {
            let (gs, gq) = ses.induced(g).map_err(err)?;
            let total = colinear_trace(m, g).map_err(err)?.element;
            let parts = colinear_trace(&ses.sub, &gs)
                .map_err(err)?
                .element
                .add(&colinear_trace(&ses.quotient, &gq).map_err(err)?.element);
            ensure(total == parts, || format!("sequence {sequences} over {}", f.spec()))?;
            maps += 1;
        }
        if !*maybe_split {
            ensure(!has_section(&ses)?, || format!("extension over {} splits", f.spec()))?;
        }
        if !*maybe_split {
            nonsplit += 1;
        }
        sequences += 1;
    }
    ensure(sequences >= 10 && nonsplit > 0, || format!("{sequences} sequences, {nonsplit} non-split"))?;
    Ok(format!("{sequences} sequences ({nonsplit} non-split over F_p), {maps} endomorphisms"))
}

fn morita() -> Outcome {
    let mut checked = 0;
    for field in [q(), fp(7)] {
        let pool = corpus_coalgebras(field);
        for (name, c) in pool.iter().filter(|(n, _)| *n == "K" || *n == "G2") {
            for n in 1..=4 {
                let r = morita_comatrix(c, n).map_err(err)?;
                ensure(r.all_pass(), || format!("{name}, n = {n}: {r:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cases"))
}

fn triangles() -> Outcome {
    let mut checked = 0;
    let field = q();
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for (name, c) in corpus_coalgebras(field) {
        for v in 1..=3 {
            let pair = DualPair::cofree(&c, v, &k(field)).map_err(err)?;
            pair.check_triangles().map_err(|e| format!("cofree {name} v={v}: {e}"))?;
            checked += 1;
        }
        let pair = DualPair::cofree(&c, 1, &c).map_err(err)?;
        pair.check_triangles().map_err(|e| format!("cofree {name} over itself: {e}"))?;
        checked += 1;
        let mut rights = right_pieces(name, &c);
        rights.push(random_right_comodule(name, &c, 3, &mut rng).map_err(err)?);
        for m in &rights {
            let pair = DualPair::findim_right(m).map_err(err)?;
            pair.check_triangles().map_err(|e| format!("findim over {name}: {e}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} dual pairs"))
}

fn corank() -> Outcome {
    let mut checked = 0;
    for (field, seed) in [(q(), 71), (fp(3), 72)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, c) in corpus_coalgebras(field) {
            let d = c.dim();
            let cohh0 = c.cohh0().inclusion();
            for n in 1..=3 {
                // Direct evaluation: for the identity on C ⊗ k^n the formula reduces to
                // Σ_i ε(c₁) ε(c₂) summed over the n copies.
                let mut oracle = vec![field.zero(); d];
                for (row, col, v) in c.comul().entries() {
                    let (a, b) = (row / d, row % d);
                    let term = field.mul(v, &field.mul(&c.counit().get(0, a), &c.counit().get(0, b)));
                    for _ in 0..n {
                        oracle[col] = field.add(&oracle[col], &term);
                    }
                }
                let expected = Matrix::row_vector(field, oracle).mul(&cohh0);
                let m = Bicomodule::cofree(&c, n, &k(field));
                let twisted = m.change_basis(&random_invertible(field, m.dim(), &mut rng)).map_err(err)?;
                for x in [&m, &twisted] {
                    let hs = hs_cotrace(x, &Matrix::identity(field, x.dim())).map_err(err)?;
                    ensure(hs.functional == expected, || format!("{name}, n = {n}"))?;
                }
                for pair in [DualPair::injective_left(&m), DualPair::cofree(&c, n, &k(field))] {
                    let chi = euler_characteristic(&pair.map_err(err)?).map_err(err)?;
                    ensure(chi == expected, || format!("euler characteristic {name}, n = {n}"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cofree comodules"))
}

fn dual_algebra_bridge() -> Outcome {
    let mut dims = 0;
    let mut ranks = 0;
    for (field, seed) in [(q(), 81), (fp(7), 82)] {
        let mut pool = corpus_coalgebras(field);
        let g2 = pool[1].1.clone();
        pool.push(("M2cG2", Arc::new(FinCoalgebra::comatrix_over(&g2, 2))));
        for (name, c) in &pool {
            let hh0 = c.dual_algebra().hh0().trace.rows();
            ensure(c.cohh0().dim() == hh0, || format!("{name}: {} vs {hh0}", c.cohh0().dim()))?;
            dims += 1;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, c) in pool.iter().filter(|(n, _)| *n == "G2" || *n == "M2c") {
            let r = c.dual_algebra();
            let mut modules = right_pieces(name, c);
            for _ in 0..4 {
                modules.push(random_right_comodule(name, c, 3, &mut rng).map_err(err)?);
            }
            for m in &modules {
                let x = colinear_trace(m, &Matrix::identity(field, m.dim())).map_err(err)?.element;
                let hs = hattori_stallings_rank(&comodule_to_module(m).map_err(err)?).map_err(err)?;
                for k in 0..r.dim {
                    let phi = r.basis_vector(k);
                    let lhs = evaluation_pairing(&x, &phi);
                    let rhs = trace_pairing(&r, &phi, &hs);
                    ensure(lhs == rhs, || format!("{name}: pairing with e{k}* gives {lhs} vs {rhs}"))?;
                }
                ranks += 1;
            }
        }
    }
    Ok(format!("{dims} dimension checks, {ranks} rank comparisons"))
}

fn square_zero(x: &Complex) -> bool {
    (2..x.differentials.len()).all(|t| x.differentials[t - 1].mul(&x.differentials[t]).is_zero())
}

fn spheres(field: Field) -> Vec<(&'static str, Arc<GradedCoalgebra>)> {
    vec![
        ("S2", Arc::new(GradedCoalgebra::exterior(field, 2).unwrap())),
        ("S3", Arc::new(GradedCoalgebra::exterior(field, 3).unwrap())),
    ]
}

fn dg_oracle() -> Outcome {
    let mut tables = Vec::new();
    for field in [q(), fp(2)] {
        for (name, c) in spheres(field) {
            let reg = GradedBicomodule::regular(&c);
            let x = cohh_complex(&reg, &c, 6).map_err(err)?;
            ensure(square_zero(&x), || format!("{name}: cyclic complex"))?;
            let direct = dg_cohh(&reg, &c, 6).map_err(err)?;
            let env = cohh_envelope(&c, 6).map_err(err)?;
            let ce = Arc::new(c.envelope().map_err(err)?);
            let y = conormalized_cobar(&reg.right_envelope(&ce).map_err(err)?, &ce, &reg.left_envelope(&ce).map_err(err)?, 6)
                .map_err(err)?;
            ensure(square_zero(&y), || format!("{name}: envelope complex"))?;
            ensure(direct.dims == env.dims, || format!("{name}: {:?} vs {:?}", direct.dims, env.dims))?;
            ensure(direct.bigraded == env.bigraded, || format!("{name}: bigraded tables differ"))?;
            ensure(direct.euler.holds() && env.euler.holds(), || format!("{name}: Euler audit"))?;
            if field == q() {
                tables.push(format!("{name} {:?}", direct.dims));
            }
        }
    }
    Ok(tables.join(", "))
}

fn cotor_classics() -> Outcome {
    for field in [q(), fp(3)] {
        for (name, c) in spheres(field) {
            let kr = GradedBicomodule::corner(&c, Side::Right).map_err(err)?;
            let kl = GradedBicomodule::corner(&c, Side::Left).map_err(err)?;
            let x = conormalized_cobar(&kr, &c, &kl, 8).map_err(err)?;
            ensure(square_zero(&x), || format!("{name}: cobar"))?;
            let r = cotor(&kr, &c, &kl, 8).map_err(err)?;
            let expected: Vec<usize> = match name {
                "S2" => vec![1; 9],
                _ => (0..=8).map(|t| usize::from(t % 2 == 0)).collect(),
            };
            ensure(r.dims == expected, || format!("{name}: {:?}", r.dims))?;
            ensure(r.euler.holds(), || format!("{name}: Euler audit"))?;
        }
    }
    Ok("S2: 1 in every degree 0..8; S3: 1 in even degrees 0..8".into())
}

fn derived_shadow() -> Outcome {
    let field = q();
    let mut checked = 0;
    let ss = spheres(field);
    for (name, c) in &ss {
        let reg = GradedBicomodule::regular(c);
        let cofree = GradedBicomodule::cofree(c, c).map_err(err)?;
        let kr = GradedBicomodule::corner(c, Side::Right).map_err(err)?;
        let kl = GradedBicomodule::corner(c, Side::Left).map_err(err)?;
        let pairs = [(&reg, &reg), (&reg, &cofree), (&kl, &kr), (&kr, &kl)];
        for (m, n) in pairs {
            let r = derived_shadow_theta(m, n, 6).map_err(err)?;
            ensure(r.chain_map && r.bijective && r.cohomology_iso, || format!("{name}: {r:?}"))?;
            checked += 1;
        }
    }
    let (s2, s3) = (&ss[0].1, &ss[1].1);
    let m = GradedBicomodule::cofree(s2, s3).map_err(err)?;
    let n = GradedBicomodule::cofree(s3, s2).map_err(err)?;
    let r = derived_shadow_theta(&m, &n, 6).map_err(err)?;
    ensure(r.chain_map && r.bijective && r.cohomology_iso, || format!("S2/S3 cofree: {r:?}"))?;
    checked += 1;
    Ok(format!("{checked} pairs through degree 6"))
}

fn determinism() -> Outcome {
    for (name, args, code) in common::GOLDEN {
        let a = common::run_cli(args);
        let b = common::run_cli(args);
        ensure(a.code == *code, || format!("{name}: exit {} (expected {code})", a.code))?;
        ensure(a.stdout == b.stdout, || format!("{name}: two runs differ"))?;
        common::check_golden(&common::golden_path(name), &a.stdout)?;
    }
    Ok(format!("{} golden reports", common::GOLDEN.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("shadow coherence on random bicomodules", shadow_suite),
        ("bicategorical trace agrees with direct traces", trace_agreement),
        ("cyclicity of the bicategorical trace", cyclicity),
        ("additivity over short exact sequences", additivity),
        ("comatrix Morita data", morita),
        ("triangle identities for dual pairs", triangles),
        ("corank of cofree comodules", corank),
        ("dual algebra bridge and Hattori-Stallings ranks", dual_algebra_bridge),
        ("coHochschild homology against the envelope", dg_oracle),
        ("Cotor of spheres", cotor_classics),
        ("derived shadow isomorphism", derived_shadow),
        ("deterministic CLI reports", determinism),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail} ({:.1?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why} ({:.1?})", i + 1, start.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
