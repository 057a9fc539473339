use std::sync::Arc;

use cohh::coalgebra::FinCoalgebra;
use cohh::comodule::{cotensor, injective_splitting, pentagon, shadow_report, triangle, Bicomodule, ColinearMap, Splitting};
use cohh::document::Document;
use cohh::instances::{corpus_coalgebras, random_automorphism, random_bicomodule, random_colinear, random_invertible, random_left_comodule, random_matrix};
use cohh::linalg::{linear_solve, Field, Matrix, Subspace};
use cohh::traces::{cyclicity_check, hs_cotrace, hs_cotrace_with, DualPair, TraceError};
use num::ToPrimitive;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(3).unwrap()),
        Just(Field::prime(7).unwrap()),
    ]
}

fn int_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-bound..=bound, c), r))
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest nonvanishing minor.
fn rank_by_minors(m: &[Vec<i64>]) -> usize {
    let (r, c) = (m.len(), m[0].len());
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k).iter().any(|rows| {
                subsets(c, k).iter().any(|cols| {
                    let minor: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                    det(&minor) != 0
                })
            })
        })
        .unwrap_or(0)
}

/// `log_p` of the number of solutions of `A x = 0` over `F_p`, by enumeration.
fn nullity_by_counting(m: &[Vec<i64>], p: i64) -> usize {
    let cols = m[0].len();
    let total = (p as usize).pow(cols as u32);
    let mut count = 0usize;
    for code in 0..total {
        let x: Vec<i64> = (0..cols).map(|j| (code / (p as usize).pow(j as u32)) as i64 % p).collect();
        if m.iter().all(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>().rem_euclid(p) == 0) {
            count += 1;
        }
    }
    let mut k = 0;
    let mut n = 1;
    while n < count {
        n *= p as usize;
        k += 1;
    }
    assert_eq!(n, count);
    k
}

fn pick_pair(seed: u64, field: Field) -> (ChaCha8Rng, Vec<(&'static str, Arc<FinCoalgebra>)>) {
    (ChaCha8Rng::seed_from_u64(seed), corpus_coalgebras(field))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_over_q_matches_minors(rows in int_matrix(4, 4, 3)) {
        let m = Matrix::from_i64(Field::Rationals, &rows);
        prop_assert_eq!(m.rank(), rank_by_minors(&rows));
    }

    #[test]
    fn nullity_over_fp_matches_enumeration(rows in int_matrix(3, 4, 4), p in prop_oneof![Just(2i64), Just(3), Just(5)]) {
        let field = Field::prime(p as u64).unwrap();
        let m = Matrix::from_i64(field, &rows);
        let kernel = Subspace::kernel(&m);
        prop_assert_eq!(kernel.dim(), nullity_by_counting(&rows, p));
        prop_assert_eq!(kernel.dim() + m.rank(), m.cols());
        prop_assert!(m.mul(&kernel.inclusion()).is_zero());
    }

    #[test]
    fn rref_is_canonical(rows in int_matrix(4, 4, 3), seed in any::<u64>(), field in small_field()) {
        let m = Matrix::from_i64(field, &rows);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_invertible(field, m.rows(), &mut rng);
        prop_assert_eq!(m.rref(), p.mul(&m).rref());
    }

    #[test]
    fn solve_recovers_a_preimage(seed in any::<u64>(), field in small_field(), r in 1usize..5, c in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(field, r, c, &mut rng);
        let x = random_matrix(field, c, 2, &mut rng);
        let target = a.mul(&x);
        let solved = linear_solve(&a, &target).unwrap();
        prop_assert_eq!(a.mul(&solved), target);
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), field in small_field(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_invertible(field, n, &mut rng);
        let inv = p.inverse().unwrap();
        prop_assert_eq!(p.mul(&inv), Matrix::identity(field, n));
        prop_assert_eq!(inv.mul(&p), Matrix::identity(field, n));
    }

    #[test]
    fn prime_field_scalars_stay_reduced(a in -50i64..50, b in -50i64..50, p in prop_oneof![Just(2u64), Just(5), Just(7)]) {
        let f = Field::prime(p).unwrap();
        let (x, y) = (f.from_i64(a), f.from_i64(b));
        let product = f.mul(&x, &y).to_integer().to_i64().unwrap();
        prop_assert_eq!(product, (a * b).rem_euclid(p as i64));
        prop_assert!(f.contains(&f.sub(&x, &y)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cotensor_lands_in_the_equalizer(seed in any::<u64>(), field in small_field()) {
        let (mut rng, pool) = pick_pair(seed, field);
        let (cn, c) = pool.choose(&mut rng).unwrap();
        let (dn, d) = pool.iter().find(|(n, _)| *n != "M2c" || *cn != "M2c").unwrap();
        let m = random_bicomodule((cn, c), (dn, d), 3, &mut rng).unwrap();
        let n = random_bicomodule((dn, d), (cn, c), 3, &mut rng).unwrap();
        let mn = cotensor(&m, &n).unwrap();
        let inc = mn.inclusion();
        let rho_side = m.rho().kron(&Matrix::identity(field, n.dim()));
        let lambda_side = Matrix::identity(field, m.dim()).kron(n.lambda());
        prop_assert!(rho_side.sub(&lambda_side).mul(&inc).is_zero());
        prop_assert_eq!(inc.rank(), mn.module.dim());
    }

    #[test]
    fn shadow_is_a_coherent_involution(seed in any::<u64>(), field in small_field()) {
        let (mut rng, pool) = pick_pair(seed, field);
        let closing: Vec<_> = pool.iter().filter(|(n, _)| *n != "M2c").collect();
        let (cn, c) = *closing.choose(&mut rng).unwrap();
        let (dn, d) = pool.choose(&mut rng).unwrap();
        let m = random_bicomodule((cn, c), (dn, d), 3, &mut rng).unwrap();
        let n = random_bicomodule((dn, d), (cn, c), 3, &mut rng).unwrap();
        let p = random_bicomodule((cn, c), (cn, c), 3, &mut rng).unwrap();
        let report = shadow_report(&m, &n, Some(&p)).unwrap();
        prop_assert!(report.all_pass(), "{:?}", report);
    }

    #[test]
    fn unit_and_associativity_constraints(seed in any::<u64>(), field in small_field()) {
        let (mut rng, pool) = pick_pair(seed, field);
        let small: Vec<_> = pool.iter().filter(|(n, _)| *n == "K" || *n == "G2").collect();
        let (cn, c) = *small.choose(&mut rng).unwrap();
        let (dn, d) = *small.choose(&mut rng).unwrap();
        let m = random_bicomodule((cn, c), (dn, d), 2, &mut rng).unwrap();
        let n = random_bicomodule((dn, d), (cn, c), 2, &mut rng).unwrap();
        let p = random_bicomodule((cn, c), (dn, d), 2, &mut rng).unwrap();
        let q = random_bicomodule((dn, d), (cn, c), 2, &mut rng).unwrap();
        prop_assert!(triangle(&m, &n).unwrap());
        prop_assert!(pentagon(&m, &n, &p, &q).unwrap());
    }

    #[test]
    fn hs_cotrace_ignores_the_basis(seed in any::<u64>(), field in small_field()) {
        let (mut rng, pool) = pick_pair(seed, field);
        let (name, c) = pool.choose(&mut rng).unwrap();
        let m = random_left_comodule(name, c, 3, &mut rng).unwrap();
        let f = random_colinear(&m, &m, &mut rng).unwrap();
        let direct = match hs_cotrace(&m, &f) {
            Err(TraceError::NotInjectiveComodule) => return Ok(()),
            other => other.unwrap(),
        };
        let p = random_invertible(field, m.dim(), &mut rng);
        let twisted = m.change_basis(&p).unwrap();
        let f_twisted = p.inverse().unwrap().mul(&f).mul(&p);
        prop_assert_eq!(hs_cotrace(&twisted, &f_twisted).unwrap().functional, direct.functional);
    }

    #[test]
    fn hs_cotrace_ignores_the_embedding(seed in any::<u64>(), field in small_field()) {
        let (mut rng, pool) = pick_pair(seed, field);
        let (name, c) = pool.choose(&mut rng).unwrap();
        let m = random_left_comodule(name, c, 3, &mut rng).unwrap();
        let f = random_colinear(&m, &m, &mut rng).unwrap();
        let Ok(split) = injective_splitting(&m) else { return Ok(()) };
        let reference = hs_cotrace_with(&split, &f).unwrap();

        let a = random_automorphism(&split.cofree, &mut rng).unwrap();
        let twisted = Splitting {
            cofree: split.cofree.clone(),
            embedding: ColinearMap::new(m.clone(), split.cofree.clone(), a.mul(&split.embedding.matrix)).unwrap(),
            section: ColinearMap::new(split.cofree.clone(), m.clone(), split.section.matrix.mul(&a.inverse().unwrap())).unwrap(),
        };
        prop_assert_eq!(hs_cotrace_with(&twisted, &f).unwrap().functional, reference.functional.clone());

        // One more copy of C, reached through the first n summands of C^{n+1}.
        let n = split.cofree.dim() / c.dim();
        let bigger = Bicomodule::cofree(c, n + 1, split.cofree.right());
        let first = Matrix::from_triplets(field, bigger.dim(), split.cofree.dim(), (0..c.dim()).flat_map(|k| (0..n).map(move |i| (k * (n + 1) + i, k * n + i, field.one()))));
        let padded = Splitting {
            embedding: ColinearMap::new(m.clone(), bigger.clone(), first.mul(&split.embedding.matrix)).unwrap(),
            section: ColinearMap::new(bigger.clone(), m.clone(), split.section.matrix.mul(&first.transpose())).unwrap(),
            cofree: bigger.clone(),
        };
        prop_assert_eq!(hs_cotrace_with(&padded, &f).unwrap().functional, reference.functional.clone());

        let stacked = Splitting { cofree: split.cofree.direct_sum(&Bicomodule::cofree(c, 1, split.cofree.right())).unwrap(), ..padded };
        if c.dim() > 1 {
            prop_assert!(hs_cotrace_with(&stacked, &f).is_err());
        }
    }

    #[test]
    fn bicategorical_trace_is_cyclic(seed in any::<u64>(), field in small_field()) {
        let (mut rng, pool) = pick_pair(seed, field);
        let (name, c) = pool.choose(&mut rng).unwrap();
        let m = cohh::instances::random_right_comodule(name, c, 3, &mut rng).unwrap();
        let n = m.direct_sum(&cohh::instances::random_right_comodule(name, c, 2, &mut rng).unwrap()).unwrap();
        let f = random_colinear(&m, &n, &mut rng).unwrap();
        let g = random_colinear(&n, &m, &mut rng).unwrap();
        let (pm, pn) = (DualPair::findim_right(&m).unwrap(), DualPair::findim_right(&n).unwrap());
        prop_assert!(cyclicity_check(&pm, &pn, &f, &g).unwrap());
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), field in small_field()) {
        let (mut rng, pool) = pick_pair(seed, field);
        let closing: Vec<_> = pool.iter().filter(|(n, _)| *n != "M2c").collect();
        let (cn, c) = *closing.choose(&mut rng).unwrap();
        let (dn, d) = pool.choose(&mut rng).unwrap();
        let m = random_bicomodule((cn, c), (dn, d), 3, &mut rng).unwrap();
        let f = random_automorphism(&m, &mut rng).unwrap();
        let mut doc = Document::new(field);
        doc.add_coalgebra(cn, (**c).clone());
        doc.add_coalgebra(dn, (**d).clone());
        doc.add_bicomodule("M", Some(cn), Some(dn), m.clone());
        doc.add_map("f", "M", "M", f);
        let text = doc.to_json();
        let back = Document::parse(&text, None).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn regular_bicomodule_is_a_unit(seed in any::<u64>(), field in small_field()) {
        let (mut rng, pool) = pick_pair(seed, field);
        let (name, c) = pool.choose(&mut rng).unwrap();
        let m = cohh::instances::random_right_comodule(name, c, 3, &mut rng).unwrap();
        let with_unit = cotensor(&m, &Bicomodule::regular(c)).unwrap();
        prop_assert_eq!(with_unit.module.dim(), m.dim());
    }
}
