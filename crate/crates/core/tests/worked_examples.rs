//! Worked examples for each public operation, end to end through the crate API.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rzint::finite::{
    companion, ext_roots, is_irreducible, matrix_char_poly, matrix_min_poly, poly_factorize, ExtField, FpMatrix,
    FpPoly, PrimeField,
};
use rzint::formula::{classify_factors, intersection_number, nonempty_q, point_count};
use rzint::instance::full::invariants_minuscule;
use rzint::instance::gen::{gen_reduced_relaxed, random_nonsplit_form};
use rzint::instance::{
    all_passed, gen_full, gen_reduced, is_regular_semisimple, is_split_fp, parse_shape, reduce_instance, t_max,
    validate_reduced, FullInstance, ReducedInstance,
};
use rzint::oracle::{
    cyclic_generator, dl_fixed_count, enumerate_strata, gen_jordan, hilbert_symbol_bruteforce, local_ring_length,
    oracle_point_count, JordanData,
};
use rzint::padic::{
    hasse_invariant, hilbert_symbol, padic_inverse, padic_of_rational, smith_invariants, square_class, PadicMatrix,
    PadicScalar,
};
use rzint::Error;

fn poly(p: u64, c: &[i64]) -> FpPoly {
    FpPoly::new(p, c.to_vec()).unwrap()
}

fn fm(p: u64, rows: &[Vec<i64>]) -> FpMatrix {
    FpMatrix::from_i64(&PrimeField::new(p).unwrap(), rows).unwrap()
}

/// Companion action plus a random non-split invariant form.
fn reduced_for(pp: &FpPoly, seed: u64) -> ReducedInstance {
    let g = companion(pp);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gram = random_nonsplit_form(&g, &mut rng).unwrap();
    let red = ReducedInstance::new(pp.p(), gram, g, pp.clone()).unwrap();
    assert!(all_passed(&validate_reduced(&red)));
    red
}

fn t2p1() -> FpPoly {
    poly(3, &[1, 0, 1])
}

fn three_factor() -> FpPoly {
    // (T^2+T+2)(T^2+2T+2)(T^2+1) over F_3
    poly(3, &[2, 1, 1]).mul(&poly(3, &[2, 2, 1])).mul(&t2p1())
}

// ---- finite fields and polynomials

#[test]
fn factorization() {
    let fl = poly_factorize(&poly(3, &[-1, 0, 1])).unwrap();
    assert_eq!(fl.factors, vec![(poly(3, &[1, 1]), 1), (poly(3, &[-1, 1]), 1)]);
    assert_eq!(poly_factorize(&t2p1()).unwrap().factors, vec![(t2p1(), 1)]);
    let a = poly(3, &[2, 1, 1]);
    let mut got = poly_factorize(&a.pow(2).mul(&t2p1())).unwrap().factors;
    got.sort_by_key(|(f, _)| f.coeffs().to_vec());
    let mut want = vec![(a, 2), (t2p1(), 1)];
    want.sort_by_key(|(f, _)| f.coeffs().to_vec());
    assert_eq!(got, want);
}

#[test]
fn reciprocals() {
    assert_eq!(t2p1().reciprocal().unwrap(), t2p1());
    assert_eq!(poly(3, &[2, 1, 1]).reciprocal().unwrap(), poly(3, &[2, 2, 1]));
    assert_eq!(poly(5, &[-1, 1]).reciprocal().unwrap(), poly(5, &[-1, 1]));
    assert!(t2p1().is_self_reciprocal().unwrap());
    assert!(!poly(3, &[2, 1, 1]).is_self_reciprocal().unwrap());
    assert!(poly(5, &[1, 1]).is_self_reciprocal().unwrap());
    assert_eq!(poly(3, &[0, 1]).reciprocal().unwrap_err(), Error::ZeroConstantTerm);
}

#[test]
fn char_and_min() {
    let rot = fm(3, &[vec![0, -1], vec![1, 0]]);
    assert_eq!(matrix_char_poly(&rot), t2p1());
    assert_eq!(matrix_min_poly(&rot), t2p1());
    let id = FpMatrix::identity(&PrimeField::new(5).unwrap(), 3);
    assert_eq!(matrix_char_poly(&id), poly(5, &[-1, 1]).pow(3));
    assert_eq!(matrix_min_poly(&id), poly(5, &[-1, 1]));
    let pp = three_factor();
    assert_eq!(matrix_char_poly(&companion(&pp)), pp);
    assert_eq!(matrix_min_poly(&companion(&pp)), pp);
}

#[test]
fn roots_in_extensions() {
    let f9 = ExtField::new(3, 2).unwrap();
    let roots = ext_roots(&t2p1(), &f9);
    assert_eq!(roots.len(), 2);
    use rzint::finite::Field;
    assert_eq!(f9.frobenius(&roots[0]), roots[1]);
    assert_eq!(f9.frobenius(&roots[1]), roots[0]);
    let f3 = ExtField::new(3, 1).unwrap();
    assert_eq!(ext_roots(&poly(3, &[-1, 1]), &f3), vec![f3.embed(1)]);
    assert!(ext_roots(&t2p1(), &f3).is_empty());
    assert!(is_irreducible(&t2p1()));
}

// ---- p-adics

#[test]
fn rationals_to_padics() {
    let one = padic_of_rational(1, 1, 3, 8).unwrap();
    assert_eq!((one.valuation(), one.unit_residue()), (Some(0), Some(1)));
    let x = padic_of_rational(9, 2, 3, 8).unwrap();
    assert_eq!(x.valuation(), Some(2));
    let m = BigInt::from(3u32.pow(8));
    assert_eq!((x.unit().unwrap() * 2 % &m + &m) % &m, BigInt::from(1));
    assert!(padic_of_rational(0, 5, 7, 8).unwrap().is_zero());
    assert_eq!(padic_of_rational(1, 0, 7, 8).unwrap_err(), Error::ZeroDenominator);
}

#[test]
fn smith_examples() {
    let inv = |p: u64, rows: &[Vec<i64>]| smith_invariants(&PadicMatrix::from_i64(p, 12, rows).unwrap()).unwrap().invariants;
    assert_eq!(inv(3, &[vec![9, 0, 0], vec![0, 3, 0], vec![0, 0, 1]]), vec![2, 1, 0]);
    let d = |a: i64, b: i64, c: i64, e: i64| vec![vec![a, 0, 0, 0], vec![0, b, 0, 0], vec![0, 0, c, 0], vec![0, 0, 0, e]];
    assert_eq!(inv(5, &d(5, 5, 1, 1)), vec![1, 1, 0, 0]);
    assert_eq!(inv(5, &[vec![0, 5], vec![1, 0]]), vec![1, 0]);
    let s = smith_invariants(&PadicMatrix::from_i64(5, 12, &[vec![0, 5], vec![1, 0]]).unwrap()).unwrap();
    assert!(s.reconstruction_holds() && s.transforms_unimodular());
    assert_eq!(s.det_valuation(), 1);
}

#[test]
fn inverse_examples() {
    let m = |rows: &[Vec<i64>]| PadicMatrix::from_i64(5, 12, rows).unwrap();
    assert_eq!(padic_inverse(&PadicMatrix::identity(5, 12, 3)).unwrap(), PadicMatrix::identity(5, 12, 3));
    let inv = padic_inverse(&m(&[vec![5, 0], vec![0, 1]])).unwrap();
    let p_inv = PadicScalar::from_i64(5, 5, 12).inv().unwrap();
    assert_eq!(inv, PadicMatrix::from_rows(5, 12, vec![
        vec![p_inv, PadicScalar::zero(5, 12)],
        vec![PadicScalar::zero(5, 12), PadicScalar::one(5, 12)],
    ]).unwrap());
    assert_eq!(padic_inverse(&m(&[vec![1, 1], vec![0, 1]])).unwrap(), m(&[vec![1, -1], vec![0, 1]]));
}

#[test]
fn hilbert_examples() {
    let s = |x: i64, p: u64| PadicScalar::from_i64(x, p, 16);
    for p in [3u64, 5, 7] {
        for b in [2i64, 3, 5, 7, 10, -1] {
            assert_eq!(hilbert_symbol(&s(1, p), &s(b, p)).unwrap(), 1);
            assert_eq!(hilbert_symbol_bruteforce(&s(1, p), &s(b, p)).unwrap(), 1);
        }
    }
    assert_eq!(hilbert_symbol(&s(3, 3), &s(2, 3)).unwrap(), -1);
    assert_eq!(hilbert_symbol_bruteforce(&s(3, 3), &s(2, 3)).unwrap(), -1);
    for (u, v) in [(2, 3), (3, 5), (6, 6), (-1, 3)] {
        assert_eq!(hilbert_symbol(&s(u, 7), &s(v, 7)).unwrap(), 1);
        assert_eq!(hilbert_symbol_bruteforce(&s(u, 7), &s(v, 7)).unwrap(), 1);
    }
    assert_eq!(hilbert_symbol(&s(0, 5), &s(2, 5)).unwrap_err(), Error::ZeroArgument);
}

#[test]
fn form_invariants() {
    assert_eq!(hasse_invariant(&PadicMatrix::identity(5, 12, 4)).unwrap(), 1);
    // hyperbolic plane is diag(2, -2) after x+y, x-y
    let hyp = PadicMatrix::from_i64(5, 12, &[vec![0, 1], vec![1, 0]]).unwrap();
    let s = |x: i64| PadicScalar::from_i64(x, 5, 12);
    assert_eq!(hasse_invariant(&hyp).unwrap(), hilbert_symbol_bruteforce(&s(2), &s(-2)).unwrap());
    assert_eq!(square_class(&PadicScalar::from_i64(3, 3, 8)).unwrap(), (1, true));
    assert_eq!(square_class(&PadicScalar::from_i64(2, 3, 8)).unwrap(), (0, false));
}

// ---- instances

fn diag_instance(p: u64, sign: i64) -> FullInstance {
    let n = 4;
    let id = PadicMatrix::identity(p, 12, n);
    let g = id.scale(&PadicScalar::from_i64(sign, p, 12));
    let mut x = vec![PadicScalar::zero(p, 12); n];
    x[0] = PadicScalar::one(p, 12);
    FullInstance::new(p, 12, id, g, x).unwrap()
}

#[test]
fn degenerate_g_is_not_regular_semisimple() {
    let inst = diag_instance(5, 1);
    let t = rzint::instance::fundamental_matrix(&inst).unwrap();
    assert!(t.entries().all(|e| *e == PadicScalar::one(5, 12)));
    assert!(!is_regular_semisimple(&inst).unwrap());
    assert!(!is_regular_semisimple(&diag_instance(5, -1)).unwrap());
    assert_eq!(reduce_instance(&inst).unwrap_err(), Error::NotRegularSemisimple);
}

#[test]
fn minuscule_invariants() {
    assert!(invariants_minuscule(&[1, 1, 0, 0]));
    assert!(!invariants_minuscule(&[2, 1, 0, 0]));
    assert!(!invariants_minuscule(&[1, 0, 0, -1]));
}

#[test]
fn generated_full_instances_reduce() {
    for (p, n, seed) in [(3u64, 4usize, 1u64), (5, 4, 2), (7, 5, 3)] {
        let inst = gen_full(p, n, 24, seed).unwrap();
        assert!(is_regular_semisimple(&inst).unwrap());
        let (red, log) = reduce_instance(&inst).unwrap();
        assert!(all_passed(&validate_reduced(&red)), "p={p} n={n}");
        assert_eq!(red.t, log.cartan_invariants.iter().filter(|&&r| r == 1).count());
        let chi = matrix_char_poly(&red.gbar);
        assert!(chi.is_self_reciprocal().unwrap());
        assert_eq!(matrix_min_poly(&red.gbar), chi);
    }
}

#[test]
fn splitness_and_t_max() {
    assert!(is_split_fp(&fm(3, &[vec![0, 1], vec![1, 0]])).unwrap());
    assert!(!is_split_fp(&fm(5, &[vec![1, 0], vec![0, -2]])).unwrap());
    assert_eq!(t_max(4, (0, true), 5), 2);
}

#[test]
fn validation_failures() {
    let f = PrimeField::new(5).unwrap();
    let id = FpMatrix::identity(&f, 4);
    let red = ReducedInstance::new(5, fm(5, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 2]]), id.clone(), poly(5, &[-1, 1]).pow(4)).unwrap();
    let v = validate_reduced(&red);
    assert!(!v.iter().find(|x| x.name == "cyclic").unwrap().passed);

    let hyp = fm(3, &[vec![0, 1], vec![1, 0]]);
    let rot = fm(3, &[vec![0, -1], vec![1, 0]]);
    let red = ReducedInstance::from_action(hyp, FpMatrix::identity(&PrimeField::new(3).unwrap(), 2)).unwrap();
    assert!(!validate_reduced(&red).iter().find(|x| x.name == "non_split").unwrap().passed);
    let red = ReducedInstance::from_action(fm(3, &[vec![1, 0], vec![0, 1]]), rot).unwrap();
    assert!(all_passed(&validate_reduced(&red)));
}

#[test]
fn generator_examples() {
    let red = gen_reduced(3, &parse_shape("q:2:1").unwrap(), 7).unwrap();
    assert_eq!((red.t, red.poly.clone()), (2, t2p1()));
    assert!(all_passed(&validate_reduced(&red)));
    assert_eq!(red.gbar.transpose().mul(&red.omega_gram).mul(&red.gbar), red.omega_gram);

    let red = gen_reduced(3, &parse_shape("q:2:1,pair:2:1").unwrap(), 7).unwrap();
    assert_eq!(red.t, 6);
    let cls = classify_factors(&red.poly).unwrap();
    assert_eq!(nonempty_q(&cls), Some((t2p1(), 1)));
    assert_eq!(cls.pairs.len(), 1);

    assert!(matches!(gen_reduced(5, &parse_shape("q:1:1").unwrap(), 7), Err(Error::ShapeInfeasible(_))));
}

// ---- closed forms

#[test]
fn classification_examples() {
    let cls = classify_factors(&t2p1()).unwrap();
    assert_eq!(cls.q_candidates, vec![(t2p1(), 1)]);
    assert!(cls.pairs.is_empty());

    let cls = classify_factors(&three_factor()).unwrap();
    assert_eq!(cls.q_candidates, vec![(t2p1(), 1)]);
    assert_eq!(cls.pairs.len(), 1);
    assert_eq!(cls.pairs[0].multiplicity, 1);

    let p = poly(3, &[-1, 1]).mul(&poly(3, &[1, 1])).mul(&t2p1());
    let cls = classify_factors(&p).unwrap();
    assert_eq!(cls.q_candidates.len(), 3);
    assert_eq!(nonempty_q(&cls), None);
    assert_eq!(point_count(&cls), 0);

    // (T-1)^2 (T^2+1) over F_3: the square goes to the even bucket
    let p = poly(3, &[-1, 1]).pow(2).mul(&t2p1());
    let cls = classify_factors(&p).unwrap();
    assert_eq!(cls.even_selfrec, vec![(poly(3, &[-1, 1]), 2)]);
    assert_eq!(nonempty_q(&cls), Some((t2p1(), 1)));

    assert_eq!(classify_factors(&poly(3, &[2, 1, 1])).unwrap_err(), Error::NotSelfReciprocal);
}

#[test]
fn report_examples() {
    let r = intersection_number(&t2p1()).unwrap();
    assert_eq!((r.nonempty, r.point_count, r.c, r.total, r.p_gt_c), (true, 2, Some(1), Some(2), true));

    let r = intersection_number(&three_factor()).unwrap();
    assert_eq!(r.point_count, 4);

    let r = intersection_number(&t2p1().pow(3)).unwrap();
    assert_eq!((r.point_count, r.c, r.total, r.p_gt_c, r.m_q), (2, Some(2), Some(4), true, Some(3)));

    let r = intersection_number(&poly(3, &[-1, 1]).mul(&poly(3, &[1, 1])).mul(&t2p1())).unwrap();
    assert!(!r.nonempty);
    assert_eq!((r.point_count, r.c, r.total), (0, None, None));
}

// ---- oracles

#[test]
fn cyclic_generators() {
    let red = reduced_for(&three_factor(), 1);
    assert_eq!(cyclic_generator(&red).unwrap(), vec![1, 0, 0, 0, 0, 0]);
    let conj = rzint::instance::gen::conjugate_reduced(&red, 5);
    assert!(cyclic_generator(&conj).is_ok());
    let f = PrimeField::new(3).unwrap();
    let bad = ReducedInstance::from_action(FpMatrix::identity(&f, 2), FpMatrix::identity(&f, 2)).unwrap();
    assert_eq!(cyclic_generator(&bad).unwrap_err(), Error::NotCyclic);
}

#[test]
fn strata_examples() {
    let strata = enumerate_strata(&reduced_for(&t2p1(), 2)).unwrap();
    assert_eq!(strata.len(), 2);
    assert_eq!(strata.iter().filter(|s| s.nonempty).count(), 1);
    assert_eq!(oracle_point_count(&strata), 2);

    let strata = enumerate_strata(&reduced_for(&three_factor(), 3)).unwrap();
    assert_eq!(strata.len(), 8);
    let nonempty: Vec<_> = strata.iter().filter(|s| s.nonempty).collect();
    assert_eq!(nonempty.len(), 2);
    assert!(nonempty.iter().all(|s| s.middle.as_ref() == Some(&t2p1())));
    assert_eq!(oracle_point_count(&strata), 4);

    let red = gen_reduced_relaxed(3, &parse_shape("q:1:1,q:1:1,q:2:1").unwrap(), 4).unwrap();
    let strata = enumerate_strata(&red).unwrap();
    assert_eq!(oracle_point_count(&strata), 0);
}

#[test]
fn dl_examples() {
    let gram = fm(3, &[vec![1, 0], vec![0, 1]]);
    let rot = fm(3, &[vec![0, -1], vec![1, 0]]);
    assert_eq!(dl_fixed_count(&gram, &rot).unwrap(), 2);

    let quartic = poly(3, &[1, 1, 1, 1, 1]);
    let red = reduced_for(&quartic, 5);
    assert_eq!(dl_fixed_count(&red.omega_gram, &red.gbar).unwrap(), 4);

    let f = PrimeField::new(3).unwrap();
    let split = companion(&poly(3, &[-1, 0, 1]));
    assert_eq!(dl_fixed_count(&FpMatrix::identity(&f, 2), &split).unwrap_err(), Error::ReducibleCharPoly);
}

#[test]
fn local_ring_examples() {
    // lambda = 2 over F_5
    let jd = JordanData::new(fm(5, &[vec![2, 1], vec![0, 2]]), vec![0, 1], 2).unwrap();
    assert_eq!(jd.c(), 3);
    assert_eq!(local_ring_length(&jd).unwrap(), 3);

    let jd = JordanData::new(fm(5, &[vec![3]]), vec![4], 2).unwrap();
    assert_eq!((jd.c(), local_ring_length(&jd).unwrap()), (1, 1));

    let jd = gen_jordan(1, 3, 5, 11).unwrap();
    assert_eq!(jd.c(), 1);
    assert_eq!(local_ring_length(&jd).unwrap(), 1);

    let jd = gen_jordan(2, 2, 5, 11).unwrap();
    assert_eq!(jd.h1.rows(), 1);
    assert_eq!(jd.h1.to_rows()[0][0], jd.h4);
    assert_ne!(jd.h2[0], 0);
    assert_eq!(local_ring_length(&jd).unwrap(), 2);

    assert!(matches!(gen_jordan(4, 4, 3, 11), Err(Error::ShapeInfeasible(_))));
}
