use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rzint::finite::{
    companion, ext_roots, is_irreducible, matrix_char_poly, matrix_min_poly, poly_factorize, ExtField, Field,
    FpMatrix, FpPoly, PrimeField,
};
use rzint::instance::gen::{conjugate_reduced, gen_reduced, parse_shape};
use rzint::padic::{hasse_invariant, hilbert_symbol, smith_invariants, PadicMatrix, PadicScalar};

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(11)]
}

/// Monic with nonzero constant term.
fn unit_poly(p: u64, max_deg: usize) -> impl Strategy<Value = FpPoly> {
    (1..=max_deg).prop_flat_map(move |d| {
        (1..p, proptest::collection::vec(0..p, d - 1)).prop_map(move |(c0, mid)| {
            let mut c = vec![c0];
            c.extend(mid);
            c.push(1);
            FpPoly::from_reduced(p, c)
        })
    })
}

fn with_prime<T: std::fmt::Debug>(f: impl Fn(u64) -> BoxedStrategy<T>) -> impl Strategy<Value = (u64, T)> {
    prime().prop_flat_map(move |p| (Just(p), f(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factors_remultiply((_, a) in with_prime(|p| unit_poly(p, 9).boxed())) {
        let fl = poly_factorize(&a).unwrap();
        prop_assert_eq!(fl.product(), a);
        for (f, _) in &fl.factors {
            prop_assert!(is_irreducible(f));
        }
    }

    #[test]
    fn reciprocal_is_involutive_and_multiplicative(
        (_, (a, b)) in with_prime(|p| (unit_poly(p, 6), unit_poly(p, 6)).boxed())
    ) {
        prop_assert_eq!(a.reciprocal().unwrap().reciprocal().unwrap(), a.clone());
        let ab = a.mul(&b).reciprocal().unwrap();
        prop_assert_eq!(ab, a.reciprocal().unwrap().mul(&b.reciprocal().unwrap()));
    }

    #[test]
    fn min_poly_divides_char_poly(seed in any::<u64>(), p in prime(), n in 1usize..6) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = FpMatrix::zeros(&f, n, n);
        for i in 0..n {
            for j in 0..n {
                // sparse-ish so that small minimal polynomials show up
                if rng.gen_bool(0.4) {
                    m[(i, j)] = f.random(&mut rng);
                }
            }
        }
        let c = matrix_char_poly(&m);
        let mp = matrix_min_poly(&m);
        prop_assert_eq!(c.degree(), n);
        prop_assert!(mp.divides(&c));
        prop_assert!(FpPoly::from_reduced(p, m.eval_poly(mp.coeffs()).row(0)).is_zero());
    }

    #[test]
    fn isometry_char_poly_is_self_reciprocal(seed in any::<u64>(), k in 0usize..3) {
        let shapes = ["q:2:1", "q:2:1,pair:1:1", "q:4:1"];
        let p = [5u64, 7, 7][k];
        let red = gen_reduced(p, &parse_shape(shapes[k]).unwrap(), seed).unwrap();
        let red = conjugate_reduced(&red, seed ^ 9);
        prop_assert!(matrix_char_poly(&red.gbar).is_self_reciprocal().unwrap());
    }

    #[test]
    fn hilbert_symmetric_and_bimultiplicative(p in prime(), a in 1i64..500, b in 1i64..500, c in 1i64..500,
                                             sa in any::<bool>(), sb in any::<bool>()) {
        let s = |x: i64| PadicScalar::from_i64(x, p, 16);
        let a = if sa { -a } else { a };
        let b = if sb { -b } else { b };
        let h = |x: i64, y: i64| hilbert_symbol(&s(x), &s(y)).unwrap();
        prop_assert_eq!(h(a, b), h(b, a));
        prop_assert_eq!(h(a * c, b), h(a, b) * h(c, b));
        prop_assert_eq!(h(a, a), h(a, -1));
    }

    #[test]
    fn hasse_under_congruence(seed in any::<u64>(), p in prime(), n in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pi = p as i64;
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let x = rng.gen_range(-3 * pi..=3 * pi);
                g[i][j] = x;
                g[j][i] = x;
            }
        }
        let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-pi..=pi)).collect()).collect();
        let gm = PadicMatrix::from_i64(p, 24, &g).unwrap();
        let am = PadicMatrix::from_i64(p, 24, &a).unwrap();
        prop_assume!(!gm.det().unwrap().is_zero() && !am.det().unwrap().is_zero());
        let moved = am.transpose().mul(&gm).unwrap().mul(&am).unwrap();
        prop_assert_eq!(hasse_invariant(&gm).unwrap(), hasse_invariant(&moved).unwrap());
    }

    #[test]
    fn smith_is_basis_independent(seed in any::<u64>(), p in prime(), n in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rand_int = |rng: &mut ChaCha8Rng| -> Vec<Vec<i64>> {
            (0..n).map(|_| (0..n).map(|_| rng.gen_range(-50..=50)).collect()).collect()
        };
        let m = PadicMatrix::from_i64(p, 24, &rand_int(&mut rng)).unwrap();
        prop_assume!(!m.det().unwrap().is_zero());
        // unimodular: upper and lower unitriangular factors
        let mut u = vec![vec![0i64; n]; n];
        let mut l = vec![vec![0i64; n]; n];
        for i in 0..n {
            u[i][i] = 1;
            l[i][i] = 1;
            for j in i + 1..n {
                u[i][j] = rng.gen_range(-9..=9);
                l[j][i] = rng.gen_range(-9..=9);
            }
        }
        let a = PadicMatrix::from_i64(p, 24, &u).unwrap().mul(&PadicMatrix::from_i64(p, 24, &l).unwrap()).unwrap();
        let b = PadicMatrix::from_i64(p, 24, &l).unwrap();
        let moved = a.mul(&m).unwrap().mul(&b).unwrap();
        prop_assert_eq!(smith_invariants(&m).unwrap().invariants, smith_invariants(&moved).unwrap().invariants);
    }
}

#[test]
fn smith_reconstruction_on_random_matrices() {
    for p in [3u64, 5, 7] {
        for prec in [8u32, 24] {
            let mut rng = ChaCha8Rng::seed_from_u64(p * 100 + prec as u64);
            let mut done = 0;
            while done < 500 {
                let n = rng.gen_range(1..=5);
                let scale = rng.gen_range(0..3);
                let m: Vec<Vec<i64>> = (0..n)
                    .map(|_| (0..n).map(|_| rng.gen_range(-40..=40) * (p as i64).pow(rng.gen_range(0..=scale))).collect())
                    .collect();
                let pm = PadicMatrix::from_i64(p, prec, &m).unwrap();
                match smith_invariants(&pm) {
                    Ok(s) => {
                        assert!(s.reconstruction_holds(), "p={p} N={prec} {m:?}");
                        assert!(s.transforms_unimodular());
                        assert!(s.invariants.windows(2).all(|w| w[0] >= w[1]));
                        done += 1;
                    }
                    Err(rzint::Error::SingularAtPrecision) | Err(rzint::Error::PrecisionExhausted(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn frobenius_orbits_of_irreducibles() {
    for (p, d) in [(3u64, 2usize), (3, 4), (5, 3), (7, 2)] {
        let f = ExtField::new(p, d).unwrap();
        let polys = rzint::instance::gen::irreducibles(p, d);
        for q in polys.iter().take(6) {
            let roots = ext_roots(q, &f);
            assert_eq!(roots.len(), d);
            let mut orbit = vec![roots[0].clone()];
            for _ in 1..d {
                orbit.push(f.frobenius(orbit.last().unwrap()));
            }
            orbit.sort();
            assert_eq!(orbit, roots, "{q}");
        }
    }
}

#[test]
fn companion_char_equals_min() {
    let q = FpPoly::new(5, vec![1, 2, 0, 3, 1]).unwrap();
    let c = companion(&q);
    assert_eq!(matrix_char_poly(&c), q);
    assert_eq!(matrix_min_poly(&c), q);
}
