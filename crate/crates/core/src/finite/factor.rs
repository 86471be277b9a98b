//! Factorization over finite fields: squarefree split, distinct-degree,
//! then Cantor-Zassenhaus equal-degree splitting (odd characteristic).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

use super::field::Field;
use super::poly::{dense, FpPoly};
use crate::error::{Error, Result};

pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_f00d;

/// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorList {
    pub p: u64,
    pub factors: Vec<(FpPoly, usize)>,
}

impl FactorList {
    pub fn product(&self) -> FpPoly {
        self.factors
            .iter()
            .fold(FpPoly::one(self.p), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    pub fn multiplicity(&self, f: &FpPoly) -> usize {
        self.factors.iter().find(|(g, _)| g == f).map_or(0, |(_, m)| *m)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Squarefree decomposition of a monic polynomial: (part, multiplicity) with
/// the parts squarefree and pairwise coprime.
pub fn squarefree<F: Field>(f: &F, a: &[F::Elem]) -> Vec<(Vec<F::Elem>, usize)> {
    let mut out = Vec::new();
    if dense::deg::<F>(a).unwrap_or(0) == 0 {
        return out;
    }
    let d = dense::derivative(f, a);
    let mut c = dense::gcd(f, a, &d);
    let mut w = dense::divrem(f, a, &c).0;
    let mut i = 1;
    while !dense::is_one(f, &w) {
        let y = dense::gcd(f, &w, &c);
        let fac = dense::divrem(f, &w, &y).0;
        if fac.len() > 1 {
            out.push((dense::monic(f, &fac), i));
        }
        w = y;
        c = dense::divrem(f, &c, &w).0;
        i += 1;
    }
    if !dense::is_one(f, &c) {
        // c is a p-th power: take the root coefficientwise
        let p = f.characteristic() as usize;
        let root: Vec<F::Elem> = c.iter().step_by(p).map(|x| f.pth_root(x)).collect();
        for (g, m) in squarefree(f, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree split of a squarefree monic polynomial.
pub fn distinct_degree<F: Field>(f: &F, a: &[F::Elem]) -> Vec<(Vec<F::Elem>, usize)> {
    let q = f.size();
    let mut out = Vec::new();
    let mut rest = a.to_vec();
    let x = dense::x(f);
    let mut h = dense::rem(f, &x, &rest);
    let mut i = 1;
    while rest.len() > 2 * i {
        h = dense::powmod(f, &h, q, &rest);
        let g = dense::gcd(f, &dense::sub(f, &h, &x), &rest);
        if g.len() > 1 {
            out.push((g.clone(), i));
            rest = dense::divrem(f, &rest, &g).0;
            h = dense::rem(f, &h, &rest);
        }
        i += 1;
    }
    if rest.len() > 1 {
        let d = rest.len() - 1;
        out.push((rest, d));
    }
    out
}

/// Split a squarefree monic product of irreducibles of degree d.
pub fn equal_degree<F: Field>(
    f: &F,
    a: &[F::Elem],
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<F::Elem>> {
    let n = a.len() - 1;
    if n == d {
        return vec![a.to_vec()];
    }
    let q = f.size();
    loop {
        let r: Vec<F::Elem> = dense::trim(f, (0..n).map(|_| f.random(rng)).collect());
        if r.len() < 2 {
            continue;
        }
        let mut g = dense::gcd(f, &r, a);
        if g.len() == 1 {
            // r^((q^d - 1)/2) computed as (r * r^q * ... * r^(q^(d-1)))^((q-1)/2)
            let mut t = r.clone();
            let mut norm = r.clone();
            for _ in 1..d {
                t = dense::powmod(f, &t, q, a);
                norm = dense::mulmod(f, &norm, &t, a);
            }
            let b = dense::powmod(f, &norm, (q - 1) / 2, a);
            g = dense::gcd(f, &dense::sub(f, &b, &[f.one()]), a);
        }
        if g.len() > 1 && g.len() < a.len() {
            let h = dense::divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &dense::monic(f, &h), d, rng));
            return out;
        }
    }
}

/// Full factorization of a monic polynomial over any finite field of odd
/// characteristic, as (irreducible, multiplicity) sorted canonically.
pub fn factor_generic<F: Field>(f: &F, a: &[F::Elem], seed: u64) -> Vec<(Vec<F::Elem>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc: BTreeMap<(usize, Vec<F::Elem>), usize> = BTreeMap::new();
    for (part, m) in squarefree(f, a) {
        for (block, d) in distinct_degree(f, &part) {
            for irr in equal_degree(f, &block, d, &mut rng) {
                *acc.entry((irr.len(), irr)).or_insert(0) += m;
            }
        }
    }
    acc.into_iter().map(|((_, g), m)| (g, m)).collect()
}

pub fn factorize_seeded(poly: &FpPoly, seed: u64) -> Result<FactorList> {
    if !poly.is_monic() || poly.degree() < 1 {
        return Err(Error::NonMonicInput);
    }
    let f = poly.field();
    let factors = factor_generic(&f, poly.coeffs(), seed)
        .into_iter()
        .map(|(g, m)| (FpPoly::from_reduced(poly.p(), g), m))
        .collect();
    Ok(FactorList { p: poly.p(), factors })
}

pub fn poly_factorize(poly: &FpPoly) -> Result<FactorList> {
    factorize_seeded(poly, DEFAULT_FACTOR_SEED)
}

/// Rabin-style test: X^(p^n) = X mod f and gcd(X^(p^(n/r)) - X, f) = 1 for prime r | n.
pub fn is_irreducible(poly: &FpPoly) -> bool {
    let n = poly.degree();
    if poly.is_zero() || n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = poly.field();
    let a = dense::monic(&f, poly.coeffs());
    let x = dense::x(&f);
    let q = f.size();
    let frob_iter = |k: usize| {
        let mut h = dense::rem(&f, &x, &a);
        for _ in 0..k {
            h = dense::powmod(&f, &h, q, &a);
        }
        h
    };
    if !dense::sub(&f, &frob_iter(n), &x).is_empty() {
        return false;
    }
    let mut m = n;
    let mut r = 2;
    while m > 1 {
        if m % r == 0 {
            while m % r == 0 {
                m /= r;
            }
            let h = frob_iter(n / r);
            if dense::gcd(&f, &dense::sub(&f, &h, &x), &a).len() > 1 {
                return false;
            }
        }
        r += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn known_factorizations() {
        let fl = poly_factorize(&poly(3, &[-1, 0, 1])).unwrap();
        assert_eq!(fl.factors, vec![(poly(3, &[1, 1]), 1), (poly(3, &[-1, 1]), 1)]);
        let fl = poly_factorize(&poly(3, &[1, 0, 1])).unwrap();
        assert_eq!(fl.factors, vec![(poly(3, &[1, 0, 1]), 1)]);
        let a = poly(3, &[2, 1, 1]);
        let b = poly(3, &[1, 0, 1]);
        let fl = poly_factorize(&a.pow(2).mul(&b)).unwrap();
        assert_eq!(fl.len(), 2);
        assert_eq!(fl.multiplicity(&a), 2);
        assert_eq!(fl.multiplicity(&b), 1);
    }

    #[test]
    fn pth_powers() {
        // (T+1)^3 * (T^2+1)^6 over F_3 has vanishing derivative pieces
        let f = poly(3, &[1, 1]).pow(3).mul(&poly(3, &[1, 0, 1]).pow(6));
        let fl = poly_factorize(&f).unwrap();
        assert_eq!(fl.factors, vec![(poly(3, &[1, 1]), 3), (poly(3, &[1, 0, 1]), 6)]);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&poly(3, &[1, 0, 1])));
        assert!(!is_irreducible(&poly(5, &[1, 0, 1])));
        assert!(is_irreducible(&poly(3, &[2, 1, 1])));
        // x^4 + 1 is reducible mod every prime
        assert!(!is_irreducible(&poly(7, &[1, 0, 0, 0, 1])));
        assert!(!is_irreducible(&poly(3, &[1, 0, 0, 0, 1])));
    }

    #[test]
    fn non_monic_rejected() {
        assert_eq!(poly_factorize(&poly(5, &[1, 2])), Err(Error::NonMonicInput));
    }
}
