//! Finite fields F_p and F_{p^m} behind one context-carrying trait.
//!
//! Elements are plain values; the field object carries the modulus. This keeps
//! matrices and polynomials generic without const generics over p.

use rand::Rng;
use std::fmt::Debug;
use std::sync::Arc;

use crate::error::{Error, Result};

pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq + Eq + Ord + std::hash::Hash;

    fn characteristic(&self) -> u64;
    /// Number of elements q = p^m.
    fn size(&self) -> u128;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, x: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.size() - 2))
        }
    }

    /// x -> x^p.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u128)
    }

    /// The unique p-th root (Frobenius is bijective on a finite field).
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.size() / self.characteristic() as u128)
    }

    fn is_square(&self, a: &Self::Elem) -> bool {
        self.is_zero(a) || self.is_one(&self.pow(a, (self.size() - 1) / 2))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn legendre(&self, a: u64) -> i8 {
        let a = a % self.p;
        if a == 0 {
            0
        } else if self.is_square(&a) {
            1
        } else {
            -1
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn size(&self) -> u128 {
        self.p as u128
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, x: i64) -> u64 {
        self.reduce(x)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

/// F_{p^m} = F_p[y]/(modulus). Elements are coefficient vectors of length m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    m: usize,
    modulus: Arc<[u64]>,
}

impl ExtField {
    /// Build from an explicit monic modulus (low-to-high, length m+1).
    /// Irreducibility is checked.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let poly = super::poly::FpPoly::new(p, modulus.iter().map(|&c| c as i64).collect())?;
        if !poly.is_monic() || poly.degree() < 1 {
            return Err(Error::NonMonicInput);
        }
        if !super::factor::is_irreducible(&poly) {
            return Err(Error::InvalidInput("extension modulus is reducible".into()));
        }
        let m = poly.degree() as usize;
        Ok(ExtField { base, m, modulus: poly.coeffs().to_vec().into() })
    }

    /// Deterministic choice: the first monic irreducible of degree m in
    /// lexicographic order of coefficients (constant term first).
    pub fn new(p: u64, m: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if m == 0 {
            return Err(Error::InvalidInput("extension degree 0".into()));
        }
        let mut digits = vec![0u64; m];
        loop {
            let mut c = digits.clone();
            c.push(1);
            let poly = super::poly::FpPoly::from_reduced(p, c);
            if super::factor::is_irreducible(&poly) {
                return Ok(ExtField { base, m, modulus: poly.coeffs().to_vec().into() });
            }
            let mut i = 0;
            loop {
                if i == m {
                    return Err(Error::Internal(format!("no irreducible of degree {m} mod {p}")));
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn embed(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.m];
        v[0] = a % self.base.p;
        v
    }

    /// The class of y, a generator of F_{p^m} over F_p.
    pub fn gen(&self) -> Vec<u64> {
        let mut v = vec![0; self.m];
        if self.m == 1 {
            v[0] = self.base.neg(&self.modulus[0]);
        } else {
            v[1] = 1;
        }
        v
    }

    /// Returns the prime-field value if the element lies in F_p.
    pub fn as_base(&self, a: &[u64]) -> Option<u64> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    /// All q elements; only sensible for tiny fields.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let q = self.size() as u64;
        (0..q)
            .map(|mut k| {
                let mut v = vec![0; self.m];
                for c in v.iter_mut() {
                    *c = k % self.base.p;
                    k /= self.base.p;
                }
                v
            })
            .collect()
    }
}

impl Field for ExtField {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn size(&self) -> u128 {
        (self.base.p as u128).pow(self.m as u32)
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.m]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn from_i64(&self, x: i64) -> Vec<u64> {
        self.embed(self.base.reduce(x))
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let m = self.m;
        let f = &self.base;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        // reduce by the monic modulus from the top down
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                prod[k - m + i] = f.sub(&prod[k - m + i], &f.mul(&c, &self.modulus[i]));
            }
        }
        prod.truncate(m);
        prod
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.m).map(|_| rng.gen_range(0..self.base.p)).collect()
    }
}
