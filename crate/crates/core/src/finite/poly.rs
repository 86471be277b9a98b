//! Dense univariate polynomials, low-to-high.
//!
//! `dense` holds the field-generic kernels (used over F_p and F_{p^m});
//! `FpPoly` is the owned F_p polynomial the rest of the crate passes around.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use super::field::{check_odd_prime, PrimeField};
use crate::error::{Error, Result};

pub mod dense {
    use super::super::field::Field;

    pub fn trim<F: Field>(f: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
        while a.last().map_or(false, |c| f.is_zero(c)) {
            a.pop();
        }
        a
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg<F: Field>(a: &[F::Elem]) -> Option<usize> {
        if a.is_empty() {
            None
        } else {
            Some(a.len() - 1)
        }
    }

    pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let n = a.len().max(b.len());
        let z = f.zero();
        let out = (0..n)
            .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        trim(f, out)
    }

    pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let n = a.len().max(b.len());
        let z = f.zero();
        let out = (0..n)
            .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        trim(f, out)
    }

    pub fn scale<F: Field>(f: &F, a: &[F::Elem], s: &F::Elem) -> Vec<F::Elem> {
        trim(f, a.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        trim(f, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let db = deg::<F>(b).expect("division by zero polynomial");
        let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), trim(f, r));
        }
        let mut q = vec![f.zero(); r.len() - db];
        for k in (db..r.len()).rev() {
            let c = f.mul(&r[k], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (i, bi) in b.iter().enumerate() {
                let idx = k - db + i;
                r[idx] = f.sub(&r[idx], &f.mul(&c, bi));
            }
            q[k - db] = c;
        }
        r.truncate(db);
        (trim(f, q), trim(f, r))
    }

    pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        divrem(f, a, b).1
    }

    pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let inv = f.inv(l).expect("nonzero leading coefficient");
                scale(f, a, &inv)
            }
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let mut x = trim(f, a.to_vec());
        let mut y = trim(f, b.to_vec());
        while !y.is_empty() {
            let r = rem(f, &x, &y);
            x = y;
            y = r;
        }
        monic(f, &x)
    }

    pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
        rem(f, &mul(f, a, b), m)
    }

    pub fn powmod<F: Field>(f: &F, a: &[F::Elem], mut e: u128, m: &[F::Elem]) -> Vec<F::Elem> {
        let mut base = rem(f, a, m);
        let mut acc = rem(f, &[f.one()], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(f, &acc, &base, m);
            }
            base = mulmod(f, &base, &base, m);
            e >>= 1;
        }
        acc
    }

    pub fn pow<F: Field>(f: &F, a: &[F::Elem], e: usize) -> Vec<F::Elem> {
        let mut acc = vec![f.one()];
        for _ in 0..e {
            acc = mul(f, &acc, a);
        }
        acc
    }

    pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
        if a.len() <= 1 {
            return Vec::new();
        }
        let out = a[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| f.mul(c, &f.from_i64((i + 1) as i64)))
            .collect();
        trim(f, out)
    }

    pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn is_one<F: Field>(f: &F, a: &[F::Elem]) -> bool {
        a.len() == 1 && f.is_one(&a[0])
    }

    pub fn x<F: Field>(f: &F) -> Vec<F::Elem> {
        vec![f.zero(), f.one()]
    }
}

/// Polynomial over F_p, coefficients reduced and trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// From signed integer coefficients (low-to-high), reduced mod p.
    pub fn new(p: u64, coeffs: Vec<i64>) -> Result<Self> {
        check_odd_prime(p)?;
        let c = coeffs.into_iter().map(|c| c.rem_euclid(p as i64) as u64).collect();
        Ok(Self::from_reduced(p, c))
    }

    /// Caller guarantees p is an odd prime; entries are reduced here anyway.
    pub fn from_reduced(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly { p, coeffs: vec![0, 1] }
    }

    /// T - a.
    pub fn linear(p: u64, a: i64) -> Self {
        Self::from_reduced(p, vec![(-a).rem_euclid(p as i64) as u64, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("FpPoly always carries an odd prime")
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn wrap(&self, c: Vec<u64>) -> Self {
        FpPoly { p: self.p, coeffs: c }
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "polynomials over different primes");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        self.wrap(dense::add(&self.field(), &self.coeffs, &o.coeffs))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_field(o);
        self.wrap(dense::sub(&self.field(), &self.coeffs, &o.coeffs))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        self.wrap(dense::mul(&self.field(), &self.coeffs, &o.coeffs))
    }

    pub fn scale(&self, s: u64) -> Self {
        self.wrap(dense::scale(&self.field(), &self.coeffs, &(s % self.p)))
    }

    pub fn pow(&self, e: usize) -> Self {
        self.wrap(dense::pow(&self.field(), &self.coeffs, e))
    }

    pub fn divrem(&self, o: &Self) -> (Self, Self) {
        self.same_field(o);
        let (q, r) = dense::divrem(&self.field(), &self.coeffs, &o.coeffs);
        (self.wrap(q), self.wrap(r))
    }

    /// Exact quotient, or None if `o` does not divide `self`.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.divrem(o);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, o: &Self) -> bool {
        o.divrem(self).1.is_zero()
    }

    pub fn gcd(&self, o: &Self) -> Self {
        self.same_field(o);
        self.wrap(dense::gcd(&self.field(), &self.coeffs, &o.coeffs))
    }

    pub fn monic(&self) -> Self {
        self.wrap(dense::monic(&self.field(), &self.coeffs))
    }

    pub fn eval(&self, x: u64) -> u64 {
        dense::eval(&self.field(), &self.coeffs, &(x % self.p))
    }

    pub fn derivative(&self) -> Self {
        self.wrap(dense::derivative(&self.field(), &self.coeffs))
    }

    /// Monic normalization of T^deg R(1/T).
    pub fn reciprocal(&self) -> Result<Self> {
        if !self.is_monic() {
            return Err(Error::NonMonicInput);
        }
        if self.coeff(0) == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let rev: Vec<u64> = self.coeffs.iter().rev().copied().collect();
        Ok(self.wrap(rev).monic())
    }

    pub fn is_self_reciprocal(&self) -> Result<bool> {
        Ok(self.reciprocal()? == *self)
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.coeffs.iter().map(|&c| c as i64).collect()
    }

    /// Render with a chosen variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                c.to_string()
            } else if c == 1 {
                mon
            } else {
                format!("{c}{mon}")
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("T"))
    }
}

/// Serializes as the bare coefficient array; the prime lives alongside it.
impl Serialize for FpPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

/// Raw coefficient list as read from JSON, before a prime is attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPoly(pub Vec<i64>);

impl<'de> Deserialize<'de> for RawPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(RawPoly(Vec::<i64>::deserialize(d)?))
    }
}
