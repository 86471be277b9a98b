//! Capped-relative p-adic numbers.
//!
//! A nonzero value is p^v * u with u a unit known modulo p^prec (prec <= N).
//! Zero is either exact or known only modulo p^abs. Every operation
//! propagates the digits it can actually certify; equality means the
//! difference is zero at the available precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 24;

pub fn p_pow(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

/// v_p of a nonzero integer and the cofactor.
pub fn split_valuation(x: &BigInt, p: u64) -> (i64, BigInt) {
    debug_assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = x.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    (v, m)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    /// None: exact zero. Some(a): zero modulo p^a.
    Zero(Option<i64>),
    Val { v: i64, u: BigInt, prec: u32 },
}

#[derive(Clone, Debug)]
pub struct PadicScalar {
    p: u64,
    n: u32,
    repr: Repr,
}

impl PadicScalar {
    pub fn zero(p: u64, n: u32) -> Self {
        PadicScalar { p, n, repr: Repr::Zero(None) }
    }

    /// Zero known only modulo p^abs.
    pub fn zero_mod(p: u64, n: u32, abs: i64) -> Self {
        PadicScalar { p, n, repr: Repr::Zero(Some(abs)) }
    }

    pub fn one(p: u64, n: u32) -> Self {
        Self::from_int(&BigInt::one(), p, n)
    }

    /// p^v * (u mod p^prec); u must be a unit.
    fn make(p: u64, n: u32, v: i64, u: BigInt, prec: u32) -> Self {
        let prec = prec.min(n);
        if prec == 0 {
            return Self::zero_mod(p, n, v);
        }
        let u = u.mod_floor(&p_pow(p, prec));
        PadicScalar { p, n, repr: Repr::Val { v, u, prec } }
    }

    pub fn from_int(x: &BigInt, p: u64, n: u32) -> Self {
        if x.is_zero() {
            return Self::zero(p, n);
        }
        let (v, u) = split_valuation(x, p);
        Self::make(p, n, v, u, n)
    }

    pub fn from_i64(x: i64, p: u64, n: u32) -> Self {
        Self::from_int(&BigInt::from(x), p, n)
    }

    pub fn from_rational(num: &BigInt, den: &BigInt, p: u64, n: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero(p, n));
        }
        let (vn, un) = split_valuation(num, p);
        let (vd, ud) = split_valuation(den, p);
        let m = p_pow(p, n);
        let inv = mod_inverse(&ud, &m).expect("cofactor is a unit");
        Ok(Self::make(p, n, vn - vd, un * inv, n))
    }

    /// Parse "a" or "a/b" in decimal.
    pub fn parse(s: &str, p: u64, n: u32) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: BigInt = a.parse().map_err(|_| bad())?;
        let den: BigInt = b.parse().map_err(|_| bad())?;
        Self::from_rational(&num, &den, p, n)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    /// True if indistinguishable from zero at the available precision.
    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero(_))
    }

    pub fn is_exact_zero(&self) -> bool {
        self.repr == Repr::Zero(None)
    }

    /// Valuation; None for (approximate) zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Val { v, .. } => Some(*v),
            Repr::Zero(_) => None,
        }
    }

    /// Lower bound on the valuation: exact for nonzero values, the known
    /// absolute precision for approximate zeros, i64::MAX for exact zero.
    pub fn valuation_lower_bound(&self) -> i64 {
        match &self.repr {
            Repr::Val { v, .. } => *v,
            Repr::Zero(Some(a)) => *a,
            Repr::Zero(None) => i64::MAX,
        }
    }

    /// Unit part reduced modulo p^prec.
    pub fn unit(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Val { u, .. } => Some(u),
            Repr::Zero(_) => None,
        }
    }

    pub fn unit_residue(&self) -> Option<u64> {
        self.unit().map(|u| (u % BigInt::from(self.p)).to_u64().unwrap())
    }

    pub fn relative_precision(&self) -> u32 {
        match &self.repr {
            Repr::Val { prec, .. } => *prec,
            Repr::Zero(_) => 0,
        }
    }

    /// Digits known absolutely: the value is determined modulo p^abs.
    /// None means exact (infinite).
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Val { v, prec, .. } => Some(v + *prec as i64),
            Repr::Zero(a) => *a,
        }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "p-adic values over different primes");
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Zero(_) => self.clone(),
            Repr::Val { v, u, prec } => Self::make(self.p, self.n, *v, -u, *prec),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.n.max(o.n);
        let abs = min_abs(self.absolute_precision(), o.absolute_precision());
        let (v1, u1, v2, u2) = match (&self.repr, &o.repr) {
            (Repr::Zero(_), Repr::Zero(_)) => return PadicScalar { p: self.p, n, repr: Repr::Zero(abs) },
            (Repr::Zero(_), Repr::Val { v, u, .. }) | (Repr::Val { v, u, .. }, Repr::Zero(_)) => {
                let abs = abs.expect("a nonzero term bounds precision");
                return Self::make(self.p, n, *v, u.clone(), (abs - v).max(0) as u32);
            }
            (Repr::Val { v: v1, u: u1, .. }, Repr::Val { v: v2, u: u2, .. }) => (*v1, u1, *v2, u2),
        };
        let abs = abs.unwrap();
        let vmin = v1.min(v2);
        let s = u1 * p_pow(self.p, (v1 - vmin) as u32) + u2 * p_pow(self.p, (v2 - vmin) as u32);
        let room = abs - vmin;
        if room <= 0 {
            return Self::zero_mod(self.p, n, abs);
        }
        let s = s.mod_floor(&p_pow(self.p, room as u32));
        if s.is_zero() {
            return Self::zero_mod(self.p, n, abs);
        }
        let (w, u) = split_valuation(&s, self.p);
        let v = vmin + w;
        Self::make(self.p, n, v, u, (abs - v) as u32)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.n.max(o.n);
        match (&self.repr, &o.repr) {
            (Repr::Zero(None), _) | (_, Repr::Zero(None)) => Self::zero(self.p, n),
            (Repr::Zero(Some(a)), x) | (x, Repr::Zero(Some(a))) => {
                let lb = match x {
                    Repr::Val { v, .. } => *v,
                    Repr::Zero(Some(b)) => *b,
                    Repr::Zero(None) => unreachable!(),
                };
                Self::zero_mod(self.p, n, a + lb)
            }
            (Repr::Val { v: v1, u: u1, prec: p1 }, Repr::Val { v: v2, u: u2, prec: p2 }) => {
                Self::make(self.p, n, v1 + v2, u1 * u2, (*p1).min(*p2))
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Zero(_) => Err(Error::PrecisionExhausted("inverting a value indistinguishable from zero".into())),
            Repr::Val { v, u, prec } => {
                let m = p_pow(self.p, *prec);
                let ui = mod_inverse(u, &m).expect("unit");
                Ok(Self::make(self.p, self.n, -v, ui, *prec))
            }
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Multiply by p^k.
    pub fn shift(&self, k: i64) -> Self {
        match &self.repr {
            Repr::Zero(None) => self.clone(),
            Repr::Zero(Some(a)) => Self::zero_mod(self.p, self.n, a + k),
            Repr::Val { v, u, prec } => Self::make(self.p, self.n, v + k, u.clone(), *prec),
        }
    }

    /// An integer representative modulo p^modulus_exp; requires the value to
    /// be integral and known to at least that many absolute digits.
    pub fn residue(&self, modulus_exp: u32) -> Result<BigInt> {
        if let Some(a) = self.absolute_precision() {
            if a < modulus_exp as i64 {
                return Err(Error::PrecisionExhausted(format!(
                    "value known modulo p^{a}, need p^{modulus_exp}"
                )));
            }
        }
        match &self.repr {
            Repr::Zero(_) => Ok(BigInt::zero()),
            Repr::Val { v, u, .. } => {
                if *v < 0 {
                    return Err(Error::InvalidInput("residue of a non-integral value".into()));
                }
                Ok((u * p_pow(self.p, *v as u32)).mod_floor(&p_pow(self.p, modulus_exp)))
            }
        }
    }

    /// Forget digits beyond absolute precision `abs`.
    pub fn cap_absolute(&self, abs: i64) -> Self {
        match &self.repr {
            Repr::Zero(None) => Self::zero_mod(self.p, self.n, abs),
            Repr::Zero(Some(b)) => Self::zero_mod(self.p, self.n, abs.min(*b)),
            Repr::Val { v, u, prec } => {
                let room = (abs - v).min(*prec as i64);
                if room <= 0 {
                    Self::zero_mod(self.p, self.n, abs)
                } else {
                    Self::make(self.p, self.n, *v, u.clone(), room as u32)
                }
            }
        }
    }

    /// True when the value is p-integral (valuation >= 0 or zero).
    pub fn is_integral(&self) -> bool {
        self.valuation_lower_bound() >= 0
    }

    /// Reduction modulo p of an integral value.
    pub fn reduce_mod_p(&self) -> Result<u64> {
        Ok(self.residue(1)?.to_u64().unwrap())
    }

    /// A rational representative: p^v * u.
    pub fn representative(&self) -> num_rational::BigRational {
        match &self.repr {
            Repr::Zero(_) => num_rational::BigRational::zero(),
            Repr::Val { v, u, .. } => {
                let pv = p_pow(self.p, v.unsigned_abs() as u32);
                if *v >= 0 {
                    num_rational::BigRational::from_integer(u * pv)
                } else {
                    num_rational::BigRational::new(u.clone(), pv)
                }
            }
        }
    }

    /// Square class of a nonzero value: (v mod 2, unit residue is a square).
    pub fn square_class(&self) -> Result<(u8, bool)> {
        let v = self.valuation().ok_or(Error::ZeroArgument)?;
        let u = self.unit_residue().unwrap();
        Ok((v.rem_euclid(2) as u8, legendre(u, self.p) == 1))
    }
}

fn min_abs(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

/// Legendre symbol (a/p) for odd prime p.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let r = BigInt::from(a).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    if r.is_one() {
        1
    } else {
        -1
    }
}

impl PartialEq for PadicScalar {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.sub(o).is_zero()
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero(None) => write!(f, "0"),
            Repr::Zero(Some(a)) => write!(f, "O({}^{})", self.p, a),
            Repr::Val { v, u, prec } => write!(f, "{}^{} * {} + O({}^{})", self.p, v, u, self.p, v + *prec as i64),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den: i64, p: u64, n: u32) -> PadicScalar {
        PadicScalar::from_rational(&BigInt::from(num), &BigInt::from(den), p, n).unwrap()
    }

    #[test]
    fn construction_examples() {
        let a = q(1, 1, 3, 8);
        assert_eq!(a.valuation(), Some(0));
        assert_eq!(a.unit(), Some(&BigInt::one()));
        let b = q(9, 2, 3, 8);
        assert_eq!(b.valuation(), Some(2));
        let half = mod_inverse(&BigInt::from(2), &p_pow(3, 8)).unwrap();
        assert_eq!(b.unit(), Some(&half));
        assert!(q(0, 5, 7, 8).is_exact_zero());
        assert_eq!(
            PadicScalar::from_rational(&BigInt::one(), &BigInt::zero(), 3, 8).unwrap_err(),
            Error::ZeroDenominator
        );
    }

    #[test]
    fn arithmetic_tracks_precision() {
        let p = 5;
        let a = q(1, 1, p, 6);
        let b = q(-1, 1, p, 6).add(&q(5, 1, p, 6));
        // 1 + (-1 + 5) = 5
        let s = a.add(&b);
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s, q(5, 1, p, 6));
        // cancellation down to the precision floor gives an approximate zero
        let x = q(1, 1, p, 6);
        let y = x.add(&q(5i64.pow(6), 1, p, 6));
        assert!(x.sub(&y).is_zero());
        let inv = q(10, 3, p, 6).inv().unwrap();
        assert_eq!(inv.mul(&q(10, 3, p, 6)), PadicScalar::one(p, 6));
    }

    #[test]
    fn parse_strings() {
        let a = PadicScalar::parse("-9/4", 3, 10).unwrap();
        assert_eq!(a, q(-9, 4, 3, 10));
        assert!(PadicScalar::parse("x/2", 3, 10).is_err());
        assert_eq!(PadicScalar::parse("3/0", 3, 10).unwrap_err(), Error::ZeroDenominator);
    }
}
