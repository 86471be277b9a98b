//! Smith normal form over Z_p at finite precision.
//!
//! The input is scaled by p^s to be integral and reduced to integer
//! representatives modulo p^A, where A is the smallest absolute precision
//! among the entries. Elimination is then exact over Z/p^A, so the
//! reconstruction U * M * V = diag(p^r) holds bit-exactly on representatives.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::PadicMatrix;
use super::scalar::{mod_inverse, p_pow, split_valuation, PadicScalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SmithResult {
    /// r_1 >= r_2 >= ... >= r_n.
    pub invariants: Vec<i64>,
    pub u: PadicMatrix,
    pub v: PadicMatrix,
    /// The input was multiplied by p^shift before elimination.
    pub shift: i64,
    /// Elimination was carried out modulo p^modulus_exp.
    pub modulus_exp: u32,
    scaled: Vec<Vec<BigInt>>,
    u_int: Vec<Vec<BigInt>>,
    v_int: Vec<Vec<BigInt>>,
    p: u64,
}

impl SmithResult {
    /// Check U * (p^shift M) * V == diag(p^(r_i + shift)) exactly modulo p^A
    /// on the integer representatives used during elimination.
    pub fn reconstruction_holds(&self) -> bool {
        let m = p_pow(self.p, self.modulus_exp);
        let n = self.invariants.len();
        let prod = mat_mul_mod(&mat_mul_mod(&self.u_int, &self.scaled, &m), &self.v_int, &m);
        for i in 0..n {
            for j in 0..n {
                let want = if i == j {
                    p_pow(self.p, (self.invariants[i] + self.shift) as u32).mod_floor(&m)
                } else {
                    BigInt::zero()
                };
                if prod[i][j] != want {
                    return false;
                }
            }
        }
        true
    }

    /// Unit determinants of U and V modulo p.
    pub fn transforms_unimodular(&self) -> bool {
        let pb = BigInt::from(self.p);
        [&self.u_int, &self.v_int].iter().all(|x| !det_mod(x, &pb).is_zero())
    }

    pub fn det_valuation(&self) -> i64 {
        self.invariants.iter().sum()
    }
}

fn mat_mul_mod(a: &[Vec<BigInt>], b: &[Vec<BigInt>], m: &BigInt) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let k = b.len();
    let c = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..c)
                .map(|j| (0..k).fold(BigInt::zero(), |acc, l| acc + &a[i][l] * &b[l][j]).mod_floor(m))
                .collect()
        })
        .collect()
}

fn det_mod(a: &[Vec<BigInt>], p: &BigInt) -> BigInt {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|x| x.mod_floor(p)).collect()).collect();
    let mut det = BigInt::from(1);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        det = (det * &m[c][c]).mod_floor(p);
        let inv = mod_inverse(&m[c][c], p).unwrap();
        for i in c + 1..n {
            let f = (&m[i][c] * &inv).mod_floor(p);
            for j in c..n {
                m[i][j] = (&m[i][j] - &f * &m[c][j]).mod_floor(p);
            }
        }
    }
    det.mod_floor(p)
}

pub fn smith_invariants(m: &PadicMatrix) -> Result<SmithResult> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("Smith form of a non-square matrix".into()));
    }
    let n = m.rows();
    let p = m.p();
    let prec = m.precision();
    let minv = m.min_valuation();
    if minv == i64::MAX {
        return Err(Error::SingularAtPrecision);
    }
    let shift = (-minv).max(0);
    let scaled_m = m.map(|x| x.shift(shift));
    let a = scaled_m.entries().filter_map(|x| x.absolute_precision()).min().unwrap_or(prec as i64);
    if a < 1 {
        return Err(Error::PrecisionExhausted("entries carry no absolute digits".into()));
    }
    let a = a as u32;
    let modulus = p_pow(p, a);
    let scaled: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| scaled_m[(i, j)].residue(a)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    let ident = |k: usize| -> Vec<Vec<BigInt>> {
        (0..k).map(|i| (0..k).map(|j| BigInt::from((i == j) as u8)).collect()).collect()
    };
    let mut w = scaled.clone();
    let mut u = ident(n);
    let mut v = ident(n);
    let mut pivots = Vec::with_capacity(n);

    for k in 0..n {
        // minimal valuation, ties by row then column
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if w[i][j].is_zero() {
                    continue;
                }
                let val = split_valuation(&w[i][j], p).0;
                if best.map_or(true, |(b, _, _)| val < b) {
                    best = Some((val, i, j));
                }
            }
        }
        let Some((r, pi, pj)) = best else {
            return Err(Error::SingularAtPrecision);
        };
        w.swap(k, pi);
        u.swap(k, pi);
        for row in w.iter_mut() {
            row.swap(k, pj);
        }
        for row in v.iter_mut() {
            row.swap(k, pj);
        }
        let pr = p_pow(p, r as u32);
        let unit = &w[k][k] / &pr;
        let uinv = mod_inverse(&unit, &modulus).expect("pivot cofactor is a unit");
        for i in k + 1..n {
            if w[i][k].is_zero() {
                continue;
            }
            let f = ((&w[i][k] / &pr) * &uinv).mod_floor(&modulus);
            for j in 0..n {
                w[i][j] = (&w[i][j] - &f * &w[k][j]).mod_floor(&modulus);
                u[i][j] = (&u[i][j] - &f * &u[k][j]).mod_floor(&modulus);
            }
        }
        for j in k + 1..n {
            if w[k][j].is_zero() {
                continue;
            }
            let f = ((&w[k][j] / &pr) * &uinv).mod_floor(&modulus);
            for i in 0..n {
                w[i][j] = (&w[i][j] - &f * &w[i][k]).mod_floor(&modulus);
                v[i][j] = (&v[i][j] - &f * &v[i][k]).mod_floor(&modulus);
            }
        }
        for j in 0..n {
            u[k][j] = (&u[k][j] * &uinv).mod_floor(&modulus);
        }
        w[k][k] = pr.mod_floor(&modulus);
        pivots.push(r);
    }

    let det_val: i64 = pivots.iter().sum();
    if det_val >= a as i64 {
        return Err(Error::PrecisionExhausted(format!(
            "determinant valuation {det_val} reaches working precision {a}"
        )));
    }

    // pivots come out non-decreasing; reverse to r_1 >= ... >= r_n
    pivots.reverse();
    u.reverse();
    for row in v.iter_mut() {
        row.reverse();
    }
    let cap = |rows: &Vec<Vec<BigInt>>| -> Result<PadicMatrix> {
        Ok(PadicMatrix::from_bigint(p, prec, rows)?.map(|x| x.cap_absolute(a as i64)))
    };
    Ok(SmithResult {
        invariants: pivots.iter().map(|r| r - shift).collect(),
        u: cap(&u)?,
        v: cap(&v)?,
        shift,
        modulus_exp: a,
        scaled,
        u_int: u,
        v_int: v,
        p,
    })
}

/// M^{-1} = V * diag(p^-r) * U.
pub fn padic_inverse(m: &PadicMatrix) -> Result<PadicMatrix> {
    let s = smith_invariants(m)?;
    let n = m.rows();
    let (p, prec) = (m.p(), m.precision());
    // U (p^s M) V = diag(p^(r+s))  =>  M^{-1} = p^s V diag(p^-(r+s)) U = V diag(p^-r) U
    let mut d = PadicMatrix::zeros(p, prec, n, n);
    for (i, r) in s.invariants.iter().enumerate() {
        d.set(i, i, PadicScalar::one(p, prec).shift(-r));
    }
    s.v.mul(&d)?.mul(&s.u)
}
