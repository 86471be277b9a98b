//! Hilbert symbol by exhaustive search modulo p^3.
//!
//! Scaling by even powers of p leaves the symbol unchanged, so a and b are
//! reduced to valuation 0 or 1. A primitive solution of a x^2 + b y^2 = z^2
//! mod p^3 then lifts by Hensel (some partial derivative has valuation <= 1),
//! and any solution over Q_p rescales to a primitive one.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::padic::PadicScalar;

fn reduced(x: &PadicScalar, modulus: u64) -> Result<u64> {
    let v = x.valuation().ok_or(Error::ZeroArgument)?;
    if x.relative_precision() < 3 {
        return Err(Error::PrecisionExhausted("need three digits of unit part".into()));
    }
    let u = x.unit().unwrap() % BigInt::from(modulus);
    let u = u.to_u64().unwrap();
    Ok(if v.rem_euclid(2) == 1 { u * x.p() % modulus } else { u })
}

pub fn hilbert_symbol_bruteforce(a: &PadicScalar, b: &PadicScalar) -> Result<i8> {
    let p = a.p();
    let m = p * p * p;
    let a = reduced(a, m)?;
    let b = reduced(b, m)?;
    // squares of arbitrary z, and squares of units z
    let mut any_sq = vec![false; m as usize];
    let mut unit_sq = vec![false; m as usize];
    for z in 0..m {
        let s = (z * z % m) as usize;
        any_sq[s] = true;
        if z % p != 0 {
            unit_sq[s] = true;
        }
    }
    let sq: Vec<u64> = (0..m).map(|x| x * x % m).collect();
    for x in 0..m {
        let ax = a * sq[x as usize] % m;
        for y in 0..m {
            let r = ((ax + b * sq[y as usize]) % m) as usize;
            let primitive_xy = x % p != 0 || y % p != 0;
            if (primitive_xy && any_sq[r]) || unit_sq[r] {
                return Ok(1);
            }
        }
    }
    Ok(-1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::forms::hilbert_symbol;

    fn s(x: i64, p: u64) -> PadicScalar {
        PadicScalar::from_i64(x, p, 12)
    }

    #[test]
    fn examples() {
        assert_eq!(hilbert_symbol_bruteforce(&s(1, 5), &s(15, 5)).unwrap(), 1);
        assert_eq!(hilbert_symbol_bruteforce(&s(3, 3), &s(2, 3)).unwrap(), -1);
        assert_eq!(hilbert_symbol_bruteforce(&s(3, 7), &s(5, 7)).unwrap(), 1);
        assert_eq!(hilbert_symbol_bruteforce(&s(0, 7), &s(5, 7)), Err(Error::ZeroArgument));
    }

    #[test]
    fn agrees_with_tame_formula_p3() {
        let p = 3;
        for a in [1, 2, 3, 6, 9, 18, 27] {
            for b in [1, 2, 3, 6, 5, 45] {
                assert_eq!(
                    hilbert_symbol_bruteforce(&s(a, p), &s(b, p)).unwrap(),
                    hilbert_symbol(&s(a, p), &s(b, p)).unwrap(),
                    "({a},{b})"
                );
            }
        }
    }
}
