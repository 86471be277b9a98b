//! Small exact linear algebra over Q, used by the instance generator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QMat = Vec<Vec<BigRational>>;

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn identity(n: usize) -> QMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect()
}

pub fn transpose(a: &QMat) -> QMat {
    let (r, c) = (a.len(), a.first().map_or(0, |x| x.len()));
    (0..c).map(|j| (0..r).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn mul(a: &QMat, b: &QMat) -> QMat {
    let k = b.len();
    let c = b.first().map_or(0, |x| x.len());
    a.iter()
        .map(|row| {
            (0..c)
                .map(|j| (0..k).fold(BigRational::zero(), |acc, l| acc + &row[l] * &b[l][j]))
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &QMat, v: &[BigRational]) -> Vec<BigRational> {
    a.iter().map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut QMat) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |x| x.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn nullspace(a: &QMat, cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![BigRational::zero(); cols];
            v[fc] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][fc].clone();
            }
            v
        })
        .collect()
}

pub fn inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut aug: QMat = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(a: &QMat) -> BigRational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if piv != c {
            m.swap(piv, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let x = &f * &m[c][j];
                m[i][j] -= x;
            }
        }
    }
    d
}

/// v_p of a nonzero rational.
pub fn valuation(x: &BigRational, p: u64) -> i64 {
    let pb = BigInt::from(p);
    let count = |mut z: BigInt| {
        let mut v = 0;
        while (&z % &pb).is_zero() {
            z /= &pb;
            v += 1;
        }
        v
    };
    count(x.numer().clone()) - count(x.denom().clone())
}
