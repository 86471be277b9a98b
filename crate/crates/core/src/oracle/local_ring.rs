//! Length of the local ring at the origin of the fixed-point equations
//! r(H1 + H2 r) = H4 r, by linear algebra on truncated monomial spaces.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::finite::{Field, FpMatrix, FpPoly, Matrix, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanData {
    pub p: u64,
    pub d: usize,
    pub h1: FpMatrix,
    pub h2: Vec<u64>,
    /// H4, which is the eigenvalue lambda.
    pub h4: u64,
}

impl JordanData {
    pub fn new(h1: FpMatrix, h2: Vec<u64>, h4: u64) -> Result<Self> {
        let f = *h1.field();
        let k = h1.rows();
        if !h1.is_square() || h2.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "H1 is {}x{}, H2 has {} entries",
                h1.rows(),
                h1.cols(),
                h2.len()
            )));
        }
        let h2 = h2.into_iter().map(|x| x % f.p()).collect();
        Ok(JordanData { p: f.p(), d: k + 1, h1, h2, h4: h4 % f.p() })
    }

    /// [[H1, H2], [0, H4]].
    pub fn block_matrix(&self) -> FpMatrix {
        let f = *self.h1.field();
        let k = self.d - 1;
        let mut m = Matrix::zeros(&f, self.d, self.d);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self.h1[(i, j)];
            }
            m[(i, k)] = self.h2[i];
        }
        m[(k, k)] = self.h4;
        m
    }

    /// Algebraic multiplicity of lambda in the block matrix.
    pub fn c(&self) -> usize {
        let cp = FpPoly::from_reduced(self.p, self.block_matrix().char_poly());
        let lin = FpPoly::from_reduced(self.p, vec![self.p - self.h4, 1]);
        let mut m = 0;
        let mut rest = cp;
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
            m += 1;
        }
        m
    }

    /// One Jordan block per eigenvalue, i.e. minimal = characteristic polynomial.
    pub fn validate(&self) -> Result<()> {
        let b = self.block_matrix();
        if b.min_poly() != b.char_poly() {
            return Err(Error::InvalidInput("block matrix has two Jordan blocks for one eigenvalue".into()));
        }
        Ok(())
    }
}

fn monomials(k: usize, below: usize) -> Vec<Vec<u8>> {
    // all exponent vectors of total degree < below
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for m in &out {
            let used: usize = m.iter().map(|&e| e as usize).sum();
            for e in 0..below.saturating_sub(used) {
                let mut m2 = m.clone();
                m2.push(e as u8);
                next.push(m2);
            }
        }
        out = next;
    }
    out.retain(|m| m.iter().map(|&e| e as usize).sum::<usize>() < below);
    out
}

/// The defining polynomials as sparse maps exponent -> coefficient.
fn equations<F: Field>(f: &F, h1: &Matrix<F>, h2: &[F::Elem], h4: &F::Elem) -> Vec<Vec<(Vec<u8>, F::Elem)>> {
    let k = h1.rows();
    let unit = |i: usize| {
        let mut e = vec![0u8; k];
        e[i] = 1;
        e
    };
    (0..k)
        .map(|j| {
            let mut terms: HashMap<Vec<u8>, F::Elem> = HashMap::new();
            let mut push = |e: Vec<u8>, c: F::Elem| {
                let slot = terms.entry(e).or_insert_with(|| f.zero());
                *slot = f.add(slot, &c);
            };
            for i in 0..k {
                push(unit(i), h1[(i, j)].clone());
                let mut e = unit(i);
                e[j] += 1;
                push(e, h2[i].clone());
            }
            push(unit(j), f.neg(h4));
            let mut v: Vec<_> = terms.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
            v.sort();
            v
        })
        .collect()
}

fn truncated_length<F: Field>(f: &F, eqs: &[Vec<(Vec<u8>, F::Elem)>], k: usize, m: usize) -> usize {
    let monos = monomials(k, m);
    if eqs.is_empty() {
        return monos.len();
    }
    let index: HashMap<&Vec<u8>, usize> = monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows = Vec::new();
    for mono in monomials(k, m.saturating_sub(1)) {
        for eq in eqs {
            let mut row = vec![f.zero(); monos.len()];
            let mut any = false;
            for (e, c) in eq {
                let prod: Vec<u8> = e.iter().zip(&mono).map(|(a, b)| a + b).collect();
                if let Some(&col) = index.get(&prod) {
                    row[col] = f.add(&row[col], c);
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return monos.len();
    }
    let mat = Matrix::from_rows(f, rows).expect("rows have equal length");
    monos.len() - mat.rank()
}

/// dim k[r]/(I + m^M) for increasing M until two consecutive values agree,
/// which by Nakayama certifies m^M is contained in I locally.
pub fn local_ring_length_generic<F: Field>(f: &F, h1: &Matrix<F>, h2: &[F::Elem], h4: &F::Elem) -> Result<usize> {
    let k = h1.rows();
    if k == 0 {
        return Ok(1);
    }
    let d = k + 1;
    let cap = d + 4;
    let eqs = equations(f, h1, h2, h4);
    let mut prev = truncated_length(f, &eqs, k, 1);
    for m in 2..=cap {
        let cur = truncated_length(f, &eqs, k, m);
        if cur == prev {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NotStabilized(cap))
}

pub fn local_ring_length(jd: &JordanData) -> Result<usize> {
    let f = *jd.h1.field();
    local_ring_length_generic(&f, &jd.h1, &jd.h2, &jd.h4)
}

/// Random Jordan data with a lambda-block of size c-1 placed last in H1,
/// the remaining blocks carrying distinct eigenvalues other than lambda.
pub fn gen_jordan(c: usize, d: usize, p: u64, seed: u64) -> Result<JordanData> {
    let f = PrimeField::new(p)?;
    if c < 1 || c > d {
        return Err(Error::ShapeInfeasible(format!("need 1 <= c <= d, got c = {c}, d = {d}")));
    }
    if p <= c as u64 {
        return Err(Error::ShapeInfeasible(format!("p = {p} <= c = {c}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda = rng.gen_range(1..p);
    let mut rest = d - c;
    let mut parts = Vec::new();
    while rest > 0 {
        let s = rng.gen_range(1..=rest);
        parts.push(s);
        rest -= s;
    }
    let avail = (p - 2) as usize;
    while parts.len() > avail {
        let last = parts.pop().unwrap();
        *parts.last_mut().unwrap() += last;
    }
    if !parts.is_empty() && avail == 0 {
        return Err(Error::ShapeInfeasible(format!("no eigenvalues besides lambda in F_{p}")));
    }
    let mut others: Vec<u64> = (1..p).filter(|&x| x != lambda).collect();
    others.shuffle(&mut rng);
    let mut blocks: Vec<(u64, usize)> = parts.iter().zip(&others).map(|(&s, &e)| (e, s)).collect();
    blocks.push((lambda, c - 1));

    let k = d - 1;
    let mut h1 = Matrix::zeros(&f, k, k);
    let mut at = 0;
    for (e, s) in blocks {
        for i in 0..s {
            h1[(at + i, at + i)] = e;
            if i + 1 < s {
                h1[(at + i, at + i + 1)] = 1;
            }
        }
        at += s;
    }
    let mut h2: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
    if c >= 2 && h2[k - 1] == 0 {
        h2[k - 1] = rng.gen_range(1..p);
    }
    let jd = JordanData::new(h1, h2, lambda)?;
    jd.validate()?;
    if jd.c() != c {
        return Err(Error::Internal(format!("generated c = {} instead of {c}", jd.c())));
    }
    Ok(jd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jd(p: u64, h1: &[Vec<i64>], h2: &[u64], h4: u64) -> JordanData {
        let f = PrimeField::new(p).unwrap();
        JordanData::new(FpMatrix::from_i64(&f, h1).unwrap(), h2.to_vec(), h4).unwrap()
    }

    #[test]
    fn no_lambda_in_h1() {
        let j = jd(5, &[vec![2, 1], vec![0, 2]], &[1, 3], 4);
        assert_eq!(local_ring_length(&j).unwrap(), 1);
    }

    #[test]
    fn three_by_three_example() {
        let j = jd(5, &[vec![3, 1], vec![0, 3]], &[0, 1], 3);
        assert_eq!(j.c(), 3);
        assert_eq!(local_ring_length(&j).unwrap(), 3);
    }

    #[test]
    fn d2_distinct() {
        let j = jd(5, &[vec![2]], &[4], 3);
        assert_eq!(local_ring_length(&j).unwrap(), 1);
    }

    #[test]
    fn d1_is_a_point() {
        let j = jd(7, &[], &[], 3);
        assert_eq!(local_ring_length(&j).unwrap(), 1);
    }

    #[test]
    fn generated_shapes() {
        let j = gen_jordan(2, 2, 5, 1).unwrap();
        assert_eq!(j.h1[(0, 0)], j.h4);
        assert_ne!(j.h2[0], 0);
        let j = gen_jordan(1, 3, 5, 2).unwrap();
        assert!((0..2).all(|i| j.h1[(i, i)] != j.h4));
        assert!(matches!(gen_jordan(4, 4, 3, 0), Err(Error::ShapeInfeasible(_))));
    }

    #[test]
    fn generated_lengths() {
        for c in 1..=4 {
            for d in c..=5 {
                let j = gen_jordan(c, d, 7, (c * 10 + d) as u64).unwrap();
                assert_eq!(local_ring_length(&j).unwrap(), c, "c={c} d={d}");
            }
        }
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 3).len(), 6);
        assert_eq!(monomials(3, 1).len(), 1);
    }
}
