//! Matrices of p-adic scalars sharing (p, N).

use num_bigint::BigInt;
use std::ops::Index;

use super::scalar::PadicScalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct PadicMatrix {
    p: u64,
    n: u32,
    rows: usize,
    cols: usize,
    data: Vec<PadicScalar>,
}

impl Index<(usize, usize)> for PadicMatrix {
    type Output = PadicScalar;
    fn index(&self, (i, j): (usize, usize)) -> &PadicScalar {
        &self.data[i * self.cols + j]
    }
}

impl PartialEq for PadicMatrix {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data.iter().zip(&o.data).all(|(a, b)| a == b)
    }
}

impl PadicMatrix {
    pub fn zeros(p: u64, n: u32, rows: usize, cols: usize) -> Self {
        PadicMatrix { p, n, rows, cols, data: vec![PadicScalar::zero(p, n); rows * cols] }
    }

    pub fn identity(p: u64, n: u32, dim: usize) -> Self {
        let mut m = Self::zeros(p, n, dim, dim);
        for i in 0..dim {
            m.set(i, i, PadicScalar::one(p, n));
        }
        m
    }

    pub fn from_rows(p: u64, n: u32, rows: Vec<Vec<PadicScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if rows.iter().flatten().any(|x| x.p() != p) {
            return Err(Error::InvalidInput("mixed primes in matrix".into()));
        }
        Ok(PadicMatrix { p, n, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(p: u64, n: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| PadicScalar::from_i64(x, p, n)).collect()).collect();
        Self::from_rows(p, n, rows)
    }

    pub fn from_bigint(p: u64, n: u32, rows: &[Vec<BigInt>]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|x| PadicScalar::from_int(x, p, n)).collect()).collect();
        Self::from_rows(p, n, rows)
    }

    /// Rows of decimal rationals "a" or "a/b".
    pub fn parse(p: u64, n: u32, rows: &[Vec<String>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| PadicScalar::parse(s, p, n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(p, n, rows)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn precision(&self) -> u32 {
        self.n
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, x: PadicScalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> impl Iterator<Item = &PadicScalar> {
        self.data.iter()
    }

    pub fn col(&self, j: usize) -> Vec<PadicScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_cols(p: u64, n: u32, cols: &[Vec<PadicScalar>]) -> Self {
        let r = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(p, n, r, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn map(&self, f: impl Fn(&PadicScalar) -> PadicScalar) -> Self {
        PadicMatrix { data: self.data.iter().map(f).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.n, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self[(i, j)].clone());
            }
        }
        t
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(PadicMatrix { data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(), ..self.clone() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(PadicMatrix { data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(), ..self.clone() })
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!("product {}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.p, self.n.max(o.n), self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = PadicScalar::zero(self.p, self.n);
                for k in 0..self.cols {
                    acc = acc.add(&self[(i, k)].mul(&o[(k, j)]));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[PadicScalar]) -> Result<Vec<PadicScalar>> {
        let col = Self::from_cols(self.p, self.n, &[v.to_vec()]);
        Ok(self.mul(&col)?.col(0))
    }

    /// u^T M v.
    pub fn bilinear(&self, u: &[PadicScalar], v: &[PadicScalar]) -> Result<PadicScalar> {
        let mv = self.mul_vec(v)?;
        if u.len() != mv.len() {
            return Err(Error::DimensionMismatch("bilinear form".into()));
        }
        Ok(u.iter().zip(&mv).fold(PadicScalar::zero(self.p, self.n), |acc, (a, b)| acc.add(&a.mul(b))))
    }

    pub fn scale(&self, s: &PadicScalar) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Smallest valuation lower bound over all entries.
    pub fn min_valuation(&self) -> i64 {
        self.data.iter().map(|x| x.valuation_lower_bound()).min().unwrap_or(i64::MAX)
    }

    /// Determinant by elimination with minimal-valuation pivots.
    pub fn det(&self) -> Result<PadicScalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m: Vec<Vec<PadicScalar>> = (0..n).map(|i| (0..n).map(|j| self[(i, j)].clone()).collect()).collect();
        let mut det = PadicScalar::one(self.p, self.n);
        for c in 0..n {
            let piv = (c..n)
                .filter(|&i| !m[i][c].is_zero())
                .min_by_key(|&i| m[i][c].valuation().unwrap());
            let Some(piv) = piv else {
                // column indistinguishable from zero
                let lb = (c..n).map(|i| m[i][c].valuation_lower_bound()).min().unwrap();
                let rest = det.valuation_lower_bound().saturating_add(lb);
                return Ok(if lb == i64::MAX { PadicScalar::zero(self.p, self.n) } else { PadicScalar::zero_mod(self.p, self.n, rest) });
            };
            if piv != c {
                m.swap(piv, c);
                det = det.neg();
            }
            det = det.mul(&m[c][c]);
            let inv = m[c][c].inv()?;
            for i in c + 1..n {
                if m[i][c].is_exact_zero() {
                    continue;
                }
                let f = m[i][c].mul(&inv);
                for j in c..n {
                    let v = m[i][j].sub(&f.mul(&m[c][j]));
                    m[i][j] = v;
                }
            }
        }
        Ok(det)
    }
}
