//! Dense matrices over a `Field`, with the exact elimination routines the
//! rest of the engine leans on.

use std::ops::{Index, IndexMut};

use super::field::{Field, PrimeField};
use super::poly::dense;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

pub type FpMatrix = Matrix<PrimeField>;

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F::Elem;
    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F::Elem {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Columns given as vectors of equal length.
    pub fn from_cols(field: &F, n_rows: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, n_rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n_rows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
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

    pub fn row(&self, i: usize) -> Vec<F::Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn map<G: Field>(&self, g: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix { field: g.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| self.field.add(a, b)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(&out[(i, j)], &f.mul(a, &o[(k, j)]));
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&self[(i, j)], &v[j]))))
            .collect()
    }

    /// u^T M v.
    pub fn bilinear(&self, u: &[F::Elem], v: &[F::Elem]) -> F::Elem {
        let mv = self.mul_vec(v);
        let f = &self.field;
        u.iter().zip(&mv).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Evaluate a polynomial (low-to-high coefficients) at this matrix.
    pub fn eval_poly(&self, coeffs: &[F::Elem]) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(&self.field, n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&Self::identity(&self.field, n).scale(c));
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !f.is_zero(&m[(i, c)])) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = f.inv(&m[(r, c)]).expect("pivot nonzero");
            for j in c..m.cols {
                m[(r, j)] = f.mul(&m[(r, j)], &inv);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = f.sub(&m[(i, j)], &f.mul(&factor, &m[(r, j)]));
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {v : M v = 0}.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(&r[(row, fc)]);
                }
                v
            })
            .collect()
    }

    /// Some solution of M x = b, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn det(&self) -> F::Elem {
        assert!(self.is_square());
        let f = &self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..m.cols {
            let Some(piv) = (c..m.rows).find(|&i| !f.is_zero(&m[(i, c)])) else {
                return f.zero();
            };
            if piv != c {
                m.swap_rows(c, piv);
                det = f.neg(&det);
            }
            det = f.mul(&det, &m[(c, c)]);
            let inv = f.inv(&m[(c, c)]).expect("pivot nonzero");
            for i in c + 1..m.rows {
                if f.is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = f.mul(&m[(i, c)], &inv);
                for j in c..m.cols {
                    let v = f.sub(&m[(i, j)], &f.mul(&factor, &m[(c, j)]));
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = f.one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial det(T I - M), monic, via Hessenberg reduction.
    pub fn char_poly(&self) -> Vec<F::Elem> {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !f.is_zero(&h[(i, j)])) else {
                continue;
            };
            h.swap_rows(j + 1, piv);
            h.swap_cols(j + 1, piv);
            let inv = f.inv(&h[(j + 1, j)]).expect("pivot nonzero");
            for k in j + 2..n {
                if f.is_zero(&h[(k, j)]) {
                    continue;
                }
                let u = f.mul(&h[(k, j)], &inv);
                for c in 0..n {
                    let v = f.sub(&h[(k, c)], &f.mul(&u, &h[(j + 1, c)]));
                    h[(k, c)] = v;
                }
                for r in 0..n {
                    let v = f.add(&h[(r, j + 1)], &f.mul(&u, &h[(r, k)]));
                    h[(r, j + 1)] = v;
                }
            }
        }
        // p_m = (T - h_mm) p_{m-1} - sum_i h_{m-i,m} (prod_{k=m-i+1..m} h_{k,k-1}) p_{m-i-1}
        let mut ps: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
        for m in 1..=n {
            let hm = |a: usize, b: usize| h[(a - 1, b - 1)].clone();
            let lin = vec![f.neg(&hm(m, m)), f.one()];
            let mut pm = dense::mul(f, &lin, &ps[m - 1]);
            let mut prod = f.one();
            for i in 1..m {
                prod = f.mul(&prod, &hm(m - i + 1, m - i));
                let coef = f.mul(&hm(m - i, m), &prod);
                pm = dense::sub(f, &pm, &dense::scale(f, &ps[m - i - 1], &coef));
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }

    /// Minimal polynomial: first linear dependency among I, M, M^2, ...
    pub fn min_poly(&self) -> Vec<F::Elem> {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut powers: Vec<Vec<F::Elem>> = vec![Self::identity(f, n).data];
        let mut cur = Self::identity(f, n);
        for _ in 1..=n {
            cur = cur.mul(self);
            powers.push(cur.data.clone());
            let stacked = Self::from_cols(f, n * n, &powers);
            if let Some(v) = stacked.nullspace().into_iter().next() {
                return dense::monic(f, &dense::trim(f, v));
            }
        }
        unreachable!("Cayley-Hamilton bounds the degree by n")
    }

    /// Basis (as vectors) of the column space.
    pub fn column_basis(&self) -> Vec<Vec<F::Elem>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.col(c)).collect()
    }
}

impl Matrix<PrimeField> {
    pub fn from_i64(field: &PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.reduce(x)).collect()).collect())
    }

    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        self.to_rows().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect()
    }
}

impl serde::Serialize for Matrix<PrimeField> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::poly::FpPoly;

    #[test]
    fn rotation_char_and_min() {
        let f = PrimeField::new(3).unwrap();
        let m = FpMatrix::from_i64(&f, &[vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(m.char_poly(), vec![1, 0, 1]);
        assert_eq!(m.min_poly(), vec![1, 0, 1]);
    }

    #[test]
    fn identity_char_and_min() {
        let f = PrimeField::new(5).unwrap();
        let m = FpMatrix::identity(&f, 3);
        let cube = FpPoly::linear(5, 1).pow(3);
        assert_eq!(m.char_poly(), cube.coeffs());
        assert_eq!(m.min_poly(), vec![4, 1]);
    }

    #[test]
    fn inverse_and_nullspace() {
        let f = PrimeField::new(7).unwrap();
        let m = FpMatrix::from_i64(&f, &[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(&f, 3));
        let s = FpMatrix::from_i64(&f, &[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let ns = s.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(s.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }
}
