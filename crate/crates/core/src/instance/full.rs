//! The p-adic layer: a quadratic space over Q_p with an isometry g and a
//! distinguished vector x of norm 1. The norm is q(v) = <v, v> = v^T G v.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::finite::field::check_odd_prime;
use crate::padic::{smith_invariants, PadicMatrix, PadicScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalData {
    pub gram: Vec<Vec<BigRational>>,
    pub g: Vec<Vec<BigRational>>,
    pub x: Vec<BigRational>,
}

#[derive(Clone, Debug)]
pub struct FullInstance {
    pub p: u64,
    pub precision: u32,
    pub n: usize,
    pub gram: PadicMatrix,
    pub g: PadicMatrix,
    pub x: Vec<PadicScalar>,
    /// Exact rational entries when the instance came from rational input.
    pub source: Option<RationalData>,
}

pub fn rational_to_padic(q: &BigRational, p: u64, n: u32) -> Result<PadicScalar> {
    PadicScalar::from_rational(q.numer(), q.denom(), p, n)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    let num: BigInt = a.trim().parse().map_err(|_| bad())?;
    let den: BigInt = b.trim().parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl FullInstance {
    /// Build and check: n >= 4, G symmetric nondegenerate, g an isometry, q(x) = 1.
    pub fn new(p: u64, precision: u32, gram: PadicMatrix, g: PadicMatrix, x: Vec<PadicScalar>) -> Result<Self> {
        check_odd_prime(p)?;
        let n = gram.rows();
        if n < 4 {
            return Err(Error::InvalidInput(format!("rank {n} < 4")));
        }
        if !gram.is_square() || g.rows() != n || g.cols() != n || x.len() != n {
            return Err(Error::DimensionMismatch("gram, g and x must share dimension n".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.det()?.is_zero() {
            return Err(Error::InvalidInput("Gram matrix is degenerate at working precision".into()));
        }
        if g.transpose().mul(&gram)?.mul(&g)? != gram {
            return Err(Error::InvalidInput("g is not an isometry of the Gram matrix".into()));
        }
        if gram.bilinear(&x, &x)? != PadicScalar::one(p, precision) {
            return Err(Error::InvalidInput("q(x) != 1".into()));
        }
        Ok(FullInstance { p, precision, n, gram, g, x, source: None })
    }

    pub fn from_rationals(p: u64, precision: u32, data: RationalData) -> Result<Self> {
        check_odd_prime(p)?;
        let conv = |rows: &Vec<Vec<BigRational>>| -> Result<PadicMatrix> {
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|q| rational_to_padic(q, p, precision)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            PadicMatrix::from_rows(p, precision, rows)
        };
        let gram = conv(&data.gram)?;
        let g = conv(&data.g)?;
        let x = data.x.iter().map(|q| rational_to_padic(q, p, precision)).collect::<Result<Vec<_>>>()?;
        let mut inst = Self::new(p, precision, gram, g, x)?;
        inst.source = Some(data);
        Ok(inst)
    }

    /// The orbit vectors x, gx, ..., g^(n-1)x as columns.
    pub fn orbit_matrix(&self) -> Result<PadicMatrix> {
        let mut cols = vec![self.x.clone()];
        for _ in 1..self.n {
            let next = self.g.mul_vec(cols.last().unwrap())?;
            cols.push(next);
        }
        Ok(PadicMatrix::from_cols(self.p, self.precision, &cols))
    }

    /// Same data with the precision cap replaced.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        match &self.source {
            Some(src) => Self::from_rationals(self.p, precision, src.clone()),
            None => Err(Error::InvalidInput("precision change needs rational source data".into())),
        }
    }
}

/// T(v) = (<g^i x, g^j x>)_{0 <= i,j < n}.
pub fn fundamental_matrix(inst: &FullInstance) -> Result<PadicMatrix> {
    let v = inst.orbit_matrix()?;
    v.transpose().mul(&inst.gram)?.mul(&v)
}

/// True iff T is nonsingular at the working precision.
pub fn is_regular_semisimple(inst: &FullInstance) -> Result<bool> {
    let t = fundamental_matrix(inst)?;
    match smith_invariants(&t) {
        Ok(_) => Ok(true),
        Err(Error::SingularAtPrecision) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Cartan invariants r_1 >= ... >= r_n of T.
pub fn cartan_invariants(inst: &FullInstance) -> Result<Vec<i64>> {
    let t = fundamental_matrix(inst)?;
    match smith_invariants(&t) {
        Ok(s) => Ok(s.invariants),
        Err(Error::SingularAtPrecision) => Err(Error::NotRegularSemisimple),
        Err(e) => Err(e),
    }
}

/// r_1 = 1 and r_n >= 0; false when g is not regular semisimple.
pub fn is_minuscule(inst: &FullInstance) -> Result<bool> {
    match cartan_invariants(inst) {
        Ok(r) => Ok(invariants_minuscule(&r)),
        Err(Error::NotRegularSemisimple) => Ok(false),
        Err(e) => Err(e),
    }
}

pub fn invariants_minuscule(r: &[i64]) -> bool {
    r.first() == Some(&1) && r.last().map_or(false, |&x| x >= 0)
}
