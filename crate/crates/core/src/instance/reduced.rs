//! The finite-field layer: (Omega_0, form, gbar, P).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{matrix_char_poly, matrix_min_poly, Field, FpMatrix, FpPoly, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    pub p: u64,
    pub t: usize,
    pub omega_gram: FpMatrix,
    pub gbar: FpMatrix,
    pub poly: FpPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    fn new(name: &'static str, passed: bool, detail: Option<String>) -> Self {
        Verdict { name, passed, detail }
    }
}

pub fn all_passed(v: &[Verdict]) -> bool {
    v.iter().all(|x| x.passed)
}

impl ReducedInstance {
    /// Assemble with shape checks only; call `validate_reduced` for the rest.
    pub fn new(p: u64, omega_gram: FpMatrix, gbar: FpMatrix, poly: FpPoly) -> Result<Self> {
        let t = gbar.rows();
        if omega_gram.field().p() != p || gbar.field().p() != p || poly.p() != p {
            return Err(Error::InvalidInput("mixed primes".into()));
        }
        if !gbar.is_square() || omega_gram.rows() != t || omega_gram.cols() != t {
            return Err(Error::DimensionMismatch(format!(
                "omega_gram {}x{}, gbar {}x{}",
                omega_gram.rows(),
                omega_gram.cols(),
                gbar.rows(),
                gbar.cols()
            )));
        }
        if poly.degree() != t || poly.is_zero() {
            return Err(Error::DimensionMismatch(format!("deg P = {} but t = {t}", poly.degree())));
        }
        Ok(ReducedInstance { p, t, omega_gram, gbar, poly })
    }

    /// From gbar and the form alone; P is the characteristic polynomial.
    pub fn from_action(omega_gram: FpMatrix, gbar: FpMatrix) -> Result<Self> {
        let p = gbar.field().p();
        let poly = matrix_char_poly(&gbar);
        Self::new(p, omega_gram, gbar, poly)
    }

    pub fn field(&self) -> PrimeField {
        *self.gbar.field()
    }
}

/// Split iff (-1)^d det is a square, for a nondegenerate form of dimension 2d.
pub fn is_split_fp(gram: &FpMatrix) -> Result<bool> {
    let t = gram.rows();
    if t % 2 == 1 {
        return Err(Error::OddDimension(t));
    }
    let f = gram.field();
    let det = gram.det();
    if det == 0 {
        return Err(Error::InvalidInput("degenerate form".into()));
    }
    let sign = if (t / 2) % 2 == 1 { f.neg(&1) } else { 1 };
    Ok(f.is_square(&f.mul(&sign, &det)))
}

/// Maximal type of a vertex lattice in a quadratic space of dimension n
/// with determinant square class `det_class` = (v mod 2, unit is square).
pub fn t_max(n: usize, det_class: (u8, bool), p: u64) -> usize {
    if n % 2 == 1 {
        return n - 1;
    }
    let minus_one_square = crate::padic::legendre(p - 1, p) == 1;
    // (-1)^(n/2) has valuation 0 and is a square iff n/2 even or -1 is a square
    let target = (0u8, (n / 2) % 2 == 0 || minus_one_square);
    if det_class == target {
        n - 2
    } else {
        n
    }
}

pub fn validate_reduced(red: &ReducedInstance) -> Vec<Verdict> {
    let mut out = Vec::new();
    let t = red.t;
    out.push(Verdict::new("t_even", t >= 2 && t % 2 == 0, Some(format!("t = {t}"))));
    let sym = red.omega_gram.is_symmetric();
    out.push(Verdict::new("form_symmetric", sym, None));
    let nondeg = red.omega_gram.det() != 0;
    out.push(Verdict::new("form_nondegenerate", nondeg, None));
    let g = &red.gbar;
    let iso = g.transpose().mul(&red.omega_gram).mul(g) == red.omega_gram;
    out.push(Verdict::new("isometry", iso, None));
    let chi = matrix_char_poly(g);
    out.push(Verdict::new(
        "char_poly_matches",
        chi == red.poly,
        (chi != red.poly).then(|| format!("char poly of gbar is {chi}")),
    ));
    let mp = matrix_min_poly(g);
    out.push(Verdict::new(
        "cyclic",
        mp == chi,
        (mp != chi).then(|| format!("min poly {mp} differs from char poly {chi}")),
    ));
    let selfrec = red.poly.is_self_reciprocal().unwrap_or(false);
    out.push(Verdict::new("self_reciprocal", selfrec, None));
    let nonsplit = if t % 2 == 0 && nondeg && sym {
        !is_split_fp(&red.omega_gram).unwrap_or(true)
    } else {
        false
    };
    out.push(Verdict::new("non_split", nonsplit, None));
    out
}
