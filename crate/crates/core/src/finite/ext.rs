//! Roots of F_p polynomials inside an extension field.

use super::factor::factor_generic;
use super::field::{ExtField, Field};
use super::matrix::{FpMatrix, Matrix};
use super::poly::FpPoly;

const ROOT_SEED: u64 = 0x0007_2007;

/// Roots of P lying in F, each repeated according to its multiplicity,
/// sorted by coefficient vector.
pub fn ext_roots(poly: &FpPoly, field: &ExtField) -> Vec<Vec<u64>> {
    assert_eq!(poly.p(), field.characteristic(), "prime mismatch");
    if poly.degree() < 1 {
        return Vec::new();
    }
    let monic = poly.monic();
    let lifted: Vec<Vec<u64>> = monic.coeffs().iter().map(|&c| field.embed(c)).collect();
    let mut roots = Vec::new();
    for (g, m) in factor_generic(field, &lifted, ROOT_SEED) {
        if g.len() == 2 {
            let r = field.neg(&g[0]);
            for _ in 0..m {
                roots.push(r.clone());
            }
        }
    }
    roots.sort();
    roots
}

/// Companion matrix: ones on the subdiagonal, last column -c_0..-c_{n-1}.
pub fn companion(poly: &FpPoly) -> FpMatrix {
    let f = poly.field();
    let n = poly.degree();
    let mut m = Matrix::zeros(&f, n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1;
    }
    for i in 0..n {
        m[(i, n - 1)] = f.neg(&poly.coeff(i));
    }
    m
}

pub fn lift_matrix(m: &FpMatrix, field: &ExtField) -> Matrix<ExtField> {
    m.map(field, |&x| field.embed(x))
}
