//! Fixed Lagrangians of a Coxeter-type isometry, by eigenline combinatorics.
//!
//! When the characteristic polynomial of g0 (dimension 2d) is irreducible its
//! eigenvalues are distinct and split over F_{p^{2d}}. A g0-stable Lagrangian
//! is then a sum of eigenlines, one from each inverse pair {l, 1/l}, and the
//! condition dim(L + Frob L) = d + 1 is checked by rank.

use crate::error::{Error, Result};
use crate::finite::ext::lift_matrix;
use crate::finite::{ext_roots, is_irreducible, matrix_char_poly, ExtField, Field, FpMatrix, Matrix};

pub type ExtVec = Vec<Vec<u64>>;

#[derive(Clone, Debug)]
pub struct DlFixedPoints {
    pub field: ExtField,
    pub roots: Vec<Vec<u64>>,
    /// Eigenvector for each root, in the coordinates of g0.
    pub eigvecs: Vec<ExtVec>,
    /// For each fixed Lagrangian, the indices of the chosen roots.
    pub choices: Vec<Vec<usize>>,
}

impl DlFixedPoints {
    pub fn count(&self) -> usize {
        self.choices.len()
    }
}

pub fn frobenius_vec(f: &ExtField, v: &[Vec<u64>]) -> ExtVec {
    v.iter().map(|x| f.frobenius(x)).collect()
}

pub fn rank_of(f: &ExtField, vecs: &[ExtVec]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Matrix::from_rows(f, vecs.to_vec()).expect("equal lengths").rank()
}

pub fn dl_fixed_points(gram: &FpMatrix, g0: &FpMatrix) -> Result<DlFixedPoints> {
    let n = g0.rows();
    if !g0.is_square() || gram.rows() != n || gram.cols() != n || n == 0 || n % 2 == 1 {
        return Err(Error::DimensionMismatch(format!("g0 is {}x{}, gram {}x{}", n, g0.cols(), gram.rows(), gram.cols())));
    }
    let d = n / 2;
    let q = matrix_char_poly(g0);
    if !is_irreducible(&q) {
        return Err(Error::ReducibleCharPoly);
    }
    let p = g0.field().p();
    let f = ExtField::new(p, n)?;
    let roots = ext_roots(&q, &f);
    if roots.len() != n {
        return Err(Error::Internal(format!("{} roots of a degree {n} irreducible in its splitting field", roots.len())));
    }
    let g = lift_matrix(g0, &f);
    let form = lift_matrix(gram, &f);
    let mut eigvecs = Vec::with_capacity(n);
    for l in &roots {
        let shifted = g.sub(&Matrix::identity(&f, n).scale(l));
        let ns = shifted.nullspace();
        if ns.len() != 1 {
            return Err(Error::Internal(format!("eigenspace of dimension {}", ns.len())));
        }
        eigvecs.push(ns.into_iter().next().unwrap());
    }

    // pairing: B(e_l, e_m) != 0 exactly when l m = 1
    let mut partner = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let b = form.bilinear(&eigvecs[i], &eigvecs[j]);
            let inverse = f.is_one(&f.mul(&roots[i], &roots[j]));
            if inverse == f.is_zero(&b) {
                return Err(Error::PairingDegenerate(format!("roots {i}, {j}: inverse = {inverse}, pairing zero = {}", f.is_zero(&b))));
            }
            if inverse {
                partner[i] = j;
            }
        }
    }
    if (0..n).any(|i| partner[i] == i || partner[i] == usize::MAX) {
        return Err(Error::PairingDegenerate("an eigenvalue is its own inverse".into()));
    }
    let sigma: Vec<usize> = roots
        .iter()
        .map(|l| {
            let fl = f.frobenius(l);
            roots.iter().position(|x| *x == fl).expect("Frobenius permutes roots")
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..n).filter(|&i| i < partner[i]).map(|i| (i, partner[i])).collect();
    assert_eq!(pairs.len(), d);

    let frob_eig: Vec<ExtVec> = eigvecs.iter().map(|v| frobenius_vec(&f, v)).collect();
    let mut choices = Vec::new();
    for mask in 0u32..(1 << d) {
        let s: Vec<usize> = pairs
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| if mask >> k & 1 == 1 { b } else { a })
            .collect();
        let mut union: Vec<usize> = s.iter().chain(s.iter().map(|&i| &sigma[i])).copied().collect();
        union.sort();
        union.dedup();
        let mut span: Vec<ExtVec> = s.iter().map(|&i| eigvecs[i].clone()).collect();
        span.extend(s.iter().map(|&i| frob_eig[i].clone()));
        let r = rank_of(&f, &span);
        if r != union.len() {
            return Err(Error::Internal(format!("dim(L + Frob L) = {r} but |S u S^p| = {}", union.len())));
        }
        if r == d + 1 {
            choices.push(s);
        }
    }
    Ok(DlFixedPoints { field: f, roots, eigvecs, choices })
}

pub fn dl_fixed_count(gram: &FpMatrix, g0: &FpMatrix) -> Result<usize> {
    dl_fixed_points(gram, g0).map(|x| x.count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{companion, FpPoly, PrimeField};
    use crate::instance::gen::invariant_forms;

    fn form_for(g: &FpMatrix) -> FpMatrix {
        invariant_forms(g).into_iter().find(|m| m.det() != 0).unwrap()
    }

    #[test]
    fn t2_over_f3() {
        let g = companion(&FpPoly::new(3, vec![1, 0, 1]).unwrap());
        assert_eq!(dl_fixed_count(&form_for(&g), &g).unwrap(), 2);
    }

    #[test]
    fn quartic_and_sextic() {
        for (p, c) in [(3u64, vec![1i64, 1, 1, 1, 1]), (5, vec![1, 0, 2, 0, 1])] {
            let q = FpPoly::new(p, c).unwrap();
            if !is_irreducible(&q) {
                continue;
            }
            let g = companion(&q);
            assert_eq!(dl_fixed_count(&form_for(&g), &g).unwrap(), 4);
        }
    }

    #[test]
    fn reducible_rejected() {
        let f = PrimeField::new(5).unwrap();
        let g = FpMatrix::identity(&f, 2);
        assert_eq!(dl_fixed_count(&g, &g), Err(Error::ReducibleCharPoly));
    }
}
