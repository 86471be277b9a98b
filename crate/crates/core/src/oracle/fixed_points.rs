//! Multiplicity at each fixed point, computed from the point itself.
//!
//! A fixed point is a gbar-stable Lagrangian L of Omega_0 (over an extension
//! of F_p) with dim(L + Frob L) = d + 1. Writing gbar on Frob L in a basis
//! adapted to L cap Frob L gives H1, H2, H4 (the lower-left block vanishes),
//! and the local ring of the fixed-point equations at L cap Frob L has the
//! length that the closed form predicts to be (m(Q) + 1)/2.

use serde::Serialize;

use super::dl::{dl_fixed_points, frobenius_vec, rank_of, ExtVec};
use super::local_ring::local_ring_length_generic;
use super::strata::Stratum;
use crate::error::{Error, Result};
use crate::finite::ext::lift_matrix;
use crate::finite::{ExtField, Field, Matrix};
use crate::instance::ReducedInstance;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointData {
    pub divisor_exponents: Vec<usize>,
    pub choice: Vec<usize>,
    /// Size of the Jordan block of lambda on Frob L.
    pub jordan_c: usize,
    pub local_length: usize,
}

fn lift_vec(f: &ExtField, v: &[u64]) -> ExtVec {
    v.iter().map(|&x| f.embed(x)).collect()
}

fn in_span(f: &ExtField, basis: &[ExtVec], v: &ExtVec) -> bool {
    let mut all = basis.to_vec();
    all.push(v.clone());
    rank_of(f, &all) == rank_of(f, basis)
}

fn multiplicity_of(f: &ExtField, h: &Matrix<ExtField>, l: &[u64]) -> usize {
    let n = h.rows();
    let shifted = h.sub(&Matrix::identity(f, n).scale(&l.to_vec()));
    // dimension of the generalized eigenspace
    let big = shifted.pow(n);
    n - big.rank()
}

/// Jordan data at every fixed point lying over one nonempty stratum.
pub fn stratum_fixed_points(red: &ReducedInstance, s: &Stratum) -> Result<Vec<FixedPointData>> {
    let (Some(gram), Some(g0)) = (&s.gram_prime, &s.g0) else {
        return Ok(Vec::new());
    };
    if !s.nonempty {
        return Ok(Vec::new());
    }
    let t = red.t;
    let d = t / 2;
    let dl = dl_fixed_points(gram, g0)?;
    let f = dl.field.clone();
    let g = lift_matrix(&red.gbar, &f);
    let u: Vec<ExtVec> = s.basis.iter().map(|x| lift_vec(&f, x)).collect();
    let comp: Vec<ExtVec> = s.complement.iter().map(|x| lift_vec(&f, x)).collect();
    let lift = |e: &ExtVec| -> ExtVec {
        let mut v = vec![f.zero(); t];
        for (c, col) in e.iter().zip(&comp) {
            for i in 0..t {
                v[i] = f.add(&v[i], &f.mul(c, &col[i]));
            }
        }
        v
    };
    let mut out = Vec::new();
    for choice in &dl.choices {
        let mut l = u.clone();
        l.extend(choice.iter().map(|&i| lift(&dl.eigvecs[i])));
        let fl: Vec<ExtVec> = l.iter().map(|v| frobenius_vec(&f, v)).collect();
        if rank_of(&f, &l) != d || rank_of(&f, &fl) != d {
            return Err(Error::Internal("lifted Lagrangian has the wrong dimension".into()));
        }
        // L cap Frob L from the kernel of [L | -Frob L]
        let mut cols = l.clone();
        cols.extend(fl.iter().map(|v| v.iter().map(|x| f.neg(x)).collect()));
        let ker = Matrix::from_cols(&f, t, &cols).nullspace();
        let mut meet: Vec<ExtVec> = Vec::new();
        for k in &ker {
            let mut v = vec![f.zero(); t];
            for (c, col) in k[..d].iter().zip(&l) {
                for i in 0..t {
                    v[i] = f.add(&v[i], &f.mul(c, &col[i]));
                }
            }
            if !in_span(&f, &meet, &v) {
                meet.push(v);
            }
        }
        if meet.len() + 1 != d {
            return Err(Error::Internal(format!("dim(L cap Frob L) = {} with d = {d}", meet.len())));
        }
        let w = fl
            .iter()
            .find(|v| !in_span(&f, &meet, v))
            .cloned()
            .ok_or_else(|| Error::Internal("Frob L equals L cap Frob L".into()))?;
        let mut basis = meet.clone();
        basis.push(w);
        let bm = Matrix::from_cols(&f, t, &basis);
        let mut h = Matrix::zeros(&f, d, d);
        for (j, b) in basis.iter().enumerate() {
            let x = bm
                .solve(&g.mul_vec(b))
                .ok_or_else(|| Error::Internal("gbar does not preserve Frob L".into()))?;
            for i in 0..d {
                h[(i, j)] = x[i].clone();
            }
        }
        let k = d - 1;
        if (0..k).any(|j| !f.is_zero(&h[(k, j)])) {
            return Err(Error::Internal("gbar does not preserve L cap Frob L".into()));
        }
        let mut h1 = Matrix::zeros(&f, k, k);
        for i in 0..k {
            for j in 0..k {
                h1[(i, j)] = h[(i, j)].clone();
            }
        }
        let h2: Vec<Vec<u64>> = (0..k).map(|i| h[(i, k)].clone()).collect();
        let h4 = h[(k, k)].clone();
        let jordan_c = multiplicity_of(&f, &h, &h4);
        let local_length = local_ring_length_generic(&f, &h1, &h2, &h4)?;
        out.push(FixedPointData {
            divisor_exponents: s.exponents.clone(),
            choice: choice.clone(),
            jordan_c,
            local_length,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FpPoly;
    use crate::instance::gen::{gen_reduced, ShapePart};
    use crate::instance::FactorKind;
    use crate::oracle::strata::enumerate_strata;

    fn lengths(red: &ReducedInstance) -> Vec<usize> {
        let strata = enumerate_strata(red).unwrap();
        strata
            .iter()
            .flat_map(|s| stratum_fixed_points(red, s).unwrap())
            .map(|x| {
                assert_eq!(x.jordan_c, x.local_length);
                x.local_length
            })
            .collect()
    }

    #[test]
    fn cubed_q_has_length_two() {
        let q = FpPoly::new(3, vec![1, 0, 1]).unwrap();
        let red = gen_reduced(3, &[ShapePart::pinned(FactorKind::Q, q, 3)], 5).unwrap();
        assert_eq!(lengths(&red), vec![2, 2]);
    }

    #[test]
    fn simple_q_has_length_one() {
        let red = gen_reduced(5, &[ShapePart::new(FactorKind::Q, 4, 1)], 9).unwrap();
        assert_eq!(lengths(&red), vec![1; 4]);
    }
}
