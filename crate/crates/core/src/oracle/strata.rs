//! Enumeration of gbar-invariant subspaces through divisors of P.
//!
//! Omega_0 is gbar-cyclic, so its invariant subspaces are exactly the images
//! D(gbar) Omega_0 for monic divisors D of P. The totally isotropic ones
//! index the g-vertex lattices; each contributes the fixed points of the
//! middle quotient U^perp / U.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dl::dl_fixed_count;
use crate::error::{Error, Result};
use crate::finite::{is_irreducible, matrix_char_poly, poly_factorize, Field, FpMatrix, FpPoly, Matrix};
use crate::instance::{ReducedInstance, Verdict};

const CYCLIC_SAMPLES: usize = 64;
const CYCLIC_SEED: u64 = 0xc1c1_1c;

/// Largest middle dimension for which the Coxeter count is run.
pub const DL_MAX_HALF_DIM: usize = 3;

fn krylov(g: &FpMatrix, w: &[u64], len: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(len);
    let mut v = w.to_vec();
    for _ in 0..len {
        out.push(v.clone());
        v = g.mul_vec(&v);
    }
    out
}

fn rank_vecs(f: &crate::finite::PrimeField, vecs: &[Vec<u64>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Matrix::from_rows(f, vecs.to_vec()).expect("equal lengths").rank()
}

/// w whose gbar-orbit spans Omega_0. Standard basis vectors are tried first,
/// then seeded random samples.
pub fn cyclic_generator(red: &ReducedInstance) -> Result<Vec<u64>> {
    let f = red.field();
    let t = red.t;
    let works = |w: &[u64]| rank_vecs(&f, &krylov(&red.gbar, w, t)) == t;
    for i in 0..t {
        let mut e = vec![0; t];
        e[i] = 1;
        if works(&e) {
            return Ok(e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CYCLIC_SEED);
    for _ in 0..CYCLIC_SAMPLES {
        let w: Vec<u64> = (0..t).map(|_| f.random(&mut rng)).collect();
        if works(&w) {
            return Ok(w);
        }
    }
    Err(Error::NotCyclic)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// D; U = D(gbar) Omega_0 and gbar acts on U with characteristic polynomial P/D.
    pub divisor: FpPoly,
    pub exponents: Vec<usize>,
    pub dim_u: usize,
    pub basis: Vec<Vec<u64>>,
    pub isotropic: bool,
    /// Q', the characteristic polynomial on U^perp / U.
    pub middle: Option<FpPoly>,
    pub t_prime: usize,
    pub nonempty: bool,
    /// Vectors of U^perp completing `basis`; they represent U^perp / U.
    pub complement: Vec<Vec<u64>>,
    pub gram_prime: Option<FpMatrix>,
    pub g0: Option<FpMatrix>,
    /// Coxeter fixed-point count on the middle, when it was run.
    pub dl_count: Option<usize>,
}

fn divisors(p: u64, factors: &[(FpPoly, usize)]) -> Vec<(FpPoly, Vec<usize>)> {
    let mut out = vec![(FpPoly::one(p), Vec::new())];
    for (f, m) in factors {
        let mut next = Vec::new();
        for (d, e) in &out {
            let mut acc = d.clone();
            for k in 0..=*m {
                let mut e2 = e.clone();
                e2.push(k);
                next.push((acc.clone(), e2));
                acc = acc.mul(f);
            }
        }
        out = next;
    }
    out
}

/// Coordinates of v in the basis `cols`, which must be independent.
fn coords(f: &crate::finite::PrimeField, cols: &[Vec<u64>], v: &[u64]) -> Result<Vec<u64>> {
    let m = Matrix::from_cols(f, v.len(), cols);
    m.solve(v).ok_or_else(|| Error::Internal("vector outside the expected subspace".into()))
}

fn middle_of(red: &ReducedInstance, basis: &[Vec<u64>]) -> Result<(Vec<Vec<u64>>, FpMatrix, FpMatrix)> {
    let f = red.field();
    let t = red.t;
    let k = basis.len();
    let perp = if k == 0 {
        (0..t)
            .map(|i| {
                let mut e = vec![0; t];
                e[i] = 1;
                e
            })
            .collect()
    } else {
        let rows: Vec<Vec<u64>> = basis.iter().map(|u| red.omega_gram.transpose().mul_vec(u)).collect();
        Matrix::from_rows(&f, rows).expect("equal lengths").nullspace()
    };
    if perp.len() != t - k {
        return Err(Error::Internal(format!("dim U^perp = {} for dim U = {k}", perp.len())));
    }
    let mut all = basis.to_vec();
    let mut complement = Vec::new();
    for v in perp {
        all.push(v.clone());
        if rank_vecs(&f, &all) == all.len() {
            complement.push(v);
        } else {
            all.pop();
        }
    }
    let tp = complement.len();
    if tp != t - 2 * k {
        return Err(Error::Internal(format!("U^perp/U has dimension {tp}, expected {}", t - 2 * k)));
    }
    let mut g0 = Matrix::zeros(&f, tp, tp);
    let mut gram = Matrix::zeros(&f, tp, tp);
    for (j, c) in complement.iter().enumerate() {
        let x = coords(&f, &all, &red.gbar.mul_vec(c))?;
        for i in 0..tp {
            g0[(i, j)] = x[k + i];
            gram[(i, j)] = red.omega_gram.bilinear(&complement[i], c);
        }
    }
    Ok((complement, gram, g0))
}

pub fn enumerate_strata(red: &ReducedInstance) -> Result<Vec<Stratum>> {
    let f = red.field();
    let t = red.t;
    let w = cyclic_generator(red)?;
    let fl = poly_factorize(&red.poly)?;
    let mut out = Vec::new();
    for (d, exps) in divisors(red.p, &fl.factors) {
        let dim_u = t - d.degree();
        let y = red.gbar.eval_poly(d.coeffs()).mul_vec(&w);
        let basis = krylov(&red.gbar, &y, dim_u);
        if rank_vecs(&f, &basis) != dim_u {
            return Err(Error::Internal(format!("image of D(gbar) for D = {d} has the wrong dimension")));
        }
        let isotropic = basis
            .iter()
            .all(|u| basis.iter().all(|v| red.omega_gram.bilinear(u, v) == 0));
        let mut s = Stratum {
            divisor: d,
            exponents: exps,
            dim_u,
            basis,
            isotropic,
            middle: None,
            t_prime: 0,
            nonempty: false,
            complement: Vec::new(),
            gram_prime: None,
            g0: None,
            dl_count: None,
        };
        if isotropic {
            let (complement, gram, g0) = middle_of(red, &s.basis)?;
            let q = matrix_char_poly(&g0);
            let cofactor = red.poly.div_exact(&s.divisor).expect("divisor divides P");
            let rebuilt = cofactor.mul(&cofactor.reciprocal()?).mul(&q);
            if rebuilt != red.poly {
                return Err(Error::Internal(format!(
                    "(P/D)(P/D)* Q' = {rebuilt} differs from P = {}",
                    red.poly
                )));
            }
            s.t_prime = complement.len();
            s.nonempty = s.t_prime > 0 && is_irreducible(&q);
            if s.nonempty && s.t_prime / 2 <= DL_MAX_HALF_DIM {
                s.dl_count = Some(dl_fixed_count(&gram, &g0)?);
            }
            s.middle = Some(q);
            s.complement = complement;
            s.gram_prime = Some(gram);
            s.g0 = Some(g0);
        }
        out.push(s);
    }
    Ok(out)
}

/// Sum of t' over nonempty strata: two components, t'/2 points each.
pub fn oracle_point_count(strata: &[Stratum]) -> u64 {
    strata.iter().filter(|s| s.nonempty).map(|s| s.t_prime as u64).sum()
}

/// Structural identities every stratum list must satisfy.
pub fn strata_identities(red: &ReducedInstance, strata: &[Stratum]) -> Vec<Verdict> {
    let f = red.field();
    let mut v = Vec::new();
    let expected: usize = poly_factorize(&red.poly)
        .map(|fl| fl.factors.iter().map(|(_, m)| m + 1).product())
        .unwrap_or(0);
    v.push(Verdict {
        name: "divisor_count",
        passed: strata.len() == expected,
        detail: Some(format!("{} subspaces, {} divisors", strata.len(), expected)),
    });
    let mut reduced: Vec<Matrix<crate::finite::PrimeField>> = strata
        .iter()
        .filter(|s| s.dim_u > 0)
        .map(|s| Matrix::from_rows(&f, s.basis.clone()).unwrap().rref().0)
        .collect();
    let before = reduced.len();
    reduced.sort_by(|a, b| a.to_rows().cmp(&b.to_rows()));
    reduced.dedup();
    v.push(Verdict {
        name: "subspaces_distinct",
        passed: before == reduced.len(),
        detail: None,
    });
    let dims = strata.iter().all(|s| s.dim_u + s.divisor.degree() == red.t && s.basis.len() == s.dim_u);
    v.push(Verdict { name: "dimension", passed: dims, detail: None });
    let stable = strata.iter().all(|s| {
        let mut all = s.basis.clone();
        all.extend(s.basis.iter().map(|u| red.gbar.mul_vec(u)));
        rank_vecs(&f, &all) == s.dim_u
    });
    v.push(Verdict { name: "gbar_stable", passed: stable, detail: None });
    let char_on_u = strata.iter().all(|s| {
        if s.dim_u == 0 {
            return true;
        }
        let mut m = Matrix::zeros(&f, s.dim_u, s.dim_u);
        for (j, u) in s.basis.iter().enumerate() {
            let Ok(x) = coords(&f, &s.basis, &red.gbar.mul_vec(u)) else { return false };
            for i in 0..s.dim_u {
                m[(i, j)] = x[i];
            }
        }
        Some(matrix_char_poly(&m)) == red.poly.div_exact(&s.divisor)
    });
    v.push(Verdict { name: "char_poly_on_u", passed: char_on_u, detail: None });
    let iso: Vec<&Stratum> = strata.iter().filter(|s| s.isotropic).collect();
    v.push(Verdict {
        name: "t_prime_even",
        passed: iso.iter().all(|s| s.t_prime % 2 == 0),
        detail: None,
    });
    v.push(Verdict {
        name: "middle_self_reciprocal",
        passed: iso
            .iter()
            .all(|s| s.middle.as_ref().is_some_and(|q| q.is_self_reciprocal().unwrap_or(false))),
        detail: None,
    });
    let mut middles: Vec<&FpPoly> = strata.iter().filter(|s| s.nonempty).filter_map(|s| s.middle.as_ref()).collect();
    middles.dedup();
    v.push(Verdict {
        name: "unique_middle",
        passed: middles.len() <= 1,
        detail: None,
    });
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::gen::{gen_reduced, gen_reduced_relaxed, ShapePart};
    use crate::instance::reduced::all_passed;
    use crate::instance::FactorKind;

    fn pinned(kind: FactorKind, p: u64, c: &[i64], m: usize) -> ShapePart {
        ShapePart::pinned(kind, FpPoly::new(p, c.to_vec()).unwrap(), m)
    }

    #[test]
    fn single_q() {
        let red = gen_reduced(3, &[pinned(FactorKind::Q, 3, &[1, 0, 1], 1)], 7).unwrap();
        let s = enumerate_strata(&red).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().filter(|x| x.nonempty).count(), 1);
        assert_eq!(oracle_point_count(&s), 2);
        assert!(all_passed(&strata_identities(&red, &s)));
    }

    #[test]
    fn q_and_pair() {
        let shape = [
            pinned(FactorKind::Q, 3, &[1, 0, 1], 1),
            pinned(FactorKind::Pair, 3, &[2, 1, 1], 1),
        ];
        let red = gen_reduced(3, &shape, 11).unwrap();
        let s = enumerate_strata(&red).unwrap();
        assert_eq!(s.len(), 8);
        let ne: Vec<_> = s.iter().filter(|x| x.nonempty).collect();
        assert_eq!(ne.len(), 2);
        assert!(ne.iter().all(|x| x.middle == Some(FpPoly::new(3, vec![1, 0, 1]).unwrap())));
        assert!(ne.iter().all(|x| x.dl_count == Some(2)));
        assert_eq!(oracle_point_count(&s), 4);
    }

    #[test]
    fn three_candidates_empty() {
        let shape = [
            pinned(FactorKind::Q, 3, &[-1, 1], 1),
            pinned(FactorKind::Q, 3, &[1, 1], 1),
            pinned(FactorKind::Q, 3, &[1, 0, 1], 1),
        ];
        let red = gen_reduced_relaxed(3, &shape, 3).unwrap();
        let s = enumerate_strata(&red).unwrap();
        assert_eq!(oracle_point_count(&s), 0);
    }
}
