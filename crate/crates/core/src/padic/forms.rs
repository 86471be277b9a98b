//! Classical invariants of quadratic forms over Q_p, p odd.

use super::matrix::PadicMatrix;
use super::scalar::{legendre, PadicScalar};
use crate::error::{Error, Result};

/// Tame Hilbert symbol: (a,b) = (-1)^(ab(p-1)/2) (u/p)^b (v/p)^a with
/// a = p^alpha u, b = p^beta v.
pub fn hilbert_symbol(a: &PadicScalar, b: &PadicScalar) -> Result<i8> {
    let (Some(alpha), Some(beta)) = (a.valuation(), b.valuation()) else {
        return Err(Error::ZeroArgument);
    };
    let p = a.p();
    let u = a.unit_residue().unwrap();
    let v = b.unit_residue().unwrap();
    let mut s: i8 = 1;
    if (alpha * beta).rem_euclid(2) == 1 && (p - 1) / 2 % 2 == 1 {
        s = -s;
    }
    if beta.rem_euclid(2) == 1 {
        s *= legendre(u, p);
    }
    if alpha.rem_euclid(2) == 1 {
        s *= legendre(v, p);
    }
    Ok(s)
}

pub fn square_class(x: &PadicScalar) -> Result<(u8, bool)> {
    x.square_class()
}

/// Congruence-diagonalize a symmetric matrix: returns d_1..d_n with
/// gram ~ diag(d_i). Pivots are chosen by minimal valuation; when an
/// off-diagonal entry beats every diagonal one, e_i is replaced by e_i + e_j.
pub fn diagonalize(gram: &PadicMatrix) -> Result<Vec<PadicScalar>> {
    if !gram.is_square() {
        return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
    }
    if !gram.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = gram.rows();
    let mut g: Vec<Vec<PadicScalar>> = (0..n).map(|i| (0..n).map(|j| gram[(i, j)].clone()).collect()).collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let dmin = (k..n).min_by_key(|&i| (g[i][i].valuation_lower_bound(), i)).unwrap();
        let mut off: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in i + 1..n {
                let v = g[i][j].valuation_lower_bound();
                if off.map_or(true, |(b, _, _)| v < b) {
                    off = Some((v, i, j));
                }
            }
        }
        let piv = match off {
            Some((v, i, j)) if v < g[dmin][dmin].valuation_lower_bound() => {
                // e_i <- e_i + e_j
                for c in 0..n {
                    let x = g[i][c].add(&g[j][c]);
                    g[i][c] = x;
                }
                for r in 0..n {
                    let x = g[r][i].add(&g[r][j]);
                    g[r][i] = x;
                }
                i
            }
            _ => dmin,
        };
        if g[piv][piv].is_zero() {
            return Err(Error::PrecisionExhausted("form degenerate at working precision".into()));
        }
        g.swap(k, piv);
        for row in g.iter_mut() {
            row.swap(k, piv);
        }
        let d = g[k][k].clone();
        let dinv = d.inv()?;
        for i in k + 1..n {
            if g[i][k].is_exact_zero() {
                continue;
            }
            let f = g[i][k].mul(&dinv);
            for c in k..n {
                let x = g[i][c].sub(&f.mul(&g[k][c]));
                g[i][c] = x;
            }
            for r in k..n {
                let x = g[r][i].sub(&f.mul(&g[r][k]));
                g[r][i] = x;
            }
            g[i][k] = PadicScalar::zero(gram.p(), gram.precision());
            g[k][i] = PadicScalar::zero(gram.p(), gram.precision());
        }
        out.push(d);
    }
    Ok(out)
}

/// Product over i < j of (d_i, d_j) for any diagonalization.
pub fn hasse_invariant(gram: &PadicMatrix) -> Result<i8> {
    let d = diagonalize(gram)?;
    let mut h = 1;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            h *= hilbert_symbol(&d[i], &d[j])?;
        }
    }
    Ok(h)
}

/// Square class of the determinant, via the diagonalization.
pub fn det_square_class(gram: &PadicMatrix) -> Result<(u8, bool)> {
    let d = diagonalize(gram)?;
    let prod = d.iter().skip(1).fold(d[0].clone(), |acc, x| acc.mul(x));
    prod.square_class()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64, p: u64) -> PadicScalar {
        PadicScalar::from_i64(x, p, 24)
    }

    #[test]
    fn symbol_examples() {
        for b in [1, 2, 3, 6, 9, 12] {
            assert_eq!(hilbert_symbol(&s(1, 3), &s(b, 3)).unwrap(), 1);
        }
        assert_eq!(hilbert_symbol(&s(3, 3), &s(2, 3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&s(3, 7), &s(5, 7)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&s(0, 7), &s(5, 7)).unwrap_err(), Error::ZeroArgument);
        // (p, p) = (p, -1) = (-1/p): -1 at p = 3, +1 at p = 5
        assert_eq!(hilbert_symbol(&s(3, 3), &s(3, 3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&s(5, 5), &s(5, 5)).unwrap(), 1);
    }

    #[test]
    fn hasse_examples() {
        let id = PadicMatrix::from_i64(5, 24, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(hasse_invariant(&id).unwrap(), 1);
        let hyp = PadicMatrix::from_i64(5, 24, &[vec![0, 1], vec![1, 0]]).unwrap();
        let d = diagonalize(&hyp).unwrap();
        assert_eq!(d.len(), 2);
        // diag(2, -1/2): (2, -1/2) at p=5 is +1 (both units)
        assert_eq!(hasse_invariant(&hyp).unwrap(), 1);
        assert_eq!(square_class(&s(3, 3)).unwrap(), (1, true));
        let ns = PadicMatrix::from_i64(3, 24, &[vec![1, 2], vec![3, 1]]).unwrap();
        assert_eq!(hasse_invariant(&ns).unwrap_err(), Error::NotSymmetric);
    }
}
