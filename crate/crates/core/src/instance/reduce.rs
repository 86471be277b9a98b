//! From (V, g, x) to (Omega_0(g), gbar, P).
//!
//! In the coordinates of the orbit basis v = (x, gx, ..., g^(n-1)x) the form
//! is T = T(v) and L(g) is the standard lattice. With U T W = diag(p^r), the
//! columns w_i of W span L(g) and p^(-r_i) w_i span L(g)^dual, so the
//! quotient is spanned by the classes of p^-1 w_i with r_i = 1.

use serde::Serialize;

use super::full::{fundamental_matrix, invariants_minuscule, is_regular_semisimple, rational_string, FullInstance};
use super::reduced::{all_passed, t_max, validate_reduced, ReducedInstance, Verdict};
use crate::error::{Error, Result};
use crate::finite::{matrix_char_poly, FpMatrix, PrimeField};
use crate::padic::{det_square_class, hasse_invariant, padic_inverse, smith_invariants, PadicMatrix, PadicScalar};

#[derive(Clone, Debug, Serialize)]
pub struct DerivationLog {
    pub fundamental_matrix: Vec<Vec<String>>,
    pub cartan_invariants: Vec<i64>,
    /// Columns, in orbit-basis coordinates.
    pub lattice_basis: Vec<Vec<String>>,
    pub dual_basis: Vec<Vec<String>>,
    /// Indices i with r_i = 1; their dual basis vectors give the quotient basis.
    pub quotient_indices: Vec<usize>,
    pub hasse_invariant: Option<i8>,
    pub t_max: Option<usize>,
    pub verdicts: Vec<Verdict>,
    pub warnings: Vec<String>,
}

fn scalar_string(x: &PadicScalar) -> String {
    rational_string(&x.representative())
}

fn matrix_strings(m: &PadicMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| scalar_string(&m[(i, j)])).collect()).collect()
}

fn cols_strings(cols: &[Vec<PadicScalar>]) -> Vec<Vec<String>> {
    cols.iter().map(|c| c.iter().map(scalar_string).collect()).collect()
}

pub fn reduce_instance(inst: &FullInstance) -> Result<(ReducedInstance, DerivationLog)> {
    let (p, n) = (inst.p, inst.n);
    if !is_regular_semisimple(inst)? {
        return Err(Error::NotRegularSemisimple);
    }
    let t_mat = fundamental_matrix(inst)?;
    let smith = smith_invariants(&t_mat)?;
    let r = smith.invariants.clone();
    if !invariants_minuscule(&r) {
        return Err(Error::NotMinuscule(r));
    }

    // matrix of g in the orbit basis must be p-integral
    let v = inst.orbit_matrix()?;
    let c = padic_inverse(&v)?.mul(&inst.g)?.mul(&v)?;
    if let Some(bad) = c.entries().find(|x| !x.is_integral()) {
        return Err(Error::GDoesNotStabilize(format!("entry {} of g in the orbit basis is not integral", scalar_string(bad))));
    }

    let w = &smith.v;
    let idx: Vec<usize> = (0..n).filter(|&i| r[i] == 1).collect();
    let t = idx.len();
    let lattice_basis: Vec<Vec<PadicScalar>> = (0..n).map(|j| w.col(j)).collect();
    let dual_basis: Vec<Vec<PadicScalar>> =
        (0..n).map(|j| w.col(j).iter().map(|x| x.shift(-r[j])).collect()).collect();

    // p * <f_i, f_j> = p^-1 (W^T T W)_ij
    let wtw = w.transpose().mul(&t_mat)?.mul(w)?;
    let fp = PrimeField::new(p)?;
    let mut omega = FpMatrix::zeros(&fp, t, t);
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            omega[(a, b)] = wtw[(i, j)].shift(-1).reduce_mod_p()?;
        }
    }

    // coordinates of g f_j in the dual basis: diag(p^r) W^-1 C f_j
    let winv = padic_inverse(w)?;
    let mut gbar = FpMatrix::zeros(&fp, t, t);
    for (b, &j) in idx.iter().enumerate() {
        let img = c.mul_vec(&dual_basis[j])?;
        let coords = winv.mul_vec(&img)?;
        for (a, &i) in idx.iter().enumerate() {
            gbar[(a, b)] = coords[i].shift(r[i]).reduce_mod_p()?;
        }
        // components along r_i = 0 land in L and vanish in the quotient;
        // they must still be integral
        for (i, x) in coords.iter().enumerate() {
            if !x.shift(r[i]).is_integral() {
                return Err(Error::GDoesNotStabilize("image leaves the dual lattice".into()));
            }
        }
    }
    let poly = matrix_char_poly(&gbar);
    let red = ReducedInstance::new(p, omega, gbar, poly)?;
    let verdicts = validate_reduced(&red);

    let mut warnings = Vec::new();
    let hasse = hasse_invariant(&inst.gram).ok();
    if hasse != Some(-1) {
        warnings.push(format!("Hasse invariant of the input space is {hasse:?}, expected -1"));
    }
    let tm = det_square_class(&inst.gram).ok().map(|dc| t_max(n, dc, p));
    if let Some(tm) = tm {
        if t > tm {
            warnings.push(format!("t = {t} exceeds t_max = {tm}"));
        }
    }
    let log = DerivationLog {
        fundamental_matrix: matrix_strings(&t_mat),
        cartan_invariants: r,
        lattice_basis: cols_strings(&lattice_basis),
        dual_basis: cols_strings(&dual_basis),
        quotient_indices: idx,
        hasse_invariant: hasse,
        t_max: tm,
        verdicts: verdicts.clone(),
        warnings,
    };
    if !all_passed(&verdicts) {
        if verdicts.iter().any(|v| v.name == "non_split" && !v.passed)
            && verdicts.iter().filter(|v| !v.passed).count() == 1
        {
            return Err(Error::SplitOmega);
        }
        let failed: Vec<_> = verdicts.iter().filter(|v| !v.passed).map(|v| v.name).collect();
        return Err(Error::Internal(format!("reduced instance fails {failed:?}")));
    }
    Ok((red, log))
}
