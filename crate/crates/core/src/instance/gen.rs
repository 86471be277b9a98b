//! Seeded generators for reduced and full instances.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::full::{FullInstance, RationalData};
use super::reduce::reduce_instance;
use super::reduced::{all_passed, is_split_fp, validate_reduced, ReducedInstance};
use crate::error::{Error, Result};
use crate::finite::{companion, is_irreducible, Field, FpMatrix, FpPoly, PrimeField};
use crate::rational::{self, q, QMat};

pub const FORM_RETRY_BUDGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    /// Self-reciprocal irreducible with odd multiplicity.
    Q,
    /// A pair R, R* of non-self-reciprocal irreducibles with common multiplicity.
    Pair,
    /// Self-reciprocal irreducible with even multiplicity.
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapePart {
    pub kind: FactorKind,
    pub degree: usize,
    pub multiplicity: usize,
    /// Pin the factor (R for a pair) instead of drawing it at random.
    pub factor: Option<FpPoly>,
}

impl ShapePart {
    pub fn new(kind: FactorKind, degree: usize, multiplicity: usize) -> Self {
        ShapePart { kind, degree, multiplicity, factor: None }
    }

    pub fn pinned(kind: FactorKind, factor: FpPoly, multiplicity: usize) -> Self {
        ShapePart { kind, degree: factor.degree(), multiplicity, factor: Some(factor) }
    }

    pub fn total_degree(&self) -> usize {
        match self.kind {
            FactorKind::Pair => 2 * self.degree * self.multiplicity,
            _ => self.degree * self.multiplicity,
        }
    }
}

impl fmt::Display for ShapePart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            FactorKind::Q => "q",
            FactorKind::Pair => "pair",
            FactorKind::Even => "even",
        };
        write!(f, "{k}:{}:{}", self.degree, self.multiplicity)
    }
}

/// Parses "kind:degree:mult" parts joined by commas, e.g. "q:2:1,pair:1:1".
pub fn parse_shape(s: &str) -> Result<Vec<ShapePart>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|part| {
            let bits: Vec<&str> = part.trim().split(':').collect();
            let bad = || Error::InvalidInput(format!("bad shape part {part:?}; expected kind:degree:mult"));
            if bits.len() != 3 {
                return Err(bad());
            }
            let kind = match bits[0].to_ascii_lowercase().as_str() {
                "q" => FactorKind::Q,
                "pair" => FactorKind::Pair,
                "even" => FactorKind::Even,
                _ => return Err(bad()),
            };
            let degree = usize::from_str(bits[1]).map_err(|_| bad())?;
            let multiplicity = usize::from_str(bits[2]).map_err(|_| bad())?;
            if degree == 0 || multiplicity == 0 {
                return Err(bad());
            }
            Ok(ShapePart::new(kind, degree, multiplicity))
        })
        .collect()
}

/// All monic irreducibles of degree d with nonzero constant term.
pub fn irreducibles(p: u64, d: usize) -> Vec<FpPoly> {
    let mut out = Vec::new();
    let total = p.pow(d as u32);
    for k in 0..total {
        let mut c = Vec::with_capacity(d + 1);
        let mut x = k;
        for _ in 0..d {
            c.push(x % p);
            x /= p;
        }
        if c[0] == 0 {
            continue;
        }
        c.push(1);
        let f = FpPoly::from_reduced(p, c);
        if is_irreducible(&f) {
            out.push(f);
        }
    }
    out
}

/// Resolve a shape into concrete (factor, multiplicity) pairs.
fn choose_factors(p: u64, shape: &[ShapePart], rng: &mut ChaCha8Rng) -> Result<Vec<(FpPoly, usize)>> {
    let mut used: Vec<FpPoly> = Vec::new();
    let mut out = Vec::new();
    // pinned parts first so random draws avoid them
    let mut order: Vec<&ShapePart> = shape.iter().filter(|s| s.factor.is_some()).collect();
    order.extend(shape.iter().filter(|s| s.factor.is_none()));
    for part in order {
        let selfrec_wanted = part.kind != FactorKind::Pair;
        let f = match &part.factor {
            Some(f) => {
                if f.p() != p || !is_irreducible(f) || !f.is_monic() {
                    return Err(Error::ShapeInfeasible(format!("{f} is not a monic irreducible over F_{p}")));
                }
                if f.is_self_reciprocal()? != selfrec_wanted {
                    return Err(Error::ShapeInfeasible(format!("{f} has the wrong reciprocity for {}", part)));
                }
                f.clone()
            }
            None => {
                let mut cands: Vec<FpPoly> = irreducibles(p, part.degree)
                    .into_iter()
                    .filter(|f| f.is_self_reciprocal().unwrap_or(false) == selfrec_wanted)
                    .filter(|f| !used.contains(f))
                    .filter(|f| selfrec_wanted || !used.contains(&f.reciprocal().unwrap()))
                    .collect();
                cands.shuffle(rng);
                cands.into_iter().next().ok_or_else(|| {
                    Error::ShapeInfeasible(format!("no unused factor of kind {} over F_{p}", part))
                })?
            }
        };
        if used.contains(&f) {
            return Err(Error::ShapeInfeasible(format!("factor {f} used twice")));
        }
        match part.kind {
            FactorKind::Q => {
                if part.multiplicity % 2 == 0 {
                    return Err(Error::ShapeInfeasible(format!("{part}: Q needs odd multiplicity")));
                }
            }
            FactorKind::Even => {
                if part.multiplicity % 2 == 1 {
                    return Err(Error::ShapeInfeasible(format!("{part}: even part needs even multiplicity")));
                }
            }
            FactorKind::Pair => {}
        }
        used.push(f.clone());
        out.push((f.clone(), part.multiplicity));
        if part.kind == FactorKind::Pair {
            let rs = f.reciprocal()?;
            if used.contains(&rs) {
                return Err(Error::ShapeInfeasible(format!("factor {rs} used twice")));
            }
            used.push(rs.clone());
            out.push((rs, part.multiplicity));
        }
    }
    Ok(out)
}

/// Basis of symmetric G with M^T G M = G.
pub fn invariant_forms(m: &FpMatrix) -> Vec<FpMatrix> {
    let f = *m.field();
    let t = m.rows();
    let pairs: Vec<(usize, usize)> = (0..t).flat_map(|i| (i..t).map(move |j| (i, j))).collect();
    let mut cols = Vec::with_capacity(pairs.len());
    for &(i, j) in &pairs {
        let mut e = FpMatrix::zeros(&f, t, t);
        e[(i, j)] = 1;
        e[(j, i)] = 1;
        let d = m.transpose().mul(&e).mul(m).sub(&e);
        cols.push(pairs.iter().map(|&(a, b)| d[(a, b)]).collect::<Vec<u64>>());
    }
    let sys = FpMatrix::from_cols(&f, pairs.len(), &cols);
    sys.nullspace()
        .into_iter()
        .map(|v| {
            let mut g = FpMatrix::zeros(&f, t, t);
            for (k, &(i, j)) in pairs.iter().enumerate() {
                g[(i, j)] = v[k];
                g[(j, i)] = v[k];
            }
            g
        })
        .collect()
}

/// A random nondegenerate non-split invariant form for gbar, or ShapeInfeasible.
pub fn random_nonsplit_form(gbar: &FpMatrix, rng: &mut ChaCha8Rng) -> Result<FpMatrix> {
    let f = *gbar.field();
    let basis = invariant_forms(gbar);
    if basis.is_empty() {
        return Err(Error::ShapeInfeasible("no invariant symmetric form".into()));
    }
    let t = gbar.rows();
    for _ in 0..FORM_RETRY_BUDGET {
        let mut g = FpMatrix::zeros(&f, t, t);
        for b in &basis {
            g = g.add(&b.scale(&f.random(rng)));
        }
        if g.det() != 0 && t % 2 == 0 && !is_split_fp(&g)? {
            return Ok(g);
        }
    }
    Err(Error::ShapeInfeasible(format!(
        "no nondegenerate non-split invariant form in {FORM_RETRY_BUDGET} draws"
    )))
}

fn build_reduced(p: u64, factors: &[(FpPoly, usize)], rng: &mut ChaCha8Rng) -> Result<ReducedInstance> {
    let poly = factors.iter().fold(FpPoly::one(p), |acc, (f, m)| acc.mul(&f.pow(*m)));
    let gbar = companion(&poly);
    let form = random_nonsplit_form(&gbar, rng)?;
    let red = ReducedInstance::new(p, form, gbar, poly)?;
    let verdicts = validate_reduced(&red);
    if !all_passed(&verdicts) {
        return Err(Error::Internal(format!("generated instance fails validation: {verdicts:?}")));
    }
    Ok(red)
}

fn check_parity(shape: &[ShapePart]) -> Result<()> {
    let t: usize = shape.iter().map(|s| s.total_degree()).sum();
    if t == 0 || t % 2 == 1 {
        return Err(Error::ShapeInfeasible(format!("t = {t} would not be a positive even integer")));
    }
    Ok(())
}

/// Random reduced instance with exactly one odd self-reciprocal factor Q.
pub fn gen_reduced(p: u64, shape: &[ShapePart], seed: u64) -> Result<ReducedInstance> {
    PrimeField::new(p)?;
    let nq = shape.iter().filter(|s| s.kind == FactorKind::Q).count();
    if nq != 1 {
        return Err(Error::ShapeInfeasible(format!("shape needs exactly one Q part, found {nq}")));
    }
    check_parity(shape)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = choose_factors(p, shape, &mut rng)?;
    build_reduced(p, &factors, &mut rng)
}

/// Like `gen_reduced` but any number of Q parts (including none), so that
/// instances violating the nonemptiness criterion can be produced.
pub fn gen_reduced_relaxed(p: u64, shape: &[ShapePart], seed: u64) -> Result<ReducedInstance> {
    PrimeField::new(p)?;
    check_parity(shape)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = choose_factors(p, shape, &mut rng)?;
    build_reduced(p, &factors, &mut rng)
}

/// Conjugate gbar by a random invertible matrix, transporting the form.
pub fn conjugate_reduced(red: &ReducedInstance, seed: u64) -> ReducedInstance {
    let f = red.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = red.t;
    let a = loop {
        let mut a = FpMatrix::zeros(&f, t, t);
        for i in 0..t {
            for j in 0..t {
                a[(i, j)] = f.random(&mut rng);
            }
        }
        if a.det() != 0 {
            break a;
        }
    };
    let ainv = a.inverse().unwrap();
    // new coordinates y = A x: gbar' = A gbar A^-1, G' = A^-T G A^-1
    let gbar = a.mul(&red.gbar).mul(&ainv);
    let form = ainv.transpose().mul(&red.omega_gram).mul(&ainv);
    ReducedInstance { gbar, omega_gram: form, ..red.clone() }
}

fn palindromic(n: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    let mut c = vec![0i64; n + 1];
    c[0] = 1;
    c[n] = 1;
    for i in 1..=n / 2 {
        let x = rng.gen_range(-4..=4);
        c[i] = x;
        c[n - i] = x;
    }
    c
}

fn int_companion(chi: &[i64]) -> QMat {
    let n = chi.len() - 1;
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 1..n {
        m[i][i - 1] = BigRational::one();
    }
    for i in 0..n {
        m[i][n - 1] = q(-chi[i]);
    }
    m
}

/// Rational basis of symmetric G with C^T G C = G.
fn rational_invariant_forms(c: &QMat) -> Vec<QMat> {
    let n = c.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let ct = rational::transpose(c);
    let mut sys = vec![vec![BigRational::zero(); pairs.len()]; pairs.len()];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let mut e = vec![vec![BigRational::zero(); n]; n];
        e[i][j] = BigRational::one();
        e[j][i] = BigRational::one();
        let d = rational::mul(&rational::mul(&ct, &e), c);
        for (r, &(a, b)) in pairs.iter().enumerate() {
            sys[r][k] = &d[a][b] - &e[a][b];
        }
    }
    rational::nullspace(&sys, pairs.len())
        .into_iter()
        .map(|v| {
            let mut g = vec![vec![BigRational::zero(); n]; n];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                g[i][j] = v[k].clone();
                g[j][i] = v[k].clone();
            }
            g
        })
        .collect()
}

/// Random integer matrix of determinant +-1.
pub fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> QMat {
    let mut a = rational::identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let k = q(rng.gen_range(-2..=2));
        for c in 0..n {
            let x = &k * &a[j][c];
            a[i][c] += x;
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm.into_iter().map(|i| a[i].clone()).collect()
}

/// Change coordinates by an integral unimodular A: x -> A x.
pub fn conjugate_full(inst: &FullInstance, a: &QMat) -> Result<FullInstance> {
    let src = inst
        .source
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("conjugation needs rational source data".into()))?;
    let ainv = rational::inverse(a).ok_or_else(|| Error::InvalidInput("singular change of basis".into()))?;
    let gram = rational::mul(&rational::mul(&rational::transpose(&ainv), &src.gram), &ainv);
    let g = rational::mul(&rational::mul(a, &src.g), &ainv);
    let x = rational::mul_vec(a, &src.x);
    FullInstance::from_rationals(inst.p, inst.precision, RationalData { gram, g, x })
}

/// Upper bound on rejection-sampling rounds for `gen_full`.
pub const FULL_ATTEMPTS: usize = 20_000;

/// Random full instance of rank n whose reduction is valid (minuscule,
/// t >= 2, Omega_0 non-split), presented in a random integral basis.
pub fn gen_full(p: u64, n: usize, precision: u32, seed: u64) -> Result<FullInstance> {
    PrimeField::new(p)?;
    if n < 4 {
        return Err(Error::InvalidInput(format!("rank {n} < 4")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..FULL_ATTEMPTS {
        let chi: Vec<i64> = if n % 2 == 0 {
            palindromic(n, &mut rng)
        } else {
            // (T - 1) * palindromic of degree n - 1
            let pal = palindromic(n - 1, &mut rng);
            let mut c = vec![0i64; n + 1];
            for (i, &a) in pal.iter().enumerate() {
                c[i + 1] += a;
                c[i] -= a;
            }
            c
        };
        let c = int_companion(&chi);
        let forms = rational_invariant_forms(&c);
        if forms.is_empty() {
            continue;
        }
        let mut g = vec![vec![BigRational::zero(); n]; n];
        for b in &forms {
            let k = q(rng.gen_range(-3..=3));
            for i in 0..n {
                for j in 0..n {
                    g[i][j] += &k * &b[i][j];
                }
            }
        }
        let g00 = g[0][0].clone();
        if g00.is_zero() || rational::valuation(&g00, p) != 0 {
            continue;
        }
        for row in g.iter_mut() {
            for x in row.iter_mut() {
                *x = &*x / &g00;
            }
        }
        // x = e_1 makes the orbit basis standard, so T = G: cheap screen on det
        let d = rational::det(&g);
        if d.is_zero() {
            continue;
        }
        let vd = rational::valuation(&d, p);
        if vd < 2 || vd % 2 == 1 || vd as usize > n {
            continue;
        }
        if g.iter().flatten().any(|x| !x.is_zero() && rational::valuation(x, p) < 0) {
            continue;
        }
        let a = random_unimodular(n, &mut rng);
        let mut e1 = vec![BigRational::zero(); n];
        e1[0] = BigRational::one();
        let base = match FullInstance::from_rationals(p, precision, RationalData { gram: g, g: c, x: e1 }) {
            Ok(b) => b,
            Err(_) => continue,
        };
        let inst = conjugate_full(&base, &a)?;
        match reduce_instance(&inst) {
            Ok((red, _)) if red.t >= 2 => return Ok(inst),
            Ok(_) => continue,
            Err(Error::PrecisionExhausted(m)) => return Err(Error::PrecisionExhausted(m)),
            Err(_) => continue,
        }
    }
    Err(Error::ShapeInfeasible(format!("no valid full instance for p={p}, n={n} in {FULL_ATTEMPTS} draws")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::matrix_char_poly;

    #[test]
    fn known_instances() {
        let t2 = FpPoly::new(3, vec![1, 0, 1]).unwrap();
        let red = gen_reduced(3, &[ShapePart::pinned(FactorKind::Q, t2.clone(), 1)], 7).unwrap();
        assert_eq!(red.t, 2);
        assert_eq!(red.poly, t2);

        let r = FpPoly::new(3, vec![2, 1, 1]).unwrap();
        let red = gen_reduced(
            3,
            &[ShapePart::pinned(FactorKind::Q, t2.clone(), 1), ShapePart::pinned(FactorKind::Pair, r.clone(), 1)],
            11,
        )
        .unwrap();
        assert_eq!(red.t, 6);
        assert_eq!(red.poly, r.mul(&r.reciprocal().unwrap()).mul(&t2));

        let err = gen_reduced(5, &[ShapePart::pinned(FactorKind::Q, FpPoly::linear(5, -1), 1)], 1).unwrap_err();
        assert!(matches!(err, Error::ShapeInfeasible(_)));
    }

    #[test]
    fn forms_are_invariant() {
        for seed in 0..10 {
            let red = gen_reduced(5, &parse_shape("q:2:1,pair:1:1").unwrap(), seed).unwrap();
            let g = &red.gbar;
            assert_eq!(g.transpose().mul(&red.omega_gram).mul(g), red.omega_gram);
            assert_eq!(matrix_char_poly(g), red.poly);
        }
    }

    #[test]
    fn shape_parsing() {
        let s = parse_shape("q:2:3, pair:1:1,even:2:2").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[0].to_string(), "q:2:3");
        assert!(parse_shape("x:1:1").is_err());
    }
}
