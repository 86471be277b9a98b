//! Closed-form answers: nonemptiness, the point count, the multiplicity c
//! and the total intersection number, all read off the factorization of P.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{poly_factorize, FpPoly};
use crate::oracle::OracleRecord;

/// A non-self-reciprocal pair {R, R*}, keyed by the smaller member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorPair {
    pub r: FpPoly,
    pub r_star: FpPoly,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorClassification {
    pub p: u64,
    /// Self-reciprocal irreducible factors of odd multiplicity.
    pub q_candidates: Vec<(FpPoly, usize)>,
    /// Self-reciprocal irreducible factors of even multiplicity.
    pub even_selfrec: Vec<(FpPoly, usize)>,
    pub pairs: Vec<FactorPair>,
}

impl FactorClassification {
    pub fn degree(&self) -> usize {
        let q: usize = self
            .q_candidates
            .iter()
            .chain(&self.even_selfrec)
            .map(|(f, m)| f.degree() * m)
            .sum();
        let pr: usize = self.pairs.iter().map(|x| 2 * x.r.degree() * x.multiplicity).sum();
        q + pr
    }
}

fn check_input(p: &FpPoly) -> Result<()> {
    if !p.is_monic() || p.degree() == 0 {
        return Err(Error::NonMonicInput);
    }
    if !p.is_self_reciprocal()? {
        return Err(Error::NotSelfReciprocal);
    }
    Ok(())
}

pub fn classify_factors(poly: &FpPoly) -> Result<FactorClassification> {
    check_input(poly)?;
    let fl = poly_factorize(poly)?;
    let mut out = FactorClassification {
        p: poly.p(),
        q_candidates: Vec::new(),
        even_selfrec: Vec::new(),
        pairs: Vec::new(),
    };
    for (f, m) in &fl.factors {
        let fs = f.reciprocal()?;
        if &fs == f {
            if m % 2 == 1 {
                out.q_candidates.push((f.clone(), *m));
            } else {
                out.even_selfrec.push((f.clone(), *m));
            }
        } else if f < &fs {
            let ms = fl.multiplicity(&fs);
            if ms != *m {
                return Err(Error::Internal(format!(
                    "m({f}) = {m} but m({fs}) = {ms} in a self-reciprocal polynomial"
                )));
            }
            out.pairs.push(FactorPair { r: f.clone(), r_star: fs, multiplicity: *m });
        }
    }
    if out.degree() != poly.degree() {
        return Err(Error::Internal(format!(
            "degree accounting gives {} for deg P = {}",
            out.degree(),
            poly.degree()
        )));
    }
    Ok(out)
}

/// Q together with m(Q), present iff exactly one odd self-reciprocal factor.
pub fn nonempty_q(cls: &FactorClassification) -> Option<(FpPoly, usize)> {
    match cls.q_candidates.as_slice() {
        [one] => Some(one.clone()),
        _ => None,
    }
}

/// deg Q times (1 + m(R)) once per pair {R, R*}; zero when Q is absent.
pub fn point_count(cls: &FactorClassification) -> u64 {
    match nonempty_q(cls) {
        None => 0,
        Some((q, _)) => {
            let pairs: u64 = cls.pairs.iter().map(|x| 1 + x.multiplicity as u64).product();
            q.degree() as u64 * pairs
        }
    }
}

/// The same product taken over every non-self-reciprocal factor, so that
/// each pair contributes (1 + m(R))^2.
pub fn point_count_factor_reading(cls: &FactorClassification) -> u64 {
    match nonempty_q(cls) {
        None => 0,
        Some((q, _)) => {
            let pairs: u64 = cls.pairs.iter().map(|x| (1 + x.multiplicity as u64).pow(2)).product();
            q.degree() as u64 * pairs
        }
    }
}

pub fn length_c(cls: &FactorClassification) -> Option<usize> {
    nonempty_q(cls).map(|(_, m)| (m + 1) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub p: u64,
    #[serde(rename = "P")]
    pub poly: FpPoly,
    /// t_Lambda = deg P.
    pub t: usize,
    pub nonempty: bool,
    #[serde(rename = "Q")]
    pub q: Option<FpPoly>,
    #[serde(rename = "mQ")]
    pub m_q: Option<usize>,
    pub point_count: u64,
    /// Present only when the per-factor product differs from `point_count`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_count_factor_reading: Option<u64>,
    pub c: Option<usize>,
    pub total: Option<u64>,
    pub p_gt_c: bool,
    pub classification: FactorClassification,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
}

pub fn intersection_number(poly: &FpPoly) -> Result<IntersectionReport> {
    let cls = classify_factors(poly)?;
    let p = poly.p();
    let q = nonempty_q(&cls);
    let count = point_count(&cls);
    let alt = point_count_factor_reading(&cls);
    let c = length_c(&cls);
    let mut notes = Vec::new();
    if let Some((_, m)) = &q {
        if m % 2 != 1 {
            return Err(Error::Internal(format!("m(Q) = {m} is even")));
        }
        if 2 * c.unwrap() - 1 > poly.degree() {
            return Err(Error::Internal("2c - 1 exceeds t".into()));
        }
    } else {
        notes.push(format!(
            "{} odd self-reciprocal factors; the intersection is empty",
            cls.q_candidates.len()
        ));
    }
    let p_gt_c = c.is_some_and(|c| p > c as u64);
    if let Some(c) = c {
        if !p_gt_c {
            notes.push(format!("p = {p} <= c = {c}: multiplicity k[X]/X^c not certified"));
        }
    }
    if alt != count {
        notes.push(format!(
            "per-pair product gives {count}; taking the product over each factor separately gives {alt}"
        ));
    }
    Ok(IntersectionReport {
        p,
        poly: poly.clone(),
        t: poly.degree(),
        nonempty: q.is_some(),
        q: q.as_ref().map(|x| x.0.clone()),
        m_q: q.as_ref().map(|x| x.1),
        point_count: count,
        point_count_factor_reading: (alt != count).then_some(alt),
        c,
        total: c.map(|c| count * c as u64),
        p_gt_c,
        classification: cls,
        notes,
        oracle: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn single_q() {
        let r = intersection_number(&poly(3, &[1, 0, 1])).unwrap();
        assert!(r.nonempty);
        assert_eq!((r.point_count, r.c, r.total, r.p_gt_c), (2, Some(1), Some(2), true));
        assert_eq!(r.point_count_factor_reading, None);
    }

    #[test]
    fn q_with_pair() {
        let a = poly(3, &[2, 1, 1]);
        let b = poly(3, &[2, 2, 1]);
        let q = poly(3, &[1, 0, 1]);
        let cls = classify_factors(&a.mul(&b).mul(&q)).unwrap();
        assert_eq!(cls.pairs.len(), 1);
        assert_eq!(cls.pairs[0].multiplicity, 1);
        assert_eq!(cls.q_candidates, vec![(q, 1)]);
        assert_eq!(point_count(&cls), 4);
        assert_eq!(point_count_factor_reading(&cls), 8);
    }

    #[test]
    fn even_selfrec_bucket() {
        let p = poly(3, &[-1, 1]).pow(2).mul(&poly(3, &[1, 0, 1]));
        let cls = classify_factors(&p).unwrap();
        assert_eq!(cls.even_selfrec, vec![(poly(3, &[-1, 1]), 2)]);
        assert_eq!(nonempty_q(&cls).unwrap().0, poly(3, &[1, 0, 1]));
        assert_eq!(point_count(&cls), 2);
    }

    #[test]
    fn t2_plus_1_splits_over_f5() {
        // T^2 + 1 = (T - 2)(T - 3) over F_5, and 2 * 3 = 1: a reciprocal pair
        let p = poly(5, &[-1, 1]).pow(2).mul(&poly(5, &[1, 0, 1]));
        let cls = classify_factors(&p).unwrap();
        assert_eq!(cls.even_selfrec, vec![(poly(5, &[-1, 1]), 2)]);
        assert!(cls.q_candidates.is_empty());
        assert_eq!(cls.pairs.len(), 1);
        assert_eq!(nonempty_q(&cls), None);
    }

    #[test]
    fn three_candidates_is_empty() {
        let p = poly(3, &[-1, 1]).mul(&poly(3, &[1, 1])).mul(&poly(3, &[1, 0, 1]));
        let r = intersection_number(&p).unwrap();
        assert!(!r.nonempty);
        assert_eq!(r.point_count, 0);
        assert_eq!(r.total, None);
    }

    #[test]
    fn cubed_q() {
        let r = intersection_number(&poly(3, &[1, 0, 1]).pow(3)).unwrap();
        assert_eq!((r.m_q, r.c, r.point_count, r.total), (Some(3), Some(2), 2, Some(4)));
        assert!(r.p_gt_c);
    }

    #[test]
    fn rejects_non_selfreciprocal() {
        assert_eq!(classify_factors(&poly(3, &[2, 1, 1])), Err(Error::NotSelfReciprocal));
    }
}
