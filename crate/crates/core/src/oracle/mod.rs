//! Brute-force verifiers for the closed forms.

pub mod dl;
pub mod fixed_points;
pub mod hilbert;
pub mod local_ring;
pub mod strata;

pub use dl::dl_fixed_count;
pub use fixed_points::{stratum_fixed_points, FixedPointData};
pub use hilbert::hilbert_symbol_bruteforce;
pub use local_ring::{gen_jordan, local_ring_length, local_ring_length_generic, JordanData};
pub use strata::{cyclic_generator, enumerate_strata, oracle_point_count, strata_identities, Stratum};

use serde::Serialize;

use crate::error::Result;
use crate::formula::IntersectionReport;
use crate::instance::{ReducedInstance, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DlCheck {
    pub exponents: Vec<usize>,
    pub t_prime: usize,
    pub count: usize,
}

/// What the oracles found and whether it matches the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRecord {
    pub divisors: usize,
    pub isotropic: usize,
    pub nonempty_strata: usize,
    pub point_count: u64,
    pub dl_checks: Vec<DlCheck>,
    pub local_lengths: Vec<usize>,
    pub identities: Vec<Verdict>,
    pub agrees: bool,
    pub disagreements: Vec<String>,
}

/// Run every applicable oracle on a reduced instance and compare with `report`.
pub fn run_oracles(red: &ReducedInstance, report: &IntersectionReport) -> Result<OracleRecord> {
    let strata = enumerate_strata(red)?;
    let count = oracle_point_count(&strata);
    let identities = strata_identities(red, &strata);
    let mut bad = Vec::new();
    if count != report.point_count {
        bad.push(format!("point count: formula {} vs oracle {count}", report.point_count));
    }
    if report.nonempty != (count > 0) {
        bad.push(format!("nonempty: formula {} vs oracle count {count}", report.nonempty));
    }
    let mut dl_checks = Vec::new();
    let mut lengths = Vec::new();
    for s in strata.iter().filter(|s| s.nonempty) {
        if let Some(n) = s.dl_count {
            if n != s.t_prime {
                bad.push(format!("Coxeter count {n} != t' = {} at {:?}", s.t_prime, s.exponents));
            }
            dl_checks.push(DlCheck { exponents: s.exponents.clone(), t_prime: s.t_prime, count: n });
        }
        if report.q.as_ref() != s.middle.as_ref() {
            bad.push(format!("stratum {:?} has middle {:?}, formula Q {:?}", s.exponents, s.middle, report.q));
        }
        for fp in stratum_fixed_points(red, s)? {
            if Some(fp.local_length) != report.c {
                bad.push(format!(
                    "local length {} at {:?}/{:?}, formula c {:?}",
                    fp.local_length, fp.divisor_exponents, fp.choice, report.c
                ));
            }
            if fp.jordan_c != fp.local_length {
                bad.push(format!("Jordan size {} vs local length {}", fp.jordan_c, fp.local_length));
            }
            lengths.push(fp.local_length);
        }
    }
    for v in identities.iter().filter(|v| !v.passed) {
        bad.push(format!("identity {} failed", v.name));
    }
    Ok(OracleRecord {
        divisors: strata.len(),
        isotropic: strata.iter().filter(|s| s.isotropic).count(),
        nonempty_strata: strata.iter().filter(|s| s.nonempty).count(),
        point_count: count,
        dl_checks,
        local_lengths: lengths,
        identities,
        agrees: bad.is_empty(),
        disagreements: bad,
    })
}
