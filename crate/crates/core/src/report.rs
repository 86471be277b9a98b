//! End-to-end analysis of one instance and its JSON / text rendering.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::formula::{intersection_number, IntersectionReport};
use crate::instance::json::{reduced_to_json, Instance};
use crate::instance::{all_passed, reduce_instance, validate_reduced, DerivationLog, ReducedInstance, Verdict};
use crate::oracle::run_oracles;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub version: &'static str,
    pub input_sha256: String,
    pub seed: u64,
    pub precision: Option<u32>,
    pub layer: &'static str,
    pub reduced: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivation: Option<DerivationLog>,
    pub verdicts: Vec<Verdict>,
    pub report: IntersectionReport,
}

impl Analysis {
    /// True when oracles ran and contradict the closed form.
    pub fn disagrees(&self) -> bool {
        self.report.oracle.as_ref().is_some_and(|o| !o.agrees)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let r = &self.report;
        let mut s = String::new();
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        writeln!(s, "layer        {}", self.layer).unwrap();
        writeln!(s, "input sha256 {}", self.input_sha256).unwrap();
        writeln!(s, "seed         {}", self.seed).unwrap();
        if let Some(n) = self.precision {
            writeln!(s, "precision    {n}").unwrap();
        }
        writeln!(s, "p            {}", r.p).unwrap();
        writeln!(s, "P(T)         {}", r.poly).unwrap();
        writeln!(s, "t_Lambda     {}", r.t).unwrap();
        writeln!(s, "nonempty     {}", r.nonempty).unwrap();
        writeln!(s, "Q(T)         {}", opt(r.q.as_ref().map(|q| q.to_string()))).unwrap();
        writeln!(s, "m(Q)         {}", opt(r.m_q.map(|m| m.to_string()))).unwrap();
        writeln!(s, "points       {}", r.point_count).unwrap();
        if let Some(alt) = r.point_count_factor_reading {
            writeln!(s, "points (per factor) {alt}").unwrap();
        }
        writeln!(s, "c            {}", opt(r.c.map(|c| c.to_string()))).unwrap();
        writeln!(s, "total        {}", opt(r.total.map(|c| c.to_string()))).unwrap();
        writeln!(s, "p > c        {}", r.p_gt_c).unwrap();
        for n in &r.notes {
            writeln!(s, "note: {n}").unwrap();
        }
        if let Some(d) = &self.derivation {
            writeln!(s, "Cartan invariants {:?}", d.cartan_invariants).unwrap();
            for w in &d.warnings {
                writeln!(s, "warning: {w}").unwrap();
            }
        }
        if let Some(o) = &r.oracle {
            writeln!(
                s,
                "oracle       points {}, strata {}/{} isotropic, {} nonempty, local lengths {:?}: {}",
                o.point_count,
                o.isotropic,
                o.divisors,
                o.nonempty_strata,
                o.local_lengths,
                if o.agrees { "agrees" } else { "DISAGREES" }
            )
            .unwrap();
            for d in &o.disagreements {
                writeln!(s, "disagreement: {d}").unwrap();
            }
        }
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Validated reduced instance, or the failing verdicts as an error.
pub fn checked(red: &ReducedInstance) -> Result<Vec<Verdict>> {
    let v = validate_reduced(red);
    if !all_passed(&v) {
        let names: Vec<&str> = v.iter().filter(|x| !x.passed).map(|x| x.name).collect();
        return Err(Error::InvalidInput(format!("reduced instance fails: {}", names.join(", "))));
    }
    Ok(v)
}

pub fn analyze_reduced(red: &ReducedInstance, with_oracles: bool) -> Result<IntersectionReport> {
    let mut report = intersection_number(&red.poly)?;
    if with_oracles {
        report.oracle = Some(run_oracles(red, &report)?);
    }
    Ok(report)
}

pub fn analyze(input: &str, inst: &Instance, seed: u64, with_oracles: bool) -> Result<Analysis> {
    let (red, derivation, precision, layer) = match inst {
        Instance::Full(full) => {
            let (red, log) = reduce_instance(full)?;
            (red, Some(log), Some(full.precision), "full")
        }
        Instance::Reduced(red) => (red.clone(), None, None, "reduced"),
    };
    let verdicts = checked(&red)?;
    let report = analyze_reduced(&red, with_oracles)?;
    Ok(Analysis {
        version: VERSION,
        input_sha256: sha256_hex(input.as_bytes()),
        seed,
        precision,
        layer,
        reduced: reduced_to_json(&red),
        derivation,
        verdicts,
        report,
    })
}
