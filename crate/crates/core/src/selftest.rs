//! The acceptance grid, shared by `rzint selftest` and the acceptance tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

use crate::error::Result;
use crate::finite::PrimeField;
use crate::formula::intersection_number;
use crate::instance::gen::{conjugate_full, conjugate_reduced, gen_reduced, gen_reduced_relaxed, random_unimodular};
use crate::instance::{all_passed, fundamental_matrix, gen_full, parse_shape, reduce_instance, validate_reduced};
use crate::instance::{ReducedInstance, Verdict};
use crate::oracle::{gen_jordan, hilbert_symbol_bruteforce, local_ring_length, run_oracles, OracleRecord};
use crate::padic::{hasse_invariant, hilbert_symbol, smith_invariants, PadicMatrix, PadicScalar, DEFAULT_PRECISION};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub failures: Vec<String>,
    pub millis: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {} ({}): {} [{} ms]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.millis
        )
    }
}

pub const PRIMES: [u64; 3] = [3, 5, 7];

/// Shapes for the reduced grid: (shape, must satisfy the criterion).
///
/// T-1 and T+1 never carry even multiplicity (a cyclic isometry has a single
/// Jordan block per eigenvalue, and even-size blocks for +-1 come in pairs),
/// so even self-reciprocal parts have degree >= 2. A lone pair or two Q's of
/// degree >= 2 always give a split form, so empty cases use T-1 and T+1.
pub const REDUCED_SHAPES: &[(&str, bool)] = &[
    ("q:2:1", true),
    ("q:4:1", true),
    ("q:6:1", true),
    ("q:2:3", true),
    ("q:2:1,pair:1:1", true),
    ("q:2:1,pair:2:1", true),
    ("q:2:1,pair:1:2", true),
    ("q:4:1,pair:1:1", true),
    ("q:2:1,pair:1:1,pair:1:1", true),
    ("q:2:1,even:2:2", true),
    ("q:1:1,q:1:1", false),
    ("q:1:1,q:1:3", false),
    ("q:1:1,q:1:1,q:2:1", false),
    ("q:1:3,q:1:1,q:2:1", false),
    ("q:1:1,q:1:1,pair:1:1", false),
    ("q:1:1,q:1:1,pair:2:1", false),
    ("q:1:1,q:1:1,even:2:2", false),
];

pub const SEEDS_PER_SHAPE: u64 = 6;

#[derive(Clone, Debug)]
pub struct GridInstance {
    pub shape: &'static str,
    pub seed: u64,
    pub red: ReducedInstance,
}

/// All generable instances of the reduced grid, each randomly conjugated
/// away from companion form.
pub fn reduced_grid(base_seed: u64) -> Vec<GridInstance> {
    let mut out = Vec::new();
    for &p in &PRIMES {
        for (idx, &(shape, strict)) in REDUCED_SHAPES.iter().enumerate() {
            let parts = parse_shape(shape).expect("grid shapes parse");
            if parts.iter().map(|s| s.total_degree()).sum::<usize>() > 6 {
                continue;
            }
            for k in 0..SEEDS_PER_SHAPE {
                let seed = (base_seed ^ (p << 40) ^ ((idx as u64) << 20) ^ k).wrapping_mul(0x9e37_79b9_7f4a_7c15);
                let made = if strict { gen_reduced(p, &parts, seed) } else { gen_reduced_relaxed(p, &parts, seed) };
                if let Ok(red) = made {
                    out.push(GridInstance { shape, seed, red: conjugate_reduced(&red, seed ^ 1) });
                }
            }
        }
    }
    out
}

pub struct GridRun {
    pub instances: Vec<GridInstance>,
    pub records: Vec<Result<(crate::formula::IntersectionReport, OracleRecord)>>,
    pub millis: u128,
}

pub fn run_reduced_grid(base_seed: u64) -> GridRun {
    let start = Instant::now();
    let instances = reduced_grid(base_seed);
    let records = instances
        .iter()
        .map(|g| {
            let rep = intersection_number(&g.red.poly)?;
            let orc = run_oracles(&g.red, &rep)?;
            Ok((rep, orc))
        })
        .collect();
    GridRun { instances, records, millis: start.elapsed().as_millis() }
}

fn label(g: &GridInstance) -> String {
    format!("p={} shape={} seed={}", g.red.p, g.shape, g.seed)
}

pub fn criterion1(run: &GridRun) -> CriterionResult {
    let mut failures = Vec::new();
    let mut primes = std::collections::BTreeSet::new();
    let mut ts = std::collections::BTreeSet::new();
    let (mut nonempty, mut empty, mut differ) = (0, 0, 0);
    let mut mq = std::collections::BTreeSet::new();
    let mut kinds = std::collections::BTreeSet::new();
    for (g, r) in run.instances.iter().zip(&run.records) {
        primes.insert(g.red.p);
        ts.insert(g.red.t);
        match r {
            Err(e) => failures.push(format!("{}: {e}", label(g))),
            Ok((rep, orc)) => {
                if rep.point_count != orc.point_count {
                    failures.push(format!("{}: formula {} oracle {}", label(g), rep.point_count, orc.point_count));
                }
                if rep.nonempty != (orc.point_count > 0) {
                    failures.push(format!("{}: nonemptiness disagrees", label(g)));
                }
                if rep.nonempty {
                    nonempty += 1;
                    mq.insert(rep.m_q.unwrap());
                    let cls = &rep.classification;
                    if !cls.pairs.is_empty() {
                        kinds.insert("Q+pair");
                    }
                    if !cls.even_selfrec.is_empty() {
                        kinds.insert("Q+even");
                    }
                    if cls.pairs.is_empty() && cls.even_selfrec.is_empty() {
                        kinds.insert("Q alone");
                    }
                } else {
                    empty += 1;
                }
                if rep.point_count_factor_reading.is_some() {
                    differ += 1;
                }
            }
        }
    }
    let n = run.instances.len();
    if n < 200 {
        failures.push(format!("only {n} instances generated"));
    }
    if primes.len() < 3 || !ts.contains(&2) || !ts.contains(&4) || !ts.contains(&6) {
        failures.push(format!("grid coverage primes {primes:?} t {ts:?}"));
    }
    if !mq.contains(&1) || !mq.contains(&3) {
        failures.push(format!("m(Q) coverage {mq:?}"));
    }
    if kinds.len() < 3 {
        failures.push(format!("shape coverage {kinds:?}"));
    }
    if run.millis >= 60_000 {
        failures.push(format!("grid took {} ms", run.millis));
    }
    CriterionResult {
        id: 1,
        name: "count equivalence",
        passed: failures.is_empty(),
        detail: format!(
            "{n} instances ({nonempty} nonempty, {empty} empty), p {primes:?}, t {ts:?}, m(Q) {mq:?}, {kinds:?}; \
             per-factor reading differs on {differ}"
        ),
        failures,
        millis: run.millis,
    }
}

pub fn criterion2(run: &GridRun) -> CriterionResult {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (g, r) in run.instances.iter().zip(&run.records) {
        let Ok((_, orc)) = r else { continue };
        let expected = orc.nonempty_strata;
        if orc.dl_checks.len() != expected {
            failures.push(format!("{}: {} of {expected} strata counted", label(g), orc.dl_checks.len()));
        }
        for c in &orc.dl_checks {
            checked += 1;
            if c.count != c.t_prime {
                failures.push(format!("{}: Coxeter count {} for t' = {}", label(g), c.count, c.t_prime));
            }
        }
    }
    if checked == 0 {
        failures.push("no nonempty strata".into());
    }
    CriterionResult {
        id: 2,
        name: "Coxeter fixed-point count",
        passed: failures.is_empty(),
        detail: format!("{checked} nonempty strata checked"),
        failures,
        millis: start.elapsed().as_millis(),
    }
}

pub const JORDAN_PRIMES: [u64; 3] = [5, 7, 11];
pub const JORDAN_SEEDS: u64 = 20;

pub fn criterion3(run: &GridRun, full: &FullGrid) -> CriterionResult {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut jordan = 0;
    for c in 1..=4usize {
        for d in c..=5 {
            for &p in &JORDAN_PRIMES {
                if p <= c as u64 {
                    continue;
                }
                for s in 0..JORDAN_SEEDS {
                    let seed = (c as u64) << 48 | (d as u64) << 32 | p << 16 | s;
                    jordan += 1;
                    match gen_jordan(c, d, p, seed).and_then(|j| local_ring_length(&j)) {
                        Ok(l) if l == c => {}
                        Ok(l) => failures.push(format!("c={c} d={d} p={p} seed={s}: length {l}")),
                        Err(e) => failures.push(format!("c={c} d={d} p={p} seed={s}: {e}")),
                    }
                }
            }
        }
    }
    // fixed points of generated reduced instances: length from the point's own Jordan data
    let mut points = 0;
    for (g, r) in run.instances.iter().zip(&run.records) {
        let Ok((rep, orc)) = r else { continue };
        for &l in &orc.local_lengths {
            points += 1;
            if Some(l) != rep.c {
                failures.push(format!("{}: local length {l} vs c {:?}", label(g), rep.c));
            }
        }
    }
    let mut full_checked = 0;
    for item in &full.items {
        let Ok(item) = item else { continue };
        let rep = &item.report;
        if let (Some(m), Some(c)) = (rep.m_q, rep.c) {
            full_checked += 1;
            if c != (m + 1) / 2 || c < 1 || 2 * c - 1 > rep.t {
                failures.push(format!("full p={} n={}: m(Q)={m}, c={c}, t={}", item.p, item.n, rep.t));
            }
        }
    }
    CriterionResult {
        id: 3,
        name: "multiplicity",
        passed: failures.is_empty(),
        detail: format!(
            "{jordan} Jordan data, {points} fixed points of reduced instances, {full_checked} nonempty full instances"
        ),
        failures,
        millis: start.elapsed().as_millis(),
    }
}

pub struct FullItem {
    pub p: u64,
    pub n: usize,
    pub seed: u64,
    pub report: crate::formula::IntersectionReport,
    pub conjugated_report: crate::formula::IntersectionReport,
    pub verdicts: Vec<Verdict>,
    pub smith_ok: bool,
    pub hasse: Option<i8>,
}

pub struct FullGrid {
    pub items: Vec<Result<FullItem>>,
    pub millis: u128,
}

pub const FULL_PER_CELL: u64 = 4;

pub fn run_full_grid(base_seed: u64) -> FullGrid {
    let start = Instant::now();
    let mut items = Vec::new();
    for &p in &PRIMES {
        for n in [4usize, 5] {
            for k in 0..FULL_PER_CELL {
                let seed = base_seed.wrapping_add(p * 1000 + n as u64 * 100 + k);
                items.push(full_item(p, n, seed));
            }
        }
    }
    FullGrid { items, millis: start.elapsed().as_millis() }
}

fn full_item(p: u64, n: usize, seed: u64) -> Result<FullItem> {
    let inst = gen_full(p, n, DEFAULT_PRECISION, seed)?;
    let (red, log) = reduce_instance(&inst)?;
    let smith = smith_invariants(&fundamental_matrix(&inst)?)?;
    let smith_ok = smith.reconstruction_holds() && smith.transforms_unimodular();
    let report = intersection_number(&red.poly)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
    let a = random_unimodular(n, &mut rng);
    let other = conjugate_full(&inst, &a)?;
    let (red2, _) = reduce_instance(&other)?;
    let conjugated_report = intersection_number(&red2.poly)?;
    let mut verdicts = validate_reduced(&red);
    verdicts.extend(validate_reduced(&red2).into_iter().filter(|v| !v.passed));
    Ok(FullItem { p, n, seed, report, conjugated_report, verdicts, smith_ok, hasse: log.hasse_invariant })
}

pub fn criterion4(full: &FullGrid) -> CriterionResult {
    let mut failures = Vec::new();
    let mut ok = 0;
    for item in &full.items {
        match item {
            Err(e) => failures.push(format!("full instance: {e}")),
            Ok(it) => {
                let tag = format!("p={} n={} seed={}", it.p, it.n, it.seed);
                if !all_passed(&it.verdicts) {
                    failures.push(format!("{tag}: reduction fails validation"));
                } else if !it.smith_ok {
                    failures.push(format!("{tag}: Smith reconstruction"));
                } else if it.report != it.conjugated_report {
                    failures.push(format!("{tag}: report changes under change of basis"));
                } else {
                    ok += 1;
                }
            }
        }
    }
    if ok < 20 {
        failures.push(format!("only {ok} full instances passed"));
    }
    CriterionResult {
        id: 4,
        name: "pipeline integrity",
        passed: failures.is_empty(),
        detail: format!("{ok}/{} full instances (n = 4, 5)", full.items.len()),
        failures,
        millis: full.millis,
    }
}

fn nonresidue(p: u64) -> i64 {
    let f = PrimeField::new(p).unwrap();
    (2..p).find(|&a| f.legendre(a) == -1).unwrap() as i64
}

pub const HASSE_TRIALS: usize = 30;

pub fn criterion5(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut pairs = 0;
    let mut congruences = 0;
    for &p in &PRIMES {
        let e = nonresidue(p);
        let pi = p as i64;
        let classes = [1, e, pi, e * pi];
        let sc = |x: i64| PadicScalar::from_i64(x, p, 12);
        for &a in &classes {
            for &b in &classes {
                pairs += 1;
                let tame = hilbert_symbol(&sc(a), &sc(b));
                let brute = hilbert_symbol_bruteforce(&sc(a), &sc(b));
                if tame.is_err() || tame != brute {
                    failures.push(format!("p={p} ({a},{b}): tame {tame:?} brute {brute:?}"));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
        let mut done = 0;
        while done < HASSE_TRIALS {
            let n = rng.gen_range(2..=4);
            let mut g = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in i..n {
                    let x = rng.gen_range(-2 * pi..=2 * pi);
                    g[i][j] = x;
                    g[j][i] = x;
                }
            }
            let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-pi..=pi)).collect()).collect();
            let (Ok(gm), Ok(am)) = (
                PadicMatrix::from_i64(p, DEFAULT_PRECISION, &g),
                PadicMatrix::from_i64(p, DEFAULT_PRECISION, &a),
            ) else {
                continue;
            };
            let nonzero = |m: &PadicMatrix| m.det().map(|d| !d.is_zero()).unwrap_or(false);
            if !nonzero(&gm) || !nonzero(&am) {
                continue;
            }
            let moved = am.transpose().mul(&gm).and_then(|x| x.mul(&am));
            let h1 = hasse_invariant(&gm);
            let h2 = moved.and_then(|m| hasse_invariant(&m));
            done += 1;
            congruences += 1;
            if h1.is_err() || h1 != h2 {
                failures.push(format!("p={p} gram {g:?} A {a:?}: {h1:?} vs {h2:?}"));
            }
        }
    }
    CriterionResult {
        id: 5,
        name: "form invariants",
        passed: failures.is_empty(),
        detail: format!("{pairs} square-class pairs, {congruences} congruences"),
        failures,
        millis: start.elapsed().as_millis(),
    }
}

pub fn criterion6(run: &GridRun, full: &FullGrid) -> CriterionResult {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut n = 0;
    for (g, r) in run.instances.iter().zip(&run.records) {
        n += 1;
        let v = validate_reduced(&g.red);
        if !all_passed(&v) {
            failures.push(format!("{}: {:?}", label(g), v.iter().filter(|x| !x.passed).map(|x| x.name).collect::<Vec<_>>()));
        }
        if let Ok((_, orc)) = r {
            for v in orc.identities.iter().filter(|v| !v.passed) {
                failures.push(format!("{}: stratum identity {}", label(g), v.name));
            }
        }
    }
    for it in full.items.iter().flatten() {
        n += 1;
        if !all_passed(&it.verdicts) {
            failures.push(format!("full p={} n={}: validation", it.p, it.n));
        }
    }
    CriterionResult {
        id: 6,
        name: "structural guards",
        passed: failures.is_empty(),
        detail: format!("{n} validated instances"),
        failures,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    let grid = run_reduced_grid(seed);
    let full = run_full_grid(seed);
    vec![
        criterion1(&grid),
        criterion2(&grid),
        criterion3(&grid, &full),
        criterion4(&full),
        criterion5(seed),
        criterion6(&grid, &full),
    ]
}
