//! The desk-scale verification matrix: criteria 1–11, each a deterministic
//! function of the seed. Criterion 12 (reproducibility) is a property of
//! `run_suite` itself and is checked by running it twice.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::addpoly::{fq_vectors, SubspaceBasis};
use crate::error::Result;
use crate::etale;
use crate::forms::{gamma_prediction, pagot_gamma, LqSpace};
use crate::gf::{build_field, FieldCtx, Gf};
use crate::moore;
use crate::pairing::{PairingContext, Which};
use crate::symid::{self, trial_rng, Config, Identity, Mode, Params, VerificationReport};

pub const SCHEMA: &str = "moore-verify/1";
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    /// Cases examined and how many failed.
    pub cases: u64,
    pub failures: u64,
    pub detail: String,
    /// Campaigns run for symbolic identities, in a fixed order.
    pub reports: Vec<VerificationReport>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    /// JSON with every `elapsed_ms` removed.
    pub fn stable_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        strip_elapsed(&mut v);
        v
    }
}

pub fn strip_elapsed(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_elapsed);
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(strip_elapsed),
        _ => {}
    }
}

fn result(id: u32, name: &str, cases: u64, failures: u64, detail: String, reports: Vec<VerificationReport>, start: Instant) -> CriterionResult {
    let passed = failures == 0 && cases > 0 && reports.iter().all(|r| r.passed());
    CriterionResult {
        id,
        name: name.into(),
        passed,
        cases,
        failures,
        detail,
        reports,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Every n-tuple over k, as index vectors into `elements()`.
fn all_tuples(k: &FieldCtx, n: usize) -> Vec<Vec<Gf>> {
    let order = k.order() as usize;
    (0..order.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let x = Gf((idx % order) as u32);
                    idx /= order;
                    x
                })
                .collect()
        })
        .collect()
}

/// Independence by brute force: no nonzero ε ∈ F_q^n has Σ ε_i a_i = 0.
fn independent_by_enumeration(k: &FieldCtx, a: &[Gf]) -> bool {
    fq_vectors(k, a.len())
        .into_iter()
        .skip(1)
        .all(|e| !k.sum(a.iter().zip(&e).map(|(&x, &c)| k.mul(x, c))).is_zero())
}

/// Ordered F_q-bases of every n-dimensional subspace of k.
fn all_bases(k: &FieldCtx, n: usize) -> Vec<Vec<Gf>> {
    all_tuples(k, n).into_iter().filter(|a| moore::is_fq_independent(k, a)).collect()
}

fn random_bases(k: &FieldCtx, n: usize, count: usize, seed: u64, stream: u64) -> Vec<Vec<Gf>> {
    let order = k.order();
    (0..count)
        .map(|i| {
            let mut rng = trial_rng(seed ^ stream, i as u64);
            loop {
                let a: Vec<Gf> = (0..n).map(|_| Gf(rng.gen_range(0..order))).collect();
                if moore::is_fq_independent(k, &a) {
                    break a;
                }
            }
        })
        .collect()
}

pub fn criterion_1(seed: u64) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut cases = 0u64;
    let mut bad = 0u64;
    for t in [2u32, 3] {
        let k = build_field(2, 1, t)?;
        for n in 1..=3 {
            let tuples = all_tuples(&k, n);
            cases += tuples.len() as u64;
            bad += tuples.par_iter().filter(|a| moore::moore_det(&k, a) != moore::moore_det_product(&k, a)).count() as u64;
        }
    }
    for (p, t, stream) in [(2u64, 10u32, 1u64), (3, 6, 2)] {
        let k = build_field(p, 1, t)?;
        let order = k.order();
        let mismatches = (0..1000u64)
            .into_par_iter()
            .filter(|&i| {
                let mut rng = trial_rng(seed ^ (stream << 32), i);
                let n = rng.gen_range(1..=4usize);
                let a: Vec<Gf> = (0..n).map(|_| Gf(rng.gen_range(0..order))).collect();
                moore::moore_det(&k, &a) != moore::moore_det_product(&k, &a)
            })
            .count();
        cases += 1000;
        bad += mismatches as u64;
    }
    Ok(result(1, "Moore determinant: elimination vs product", cases, bad, format!("{bad} mismatches"), vec![], start))
}

pub fn criterion_2() -> Result<CriterionResult> {
    let start = Instant::now();
    let k = build_field(2, 1, 4)?;
    let mut cases = 0u64;
    let mut bad = 0u64;
    for n in 1..=3 {
        let tuples = all_tuples(&k, n);
        cases += tuples.len() as u64;
        bad += tuples
            .par_iter()
            .filter(|a| {
                let indep = independent_by_enumeration(&k, a);
                let det = !moore::moore_det(&k, a).is_zero();
                let cof = !moore::moore_det(&k, &moore::minors(&k, a, true)).is_zero();
                indep != det || (n >= 2 && det != cof)
            })
            .count() as u64;
    }
    Ok(result(2, "independence <=> Delta != 0 <=> Delta(cofactors) != 0", cases, bad, format!("{bad} mismatches over F_16"), vec![], start))
}

fn campaigns(list: &[(Identity, usize, usize, u64, Mode, usize)], seed: u64) -> Result<Vec<VerificationReport>> {
    list.iter()
        .map(|&(id, n, m, q, mode, trials)| symid::verify(id, Params::new(n, m, q)?, mode, trials, seed, Config::default()))
        .collect()
}

fn symbolic_criterion(id: u32, name: &str, list: &[(Identity, usize, usize, u64, Mode, usize)], seed: u64) -> Result<CriterionResult> {
    let start = Instant::now();
    let reports = campaigns(list, seed)?;
    let failures: u64 = reports.iter().map(|r| r.failures as u64).sum();
    let detail = reports
        .iter()
        .map(|r| {
            format!(
                "{}({},{},{}) {:?}: {}/{}",
                r.identity_id, r.params.n, r.params.m, r.params.q, r.mode, r.trials - r.failures.min(r.trials), r.trials
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    Ok(result(id, name, reports.len() as u64, failures, detail, reports, start))
}

pub fn criterion_3(seed: u64) -> Result<CriterionResult> {
    use Identity::Ore;
    use Mode::Randomized as R;
    symbolic_criterion(
        3,
        "Ore coefficient identities",
        &[(Ore, 2, 0, 2, R, 200), (Ore, 3, 0, 2, R, 200), (Ore, 2, 0, 3, R, 200), (Ore, 4, 0, 2, R, 200)],
        seed,
    )
}

pub fn criterion_4(seed: u64) -> Result<CriterionResult> {
    use Identity::Thm1 as T;
    use Mode::{Exact as E, Randomized as R};
    symbolic_criterion(
        4,
        "Moore determinant of cofactors",
        &[
            (T, 2, 0, 2, E, 1),
            (T, 2, 1, 2, E, 1),
            (T, 3, 0, 2, E, 1),
            (T, 2, 0, 3, E, 1),
            (T, 3, 1, 2, R, 100),
            (T, 4, 0, 2, R, 100),
            (T, 3, 0, 3, R, 100),
        ],
        seed,
    )
}

pub fn criterion_5(seed: u64) -> Result<CriterionResult> {
    use Identity::CofactorMatrix as C;
    use Mode::{Exact as E, Randomized as R};
    symbolic_criterion(
        5,
        "Moore matrix of the cofactors",
        &[(C, 2, 0, 2, E, 1), (C, 3, 0, 2, E, 1), (C, 2, 0, 3, E, 1), (C, 4, 0, 2, R, 100)],
        seed,
    )
}

pub fn criterion_6(seed: u64) -> Result<CriterionResult> {
    use Identity::Thm2 as T;
    use Mode::{Exact as E, Randomized as R};
    symbolic_criterion(
        6,
        "block matrix and det N",
        &[(T, 2, 1, 2, E, 1), (T, 2, 2, 2, R, 100), (T, 3, 1, 2, R, 100)],
        seed,
    )
}

/// The bases used by criteria 7 and 8: all bases of 2- and 3-dimensional
/// F_2-subspaces of F_16, plus a seeded sample of F_3-bases in F_27.
fn form_bases(seed: u64) -> Result<Vec<SubspaceBasis>> {
    let f16 = build_field(2, 1, 4)?;
    let f27 = build_field(3, 1, 3)?;
    let mut out = Vec::new();
    for n in [2, 3] {
        for a in all_bases(&f16, n) {
            out.push(SubspaceBasis::new(f16.clone(), a)?);
        }
    }
    for a in random_bases(&f27, 2, 60, seed, 7 << 32) {
        out.push(SubspaceBasis::new(f27.clone(), a)?);
    }
    Ok(out)
}

pub fn criterion_7(seed: u64) -> Result<CriterionResult> {
    let start = Instant::now();
    let bases = form_bases(seed)?;
    let per_basis: Vec<(u64, u64)> = bases
        .par_iter()
        .map(|b| {
            let space = match LqSpace::new(b.clone()) {
                Ok(s) => s,
                Err(_) => return (1, 1),
            };
            let alphas: Vec<Vec<Gf>> = fq_vectors(&b.ctx, b.n()).into_iter().skip(1).collect();
            let bad = alphas.iter().filter(|a| space.check_member(a).is_err()).count();
            (alphas.len() as u64, bad as u64)
        })
        .collect();
    let cases = per_basis.iter().map(|c| c.0).sum();
    let bad = per_basis.iter().map(|c| c.1).sum();
    Ok(result(
        7,
        "spaces of forms: pole count, F_q residues, closed form",
        cases,
        bad,
        format!("{} bases, {bad} failing forms", bases.len()),
        vec![],
        start,
    ))
}

pub fn criterion_8(seed: u64) -> Result<CriterionResult> {
    let start = Instant::now();
    let bases = form_bases(seed)?;
    // Every space of criterion 7, plus the 3-element bases read as
    // 1- and 2-dimensional spaces with a one- or two-vector extension.
    let mut spaces: Vec<(SubspaceBasis, usize)> = bases.iter().map(|b| (b.clone(), b.n())).collect();
    for b in bases.iter().filter(|b| b.n() == 3) {
        spaces.push((b.clone(), 1));
        spaces.push((b.clone(), 2));
    }
    let bad = spaces
        .par_iter()
        .filter(|(b, n)| {
            let Ok(space) = LqSpace::with_extension(b.clone(), *n) else {
                return true;
            };
            match pagot_gamma(&space) {
                Ok(g) => g.is_zero() || g != gamma_prediction(&space),
                Err(_) => true,
            }
        })
        .count() as u64;
    Ok(result(
        8,
        "gamma: exact division and predicted value",
        spaces.len() as u64,
        bad,
        format!("{} spaces, {bad} failures", spaces.len()),
        vec![],
        start,
    ))
}

pub fn criterion_9() -> Result<CriterionResult> {
    let start = Instant::now();
    let f16 = build_field(2, 1, 4)?;
    let f27 = build_field(3, 1, 3)?;
    let mut bases: Vec<SubspaceBasis> = Vec::new();
    for n in [2, 3] {
        for a in all_bases(&f16, n) {
            bases.push(SubspaceBasis::new(f16.clone(), a)?);
        }
    }
    for a in all_bases(&f27, 2) {
        bases.push(SubspaceBasis::new(f27.clone(), a)?);
    }
    let per: Vec<(u64, u64)> = bases
        .par_iter()
        .map(|b| {
            let Ok(pc) = PairingContext::new(b.clone()) else {
                return (1, 1);
            };
            let pairs = (b.size() * b.size()) as u64;
            let mut bad = pc.count_disagreements().map(|c| c as u64).unwrap_or(pairs);
            let perfect = pc.is_perfect(Which::E).unwrap_or(false) && pc.is_perfect(Which::F).unwrap_or(false);
            let equal = matches!((pc.gram_matrix(Which::E), pc.gram_matrix(Which::F)), (Ok(a), Ok(b)) if a == b);
            if !perfect || !equal {
                bad += 1;
            }
            (pairs, bad)
        })
        .collect();
    let cases = per.iter().map(|c| c.0).sum();
    let bad = per.iter().map(|c| c.1).sum();
    Ok(result(
        9,
        "E = f on W x U, both Gram matrices invertible",
        cases,
        bad,
        format!("{} bases, {bad} failures", bases.len()),
        vec![],
        start,
    ))
}

pub fn criterion_10(seed: u64) -> Result<CriterionResult> {
    use Identity::Phi as P;
    use Mode::Randomized as R;
    let list: Vec<_> = [2u64, 3]
        .iter()
        .flat_map(|&q| (2..=4).map(move |n| (P, n, 0, q, R, 200)))
        .collect();
    symbolic_criterion(10, "phi map: square, fibers, n+1 variable identity", &list, seed)
}

pub fn criterion_11() -> Result<CriterionResult> {
    let start = Instant::now();
    let f2 = build_field(2, 1, 1)?;
    let f4 = build_field(2, 1, 2)?;
    let f8 = build_field(2, 1, 3)?;
    let w4 = f4.gen();
    let w8 = f8.gen();
    let w8sq = f8.mul(w8, w8);
    let systems = vec![
        (f2.clone(), vec![Gf::ONE]),
        (f4.clone(), vec![Gf::ONE]),
        (f4.clone(), vec![Gf::ONE, w4]),
        (f8.clone(), vec![Gf::ONE, w8]),
        (f8.clone(), vec![Gf::ONE, w8, w8sq]),
    ];
    let mut bad = 0;
    let mut detail = Vec::new();
    for (k, f) in systems.iter() {
        match etale::verify_system(k.clone(), f.clone()) {
            Ok(rep) => detail.push(format!(
                "F_{} n={} r={} factors={} actions={}",
                k.order(),
                f.len(),
                rep.r,
                rep.factor_count,
                rep.actions.len()
            )),
            Err(e) => {
                bad += 1;
                detail.push(format!("F_{} n={}: {e}", k.order(), f.len()));
            }
        }
    }
    Ok(result(11, "etale algebra and the Z action", systems.len() as u64, bad, detail.join("; "), vec![], start))
}

pub fn run_criterion(id: u32, seed: u64) -> Result<CriterionResult> {
    match id {
        1 => criterion_1(seed),
        2 => criterion_2(),
        3 => criterion_3(seed),
        4 => criterion_4(seed),
        5 => criterion_5(seed),
        6 => criterion_6(seed),
        7 => criterion_7(seed),
        8 => criterion_8(seed),
        9 => criterion_9(),
        10 => criterion_10(seed),
        11 => criterion_11(),
        _ => Err(crate::Error::Precondition(format!("no criterion {id}"))),
    }
}

/// Criteria 1–11 in order.
pub fn run_suite(seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let criteria = (1..=11).map(|id| run_criterion(id, seed)).collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        schema: SCHEMA.into(),
        suite: "desk".into(),
        seed,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
