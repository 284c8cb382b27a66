//! Verification of the Moore determinant identities, exactly over F_q[Y̲] for
//! small parameters and by random specialization in F_{q^t} otherwise.
//!
//! Randomized soundness: every check is a polynomial identity of total degree
//! at most D in the specialized variables. With q^t > 4D a false identity
//! survives one trial with probability at most D/q^t < 1/4, so a campaign of
//! T independent trials passes falsely with probability below 4^{−T}.

pub mod identities;
pub mod sparse;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{build_field_with_cap, FieldCtx, Gf, DEFAULT_FIELD_CAP};
use crate::moore::moore_det;
use crate::ring::Ring;
pub use sparse::{sym_moore_det, SparsePoly, SparseRing, DEFAULT_TERM_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Randomized,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "randomized" | "random" => Ok(Mode::Randomized),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Thm1,
    CofactorMatrix,
    Thm2,
    Ore,
    Phi,
}

impl Identity {
    pub fn id(self) -> &'static str {
        match self {
            Identity::Thm1 => "thm1",
            Identity::CofactorMatrix => "cofactor-matrix",
            Identity::Thm2 => "thm2",
            Identity::Ore => "ore",
            Identity::Phi => "phi",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub m: usize,
    pub q: u64,
    pub p: u64,
    pub s: u32,
}

impl Params {
    pub fn new(n: usize, m: usize, q: u64) -> Result<Self> {
        let (p, s) = prime_power(q)?;
        Ok(Params { n, m, q, p, s })
    }
}

/// (p, s) with q = p^s.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::InvalidParams(format!("q = {q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let (mut rest, mut s) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        s += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidParams(format!("q = {q} is not a prime power")));
    }
    Ok((p, s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub check: String,
    /// Variable values in canonical text form; empty in exact mode.
    pub assignment: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub params: Params,
    pub mode: Mode,
    pub trials: usize,
    pub checks_per_trial: usize,
    pub failures: usize,
    pub witness: Option<Witness>,
    /// Extension degree t of the specialization field F_{q^t}.
    pub extension_degree: Option<u32>,
    pub degree_bound: Option<u64>,
    /// Upper bound on one trial passing a false identity, D/q^t.
    pub per_trial_error: Option<f64>,
    pub resampled: usize,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.trials > 0
    }

    /// JSON without the timing field, for reproducibility comparisons.
    pub fn stable_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    }
}

/// Configuration shared by every campaign.
#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub field_cap: u64,
    pub term_budget: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { field_cap: DEFAULT_FIELD_CAP, term_budget: DEFAULT_TERM_BUDGET }
    }
}

fn validate(id: Identity, p: &Params) -> Result<()> {
    let bad = |msg: &str| Err(Error::Precondition(msg.into()));
    match id {
        Identity::Thm1 | Identity::CofactorMatrix | Identity::Ore | Identity::Phi if p.n < 2 => bad("n >= 2 required"),
        Identity::Thm2 if p.n < 2 || p.m < 1 => bad("n >= 2 and m >= 1 required"),
        Identity::CofactorMatrix | Identity::Ore | Identity::Phi if p.m != 0 => bad("this identity takes no m"),
        _ if p.n + p.m > 8 => bad("at most 8 variables"),
        _ => Ok(()),
    }
}

fn nvars(id: Identity, p: &Params) -> usize {
    match id {
        Identity::Thm1 | Identity::Thm2 => p.n + p.m,
        Identity::CofactorMatrix | Identity::Ore => p.n,
        Identity::Phi => 2 * p.n + 2,
    }
}

fn degree_bound(id: Identity, p: &Params) -> u64 {
    use identities::degree;
    match id {
        Identity::Thm1 => degree::thm1(p.n, p.m, p.q),
        Identity::CofactorMatrix => degree::cofactor_matrix(p.n, p.q),
        Identity::Thm2 => degree::thm2(p.n, p.m, p.q),
        Identity::Ore => degree::ore(p.n, p.q),
        Identity::Phi => degree::phi(p.n, p.q),
    }
}

fn checks<R: Ring>(id: Identity, r: &R, vars: &[R::Elem], p: &Params) -> Vec<identities::Check<R::Elem>> {
    match id {
        Identity::Thm1 => identities::thm1(r, vars, p.n),
        Identity::CofactorMatrix => identities::cofactor_matrix(r, vars),
        Identity::Thm2 => identities::thm2(r, vars, p.n),
        Identity::Ore => identities::ore(r, vars),
        Identity::Phi => identities::phi_laws(r, vars, p.n),
    }
}

/// Specializations that must be skipped: the Moore determinant of the main
/// tuple vanishes (and, for φ, λ = 0 or the n+1 tuple is dependent).
fn degenerate(id: Identity, k: &FieldCtx, vars: &[Gf], p: &Params) -> bool {
    match id {
        Identity::Phi => {
            let n = p.n;
            moore_det(k, &vars[..n]).is_zero() || vars[n].is_zero() || moore_det(k, &vars[n + 1..]).is_zero()
        }
        _ => moore_det(k, vars).is_zero(),
    }
}

/// Smallest t with q^t > 4D inside the field cap.
pub fn choose_extension(q: u64, d: u64, p: u64, s: u32, cap: u64) -> Result<u32> {
    let target = 4u128 * d as u128;
    let mut t = 1u32;
    while (q as u128).pow(t) <= target {
        t += 1;
    }
    let order = (p as u128).pow(s * t);
    if order > cap as u128 {
        return Err(Error::DegreeCapExceeded { p, d: (s * t) as u64, cap });
    }
    Ok(t)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent generator for trial `idx` of a campaign.
pub fn trial_rng(seed: u64, idx: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(idx.wrapping_add(1))))
}

const MAX_RESAMPLES: usize = 10_000;

struct TrialOutcome {
    failure: Option<Witness>,
    resampled: usize,
}

pub fn verify(id: Identity, p: Params, mode: Mode, trials: usize, seed: u64, cfg: Config) -> Result<VerificationReport> {
    validate(id, &p)?;
    match mode {
        Mode::Exact => match verify_exact(id, p, cfg) {
            Err(Error::BudgetExceeded(b)) => {
                let mut rep = verify_randomized(id, p, trials.max(1), seed, cfg)?;
                rep.notes.insert(0, format!("exact mode exceeded the term budget of {b}; fell back to randomized"));
                Ok(rep)
            }
            other => other,
        },
        Mode::Randomized => verify_randomized(id, p, trials, seed, cfg),
    }
}

/// Symbolic check over F_q[Y̲]: one "trial", one failure per mismatched check.
pub fn verify_exact(id: Identity, p: Params, cfg: Config) -> Result<VerificationReport> {
    validate(id, &p)?;
    let start = Instant::now();
    let k = build_field_with_cap(p.p, p.s, 1, cfg.field_cap)?;
    let ring = SparseRing::new(k, nvars(id, &p), cfg.term_budget)?;
    let vars = ring.vars();
    let results = checks(id, &ring, &vars, &p);
    if ring.exceeded() {
        return Err(Error::BudgetExceeded(cfg.term_budget));
    }
    let failed: Vec<&String> = results.iter().filter(|(_, l, r)| l != r).map(|(n, _, _)| n).collect();
    Ok(VerificationReport {
        identity_id: id.id().into(),
        params: p,
        mode: Mode::Exact,
        trials: 1,
        checks_per_trial: results.len(),
        failures: failed.len(),
        witness: failed.first().map(|c| Witness { trial: 0, check: (*c).clone(), assignment: Vec::new() }),
        extension_degree: None,
        degree_bound: None,
        per_trial_error: None,
        resampled: 0,
        notes: Vec::new(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn verify_randomized(id: Identity, p: Params, trials: usize, seed: u64, cfg: Config) -> Result<VerificationReport> {
    validate(id, &p)?;
    if trials == 0 {
        return Err(Error::Precondition("at least one trial required".into()));
    }
    let start = Instant::now();
    let d = degree_bound(id, &p);
    let t = choose_extension(p.q, d, p.p, p.s, cfg.field_cap)?;
    let k = build_field_with_cap(p.p, p.s, t, cfg.field_cap)?;
    let nv = nvars(id, &p);
    let order = k.order();

    let outcomes: Vec<Result<TrialOutcome>> = (0..trials)
        .into_par_iter()
        .map(|idx| {
            let mut rng = trial_rng(seed, idx as u64);
            let mut resampled = 0;
            let vars = loop {
                let v: Vec<Gf> = (0..nv).map(|_| Gf(rng.gen_range(0..order))).collect();
                if !degenerate(id, &k, &v, &p) {
                    break v;
                }
                resampled += 1;
                if resampled > MAX_RESAMPLES {
                    return Err(Error::Precondition("could not draw a nondegenerate specialization".into()));
                }
            };
            let failure = checks(id, &*k, &vars, &p)
                .into_iter()
                .find(|(_, l, r)| l != r)
                .map(|(name, _, _)| Witness {
                    trial: idx,
                    check: name,
                    assignment: vars.iter().map(|&x| k.to_canonical(x)).collect(),
                });
            Ok(TrialOutcome { failure, resampled })
        })
        .collect();

    let mut failures = 0;
    let mut witness = None;
    let mut resampled = 0;
    for o in outcomes {
        let o = o?;
        resampled += o.resampled;
        if let Some(w) = o.failure {
            failures += 1;
            witness.get_or_insert(w);
        }
    }
    let checks_per_trial = {
        let zero = vec![Gf::ONE; nv];
        checks(id, &*k, &zero, &p).len()
    };
    Ok(VerificationReport {
        identity_id: id.id().into(),
        params: p,
        mode: Mode::Randomized,
        trials,
        checks_per_trial,
        failures,
        witness,
        extension_degree: Some(t),
        degree_bound: Some(d),
        per_trial_error: Some(d as f64 / (k.order() as f64)),
        resampled,
        notes: Vec::new(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn verify_thm1(n: usize, m: usize, q: u64, mode: Mode, trials: usize, seed: u64) -> Result<VerificationReport> {
    verify(Identity::Thm1, Params::new(n, m, q)?, mode, trials, seed, Config::default())
}

pub fn verify_cofactor_matrix(n: usize, q: u64, mode: Mode, trials: usize, seed: u64) -> Result<VerificationReport> {
    verify(Identity::CofactorMatrix, Params::new(n, 0, q)?, mode, trials, seed, Config::default())
}

pub fn verify_thm2(n: usize, m: usize, q: u64, mode: Mode, trials: usize, seed: u64) -> Result<VerificationReport> {
    verify(Identity::Thm2, Params::new(n, m, q)?, mode, trials, seed, Config::default())
}

pub fn verify_ore_coeff_formulas(n: usize, q: u64, trials: usize, seed: u64) -> Result<VerificationReport> {
    verify(Identity::Ore, Params::new(n, 0, q)?, Mode::Randomized, trials, seed, Config::default())
}

pub fn verify_phi_map(n: usize, q: u64, trials: usize, seed: u64) -> Result<VerificationReport> {
    verify(Identity::Phi, Params::new(n, 0, q)?, Mode::Randomized, trials, seed, Config::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_exact_cases() {
        let r = verify_thm1(2, 0, 2, Mode::Exact, 1, 0).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = verify_cofactor_matrix(2, 2, Mode::Exact, 1, 0).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = verify_thm2(2, 1, 2, Mode::Exact, 1, 0).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn small_randomized_cases() {
        for id in [Identity::Thm1, Identity::CofactorMatrix, Identity::Ore, Identity::Phi] {
            for (n, q) in [(2, 2), (3, 2), (2, 3)] {
                let r = verify(id, Params::new(n, 0, q).unwrap(), Mode::Randomized, 20, 7, Config::default()).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(2).unwrap(), (2, 1));
        assert!(prime_power(6).is_err());
    }

    #[test]
    fn extension_choice() {
        assert_eq!(choose_extension(2, 105, 2, 1, 1 << 20).unwrap(), 9);
        assert_eq!(choose_extension(3, 52, 3, 1, 1 << 20).unwrap(), 5);
    }
}
