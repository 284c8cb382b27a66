//! Sparse multivariate polynomials over F_q.
//!
//! A monomial is packed into a u128, 16 bits per variable, so at most 8
//! variables with exponents below 2^16. Coefficients live in the t = 1
//! context of F_q, where the q-power Frobenius is the identity.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Embedding, FieldCtx, Gf};
use crate::ring::Ring;

pub const MAX_VARS: usize = 8;
const BITS: u32 = 16;
const MAX_EXP: u64 = (1 << BITS) - 1;

/// Default cap on terms in any intermediate polynomial.
pub const DEFAULT_TERM_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<u128, Gf>,
}

fn exp_of(key: u128, i: usize) -> u64 {
    ((key >> (BITS * i as u32)) as u64) & MAX_EXP
}

fn total_degree(key: u128, nvars: usize) -> u64 {
    (0..nvars).map(|i| exp_of(key, i)).sum()
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::Precondition(format!("at most {MAX_VARS} variables, got {nvars}")));
        }
        Ok(SparsePoly { nvars, terms: BTreeMap::new() })
    }

    pub fn constant(nvars: usize, c: Gf) -> Result<Self> {
        let mut p = Self::zero(nvars)?;
        if !c.is_zero() {
            p.terms.insert(0, c);
        }
        Ok(p)
    }

    /// The variable Y_i, 0-based.
    pub fn var(nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::VarMismatch(i + 1, nvars));
        }
        let mut p = Self::zero(nvars)?;
        p.terms.insert(1u128 << (BITS * i as u32), Gf::ONE);
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|&k| total_degree(k, self.nvars)).max()
    }

    /// (exponents, coefficient) in graded lexicographic order, highest first.
    pub fn terms(&self) -> Vec<(Vec<u64>, Gf)> {
        let mut out: Vec<(Vec<u64>, Gf)> = self
            .terms
            .iter()
            .map(|(&k, &c)| ((0..self.nvars).map(|i| exp_of(k, i)).collect(), c))
            .collect();
        out.sort_by(|a, b| {
            let da: u64 = a.0.iter().sum();
            let db: u64 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(&a.0))
        });
        out
    }

    fn check_vars(&self, o: &SparsePoly) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::VarMismatch(self.nvars, o.nvars));
        }
        Ok(())
    }

    pub fn add(&self, k: &FieldCtx, o: &SparsePoly) -> Result<SparsePoly> {
        self.check_vars(o)?;
        let mut terms = self.terms.clone();
        for (&m, &c) in &o.terms {
            let e = terms.entry(m).or_insert(Gf::ZERO);
            *e = k.add(*e, c);
            if e.is_zero() {
                terms.remove(&m);
            }
        }
        Ok(SparsePoly { nvars: self.nvars, terms })
    }

    pub fn neg(&self, k: &FieldCtx) -> SparsePoly {
        SparsePoly { nvars: self.nvars, terms: self.terms.iter().map(|(&m, &c)| (m, k.neg(c))).collect() }
    }

    pub fn sub(&self, k: &FieldCtx, o: &SparsePoly) -> Result<SparsePoly> {
        self.add(k, &o.neg(k))
    }

    /// Product, or BudgetExceeded when the result would exceed `budget` terms
    /// or an exponent would overflow.
    pub fn mul(&self, k: &FieldCtx, o: &SparsePoly, budget: usize) -> Result<SparsePoly> {
        self.check_vars(o)?;
        let mut acc: BTreeMap<u128, Gf> = BTreeMap::new();
        let (da, db) = (self.max_exps(), o.max_exps());
        if da.iter().zip(&db).any(|(a, b)| a + b > MAX_EXP) {
            return Err(Error::BudgetExceeded(budget));
        }
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &o.terms {
                let e = acc.entry(ma + mb).or_insert(Gf::ZERO);
                *e = k.add(*e, k.mul(ca, cb));
            }
            if acc.len() > budget.saturating_mul(2) {
                return Err(Error::BudgetExceeded(budget));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        if acc.len() > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        Ok(SparsePoly { nvars: self.nvars, terms: acc })
    }

    fn max_exps(&self) -> Vec<u64> {
        (0..self.nvars)
            .map(|i| self.terms.keys().map(|&m| exp_of(m, i)).max().unwrap_or(0))
            .collect()
    }

    pub fn pow(&self, k: &FieldCtx, e: u64, budget: usize) -> Result<SparsePoly> {
        let mut acc = SparsePoly::constant(self.nvars, Gf::ONE)?;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base, budget)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(k, &base, budget)?;
            }
        }
        Ok(acc)
    }

    /// The q^j-th power: exponents scaled by q^j, coefficients mapped by the
    /// (trivial on F_q) Frobenius.
    pub fn frobenius_coeffwise(&self, k: &FieldCtx, j: u64) -> Result<SparsePoly> {
        let f = (k.q() as u64).checked_pow(j as u32).ok_or(Error::BudgetExceeded(0))?;
        if self.max_exps().iter().any(|&e| e.saturating_mul(f) > MAX_EXP) {
            return Err(Error::BudgetExceeded(0));
        }
        let terms = self
            .terms
            .iter()
            .map(|(&m, &c)| (m * f as u128, k.frob_q(c, j)))
            .collect();
        Ok(SparsePoly { nvars: self.nvars, terms })
    }

    /// Y_i ← v.
    pub fn substitute(&self, k: &FieldCtx, i: usize, v: &SparsePoly, budget: usize) -> Result<SparsePoly> {
        self.check_vars(v)?;
        if i >= self.nvars {
            return Err(Error::VarMismatch(i + 1, self.nvars));
        }
        let shift = BITS * i as u32;
        let mut by_power: BTreeMap<u64, SparsePoly> = BTreeMap::new();
        for (&m, &c) in &self.terms {
            let e = exp_of(m, i);
            let rest = m & !((MAX_EXP as u128) << shift);
            by_power
                .entry(e)
                .or_insert_with(|| SparsePoly { nvars: self.nvars, terms: BTreeMap::new() })
                .terms
                .insert(rest, c);
        }
        let mut acc = SparsePoly::zero(self.nvars)?;
        for (e, part) in by_power {
            let t = part.mul(k, &v.pow(k, e, budget)?, budget)?;
            acc = acc.add(k, &t)?;
        }
        Ok(acc)
    }

    /// Value at a point of an extension, coefficients carried over by `emb`.
    pub fn eval(&self, big: &FieldCtx, emb: &Embedding, point: &[Gf]) -> Result<Gf> {
        if point.len() != self.nvars {
            return Err(Error::VarMismatch(self.nvars, point.len()));
        }
        let mut acc = Gf::ZERO;
        for (&m, &c) in &self.terms {
            let mono = big.product((0..self.nvars).map(|i| big.pow(point[i], exp_of(m, i))));
            acc = big.add(acc, big.mul(emb.map(c), mono));
        }
        Ok(acc)
    }

    pub fn to_string_with(&self, k: &FieldCtx, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(exps, c)| {
                let mono: Vec<String> = exps
                    .iter()
                    .zip(names)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
                    .collect();
                match (mono.is_empty(), c == Gf::ONE) {
                    (true, _) => k.to_short(c),
                    (false, true) => mono.join("*"),
                    (false, false) => format!("{}*{}", k.to_short(c), mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// F_q[Y_1..Y_nvars] as a `Ring`. Budget overruns make every later product
/// return zero and are reported through `exceeded`.
pub struct SparseRing {
    pub k: Arc<FieldCtx>,
    pub nvars: usize,
    pub budget: usize,
    exceeded: Cell<bool>,
}

impl SparseRing {
    pub fn new(k: Arc<FieldCtx>, nvars: usize, budget: usize) -> Result<Self> {
        if k.t() != 1 {
            return Err(Error::Precondition("sparse coefficients must live in F_q itself".into()));
        }
        SparsePoly::zero(nvars)?;
        Ok(SparseRing { k, nvars, budget, exceeded: Cell::new(false) })
    }

    pub fn vars(&self) -> Vec<SparsePoly> {
        (0..self.nvars).map(|i| SparsePoly::var(self.nvars, i).unwrap()).collect()
    }

    pub fn exceeded(&self) -> bool {
        self.exceeded.get()
    }

    fn guard(&self, r: Result<SparsePoly>) -> SparsePoly {
        match r {
            Ok(p) => p,
            Err(_) => {
                self.exceeded.set(true);
                self.zero()
            }
        }
    }
}

impl Ring for SparseRing {
    type Elem = SparsePoly;

    fn zero(&self) -> SparsePoly {
        SparsePoly::zero(self.nvars).unwrap()
    }
    fn one(&self) -> SparsePoly {
        SparsePoly::constant(self.nvars, Gf::ONE).unwrap()
    }
    fn is_zero(&self, a: &SparsePoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        a.add(&self.k, b).expect("same ring")
    }
    fn neg(&self, a: &SparsePoly) -> SparsePoly {
        a.neg(&self.k)
    }
    fn mul(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        if self.exceeded() {
            return self.zero();
        }
        self.guard(a.mul(&self.k, b, self.budget))
    }
    fn frob_q(&self, a: &SparsePoly, k: u64) -> SparsePoly {
        if self.exceeded() {
            return self.zero();
        }
        self.guard(a.frobenius_coeffwise(&self.k, k))
    }
    fn fq_scalars(&self) -> Vec<SparsePoly> {
        self.k
            .subfield_elements()
            .iter()
            .map(|&c| SparsePoly::constant(self.nvars, c).unwrap())
            .collect()
    }
    fn q(&self) -> u64 {
        self.k.q() as u64
    }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(v: &mut Vec<usize>, i: usize, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if i == v.len() {
            out.push((v.clone(), odd));
            return;
        }
        for j in i..v.len() {
            v.swap(i, j);
            go(v, i + 1, odd ^ (i != j), out);
            v.swap(i, j);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), 0, false, &mut out);
    out
}

/// Δ_n of the chosen variables by Leibniz expansion (n ≤ 4) and by the
/// product over projective representatives; the two must be term-identical.
pub fn sym_moore_det(ring: &SparseRing, var_indices: &[usize]) -> Result<SparsePoly> {
    let n = var_indices.len();
    if n == 0 {
        return Err(Error::EmptyTuple);
    }
    let q = ring.q();
    // Product form has Σ q^{i} = θ_n linear factors.
    let factors: u64 = (0..n as u32).map(|i| q.pow(i)).sum();
    if factors.saturating_mul(n as u64) > ring.budget as u64 {
        return Err(Error::BudgetExceeded(ring.budget));
    }
    let vars = ring.vars();
    let a = var_indices
        .iter()
        .map(|&i| vars.get(i).cloned().ok_or(Error::VarMismatch(i + 1, ring.nvars)))
        .collect::<Result<Vec<_>>>()?;
    let product = crate::moore::moore_det_product_in(ring, &a);
    if ring.exceeded() {
        return Err(Error::BudgetExceeded(ring.budget));
    }
    if n <= 4 {
        let rows = crate::moore::moore_rows(ring, &a, n);
        let mut leibniz = ring.zero();
        for (perm, odd) in permutations(n) {
            let t = (0..n).fold(ring.one(), |acc, i| ring.mul(&acc, &rows[i][perm[i]]));
            leibniz = if odd { ring.sub(&leibniz, &t) } else { ring.add(&leibniz, &t) };
        }
        if ring.exceeded() {
            return Err(Error::BudgetExceeded(ring.budget));
        }
        if leibniz != product {
            return Err(Error::InternalMismatch("Leibniz and product Moore determinants differ".into()));
        }
    }
    Ok(product)
}
