//! Finite fields F_{p^d} with a distinguished subfield F_q, q = p^s.
//!
//! Elements are packed as the base-p integer Σ c_i p^i of their coordinates in
//! the power basis of the modulus root, so `Gf(0)` is zero and `Gf(1)` is one.
//! Multiplication goes through discrete log tables; addition in odd
//! characteristic goes through Zech logarithms, in characteristic 2 it is XOR.

pub(crate) mod fp;
pub mod linalg;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }
}

/// Default bound on p^d.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

pub struct FieldCtx {
    p: u32,
    s: u32,
    d: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one_log: u32,
    frob_mult: Vec<u64>,
    q_basis: Vec<Gf>,
    subfield: Vec<Gf>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("d", &self.d)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.d == other.d
    }
}
impl Eq for FieldCtx {}

fn registry() -> &'static Mutex<HashMap<(u32, u32, u32), Arc<FieldCtx>>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32, u32), Arc<FieldCtx>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches from the process-wide cache) F_{p^{s t}} with subfield F_{p^s}.
pub fn build_field(p: u64, s: u32, t: u32) -> Result<Arc<FieldCtx>> {
    build_field_with_cap(p, s, t, DEFAULT_FIELD_CAP)
}

pub fn build_field_with_cap(p: u64, s: u32, t: u32, cap: u64) -> Result<Arc<FieldCtx>> {
    if !fp::is_prime(p) {
        return Err(Error::NonPrimeP(p));
    }
    if s == 0 || t == 0 {
        return Err(Error::InvalidParams("s and t must be positive".into()));
    }
    let d = s as u64 * t as u64;
    let too_big = || Error::DegreeCapExceeded { p, d, cap };
    let mut order: u64 = 1;
    for _ in 0..d {
        order = order.checked_mul(p).ok_or_else(too_big)?;
        if order > cap || order > (1 << 31) {
            return Err(too_big());
        }
    }
    let key = (p as u32, s, t);
    if let Some(ctx) = registry().lock().unwrap().get(&key) {
        return Ok(ctx.clone());
    }
    let ctx = Arc::new(FieldCtx::construct(p as u32, s, d as u32));
    registry().lock().unwrap().entry(key).or_insert(ctx.clone());
    Ok(ctx)
}

/// Digit-vector helpers used only during construction.
struct Packing {
    p: u32,
    d: usize,
}

impl Packing {
    fn unpack(&self, mut v: u32) -> Vec<u32> {
        let mut out = vec![0; self.d];
        for c in out.iter_mut() {
            *c = v % self.p;
            v /= self.p;
        }
        out
    }

    fn pack(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0u32, |acc, &x| acc * self.p + x)
    }

    fn mul_slow(&self, a: u32, b: u32, modulus: &[u32]) -> u32 {
        let (a, b) = (self.unpack(a), self.unpack(b));
        let p = self.p;
        let mut prod = vec![0u64; 2 * self.d];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        let mut prod: Vec<u32> = prod.iter().map(|&x| (x % p as u64) as u32).collect();
        for k in (self.d..2 * self.d).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            prod[k] = 0;
            let shift = k - self.d;
            for (i, &m) in modulus.iter().take(self.d).enumerate() {
                let sub = fp::mul_mod(lead, m, p);
                prod[shift + i] = (prod[shift + i] + p - sub) % p;
            }
        }
        self.pack(&prod[..self.d])
    }

    fn pow_slow(&self, a: u32, mut e: u64, modulus: &[u32]) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base, modulus);
            }
            base = self.mul_slow(base, base, modulus);
            e >>= 1;
        }
        acc
    }
}

impl FieldCtx {
    fn construct(p: u32, s: u32, d: u32) -> FieldCtx {
        let modulus = fp::smallest_irreducible(p, d as usize);
        let pk = Packing { p, d: d as usize };
        let order = pk_order(p, d);
        let n1 = order - 1;

        // Smallest primitive element in index order.
        let factors = fp::distinct_prime_factors(n1 as u64);
        let g = (1..order)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| pk.pow_slow(g, n1 as u64 / r, &modulus) != 1)
            })
            .expect("multiplicative group is cyclic");

        // Images g * X^i as packed values, so multiplying by g is linear.
        let g_images: Vec<u32> = (0..d)
            .map(|i| pk.mul_slow(g, p.pow(i), &modulus))
            .collect();
        let mut exp = vec![0u32; 2 * n1 as usize];
        let mut log = vec![NO_LOG; order as usize];
        let mut cur = 1u32;
        for i in 0..n1 {
            exp[i as usize] = cur;
            log[cur as usize] = i;
            cur = if p == 2 {
                let mut acc = 0u32;
                let mut bits = cur;
                let mut k = 0;
                while bits != 0 {
                    if bits & 1 == 1 {
                        acc ^= g_images[k];
                    }
                    bits >>= 1;
                    k += 1;
                }
                acc
            } else {
                let digits = pk.unpack(cur);
                let mut acc = vec![0u32; d as usize];
                for (k, &c) in digits.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (j, x) in pk.unpack(g_images[k]).into_iter().enumerate() {
                        acc[j] = (acc[j] + c * x) % p;
                    }
                }
                pk.pack(&acc)
            };
        }
        debug_assert_eq!(cur, 1);
        for i in n1..2 * n1 {
            exp[i as usize] = exp[(i - n1) as usize];
        }

        let mut zech = Vec::new();
        if p != 2 {
            zech = (0..n1)
                .map(|k| {
                    let v = exp[k as usize];
                    let w = if v % p == p - 1 { v - (p - 1) } else { v + 1 };
                    if w == 0 {
                        NO_LOG
                    } else {
                        log[w as usize]
                    }
                })
                .collect();
        }
        let neg_one_log = if p == 2 { 0 } else { n1 / 2 };
        let frob_mult: Vec<u64> = (0..d)
            .map(|j| fp::pow_mod(p, j as u64, n1.max(1)) as u64 % n1.max(1) as u64)
            .collect();

        let mut ctx = FieldCtx {
            p,
            s,
            d,
            order,
            modulus,
            exp,
            log,
            zech,
            neg_one_log,
            frob_mult,
            q_basis: Vec::new(),
            subfield: Vec::new(),
        };
        let images: Vec<Gf> = (0..d)
            .map(|j| {
                let e = Gf(p.pow(j));
                ctx.sub(ctx.frob_q(e, 1), e)
            })
            .collect();
        ctx.q_basis = ctx.nullspace_fp(&images);
        debug_assert_eq!(ctx.q_basis.len(), s as usize);
        let qn = pk_order(p, s);
        ctx.subfield = (0..qn)
            .map(|k| {
                let coeffs = Packing { p, d: s as usize }.unpack(k);
                ctx.combine(&ctx.q_basis, &coeffs)
            })
            .collect();
        ctx
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn s(&self) -> u32 {
        self.s
    }
    #[inline]
    pub fn d(&self) -> u32 {
        self.d
    }
    /// t = d / s, the degree over F_q and the order of the q-Frobenius.
    #[inline]
    pub fn t(&self) -> u32 {
        self.d / self.s
    }
    /// |K| = p^d.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.p.pow(self.s)
    }
    /// Monic modulus, coefficients low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// F_p-basis of F_q in reduced echelon form.
    pub fn q_basis(&self) -> &[Gf] {
        &self.q_basis
    }
    /// All q elements of F_q; index k holds the combination of `q_basis` with base-p digits of k.
    pub fn subfield_elements(&self) -> &[Gf] {
        &self.subfield
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.order).map(Gf)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Gf> {
        (1..self.order).map(Gf)
    }

    /// Root of the modulus (the element printed as `w`).
    pub fn gen(&self) -> Gf {
        if self.d == 1 {
            Gf(0)
        } else {
            Gf(self.p)
        }
    }

    pub fn from_int(&self, n: i64) -> Gf {
        Gf(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Gf> {
        if c.len() > self.d as usize {
            return Err(Error::Parse(format!(
                "{} coordinates for a degree-{} field",
                c.len(),
                self.d
            )));
        }
        if let Some(&bad) = c.iter().find(|&&x| x >= self.p) {
            return Err(Error::Parse(format!("coordinate {bad} not reduced mod {}", self.p)));
        }
        Ok(Gf(Packing { p: self.p, d: c.len() }.pack(c)))
    }

    pub fn coeffs(&self, a: Gf) -> Vec<u32> {
        Packing { p: self.p, d: self.d as usize }.unpack(a.0)
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        if self.p == 2 {
            return Gf(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n1 = self.order - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let k = if lb >= la { lb - la } else { lb + n1 - la };
        let z = self.zech[k as usize];
        if z == NO_LOG {
            Gf(0)
        } else {
            Gf(self.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Gf) -> Gf {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let l = self.log[a.0 as usize] + self.neg_one_log;
        Gf(self.exp[l as usize])
    }

    #[inline]
    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf(0);
        }
        let l = self.log[a.0 as usize] + self.log[b.0 as usize];
        Gf(self.exp[l as usize])
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n1 = self.order - 1;
        let l = self.log[a.0 as usize];
        Ok(Gf(self.exp[((n1 - l) % n1) as usize]))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        if e == 0 {
            return Gf(1);
        }
        if a.0 == 0 {
            return Gf(0);
        }
        let n1 = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Gf(self.exp[((l * (e % n1)) % n1) as usize])
    }

    /// a^e for signed e; negative exponents need a ≠ 0.
    pub fn pow_signed(&self, a: Gf, e: i64) -> Result<Gf> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Multiplying a discrete log by this gives the log of a^{p^j}.
    #[inline]
    fn frob_p_mult(&self, j: u64) -> u64 {
        self.frob_mult[(j % self.d as u64) as usize]
    }

    /// a^{p^j}.
    #[inline]
    pub fn frob_p(&self, a: Gf, j: u64) -> Gf {
        if a.0 == 0 {
            return a;
        }
        let n1 = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Gf(self.exp[((l * self.frob_p_mult(j)) % n1) as usize])
    }

    /// a^{q^k}.
    #[inline]
    pub fn frob_q(&self, a: Gf, k: u64) -> Gf {
        self.frob_p(a, k * self.s as u64)
    }

    /// a^{q^{-k}}, the inverse of `frob_q(·, k)`.
    #[inline]
    pub fn inv_frob_q(&self, a: Gf, k: u64) -> Gf {
        let t = self.t() as u64;
        self.frob_q(a, (t - k % t) % t)
    }

    pub fn is_in_fq(&self, a: Gf) -> bool {
        self.frob_q(a, 1) == a
    }

    pub fn sum<I: IntoIterator<Item = Gf>>(&self, it: I) -> Gf {
        it.into_iter().fold(Gf(0), |acc, x| self.add(acc, x))
    }

    pub fn product<I: IntoIterator<Item = Gf>>(&self, it: I) -> Gf {
        it.into_iter().fold(Gf(1), |acc, x| self.mul(acc, x))
    }

    /// Σ c_i v_i with c_i ∈ F_p given as integers.
    pub fn combine(&self, v: &[Gf], c: &[u32]) -> Gf {
        let mut acc = Gf(0);
        for (&x, &k) in v.iter().zip(c) {
            if k != 0 {
                acc = self.add(acc, self.mul(self.from_int(k as i64), x));
            }
        }
        acc
    }

    /// F_p-basis of the kernel of an additive map, given the images of the power
    /// basis 1, w, …, w^{d-1}. Returned in reduced echelon form.
    pub fn nullspace_fp(&self, images: &[Gf]) -> Vec<Gf> {
        assert_eq!(images.len(), self.d as usize);
        let d = self.d as usize;
        let cols: Vec<Vec<u32>> = images.iter().map(|&x| self.coeffs(x)).collect();
        let m: Vec<Vec<u32>> = (0..d).map(|r| (0..d).map(|c| cols[c][r]).collect()).collect();
        fp::nullspace(&m, d, self.p)
            .into_iter()
            .map(|v| Gf(Packing { p: self.p, d }.pack(&v)))
            .collect()
    }

    /// Kernel of an additive map given as a closure.
    pub fn kernel_of<F: Fn(Gf) -> Gf>(&self, f: F) -> Vec<Gf> {
        let images: Vec<Gf> = (0..self.d).map(|j| f(Gf(self.p.pow(j)))).collect();
        self.nullspace_fp(&images)
    }

    /// F_p-basis (reduced echelon) of the span of the given elements.
    pub fn span_fp(&self, v: &[Gf]) -> Vec<Gf> {
        let mut rows: Vec<Vec<u32>> = v.iter().map(|&x| self.coeffs(x)).collect();
        let piv = fp::rref(&mut rows, self.p);
        rows.truncate(piv.len());
        let d = self.d as usize;
        rows.iter().map(|r| Gf(Packing { p: self.p, d }.pack(r))).collect()
    }

    /// Coefficients c ∈ F_p^k with Σ c_i v_i = target, if any.
    pub fn solve_fp_span(&self, v: &[Gf], target: Gf) -> Option<Vec<u32>> {
        let d = self.d as usize;
        let cols: Vec<Vec<u32>> = v.iter().map(|&x| self.coeffs(x)).collect();
        let m: Vec<Vec<u32>> = (0..d).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        fp::solve(&m, &self.coeffs(target), self.p)
    }

    /// Coefficients α ∈ F_q^k with Σ α_i v_i = target, if any. Unique when the
    /// v_i are F_q-independent.
    pub fn solve_fq_span(&self, v: &[Gf], target: Gf) -> Option<Vec<Gf>> {
        let s = self.s as usize;
        let scaled: Vec<Gf> = v
            .iter()
            .flat_map(|&x| self.q_basis.iter().map(move |&b| (x, b)))
            .map(|(x, b)| self.mul(x, b))
            .collect();
        let c = self.solve_fp_span(&scaled, target)?;
        Some(
            c.chunks(s)
                .map(|chunk| self.combine(&self.q_basis, chunk))
                .collect(),
        )
    }

    /// Index of a subfield element in `subfield_elements`.
    pub fn subfield_index(&self, a: Gf) -> Option<usize> {
        let c = self.solve_fp_span(&self.q_basis, a)?;
        Some(Packing { p: self.p, d: self.s as usize }.pack(&c) as usize)
    }

    /// Image of a root of `small`'s modulus in this field; defines the
    /// embedding small → self. Requires small.d | self.d.
    pub fn embedding_from(&self, small: &FieldCtx) -> Result<Embedding> {
        if small.p != self.p || self.d % small.d != 0 {
            return Err(Error::InvalidParams(format!(
                "cannot embed F_{}^{} into F_{}^{}",
                small.p, small.d, self.p, self.d
            )));
        }
        let root = self
            .elements()
            .find(|&x| {
                let mut acc = Gf(0);
                for &c in small.modulus.iter().rev() {
                    acc = self.add(self.mul(acc, x), self.from_int(c as i64));
                }
                acc.is_zero()
            })
            .expect("subfield modulus splits");
        let powers: Vec<Gf> = (0..small.d).map(|i| self.pow(root, i as u64)).collect();
        let table = small
            .elements()
            .map(|a| self.combine(&powers, &small.coeffs(a)))
            .collect();
        Ok(Embedding { table })
    }

    /// Canonical text form "p^d:[c0,c1,...]".
    pub fn to_canonical(&self, a: Gf) -> String {
        let c: Vec<String> = self.coeffs(a).iter().map(|x| x.to_string()).collect();
        format!("{}^{}:[{}]", self.p, self.d, c.join(","))
    }

    /// Short form as a polynomial in the modulus root `w`, e.g. "w^2+2w+1".
    pub fn to_short(&self, a: Gf) -> String {
        if self.d == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &k) in c.iter().enumerate().rev() {
            if k == 0 {
                continue;
            }
            let coef = if k == 1 && i > 0 { String::new() } else { k.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}w"),
                _ => format!("{coef}w^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Accepts the canonical form, a bare coordinate list "[c0,...]", an
    /// integer (read mod p), or a polynomial in `w` such as "w^2+2w+1".
    pub fn parse(&self, text: &str) -> Result<Gf> {
        let text = text.trim();
        if let Some((head, tail)) = text.split_once(':') {
            let expect = format!("{}^{}", self.p, self.d);
            if head.trim() != expect {
                return Err(Error::Parse(format!("element tagged {head}, field is {expect}")));
            }
            return self.parse(tail);
        }
        if let Some(inner) = text.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unclosed list in {text:?}")))?;
            let c: Vec<u32> = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
                    .collect::<Result<_>>()?
            };
            return self.from_coeffs(&c);
        }
        self.parse_poly(text)
    }

    fn parse_poly(&self, text: &str) -> Result<Gf> {
        let bad = || Error::Parse(format!("cannot parse element {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut acc = Gf(0);
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let mut sign = 1i64;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                sign = -1;
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            if term.is_empty() {
                return Err(bad());
            }
            let (coef_str, power) = match term.find('w') {
                None => (term, 0u64),
                Some(i) => {
                    let after = &term[i + 1..];
                    let e = if after.is_empty() {
                        1
                    } else {
                        after
                            .strip_prefix('^')
                            .and_then(|x| x.parse::<u64>().ok())
                            .ok_or_else(bad)?
                    };
                    (term[..i].trim_end_matches('*'), e)
                }
            };
            let coef: i64 = if coef_str.is_empty() {
                1
            } else {
                coef_str.parse().map_err(|_| bad())?
            };
            let base = if power == 0 { Gf(1) } else { self.pow(self.gen(), power) };
            acc = self.add(acc, self.mul(self.from_int(sign * coef), base));
        }
        Ok(acc)
    }
}

fn pk_order(p: u32, d: u32) -> u32 {
    p.pow(d)
}

/// A field embedding given by its value table on the small field.
#[derive(Clone, Debug)]
pub struct Embedding {
    table: Vec<Gf>,
}

impl Embedding {
    #[inline]
    pub fn map(&self, a: Gf) -> Gf {
        self.table[a.0 as usize]
    }
}
