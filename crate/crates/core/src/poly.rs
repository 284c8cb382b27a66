//! Dense univariate polynomials over a finite field (coefficients low to high).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Gf};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DensePoly {
    pub c: Vec<Gf>,
}

impl DensePoly {
    pub fn new(mut c: Vec<Gf>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        DensePoly { c }
    }

    pub fn zero() -> Self {
        DensePoly { c: Vec::new() }
    }

    pub fn constant(a: Gf) -> Self {
        DensePoly::new(vec![a])
    }

    pub fn monomial(a: Gf, e: usize) -> Self {
        let mut c = vec![Gf::ZERO; e + 1];
        c[e] = a;
        DensePoly::new(c)
    }

    /// X − a.
    pub fn linear(k: &FieldCtx, a: Gf) -> Self {
        DensePoly::new(vec![k.neg(a), Gf::ONE])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Gf {
        self.c.last().copied().unwrap_or(Gf::ZERO)
    }

    pub fn coeff(&self, i: usize) -> Gf {
        self.c.get(i).copied().unwrap_or(Gf::ZERO)
    }

    pub fn add(&self, k: &FieldCtx, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        DensePoly::new((0..n).map(|i| k.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, k: &FieldCtx, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        DensePoly::new((0..n).map(|i| k.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, k: &FieldCtx) -> Self {
        DensePoly { c: self.c.iter().map(|&x| k.neg(x)).collect() }
    }

    pub fn scale(&self, k: &FieldCtx, a: Gf) -> Self {
        DensePoly::new(self.c.iter().map(|&x| k.mul(x, a)).collect())
    }

    pub fn mul(&self, k: &FieldCtx, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![Gf::ZERO; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        DensePoly::new(out)
    }

    pub fn divrem(&self, k: &FieldCtx, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = k.inv(d.lead())?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((DensePoly::zero(), self.clone()));
        }
        let mut quot = vec![Gf::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let f = k.mul(r[i], inv);
            if f.is_zero() {
                continue;
            }
            quot[i - dd] = f;
            for (j, &b) in d.c.iter().enumerate() {
                r[i - dd + j] = k.sub(r[i - dd + j], k.mul(f, b));
            }
        }
        Ok((DensePoly::new(quot), DensePoly::new(r)))
    }

    pub fn rem(&self, k: &FieldCtx, d: &Self) -> Result<Self> {
        Ok(self.divrem(k, d)?.1)
    }

    /// Exact quotient; fails if the remainder is nonzero.
    pub fn div_exact(&self, k: &FieldCtx, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(k, d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn derivative(&self, k: &FieldCtx) -> Self {
        DensePoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| k.mul(k.from_int(i as i64), a))
                .collect(),
        )
    }

    pub fn eval(&self, k: &FieldCtx, x: Gf) -> Gf {
        self.c.iter().rev().fold(Gf::ZERO, |acc, &a| k.add(k.mul(acc, x), a))
    }

    pub fn monic(&self, k: &FieldCtx) -> Self {
        match k.inv(self.lead()) {
            Ok(inv) => self.scale(k, inv),
            Err(_) => self.clone(),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, k: &FieldCtx, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(k, &b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn mulmod(&self, k: &FieldCtx, o: &Self, m: &Self) -> Self {
        self.mul(k, o).rem(k, m).expect("modulus nonzero")
    }

    pub fn powmod(&self, k: &FieldCtx, mut e: u64, m: &Self) -> Self {
        let mut acc = DensePoly::constant(Gf::ONE).rem(k, m).expect("modulus nonzero");
        let mut base = self.rem(k, m).expect("modulus nonzero");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(k, &base, m);
            }
            base = base.mulmod(k, &base, m);
            e >>= 1;
        }
        acc
    }

    /// Coefficientwise q^j-power with exponents scaled by q^j: the q^j-th power
    /// of the polynomial.
    pub fn frob_q(&self, k: &FieldCtx, j: u64) -> Self {
        if j == 0 || self.is_zero() {
            return self.clone();
        }
        let step = (k.q() as usize).pow(j as u32);
        let mut out = vec![Gf::ZERO; (self.c.len() - 1) * step + 1];
        for (i, &a) in self.c.iter().enumerate() {
            out[i * step] = k.frob_q(a, j);
        }
        DensePoly::new(out)
    }

    /// Composition self(o(X)).
    pub fn compose(&self, k: &FieldCtx, o: &Self) -> Self {
        self.c
            .iter()
            .rev()
            .fold(DensePoly::zero(), |acc, &a| acc.mul(k, o).add(k, &DensePoly::constant(a)))
    }

    /// Σ a_m X^{q^m} as a classical polynomial.
    pub fn from_additive(k: &FieldCtx, a: &[Gf]) -> Self {
        if a.is_empty() {
            return DensePoly::zero();
        }
        let q = k.q() as usize;
        let mut c = vec![Gf::ZERO; q.pow(a.len() as u32 - 1) + 1];
        for (m, &x) in a.iter().enumerate() {
            c[q.pow(m as u32)] = x;
        }
        DensePoly::new(c)
    }

    /// Inverse of `from_additive`; None unless only X^{q^m} terms occur.
    pub fn to_additive(&self, k: &FieldCtx) -> Option<Vec<Gf>> {
        let q = k.q() as usize;
        let mut out = Vec::new();
        let mut next = 1usize;
        for (i, &a) in self.c.iter().enumerate() {
            if i == next {
                out.push(a);
                next *= q;
            } else if !a.is_zero() {
                return None;
            }
        }
        while out.last().is_some_and(|x| x.is_zero()) {
            out.pop();
        }
        Some(out)
    }

    pub fn product_of_linears(k: &FieldCtx, roots: impl IntoIterator<Item = Gf>) -> Self {
        roots
            .into_iter()
            .fold(DensePoly::constant(Gf::ONE), |acc, r| acc.mul(k, &DensePoly::linear(k, r)))
    }
}

/// K[X] as a `Ring`.
#[derive(Clone, Debug)]
pub struct PolyRing {
    pub k: Arc<FieldCtx>,
}

impl Ring for PolyRing {
    type Elem = DensePoly;

    fn zero(&self) -> DensePoly {
        DensePoly::zero()
    }
    fn one(&self) -> DensePoly {
        DensePoly::constant(Gf::ONE)
    }
    fn is_zero(&self, a: &DensePoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        a.add(&self.k, b)
    }
    fn neg(&self, a: &DensePoly) -> DensePoly {
        a.neg(&self.k)
    }
    fn sub(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        a.sub(&self.k, b)
    }
    fn mul(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        a.mul(&self.k, b)
    }
    fn frob_q(&self, a: &DensePoly, k: u64) -> DensePoly {
        a.frob_q(&self.k, k)
    }
    fn fq_scalars(&self) -> Vec<DensePoly> {
        self.k.subfield_elements().iter().map(|&a| DensePoly::constant(a)).collect()
    }
    fn q(&self) -> u64 {
        self.k.q() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    #[test]
    fn divrem_reconstructs() {
        let k = build_field(3, 1, 2).unwrap();
        let a = DensePoly::new(vec![Gf(1), Gf(5), Gf(0), Gf(7), Gf(2)]);
        let d = DensePoly::new(vec![Gf(4), Gf(1), Gf(3)]);
        let (q, r) = a.divrem(&k, &d).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&k, &d).add(&k, &r), a);
        assert!(a.divrem(&k, &DensePoly::zero()).is_err());
    }

    #[test]
    fn frobenius_is_a_power() {
        let k = build_field(2, 1, 3).unwrap();
        let a = DensePoly::new(vec![Gf(3), Gf(1), Gf(6)]);
        assert_eq!(a.frob_q(&k, 1), a.mul(&k, &a));
        let a4 = a.mul(&k, &a).mul(&k, &a.mul(&k, &a));
        assert_eq!(a.frob_q(&k, 2), a4);
    }

    #[test]
    fn additive_round_trip() {
        let k = build_field(2, 1, 2).unwrap();
        let p = DensePoly::from_additive(&k, &[Gf(1), Gf(0), Gf(1)]);
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.to_additive(&k), Some(vec![Gf(1), Gf(0), Gf(1)]));
        assert_eq!(DensePoly::new(vec![Gf(1)]).to_additive(&k), None);
    }

    #[test]
    fn gcd_of_coprime_and_shared() {
        let k = build_field(5, 1, 1).unwrap();
        let a = DensePoly::product_of_linears(&k, [Gf(1), Gf(2)]);
        let b = DensePoly::product_of_linears(&k, [Gf(2), Gf(3)]);
        assert_eq!(a.gcd(&k, &b), DensePoly::linear(&k, Gf(2)));
        let c = DensePoly::product_of_linears(&k, [Gf(4)]);
        assert_eq!(a.gcd(&k, &c), DensePoly::constant(Gf(1)));
    }
}
