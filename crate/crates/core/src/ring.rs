//! Minimal commutative-ring interface shared by field elements, univariate
//! polynomials over a field, and sparse multivariate polynomials over F_q.
//!
//! Every ring here has characteristic p and contains F_q, so the q-power
//! Frobenius is a ring endomorphism. Identities written once against this
//! trait run both symbolically and on random specializations.

use crate::gf::{FieldCtx, Gf};

pub trait Ring {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// a^{q^k}.
    fn frob_q(&self, a: &Self::Elem, k: u64) -> Self::Elem;
    /// The q elements of F_q as ring constants.
    fn fq_scalars(&self) -> Vec<Self::Elem>;
    fn q(&self) -> u64;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn signed(&self, a: &Self::Elem, negate: bool) -> Self::Elem {
        if negate {
            self.neg(a)
        } else {
            a.clone()
        }
    }

    /// a^e, splitting e into base-q digits so that q-powers cost one Frobenius.
    fn pow(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        let q = self.q();
        let mut acc = self.one();
        let mut k = 0u64;
        let mut rest = e;
        while rest > 0 {
            let digit = rest % q;
            if digit > 0 {
                let mut d = self.one();
                let mut base = a.clone();
                let mut bits = digit;
                while bits > 0 {
                    if bits & 1 == 1 {
                        d = self.mul(&d, &base);
                    }
                    bits >>= 1;
                    if bits > 0 {
                        base = self.mul(&base, &base);
                    }
                }
                acc = self.mul(&acc, &self.frob_q(&d, k));
            }
            rest /= q;
            k += 1;
        }
        acc
    }
}

impl Ring for FieldCtx {
    type Elem = Gf;

    fn zero(&self) -> Gf {
        Gf::ZERO
    }
    fn one(&self) -> Gf {
        Gf::ONE
    }
    fn is_zero(&self, a: &Gf) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Gf, b: &Gf) -> Gf {
        FieldCtx::add(self, *a, *b)
    }
    fn neg(&self, a: &Gf) -> Gf {
        FieldCtx::neg(self, *a)
    }
    fn sub(&self, a: &Gf, b: &Gf) -> Gf {
        FieldCtx::sub(self, *a, *b)
    }
    fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        FieldCtx::mul(self, *a, *b)
    }
    fn frob_q(&self, a: &Gf, k: u64) -> Gf {
        FieldCtx::frob_q(self, *a, k)
    }
    fn fq_scalars(&self) -> Vec<Gf> {
        self.subfield_elements().to_vec()
    }
    fn q(&self) -> u64 {
        FieldCtx::q(self) as u64
    }
    fn pow(&self, a: &Gf, e: u64) -> Gf {
        FieldCtx::pow(self, *a, e)
    }
}

/// (−1)^k as a ring element.
pub fn sign<R: Ring>(r: &R, k: u64) -> R::Elem {
    r.signed(&r.one(), k % 2 == 1)
}

/// θ_k = 1 + q + … + q^{k-1}.
pub fn theta(q: u64, k: u32) -> u64 {
    (0..k).map(|i| q.pow(i)).sum()
}
