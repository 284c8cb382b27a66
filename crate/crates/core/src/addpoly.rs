//! F_q-linear polynomials Σ c_m X^{q^m}, stored by their q-power coefficients.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Gf};
use crate::moore;
use crate::poly::DensePoly;

/// Largest |W| for which `subspace_poly` also runs the product-over-W oracle.
pub const PRODUCT_ORACLE_CAP: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivePoly {
    pub ctx: Arc<FieldCtx>,
    coeffs: Vec<Gf>,
}

impl AdditivePoly {
    pub fn new(ctx: Arc<FieldCtx>, mut coeffs: Vec<Gf>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        AdditivePoly { ctx, coeffs }
    }

    pub fn zero(ctx: Arc<FieldCtx>) -> Self {
        AdditivePoly { ctx, coeffs: Vec::new() }
    }

    /// X^{q^m}.
    pub fn x_pow(ctx: Arc<FieldCtx>, m: usize) -> Self {
        let mut c = vec![Gf::ZERO; m + 1];
        c[m] = Gf::ONE;
        AdditivePoly { ctx, coeffs: c }
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> Gf {
        self.coeffs.get(m).copied().unwrap_or(Gf::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// n with deg = q^n.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_reduced(&self) -> bool {
        !self.coeff(0).is_zero()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Gf::ONE)
    }

    pub fn eval(&self, x: Gf) -> Gf {
        let k = &self.ctx;
        let mut acc = Gf::ZERO;
        let mut xp = x;
        for (m, &c) in self.coeffs.iter().enumerate() {
            if m > 0 {
                xp = k.frob_q(xp, 1);
            }
            acc = k.add(acc, k.mul(c, xp));
        }
        acc
    }

    pub fn to_dense(&self) -> DensePoly {
        DensePoly::from_additive(&self.ctx, &self.coeffs)
    }

    pub fn from_dense(ctx: Arc<FieldCtx>, p: &DensePoly) -> Option<Self> {
        let c = p.to_additive(&ctx)?;
        Some(AdditivePoly::new(ctx, c))
    }

    /// self ∘ other, with (P∘Q)_k = Σ_{i+j=k} p_i q_j^{q^i}.
    pub fn compose(&self, other: &AdditivePoly) -> AdditivePoly {
        let k = &self.ctx;
        if self.is_zero() || other.is_zero() {
            return AdditivePoly::zero(self.ctx.clone());
        }
        let mut out = vec![Gf::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, &q) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(p, k.frob_q(q, i as u64)));
            }
        }
        AdditivePoly::new(self.ctx.clone(), out)
    }

    /// The Q with self = Q ∘ d, for monic d.
    pub fn right_divide(&self, d: &AdditivePoly) -> Result<AdditivePoly> {
        let k = &self.ctx;
        if !d.is_monic() {
            return Err(Error::Precondition("right divisor must be monic".into()));
        }
        let r = d.q_degree().unwrap();
        let Some(n) = self.q_degree() else {
            return Ok(AdditivePoly::zero(self.ctx.clone()));
        };
        if n < r {
            return Err(Error::NotRightDivisible);
        }
        let mut q = vec![Gf::ZERO; n - r + 1];
        for top in (r..=n).rev() {
            // coefficient of X^{q^top}: Σ_i q_i d_{top-i}^{q^i}; the i = top-r term has d_r = 1.
            let mut acc = self.coeff(top);
            for (i, &qi) in q.iter().enumerate().skip(top - r + 1) {
                if top >= i {
                    acc = k.sub(acc, k.mul(qi, k.frob_q(d.coeff(top - i), i as u64)));
                }
            }
            q[top - r] = acc;
        }
        let result = AdditivePoly::new(self.ctx.clone(), q);
        if result.compose(d) != *self {
            return Err(Error::NotRightDivisible);
        }
        Ok(result)
    }

    /// ρP: coefficient c_{n−m}^{q^m} at X^{q^m}.
    pub fn reverse(&self) -> Result<AdditivePoly> {
        let Some(n) = self.q_degree() else {
            return Err(Error::NotFullDegree);
        };
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        let k = &self.ctx;
        let c = (0..=n).map(|m| k.frob_q(self.coeff(n - m), m as u64)).collect();
        Ok(AdditivePoly::new(self.ctx.clone(), c))
    }

    /// F_p-basis of {x ∈ K : P(x) = 0}; checked to be F_q-stable.
    pub fn kernel_in(&self) -> Vec<Gf> {
        let k = &self.ctx;
        let basis = k.kernel_of(|x| self.eval(x));
        debug_assert!(basis.iter().all(|&b| k
            .q_basis()
            .iter()
            .all(|&l| k.solve_fp_span(&basis, k.mul(l, b)).is_some())));
        basis
    }
}

/// An F_q-basis w̲ of a subspace W ⊂ K, with Δ_n(w̲) cached.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub ctx: Arc<FieldCtx>,
    w: Vec<Gf>,
    delta: Gf,
}

impl SubspaceBasis {
    pub fn new(ctx: Arc<FieldCtx>, w: Vec<Gf>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyTuple);
        }
        let delta = moore::moore_det(&ctx, &w);
        if delta.is_zero() {
            return Err(Error::DependentBasis);
        }
        Ok(SubspaceBasis { ctx, w, delta })
    }

    pub fn w(&self) -> &[Gf] {
        &self.w
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    /// Δ_n(w̲).
    pub fn delta(&self) -> Gf {
        self.delta
    }

    /// |W| = q^n.
    pub fn size(&self) -> u64 {
        (self.ctx.q() as u64).pow(self.n() as u32)
    }

    /// ((±1)Δ_{n−1}(ŵ_i))_i, with Δ_0 = 1.
    pub fn minors(&self, signed: bool) -> Vec<Gf> {
        moore::minors(&self.ctx, &self.w, signed)
    }

    /// Σ ε_i w_i.
    pub fn combine(&self, eps: &[Gf]) -> Gf {
        let k = &self.ctx;
        k.sum(self.w.iter().zip(eps).map(|(&w, &e)| k.mul(w, e)))
    }

    /// All coordinate vectors ε ∈ F_q^n, ε_1 varying fastest.
    pub fn coordinate_vectors(&self) -> Vec<Vec<Gf>> {
        fq_vectors(&self.ctx, self.n())
    }

    /// All elements of W, in `coordinate_vectors` order.
    pub fn elements(&self) -> Vec<Gf> {
        self.coordinate_vectors().iter().map(|e| self.combine(e)).collect()
    }

    /// ε(x) with x = Σ ε_i w_i, if x ∈ W.
    pub fn coords(&self, x: Gf) -> Option<Vec<Gf>> {
        self.ctx.solve_fq_span(&self.w, x)
    }
}

/// All of F_q^n, first coordinate varying fastest.
pub fn fq_vectors(k: &FieldCtx, n: usize) -> Vec<Vec<Gf>> {
    let sub = k.subfield_elements();
    let q = sub.len();
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let e = sub[idx % q];
                    idx /= q;
                    e
                })
                .collect()
        })
        .collect()
}

/// P_W via Δ_{n+1}(w̲, X)/Δ_n(w̲): c_m = (−1)^{n+m} Δ[m](w̲)/Δ_n(w̲).
pub fn subspace_poly_det(b: &SubspaceBasis) -> AdditivePoly {
    let k = &b.ctx;
    let inv = k.inv(b.delta).expect("basis is independent");
    let c = moore::bordered_coeffs(k, &b.w).into_iter().map(|x| k.mul(x, inv)).collect();
    AdditivePoly::new(b.ctx.clone(), c)
}

/// P_W via Π_{x∈W}(X − x).
pub fn subspace_poly_product(b: &SubspaceBasis) -> Result<AdditivePoly> {
    if b.size() > PRODUCT_ORACLE_CAP {
        return Err(Error::Precondition(format!("|W| = {} above the product cap", b.size())));
    }
    let dense = DensePoly::product_of_linears(&b.ctx, b.elements());
    AdditivePoly::from_dense(b.ctx.clone(), &dense)
        .ok_or_else(|| Error::InternalMismatch("product over W is not additive".into()))
}

/// Monic subspace polynomial; the two constructions are cross-checked when
/// |W| is small enough for the product.
pub fn subspace_poly(b: &SubspaceBasis) -> Result<AdditivePoly> {
    let p = subspace_poly_det(b);
    if b.size() <= PRODUCT_ORACLE_CAP && subspace_poly_product(b)? != p {
        return Err(Error::InternalMismatch("subspace polynomial constructions disagree".into()));
    }
    Ok(p)
}

/// δ_φ(w̲) = Σ_i α_i (−1)^{i−1} Δ_{n−1}(ŵ_i).
pub fn delta_phi(b: &SubspaceBasis, alpha: &[Gf]) -> Gf {
    let k = &b.ctx;
    k.sum(b.minors(true).iter().zip(alpha).map(|(&m, &a)| k.mul(m, a)))
}

/// Additive coefficients of Δ_φ(w̲, X) = Σ_i α_i (−1)^{i−1} Δ_n(ŵ_i, X).
pub fn delta_phi_poly(b: &SubspaceBasis, alpha: &[Gf]) -> Vec<Gf> {
    let k = &b.ctx;
    let n = b.n();
    let mut acc = vec![Gf::ZERO; n];
    for i in 0..n {
        if alpha[i].is_zero() {
            continue;
        }
        let hat: Vec<Gf> = b.w.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        let coeffs = if hat.is_empty() { vec![Gf::ONE] } else { moore::bordered_coeffs(k, &hat) };
        let s = if i % 2 == 1 { k.neg(alpha[i]) } else { alpha[i] };
        for (m, &c) in coeffs.iter().enumerate() {
            acc[m] = k.add(acc[m], k.mul(s, c));
        }
    }
    acc
}

fn check_functional(b: &SubspaceBasis, alpha: &[Gf]) -> Result<()> {
    if alpha.len() != b.n() {
        return Err(Error::Precondition(format!("functional has {} entries, basis has {}", alpha.len(), b.n())));
    }
    if alpha.iter().any(|&a| !b.ctx.is_in_fq(a)) {
        return Err(Error::Precondition("functional coefficients must lie in F_q".into()));
    }
    if alpha.iter().all(|a| a.is_zero()) {
        return Err(Error::ZeroFunctional);
    }
    Ok(())
}

/// (P_{ker φ}, δ_φ) for φ = Σ α_i w_i^*.
pub fn hyperplane_poly(b: &SubspaceBasis, alpha: &[Gf]) -> Result<(AdditivePoly, Gf)> {
    check_functional(b, alpha)?;
    let k = &b.ctx;
    let d = delta_phi(b, alpha);
    let inv = k.inv(d).map_err(|_| Error::InternalMismatch("δ_φ vanished on an independent basis".into()))?;
    let c = delta_phi_poly(b, alpha).into_iter().map(|x| k.mul(x, inv)).collect();
    Ok((AdditivePoly::new(b.ctx.clone(), c), d))
}

/// u_i = (Δ_{n−1}(ŵ_i)/Δ_n(w̲))^q, verified to be roots of ρP_W.
pub fn reversed_kernel_basis(b: &SubspaceBasis) -> Result<Vec<Gf>> {
    let k = &b.ctx;
    let inv = k.inv(b.delta)?;
    let u: Vec<Gf> = b.minors(false).iter().map(|&m| k.frob_q(k.mul(m, inv), 1)).collect();
    let rho = subspace_poly_det(b).reverse()?;
    if u.iter().any(|&x| !rho.eval(x).is_zero()) {
        return Err(Error::KernelNotRational);
    }
    Ok(u)
}

/// Closed form of P_Ŵ, Ŵ spanned by the minors Δ_{n−1}(ŵ_i):
/// X^{q^n} + (−1)^n (Σ_{m=1}^{n−1} c_{n−m}^{q^{m−1}} Δ^{q^{n−1}−q^m} X^{q^m} + Δ^{q^{n−1}−1} X).
pub fn ore_hat_poly(b: &SubspaceBasis) -> AdditivePoly {
    let k = &b.ctx;
    let n = b.n();
    let q = k.q() as u64;
    let p = subspace_poly_det(b);
    let dl = b.delta;
    let sign = |x: Gf| if n % 2 == 1 { k.neg(x) } else { x };
    let mut c = vec![Gf::ZERO; n + 1];
    c[n] = Gf::ONE;
    c[0] = sign(k.pow(dl, q.pow(n as u32 - 1) - 1));
    for m in 1..n {
        let t = k.mul(
            k.frob_q(p.coeff(n - m), m as u64 - 1),
            k.pow(dl, q.pow(n as u32 - 1) - q.pow(m as u32)),
        );
        c[m] = sign(t);
    }
    AdditivePoly::new(b.ctx.clone(), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    fn f4() -> Arc<FieldCtx> {
        build_field(2, 1, 2).unwrap()
    }

    #[test]
    fn subspace_polys_in_f4() {
        let k = f4();
        let w = k.gen();
        let full = SubspaceBasis::new(k.clone(), vec![Gf::ONE, w]).unwrap();
        assert_eq!(subspace_poly(&full).unwrap().coeffs(), &[Gf::ONE, Gf::ZERO, Gf::ONE]);
        let line = SubspaceBasis::new(k.clone(), vec![w]).unwrap();
        assert_eq!(subspace_poly(&line).unwrap().coeffs(), &[w, Gf::ONE]);
        let one = SubspaceBasis::new(k.clone(), vec![Gf::ONE]).unwrap();
        assert_eq!(subspace_poly(&one).unwrap().coeffs(), &[Gf::ONE, Gf::ONE]);
        assert_eq!(
            SubspaceBasis::new(k.clone(), vec![w, w]).unwrap_err(),
            Error::DependentBasis
        );
    }

    #[test]
    fn hyperplanes_in_f4() {
        let k = f4();
        let w = k.gen();
        let b = SubspaceBasis::new(k.clone(), vec![Gf::ONE, w]).unwrap();
        let (p, d) = hyperplane_poly(&b, &[Gf::ONE, Gf::ZERO]).unwrap();
        assert_eq!(p.coeffs(), &[w, Gf::ONE]);
        assert_eq!(d, w);
        let (p, _) = hyperplane_poly(&b, &[Gf::ZERO, Gf::ONE]).unwrap();
        assert_eq!(p.coeffs(), &[Gf::ONE, Gf::ONE]);
        assert_eq!(hyperplane_poly(&b, &[Gf::ZERO, Gf::ZERO]).unwrap_err(), Error::ZeroFunctional);
    }

    #[test]
    fn evaluation_and_composition() {
        let k = f4();
        let w = k.gen();
        let p = AdditivePoly::new(k.clone(), vec![Gf::ONE, Gf::ONE]);
        assert_eq!(p.eval(w), Gf::ONE);
        assert_eq!(p.eval(Gf::ZERO), Gf::ZERO);
        let sq = p.compose(&p);
        assert_eq!(sq.coeffs(), &[Gf::ONE, Gf::ZERO, Gf::ONE]);
        let xq = AdditivePoly::x_pow(k.clone(), 1);
        assert_eq!(xq.compose(&xq), AdditivePoly::x_pow(k.clone(), 2));
        assert_eq!(p.compose(&AdditivePoly::x_pow(k.clone(), 0)), p);
        assert_eq!(sq.right_divide(&p).unwrap(), p);
        assert_eq!(p.right_divide(&p).unwrap(), AdditivePoly::x_pow(k.clone(), 0));
        let not_div = AdditivePoly::new(k.clone(), vec![w, Gf::ZERO, Gf::ONE]);
        assert_eq!(not_div.right_divide(&p).unwrap_err(), Error::NotRightDivisible);
    }

    #[test]
    fn kernels_in_f4() {
        let k = f4();
        let w = k.gen();
        assert_eq!(AdditivePoly::new(k.clone(), vec![Gf::ONE, Gf::ONE]).kernel_in(), vec![Gf::ONE]);
        assert_eq!(AdditivePoly::new(k.clone(), vec![Gf::ONE, Gf::ZERO, Gf::ONE]).kernel_in().len(), 2);
        let ker = AdditivePoly::new(k.clone(), vec![w, Gf::ONE]).kernel_in();
        assert_eq!(ker, vec![w]);
    }

    #[test]
    fn reversal() {
        let k = build_field(3, 1, 3).unwrap();
        let c = Gf(5);
        let p = AdditivePoly::new(k.clone(), vec![c, Gf::ONE]);
        assert_eq!(p.reverse().unwrap().coeffs(), &[Gf::ONE, k.frob_q(c, 1)]);
        let p = AdditivePoly::new(k.clone(), vec![Gf(4), Gf(7), Gf(11)]);
        let twice = p.reverse().unwrap().reverse().unwrap();
        let expect: Vec<Gf> = p.coeffs().iter().map(|&x| k.frob_q(x, 2)).collect();
        assert_eq!(twice.coeffs(), expect.as_slice());
        let not_reduced = AdditivePoly::new(k.clone(), vec![Gf::ZERO, Gf::ONE]);
        assert_eq!(not_reduced.reverse().unwrap_err(), Error::NotReduced);
    }

    #[test]
    fn dual_basis_for_a_line() {
        let k = build_field(2, 1, 4).unwrap();
        let w = Gf(6);
        let b = SubspaceBasis::new(k.clone(), vec![w]).unwrap();
        let u = reversed_kernel_basis(&b).unwrap();
        assert_eq!(u, vec![k.inv(k.frob_q(w, 1)).unwrap()]);
    }

    #[test]
    fn ore_closed_form_small() {
        let k = f4();
        let line = SubspaceBasis::new(k.clone(), vec![k.gen()]).unwrap();
        assert_eq!(ore_hat_poly(&line).coeffs(), &[Gf::ONE, Gf::ONE]);
        let b = SubspaceBasis::new(k.clone(), vec![Gf::ONE, k.gen()]).unwrap();
        let hat = SubspaceBasis::new(k.clone(), b.minors(false)).unwrap();
        assert_eq!(ore_hat_poly(&b), subspace_poly(&hat).unwrap());
    }
}
