//! The étale algebra A = K[W]/(Q) attached to an Artin–Schreier system
//! W_i^p − W_i = f_i over K ⊇ F_p, with Δ_n(f̲) ≠ 0 over F_p.
//!
//! Everything here has q = p, so contexts must have s = 1.

use std::sync::Arc;

use crate::addpoly::{self, SubspaceBasis};
use crate::error::{Error, Result};
use crate::gf::linalg::{self, Matrix};
use crate::gf::{FieldCtx, Gf};
use crate::moore;
use crate::pairing::PairingContext;
use crate::poly::DensePoly;
use crate::ring::theta;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub j: usize,
    /// λ_{j,i} for i in `ASSystem::i_set`, in that order.
    pub lambda: Vec<u32>,
    pub g: Gf,
}

#[derive(Clone, Debug)]
pub struct ASSystem {
    pub ctx: Arc<FieldCtx>,
    pub f: Vec<Gf>,
    pub r: usize,
    pub i_set: Vec<usize>,
    pub j_set: Vec<usize>,
    pub relations: Vec<Relation>,
}

fn require_prime_subfield(k: &FieldCtx) -> Result<()> {
    if k.s() != 1 {
        return Err(Error::Precondition("Artin-Schreier systems need q = p (s = 1)".into()));
    }
    Ok(())
}

/// x^p − x.
fn wp(k: &FieldCtx, x: Gf) -> Gf {
    k.sub(k.frob_p(x, 1), x)
}

/// Rank of the classes of f̲ modulo (F − Id)K, a greedy index-order choice of
/// I, and the relations f_j = Σ_{i∈I} λ_{j,i} f_i + g_j^p − g_j for j ∉ I.
pub fn analyze_system(k: Arc<FieldCtx>, f: Vec<Gf>) -> Result<ASSystem> {
    require_prime_subfield(&k)?;
    if f.is_empty() {
        return Err(Error::EmptyTuple);
    }
    if moore::moore_det(&k, &f).is_zero() {
        return Err(Error::DependentInput);
    }
    let p = k.p();
    let d = k.d() as usize;
    let unit: Vec<Gf> = (0..d).map(|i| Gf(p.pow(i as u32))).collect();
    let images: Vec<Gf> = unit.iter().map(|&e| wp(&k, e)).collect();

    let mut i_set = Vec::new();
    let mut j_set = Vec::new();
    for (idx, &fi) in f.iter().enumerate() {
        let mut span: Vec<Gf> = i_set.iter().map(|&i| f[i]).collect();
        span.extend(&images);
        if k.solve_fp_span(&span, fi).is_some() {
            j_set.push(idx);
        } else {
            i_set.push(idx);
        }
    }

    let mut span: Vec<Gf> = i_set.iter().map(|&i| f[i]).collect();
    span.extend(&images);
    let mut relations = Vec::new();
    for &j in &j_set {
        let c = k.solve_fp_span(&span, f[j]).ok_or_else(|| Error::InternalMismatch("relation lost".into()))?;
        let lambda = c[..i_set.len()].to_vec();
        let g = k.combine(&unit, &c[i_set.len()..]);
        let rebuilt = k.add(k.combine(&span[..i_set.len()], &lambda), wp(&k, g));
        if rebuilt != f[j] {
            return Err(Error::InternalMismatch(format!("relation for f_{} does not hold", j + 1)));
        }
        relations.push(Relation { j, lambda, g });
    }
    Ok(ASSystem { ctx: k, r: i_set.len(), f, i_set, j_set, relations })
}

#[derive(Clone, Debug)]
pub struct EtaleAlgebra {
    pub system: ASSystem,
    /// Monic of degree p^n, coefficients low to high.
    pub q_poly: DensePoly,
    /// Signed minors (−1)^i Δ_{n−1}(f̂_i), 0-based; F_p-basis of Z.
    pub z_basis: Vec<Gf>,
    pub delta: Gf,
}

/// The closed form W^{p^n} + Σ_{i=1}^{n−1} (−1)^{n−i} Δ^{p^{n−1}−p^{i−1}−p^i} Δ[n−i](f̲)^{p^{i−1}} W^{p^i}
/// + (−1)^n Δ^{p^{n−1}−1} W − Δ^{p^{n−1}}.
pub fn q_closed_form(k: &FieldCtx, f: &[Gf]) -> DensePoly {
    let n = f.len();
    let p = k.p() as u64;
    let nn = n as u32;
    let delta = moore::moore_det(k, f);
    let sgn = |e: usize, x: Gf| if e % 2 == 1 { k.neg(x) } else { x };
    let mut add = vec![Gf::ZERO; n + 1];
    add[n] = Gf::ONE;
    add[0] = sgn(n, k.pow(delta, p.pow(nn - 1) - 1));
    for i in 1..n {
        // Negative at i = n − 1; Δ ≠ 0, and the product is still a polynomial in f̲.
        let e = p.pow(nn - 1) as i64 - p.pow(i as u32 - 1) as i64 - p.pow(i as u32) as i64;
        let c = k.mul(k.pow_signed(delta, e).expect("delta is nonzero"), k.frob_p(moore::delta_omit(k, f, n - i), i as u64 - 1));
        add[i] = sgn(n - i, c);
    }
    let constant = k.neg(k.pow(delta, p.pow(nn - 1)));
    DensePoly::from_additive(k, &add).add(k, &DensePoly::constant(constant))
}

/// P_Z(W) − Δ^{p^{n−1}}, Z spanned by the minors of f̲.
pub fn q_determinant_form(k: &Arc<FieldCtx>, f: &[Gf]) -> Result<DensePoly> {
    let n = f.len();
    let delta = moore::moore_det(k, f);
    let minors = moore::minors(k, f, false);
    let z = SubspaceBasis::new(k.clone(), minors)?;
    let pz = addpoly::subspace_poly_det(&z).to_dense();
    let c = k.pow(delta, (k.p() as u64).pow(n as u32 - 1));
    Ok(pz.sub(k, &DensePoly::constant(c)))
}

pub fn build_q(system: ASSystem) -> Result<EtaleAlgebra> {
    let k = system.ctx.clone();
    let f = &system.f;
    let closed = q_closed_form(&k, f);
    let det_form = q_determinant_form(&k, f)?;
    if closed != det_form {
        return Err(Error::InternalMismatch("closed form and determinant form of Q differ".into()));
    }
    let g = closed.gcd(&k, &closed.derivative(&k));
    if g.degree() != Some(0) {
        return Err(Error::InternalMismatch("Q is not squarefree".into()));
    }
    let z_basis = moore::minors(&k, f, true);
    let delta = moore::moore_det(&k, f);
    Ok(EtaleAlgebra { system, q_poly: closed, z_basis, delta })
}

impl EtaleAlgebra {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.system.ctx
    }

    pub fn n(&self) -> usize {
        self.system.f.len()
    }

    pub fn dim(&self) -> usize {
        self.q_poly.degree().unwrap()
    }

    pub fn reduce(&self, a: &DensePoly) -> DensePoly {
        a.rem(self.ctx(), &self.q_poly).expect("Q is monic")
    }

    pub fn mul(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        a.mulmod(self.ctx(), b, &self.q_poly)
    }

    pub fn pow(&self, a: &DensePoly, e: u64) -> DensePoly {
        a.powmod(self.ctx(), e, &self.q_poly)
    }

    /// The class w of W.
    pub fn w(&self) -> DensePoly {
        self.reduce(&DensePoly::monomial(Gf::ONE, 1))
    }

    /// σ_z(a) = a(W + z).
    pub fn translate(&self, a: &DensePoly, z: Gf) -> DensePoly {
        let k = self.ctx();
        let shift = DensePoly::new(vec![z, Gf::ONE]);
        self.reduce(&a.compose(k, &shift))
    }

    /// w_i = (Σ_j C_{j,i} W^{p^j}) / Δ_n(z̲) − (f_i + f_i^p + … + f_i^{p^{n−2}}), where C is
    /// the cofactor matrix of 𝓜_n(z̲). Verified: w_i^p − w_i = f_i and Σ z_i w_i = W.
    pub fn recover_generators(&self) -> Result<Vec<DensePoly>> {
        let k = self.ctx();
        let n = self.n();
        let z = &self.z_basis;
        let mz = moore::moore_matrix(k, z, n)?;
        let dz = linalg::det(k, &mz);
        // Δ_n of the signed minors is Δ^{1+p+…+p^{n−2}}.
        let expect = k.pow(self.delta, theta(k.p() as u64, n as u32 - 1));
        if dz != expect {
            return Err(Error::VerificationFailed("Moore determinant of the minors has the wrong sign".into()));
        }
        let inv = k.inv(dz)?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = DensePoly::zero();
            for j in 0..n {
                let minor: Matrix = mz
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != j)
                    .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, &x)| x).collect())
                    .collect();
                let mut cof = linalg::det(k, &minor);
                if (i + j) % 2 == 1 {
                    cof = k.neg(cof);
                }
                let term = DensePoly::monomial(k.mul(cof, inv), (k.p() as usize).pow(j as u32));
                acc = acc.add(k, &term);
            }
            let fi = self.system.f[i];
            let corr = k.sum((0..n.saturating_sub(1)).map(|e| k.frob_p(fi, e as u64)));
            out.push(self.reduce(&acc.sub(k, &DensePoly::constant(corr))));
        }

        let p = k.p() as u64;
        for (i, wi) in out.iter().enumerate() {
            let lhs = self.pow(wi, p).sub(k, wi);
            if lhs != DensePoly::constant(self.system.f[i]) {
                return Err(Error::VerificationFailed(format!("w_{}^p - w_{} != f_{}", i + 1, i + 1, i + 1)));
            }
        }
        let rebuilt = out
            .iter()
            .zip(z)
            .fold(DensePoly::zero(), |acc, (wi, &zi)| acc.add(k, &wi.scale(k, zi)));
        if rebuilt != self.w() {
            return Err(Error::VerificationFailed("sum of z_i w_i is not W".into()));
        }
        Ok(out)
    }

    /// Coordinates of z over the signed minors, if z ∈ Z.
    pub fn z_coords(&self, z: Gf) -> Result<Vec<u32>> {
        self.ctx().solve_fp_span(&self.z_basis, z).ok_or(Error::NotInZ)
    }

    /// All of Z.
    pub fn z_elements(&self) -> Vec<Gf> {
        let k = self.ctx();
        addpoly::fq_vectors(k, self.n()).iter().map(|e| {
            k.sum(self.z_basis.iter().zip(e).map(|(&b, &x)| k.mul(b, x)))
        }).collect()
    }

    /// Checks that σ_z fixes Q and shifts every w_ε by (−1)^{n−1} E(f_ε, (z/Δ)^p).
    /// Returns the shifts, indexed like `addpoly::fq_vectors` (entry 0 is ε = 0).
    pub fn sigma_action(&self, gens: &[DensePoly], pc: &PairingContext, z: Gf) -> Result<SigmaAction> {
        let k = self.ctx();
        self.z_coords(z)?;
        let shifted_q = self.q_poly.compose(k, &DensePoly::new(vec![z, Gf::ONE]));
        if shifted_q != self.q_poly {
            return Err(Error::VerificationFailed("Q(W + z) != Q(W)".into()));
        }
        let u = k.frob_p(k.div(z, self.delta)?, 1);
        let n = self.n();
        let mut shifts = Vec::new();
        for eps in addpoly::fq_vectors(k, n) {
            let w_eps = gens
                .iter()
                .zip(&eps)
                .fold(DensePoly::zero(), |acc, (g, &e)| acc.add(k, &g.scale(k, e)));
            let f_eps = k.sum(self.system.f.iter().zip(&eps).map(|(&f, &e)| k.mul(f, e)));
            let moved = self.translate(&w_eps, z);
            let diff = moved.sub(k, &w_eps);
            let e = pc.elkies_e(f_eps, u)?;
            let expect = if n % 2 == 0 { k.neg(e) } else { e };
            let shift = match diff.degree() {
                None => Gf::ZERO,
                Some(0) => diff.lead(),
                Some(_) => return Err(Error::VerificationFailed("sigma_z does not shift by a constant".into())),
            };
            if shift != expect {
                return Err(Error::VerificationFailed(format!(
                    "sigma_z shift {} differs from the pairing value {}",
                    k.to_canonical(shift),
                    k.to_canonical(expect)
                )));
            }
            shifts.push(shift);
        }
        Ok(SigmaAction { z, u, shifts })
    }

    /// Matrix of a ↦ a^{|K|} on the basis 1, W, …, W^{deg Q − 1}; row i is the image of W^i.
    fn frobenius_matrix(&self) -> Matrix {
        let k = self.ctx();
        let big = self.pow(&self.w(), k.order() as u64);
        let dim = self.dim();
        let mut img = DensePoly::constant(Gf::ONE);
        (0..dim)
            .map(|_| {
                let row = (0..dim).map(|c| img.coeff(c)).collect();
                img = self.mul(&img, &big);
                row
            })
            .collect()
    }

    /// Number of irreducible factors of Q over K: the nullity of a ↦ a^{|K|} − a.
    pub fn count_simple_factors(&self) -> usize {
        let k = self.ctx();
        let mut m = self.frobenius_matrix();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = k.sub(row[i], Gf::ONE);
        }
        self.dim() - linalg::rank(k, &m)
    }

    /// True when W^{|K|^e} = W, i.e. every irreducible factor of Q has degree dividing e.
    pub fn factor_degrees_divide(&self, e: u64) -> bool {
        let k = self.ctx();
        let mut x = self.w();
        for _ in 0..e {
            x = self.pow(&x, k.order() as u64);
        }
        x == self.w()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaAction {
    pub z: Gf,
    pub u: Gf,
    pub shifts: Vec<Gf>,
}

/// Every check for one system: Q forms, generators, factor count p^{n−r}
/// with factors of degree p^r, and the σ_z law for all z ∈ Z.
#[derive(Clone, Debug)]
pub struct EtaleReport {
    pub r: usize,
    pub factor_count: usize,
    pub expected_factor_count: usize,
    pub actions: Vec<SigmaAction>,
}

pub fn verify_system(k: Arc<FieldCtx>, f: Vec<Gf>) -> Result<EtaleReport> {
    let sys = analyze_system(k.clone(), f.clone())?;
    let alg = build_q(sys)?;
    let gens = alg.recover_generators()?;
    let p = k.p() as usize;
    let n = alg.n();
    let r = alg.system.r;
    let count = alg.count_simple_factors();
    let expected = p.pow((n - r) as u32);
    if count != expected {
        return Err(Error::VerificationFailed(format!("{count} factors, expected {expected}")));
    }
    if !alg.factor_degrees_divide((p as u64).pow(r as u32)) {
        return Err(Error::VerificationFailed("a factor has degree not dividing p^r".into()));
    }
    let pc = PairingContext::new(SubspaceBasis::new(k.clone(), f)?)?;
    let actions = alg
        .z_elements()
        .into_iter()
        .map(|z| alg.sigma_action(&gens, &pc, z))
        .collect::<Result<Vec<_>>>()?;
    let mut images: Vec<Vec<Gf>> = actions.iter().map(|a| alg.translate(&alg.w(), a.z).c).collect();
    images.sort();
    images.dedup();
    if images.len() != actions.len() {
        return Err(Error::VerificationFailed("z -> sigma_z is not injective".into()));
    }
    // σ_z ∘ σ_z' = σ_{z+z'} on every generator.
    for a in &actions {
        for b in &actions {
            let sum = k.add(a.z, b.z);
            for g in &gens {
                if alg.translate(&alg.translate(g, b.z), a.z) != alg.translate(g, sum) {
                    return Err(Error::VerificationFailed("sigma is not a homomorphism".into()));
                }
            }
        }
    }
    Ok(EtaleReport { r, factor_count: count, expected_factor_count: expected, actions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    #[test]
    fn systems_over_f2_and_f4() {
        let f2 = build_field(2, 1, 1).unwrap();
        let sys = analyze_system(f2.clone(), vec![Gf::ONE]).unwrap();
        assert_eq!((sys.r, sys.i_set.clone()), (1, vec![0]));
        let alg = build_q(sys).unwrap();
        assert_eq!(alg.q_poly, DensePoly::new(vec![Gf::ONE, Gf::ONE, Gf::ONE]));
        assert_eq!(alg.count_simple_factors(), 1);

        let f4 = build_field(2, 1, 2).unwrap();
        let w = f4.gen();
        let sys = analyze_system(f4.clone(), vec![Gf::ONE]).unwrap();
        assert_eq!(sys.r, 0);
        assert_eq!(sys.relations[0].g.0 >> 1, 1, "g is w or w+1");
        let alg = build_q(sys).unwrap();
        assert_eq!(alg.q_poly, DensePoly::new(vec![Gf::ONE, Gf::ONE, Gf::ONE]));
        assert_eq!(alg.count_simple_factors(), 2);

        let sys = analyze_system(f4.clone(), vec![Gf::ONE, w]).unwrap();
        assert_eq!((sys.r, sys.i_set.clone(), sys.j_set.clone()), (1, vec![1], vec![0]));
        let alg = build_q(sys).unwrap();
        assert_eq!(alg.dim(), 4);
        assert_eq!(alg.count_simple_factors(), 2);
    }

    #[test]
    fn dependent_input_is_rejected() {
        let f4 = build_field(2, 1, 2).unwrap();
        assert_eq!(analyze_system(f4.clone(), vec![Gf::ONE, Gf::ONE]).unwrap_err(), Error::DependentInput);
        let f9 = build_field(3, 2, 1).unwrap();
        assert!(matches!(analyze_system(f9, vec![Gf::ONE]), Err(Error::Precondition(_))));
    }

    #[test]
    fn full_verification_over_f8() {
        let k = build_field(2, 1, 3).unwrap();
        let rep = verify_system(k.clone(), vec![Gf(1), Gf(2), Gf(4)]).unwrap();
        assert_eq!(rep.r, 1);
        assert_eq!(rep.factor_count, 4);
        assert_eq!(rep.actions.len(), 8);
    }

    #[test]
    fn sigma_on_f2() {
        let k = build_field(2, 1, 1).unwrap();
        let rep = verify_system(k, vec![Gf::ONE]).unwrap();
        let one = rep.actions.iter().find(|a| a.z == Gf::ONE).unwrap();
        assert_eq!(one.shifts, vec![Gf::ZERO, Gf::ONE]);
    }
}
