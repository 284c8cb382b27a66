//! Differential forms on the projective line with simple poles in K, kept as
//! pole → residue tables.
//!
//! The spaces built here come from an F_q-basis w̲ = (w_1, …, w_N) of W ⊂ K:
//! the first n basis vectors carry forms ω_j = Σ_{ε∈F_q^N} ε_j dX/(X − Σε_i w_i),
//! the remaining m = N − n only enlarge the pole set. m = 0 is the plain case.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::addpoly::{self, SubspaceBasis};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Gf};
use crate::moore;
use crate::poly::{DensePoly, PolyRing};
use crate::ring::theta;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePoleForm {
    pub ctx: Arc<FieldCtx>,
    residues: BTreeMap<Gf, Gf>,
}

impl SimplePoleForm {
    /// Sums residues at repeated poles and drops the zeros.
    pub fn from_pairs(ctx: Arc<FieldCtx>, pairs: impl IntoIterator<Item = (Gf, Gf)>) -> Self {
        let mut residues: BTreeMap<Gf, Gf> = BTreeMap::new();
        for (a, r) in pairs {
            let e = residues.entry(a).or_insert(Gf::ZERO);
            *e = ctx.add(*e, r);
        }
        residues.retain(|_, r| !r.is_zero());
        SimplePoleForm { ctx, residues }
    }

    pub fn residues(&self) -> &BTreeMap<Gf, Gf> {
        &self.residues
    }

    pub fn poles(&self) -> impl Iterator<Item = Gf> + '_ {
        self.residues.keys().copied()
    }

    pub fn pole_count(&self) -> usize {
        self.residues.len()
    }

    pub fn residue(&self, a: Gf) -> Gf {
        self.residues.get(&a).copied().unwrap_or(Gf::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn add(&self, o: &SimplePoleForm) -> SimplePoleForm {
        let pairs = self.residues.iter().chain(&o.residues).map(|(&a, &r)| (a, r));
        SimplePoleForm::from_pairs(self.ctx.clone(), pairs)
    }

    pub fn scale(&self, c: Gf) -> SimplePoleForm {
        let k = &self.ctx;
        SimplePoleForm::from_pairs(k.clone(), self.residues.iter().map(|(&a, &r)| (a, k.mul(c, r))))
    }

    pub fn residues_in_fq(&self) -> bool {
        self.residues.values().all(|&r| self.ctx.is_in_fq(r))
    }

    pub fn residue_sum(&self) -> Gf {
        self.ctx.sum(self.residues.values().copied())
    }

    /// The numerator N with ω = (N/D) dX for a squarefree D vanishing on every
    /// pole: N = Σ_a r_a D/(X − a).
    pub fn numerator_over(&self, d: &DensePoly) -> Result<DensePoly> {
        let k = &self.ctx;
        let mut acc = DensePoly::zero();
        for (&a, &r) in &self.residues {
            let cof = d
                .div_exact(k, &DensePoly::linear(k, a))
                .ok_or(Error::NotAPole)?;
            acc = acc.add(k, &cof.scale(k, r));
        }
        Ok(acc)
    }

    /// Monic Π_a (X − a) over the poles.
    pub fn pole_polynomial(&self) -> DensePoly {
        DensePoly::product_of_linears(&self.ctx, self.poles())
    }

    /// The zero divisor of (N/P) dX is (deg P − deg N − 2)·∞ when P is the pole
    /// polynomial and the form has only simple finite poles; compare with μ − 1.
    pub fn has_zero_divisor(&self, mu_minus_1: i64) -> bool {
        let p = self.pole_polynomial();
        let Ok(n) = self.numerator_over(&p) else {
            return false;
        };
        match (p.degree(), n.degree()) {
            (Some(dp), Some(dn)) => dp as i64 - dn as i64 - 2 == mu_minus_1,
            _ => false,
        }
    }
}

/// N(a)/D′(a) for a simple zero a of D.
pub fn residue_at(k: &FieldCtx, num: &DensePoly, den: &DensePoly, a: Gf) -> Result<Gf> {
    if !den.eval(k, a).is_zero() {
        return Err(Error::NotAPole);
    }
    let d1 = den.derivative(k).eval(k, a);
    if d1.is_zero() {
        return Err(Error::NotSimplePole);
    }
    k.div(num.eval(k, a), d1)
}

/// ω_j for the basis w̲, 0-based j < |w̲|.
pub fn omega_j(b: &SubspaceBasis, j: usize) -> Result<SimplePoleForm> {
    if j >= b.n() {
        return Err(Error::Precondition(format!("form index {} out of range 0..{}", j, b.n())));
    }
    let pairs = b.coordinate_vectors().into_iter().map(|e| (b.combine(&e), e[j]));
    Ok(SimplePoleForm::from_pairs(b.ctx.clone(), pairs))
}

/// α extended by zeros to the full basis length.
fn extend_alpha(b: &SubspaceBasis, alpha: &[Gf]) -> Result<Vec<Gf>> {
    if alpha.len() > b.n() {
        return Err(Error::Precondition(format!("functional has {} entries, basis has {}", alpha.len(), b.n())));
    }
    if alpha.iter().any(|&a| !b.ctx.is_in_fq(a)) {
        return Err(Error::Precondition("functional coefficients must lie in F_q".into()));
    }
    if alpha.iter().all(|a| a.is_zero()) {
        return Err(Error::ZeroFunctional);
    }
    let mut out = alpha.to_vec();
    out.resize(b.n(), Gf::ZERO);
    Ok(out)
}

/// Σ α_j ω_j as a residue table, checked pole by pole against the closed form
/// −Δ^{q−1} Δ_φ(w̲, X)/Δ_{N+1}(w̲, X) dX. Points of W off the table must be
/// zeros of the closed-form numerator.
pub fn omega_phi(b: &SubspaceBasis, alpha: &[Gf]) -> Result<SimplePoleForm> {
    let k = &b.ctx;
    let alpha = extend_alpha(b, alpha)?;
    let table = b
        .coordinate_vectors()
        .into_iter()
        .map(|e| {
            let r = k.sum(alpha.iter().zip(&e).map(|(&a, &x)| k.mul(a, x)));
            (b.combine(&e), r)
        });
    let form = SimplePoleForm::from_pairs(k.clone(), table);

    let (num, den) = omega_phi_closed_form(b, &alpha);
    for x in b.elements() {
        let closed = residue_at(k, &num, &den, x)?;
        if closed != form.residue(x) {
            return Err(Error::InternalMismatch(format!(
                "residue at {} is {} in the table and {} in the closed form",
                k.to_canonical(x),
                k.to_canonical(form.residue(x)),
                k.to_canonical(closed)
            )));
        }
    }
    Ok(form)
}

/// (N, D) with N = −Δ^{q−1} Δ_φ(w̲, X) and D = Δ_{N+1}(w̲, X), as classical polynomials.
pub fn omega_phi_closed_form(b: &SubspaceBasis, alpha: &[Gf]) -> (DensePoly, DensePoly) {
    let k = &b.ctx;
    let scale = k.neg(k.pow(b.delta(), k.q() as u64 - 1));
    let num = DensePoly::from_additive(k, &addpoly::delta_phi_poly(b, alpha)).scale(k, scale);
    let den = DensePoly::from_additive(k, &moore::bordered_coeffs(k, b.w()));
    (num, den)
}

/// n forms ω_1..ω_n built on an N-element basis, N = n + m.
#[derive(Clone, Debug)]
pub struct LqSpace {
    pub source: SubspaceBasis,
    pub n: usize,
    pub forms: Vec<SimplePoleForm>,
    pub mu_plus_1: u64,
}

impl LqSpace {
    /// The space spanned by ω_1..ω_N of the whole basis.
    pub fn new(b: SubspaceBasis) -> Result<Self> {
        let n = b.n();
        Self::with_extension(b, n)
    }

    /// The span of the first n forms of the basis; the pole set is
    /// W minus the span of the last N − n basis vectors.
    pub fn with_extension(b: SubspaceBasis, n: usize) -> Result<Self> {
        if n == 0 || n > b.n() {
            return Err(Error::Precondition(format!("need 1 <= n <= {}, got {}", b.n(), n)));
        }
        let forms = (0..n).map(|j| omega_j(&b, j)).collect::<Result<Vec<_>>>()?;
        let q = b.ctx.q() as u64;
        let mu_plus_1 = q.pow(b.n() as u32 - 1) * (q - 1);
        Ok(LqSpace { source: b, n, forms, mu_plus_1 })
    }

    pub fn m(&self) -> usize {
        self.source.n() - self.n
    }

    /// Σ α_j ω_j, through `omega_phi` so the closed form is checked as well.
    pub fn combination(&self, alpha: &[Gf]) -> Result<SimplePoleForm> {
        if alpha.len() != self.n {
            return Err(Error::Precondition(format!("expected {} coefficients, got {}", self.n, alpha.len())));
        }
        omega_phi(&self.source, alpha)
    }

    /// Union of the pole sets of the basis forms.
    pub fn pole_union(&self) -> Vec<Gf> {
        let mut poles: Vec<Gf> = self.forms.iter().flat_map(|f| f.poles()).collect();
        poles.sort();
        poles.dedup();
        poles
    }

    /// Checks the defining conditions on one nonzero combination: pole count
    /// μ + 1, residues in F_q, zero divisor (μ − 1)∞.
    pub fn check_member(&self, alpha: &[Gf]) -> Result<SimplePoleForm> {
        let f = self.combination(alpha)?;
        if f.pole_count() as u64 != self.mu_plus_1 {
            return Err(Error::VerificationFailed(format!(
                "{} poles, expected {}",
                f.pole_count(),
                self.mu_plus_1
            )));
        }
        if !f.residues_in_fq() {
            return Err(Error::VerificationFailed("residue outside F_q".into()));
        }
        let p = self.source.ctx.p() as u64;
        if self.mu_plus_1 % p.pow(self.n as u32 - 1) != 0 {
            return Err(Error::VerificationFailed("p^(n-1) does not divide mu+1".into()));
        }
        if !f.has_zero_divisor(self.mu_plus_1 as i64 - 2) {
            return Err(Error::VerificationFailed("zero divisor is not (mu-1)inf".into()));
        }
        Ok(f)
    }
}

/// γ with Δ_n(P_1, …, P_n) = γ P^{1+q+…+q^{n−2}}, where ω_i = (P_i/P) dX and P
/// is the monic polynomial of the pole union.
pub fn pagot_gamma(space: &LqSpace) -> Result<Gf> {
    let k = &space.source.ctx;
    let p = DensePoly::product_of_linears(k, space.pole_union());
    let numerators = space
        .forms
        .iter()
        .map(|f| f.numerator_over(&p))
        .collect::<Result<Vec<_>>>()?;
    let ring = PolyRing { k: k.clone() };
    let det = moore::moore_det_in(&ring, &numerators);
    let s = theta(k.q() as u64, space.n as u32 - 1);
    let mut power = DensePoly::constant(Gf::ONE);
    for _ in 0..s {
        power = power.mul(k, &p);
    }
    let quotient = det
        .div_exact(k, &power)
        .ok_or_else(|| Error::FactorizationMismatch("P^S does not divide the Moore determinant".into()))?;
    match quotient.degree() {
        Some(0) => Ok(quotient.lead()),
        Some(d) => Err(Error::FactorizationMismatch(format!("quotient has degree {d}"))),
        None => Err(Error::FactorizationMismatch("Moore determinant of the numerators vanished".into())),
    }
}

/// Predicted γ for a space built on (w_1..w_n, w_{n+1}..w_N):
/// (−1)^T Δ_N^{(q−2)T+S} Δ_m(w_{n+1..N})^{q^{n−1}}, with T = θ_n, S = θ_{n−1}.
pub fn gamma_prediction(space: &LqSpace) -> Gf {
    let k = &space.source.ctx;
    let q = k.q() as u64;
    let n = space.n as u32;
    let t = theta(q, n);
    let s = theta(q, n - 1);
    let big = k.pow(space.source.delta(), (q - 2) * t + s);
    let tail = moore::moore_det(k, &space.source.w()[space.n..]);
    let v = k.mul(big, k.pow(tail, q.pow(n - 1)));
    if t % 2 == 1 {
        k.neg(v)
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    #[test]
    fn forms_over_f4() {
        let k = build_field(2, 1, 2).unwrap();
        let w = k.gen();
        let b = SubspaceBasis::new(k.clone(), vec![Gf::ONE, w]).unwrap();
        let o1 = omega_j(&b, 0).unwrap();
        let poles: Vec<Gf> = o1.poles().collect();
        let mut expect = vec![Gf::ONE, k.add(Gf::ONE, w)];
        expect.sort();
        assert_eq!(poles, expect);
        assert!(o1.residues().values().all(|&r| r == Gf::ONE));

        let line = SubspaceBasis::new(k.clone(), vec![w]).unwrap();
        let o = omega_j(&line, 0).unwrap();
        assert_eq!(o.residues().iter().map(|(&a, &r)| (a, r)).collect::<Vec<_>>(), vec![(w, Gf::ONE)]);
    }

    #[test]
    fn residues_of_simple_fractions() {
        let k = build_field(2, 1, 1).unwrap();
        let one = DensePoly::constant(Gf::ONE);
        let d = DensePoly::linear(&k, Gf::ONE);
        assert_eq!(residue_at(&k, &one, &d, Gf::ONE).unwrap(), Gf::ONE);
        let x_x1 = DensePoly::new(vec![Gf::ZERO, Gf::ONE, Gf::ONE]);
        assert_eq!(residue_at(&k, &one, &x_x1, Gf::ZERO).unwrap(), Gf::ONE);
        assert_eq!(residue_at(&k, &one, &d, Gf::ZERO).unwrap_err(), Error::NotAPole);
        let sq = DensePoly::new(vec![Gf::ZERO, Gf::ZERO, Gf::ONE]);
        assert_eq!(residue_at(&k, &one, &sq, Gf::ZERO).unwrap_err(), Error::NotSimplePole);
    }

    #[test]
    fn omega_phi_pole_count_and_residues() {
        let k = build_field(3, 1, 3).unwrap();
        let b = SubspaceBasis::new(k.clone(), vec![Gf::ONE, k.gen()]).unwrap();
        let space = LqSpace::new(b.clone()).unwrap();
        assert_eq!(space.mu_plus_1, 6);
        for alpha in addpoly::fq_vectors(&k, 2).into_iter().skip(1) {
            let f = space.check_member(&alpha).unwrap();
            assert_eq!(f.residue_sum(), Gf::ZERO);
        }
        assert_eq!(omega_phi(&b, &[Gf::ZERO, Gf::ZERO]).unwrap_err(), Error::ZeroFunctional);
    }

    #[test]
    fn gamma_for_a_line() {
        // n = 1: ω = Σ_{ε≠0} ε/(X − εw), Δ_1(P_1) = P_1 = −w^{q−2}.
        let k = build_field(3, 1, 2).unwrap();
        let w = Gf(5);
        let space = LqSpace::new(SubspaceBasis::new(k.clone(), vec![w]).unwrap()).unwrap();
        let g = pagot_gamma(&space).unwrap();
        assert_eq!(g, k.neg(k.pow(w, 1)));
        assert_eq!(g, gamma_prediction(&space));
    }

    #[test]
    fn gamma_matches_prediction_with_extension() {
        let k = build_field(2, 1, 4).unwrap();
        let b = SubspaceBasis::new(k.clone(), vec![Gf(3), Gf(5), Gf(9)]).unwrap();
        for n in 1..=3 {
            let space = LqSpace::with_extension(b.clone(), n).unwrap();
            assert_eq!(pagot_gamma(&space).unwrap(), gamma_prediction(&space), "n = {n}");
        }
    }
}
