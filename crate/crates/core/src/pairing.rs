//! The Frobenius-sum pairing E and the residue pairing f between W = Ker P_W and
//! U = Ker ρP_W.

use crate::addpoly::{self, AdditivePoly, SubspaceBasis};
use crate::error::{Error, Result};
use crate::forms::{self, LqSpace};
use crate::gf::linalg::{self, Matrix};
use crate::gf::Gf;

#[derive(Clone, Debug, PartialEq, Eq, Copy)]
pub enum Which {
    E,
    F,
}

#[derive(Clone, Debug)]
pub struct PairingContext {
    pub b: SubspaceBasis,
    pub p: AdditivePoly,
    pub rho: AdditivePoly,
    pub u_basis: Vec<Gf>,
    pub space: LqSpace,
}

impl PairingContext {
    pub fn new(b: SubspaceBasis) -> Result<Self> {
        let p = addpoly::subspace_poly(&b)?;
        let rho = p.reverse()?;
        let u_basis = addpoly::reversed_kernel_basis(&b)?;
        let space = LqSpace::new(b.clone())?;
        Ok(PairingContext { b, p, rho, u_basis, space })
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    /// All of U, coordinates in the order of `addpoly::fq_vectors`.
    pub fn u_elements(&self) -> Vec<Gf> {
        let k = &self.b.ctx;
        addpoly::fq_vectors(k, self.n())
            .iter()
            .map(|e| k.sum(self.u_basis.iter().zip(e).map(|(&u, &x)| k.mul(u, x))))
            .collect()
    }

    /// E(w, u) = Σ_{m=1}^{n} Σ_{j=0}^{m−1} ((c_m u)^{q^{−m}} w)^{q^j}.
    pub fn elkies_e(&self, w: Gf, u: Gf) -> Result<Gf> {
        let k = &self.b.ctx;
        if !self.p.eval(w).is_zero() || !self.rho.eval(u).is_zero() {
            return Err(Error::NotInKernel);
        }
        let mut acc = Gf::ZERO;
        for m in 1..=self.n() {
            let base = k.mul(k.inv_frob_q(k.mul(self.p.coeff(m), u), m as u64), w);
            let mut x = base;
            for j in 0..m {
                if j > 0 {
                    x = k.frob_q(x, 1);
                }
                acc = k.add(acc, x);
            }
        }
        if !k.is_in_fq(acc) {
            return Err(Error::ValueNotInFq);
        }
        Ok(acc)
    }

    /// α ∈ F_q^n with u = (δ_φ(w̲)/Δ_n(w̲))^q.
    pub fn functional_of(&self, u: Gf) -> Result<Vec<Gf>> {
        let k = &self.b.ctx;
        let target = k.mul(k.inv_frob_q(u, 1), self.b.delta());
        k.solve_fq_span(&self.b.minors(true), target).ok_or(Error::DecompositionFailed)
    }

    /// f(w, u) = (−1)^{n−1} res_w ω_φ, and 0 when w or u is 0.
    pub fn residue_f(&self, w: Gf, u: Gf) -> Result<Gf> {
        let k = &self.b.ctx;
        if self.b.coords(w).is_none() {
            return Err(Error::NotInKernel);
        }
        if w.is_zero() || u.is_zero() {
            if !u.is_zero() && self.functional_of(u).is_err() {
                return Err(Error::DecompositionFailed);
            }
            return Ok(Gf::ZERO);
        }
        let alpha = self.functional_of(u)?;
        let form = self.space.combination(&alpha)?;
        let r = form.residue(w);
        Ok(if self.n() % 2 == 0 { k.neg(r) } else { r })
    }

    pub fn pair(&self, which: Which, w: Gf, u: Gf) -> Result<Gf> {
        match which {
            Which::E => self.elkies_e(w, u),
            Which::F => self.residue_f(w, u),
        }
    }

    /// [pair(w_i, u_j)].
    pub fn gram_matrix(&self, which: Which) -> Result<Matrix> {
        self.b
            .w()
            .iter()
            .map(|&w| self.u_basis.iter().map(|&u| self.pair(which, w, u)).collect())
            .collect()
    }

    pub fn is_perfect(&self, which: Which) -> Result<bool> {
        let g = self.gram_matrix(which)?;
        Ok(linalg::rank(&self.b.ctx, &g) == self.n())
    }

    /// Number of (w, u) ∈ W × U with E(w, u) ≠ f(w, u).
    /// Each ω_φ is built once per u.
    pub fn count_disagreements(&self) -> Result<usize> {
        let k = &self.b.ctx;
        let ws = self.b.elements();
        let mut bad = 0;
        for u in self.u_elements() {
            let form = if u.is_zero() { None } else { Some(self.space.combination(&self.functional_of(u)?)?) };
            for &w in &ws {
                let f = match &form {
                    Some(form) if !w.is_zero() => {
                        let r = form.residue(w);
                        if self.n() % 2 == 0 { k.neg(r) } else { r }
                    }
                    _ => Gf::ZERO,
                };
                if self.elkies_e(w, u)? != f {
                    bad += 1;
                }
            }
        }
        Ok(bad)
    }
}

/// res_w of ω_φ computed from the closed form alone, for cross-checks.
pub fn closed_form_residue(b: &SubspaceBasis, alpha: &[Gf], w: Gf) -> Result<Gf> {
    let (num, den) = forms::omega_phi_closed_form(b, alpha);
    forms::residue_at(&b.ctx, &num, &den, w).or_else(|e| match e {
        Error::NotAPole => Ok(Gf::ZERO),
        e => Err(e),
    })
}
