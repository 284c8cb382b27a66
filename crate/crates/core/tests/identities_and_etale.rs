use std::collections::BTreeSet;

use moore_ore::addpoly::{fq_vectors, SubspaceBasis};
use moore_ore::etale::{self, analyze_system, build_q, verify_system};
use moore_ore::gf::{build_field, FieldCtx, Gf};
use moore_ore::moore;
use moore_ore::poly::DensePoly;
use moore_ore::symid::{
    self, identities, sym_moore_det, Config, Identity, Mode, Params, SparsePoly, SparseRing,
};
use moore_ore::Error;
use proptest::prelude::*;

#[test]
fn sparse_examples() {
    let k = build_field(3, 1, 1).unwrap();
    let ring = SparseRing::new(k.clone(), 2, 10_000).unwrap();
    let y = ring.vars();
    let s = y[0].add(&k, &y[1]).unwrap();
    assert_eq!(s.pow(&k, 3, 10_000).unwrap(), y[0].pow(&k, 3, 100).unwrap().add(&k, &y[1].pow(&k, 3, 100).unwrap()).unwrap());
    let prod = y[0].mul(&k, &y[1], 100).unwrap();
    assert!(prod.substitute(&k, 0, &SparsePoly::zero(2).unwrap(), 100).unwrap().is_zero());

    assert_eq!(sym_moore_det(&ring, &[0]).unwrap(), y[0]);
    let f2 = build_field(2, 1, 1).unwrap();
    let ring2 = SparseRing::new(f2.clone(), 2, 10_000).unwrap();
    let z = ring2.vars();
    let expected = z[0]
        .mul(&f2, &z[1].pow(&f2, 2, 10).unwrap(), 10)
        .unwrap()
        .add(&f2, &z[1].mul(&f2, &z[0].pow(&f2, 2, 10).unwrap(), 10).unwrap())
        .unwrap();
    assert_eq!(sym_moore_det(&ring2, &[0, 1]).unwrap(), expected);
    assert!(matches!(SparsePoly::var(9, 0), Err(Error::VarMismatch(..)) | Err(Error::Precondition(_))));
}

#[test]
fn campaign_examples() {
    let exact = |id, n, m, q| symid::verify(id, Params::new(n, m, q).unwrap(), Mode::Exact, 1, 42, Config::default()).unwrap();
    for (n, m, q) in [(2, 0, 2), (2, 1, 2), (3, 0, 2), (2, 0, 3)] {
        let r = exact(Identity::Thm1, n, m, q);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.mode, Mode::Exact);
    }
    assert!(exact(Identity::Thm2, 2, 1, 2).passed());
    assert!(symid::verify_thm1(3, 1, 3, Mode::Randomized, 100, 42).unwrap().passed());
    assert!(symid::verify_thm2(3, 2, 2, Mode::Randomized, 100, 42).unwrap().passed());
    assert!(symid::verify_phi_map(3, 2, 100, 7).unwrap().passed());
    assert!(matches!(symid::verify_thm1(1, 0, 2, Mode::Exact, 1, 0), Err(Error::Precondition(_))));
    assert!(matches!(Params::new(2, 0, 6), Err(_)));
}

#[test]
fn randomized_reports_bound_their_error() {
    let r = symid::verify_cofactor_matrix(3, 2, Mode::Randomized, 100, 1).unwrap();
    let t = r.extension_degree.unwrap();
    let d = r.degree_bound.unwrap();
    assert!(2u64.pow(t) > 4 * d);
    assert!(r.per_trial_error.unwrap() <= 0.25);
    assert_eq!(r.trials, 100);
}

#[test]
fn exact_and_randomized_agree() {
    for id in [Identity::Thm1, Identity::CofactorMatrix, Identity::Ore, Identity::Phi] {
        for (n, q) in [(2, 2), (3, 2), (2, 3)] {
            let p = Params::new(n, 0, q).unwrap();
            let e = symid::verify(id, p, Mode::Exact, 1, 3, Config::default()).unwrap();
            let r = symid::verify(id, p, Mode::Randomized, 50, 3, Config::default()).unwrap();
            assert_eq!(e.passed(), r.passed(), "{id:?} {n} {q}");
            assert!(e.passed());
        }
    }
}

#[test]
fn tiny_budget_falls_back_to_randomized() {
    let cfg = Config { term_budget: 4, ..Config::default() };
    let r = symid::verify(Identity::Thm1, Params::new(3, 0, 2).unwrap(), Mode::Exact, 20, 5, cfg).unwrap();
    assert_eq!(r.mode, Mode::Randomized);
    assert!(r.passed());
    assert!(r.notes[0].contains("budget"));
}

#[test]
fn campaigns_are_reproducible() {
    let run = |seed| symid::verify_ore_coeff_formulas(3, 3, 40, seed).unwrap().stable_json();
    assert_eq!(run(9), run(9));
}

/// The Ore identities at every basis of F_16 over F_2, n = 2.
#[test]
fn ore_identities_exhaustive_on_f16() {
    let k = build_field(2, 1, 4).unwrap();
    let mut count = 0;
    for a in k.nonzero_elements() {
        for b in k.nonzero_elements() {
            let w = [a, b];
            if !moore::is_fq_independent(&k, &w) {
                continue;
            }
            for (name, lhs, rhs) in identities::ore(&*k, &w) {
                assert_eq!(lhs, rhs, "{name} at {w:?}");
            }
            count += 1;
        }
    }
    assert_eq!(count, 15 * 14);
}

/// {x^p − x : x ∈ K}.
fn as_image(k: &FieldCtx) -> BTreeSet<Gf> {
    k.elements().map(|x| k.sub(k.frob_p(x, 1), x)).collect()
}

/// dim_{F_p} of (span f + image)/image, by counting cosets.
fn rank_oracle(k: &FieldCtx, f: &[Gf]) -> usize {
    let img = as_image(k);
    let p = k.p() as usize;
    let mut sum = img.clone();
    for &g in f {
        let prev: Vec<Gf> = sum.iter().copied().collect();
        let mut mult = Gf::ZERO;
        for _ in 1..p {
            mult = k.add(mult, g);
            sum.extend(prev.iter().map(|&x| k.add(x, mult)));
        }
    }
    let mut r = 0;
    let mut size = img.len();
    while size < sum.len() {
        size *= p;
        r += 1;
    }
    r
}

fn roots_in_k(k: &FieldCtx, q: &DensePoly) -> usize {
    k.elements().filter(|&x| q.eval(k, x).is_zero()).count()
}

#[test]
fn etale_examples() {
    let f2 = build_field(2, 1, 1).unwrap();
    let alg = build_q(analyze_system(f2.clone(), vec![Gf::ONE]).unwrap()).unwrap();
    assert_eq!(alg.q_poly, DensePoly::new(vec![Gf::ONE; 3]));

    let f4 = build_field(2, 1, 2).unwrap();
    let w = f4.gen();
    let sys = analyze_system(f4.clone(), vec![Gf::ONE]).unwrap();
    let g = sys.relations[0].g;
    assert_eq!(f4.sub(f4.frob_p(g, 1), g), Gf::ONE);
    let alg = build_q(sys).unwrap();
    assert_eq!(alg.z_coords(w).unwrap_err(), Error::NotInZ);
    assert_eq!(alg.q_poly.eval(&f4, w), Gf::ZERO);
    assert_eq!(alg.q_poly.eval(&f4, f4.add(w, Gf::ONE)), Gf::ZERO);

    let alg = build_q(analyze_system(f4.clone(), vec![Gf::ONE, w]).unwrap()).unwrap();
    assert_eq!(alg.q_poly.degree(), Some(4));
    let gens = alg.recover_generators().unwrap();
    for (gi, &fi) in gens.iter().zip(&[Gf::ONE, w]) {
        let lhs = alg.pow(gi, 2).sub(&f4, gi);
        assert_eq!(alg.reduce(&lhs), DensePoly::constant(fi));
    }
    assert_eq!(alg.z_elements().len(), 4);
    // σ_0 fixes everything.
    let pc = moore_ore::pairing::PairingContext::new(SubspaceBasis::new(f4.clone(), vec![Gf::ONE, w]).unwrap()).unwrap();
    assert!(alg.sigma_action(&gens, &pc, Gf::ZERO).unwrap().shifts.iter().all(|s| s.is_zero()));
}

#[test]
fn characteristic_three_systems() {
    let f3 = build_field(3, 1, 1).unwrap();
    let f9 = build_field(3, 1, 2).unwrap();
    let f27 = build_field(3, 1, 3).unwrap();
    let i = f9.gen();
    let cases = [
        (f3.clone(), vec![Gf::ONE]),
        (f9.clone(), vec![Gf::ONE]),
        (f9.clone(), vec![i]),
        (f9.clone(), vec![Gf::ONE, i]),
        (f27.clone(), vec![Gf::ONE, f27.gen()]),
    ];
    for (k, f) in cases {
        let rep = verify_system(k.clone(), f.clone()).unwrap();
        let r = rank_oracle(&k, &f);
        assert_eq!(rep.r, r, "{f:?} over F_{}", k.order());
        assert_eq!(rep.factor_count, 3usize.pow((f.len() - r) as u32));
        let q = etale::q_closed_form(&k, &f);
        assert_eq!(q, etale::q_determinant_form(&k, &f).unwrap());
        let expected_roots = if r == 0 { 3usize.pow(f.len() as u32) } else { 0 };
        assert_eq!(roots_in_k(&k, &q), expected_roots);
    }
}

#[test]
fn even_characteristic_rank_oracle() {
    let f8 = build_field(2, 1, 3).unwrap();
    for a in f8.nonzero_elements() {
        for b in f8.nonzero_elements() {
            let f = vec![a, b];
            if !moore::is_fq_independent(&f8, &f) {
                continue;
            }
            let rep = verify_system(f8.clone(), f.clone()).unwrap();
            assert_eq!(rep.r, rank_oracle(&f8, &f));
            assert_eq!(rep.actions.len(), 4);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sigma_shifts_are_additive(t in 1u32..=4, raw in prop::collection::vec(1u32..16, 1..=3)) {
        let k = build_field(2, 1, t).unwrap();
        let f: Vec<Gf> = raw.into_iter().map(|x| Gf(x % k.order())).collect();
        prop_assume!(moore::is_fq_independent(&k, &f));
        let rep = verify_system(k.clone(), f.clone()).unwrap();
        let eps = fq_vectors(&k, f.len());
        // shift(ε + ε') = shift(ε) + shift(ε') for each z.
        for a in &rep.actions {
            for (i, e1) in eps.iter().enumerate() {
                for (j, e2) in eps.iter().enumerate() {
                    let sum: Vec<Gf> = e1.iter().zip(e2).map(|(&x, &y)| k.add(x, y)).collect();
                    let l = eps.iter().position(|e| *e == sum).unwrap();
                    prop_assert_eq!(a.shifts[l], k.add(a.shifts[i], a.shifts[j]));
                }
            }
        }
    }
}
