use moore_ore::gf::{build_field, FieldCtx, Gf};
use moore_ore::moore;
use moore_ore::Error;
use proptest::prelude::*;

// Naive F_p[X] helpers, constant term first.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let inv_lead = (1..p).find(|x| x * m[dm] % p == 1).unwrap();
    while r.len() > dm {
        let c = r[r.len() - 1] * inv_lead % p;
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

/// Lexicographically smallest monic irreducible of degree d, comparing
/// coefficients from the constant term up. Irreducibility by trial division.
fn smallest_irreducible(p: u32, d: usize) -> Vec<u32> {
    let monic = |digits: u64, deg: usize| -> Vec<u32> {
        let mut v: Vec<u32> = (0..deg).map(|i| ((digits / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
        v.push(1);
        v
    };
    let count = (p as u64).pow(d as u32);
    // Vec ordering compares index 0, the constant term, first.
    let mut candidates: Vec<Vec<u32>> = (0..count).map(|x| monic(x, d)).collect();
    candidates.sort();
    candidates
        .into_iter()
        .find(|f| {
            d == 1
                || (1..=d / 2).all(|e| {
                    (0..(p as u64).pow(e as u32)).all(|g| !rem(f, &monic(g, e), p).is_empty())
                })
        })
        .unwrap()
}

#[test]
fn moduli_agree_with_trial_division() {
    for &(p, t) in &[(2u64, 1u32), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3), (5, 2), (7, 2)] {
        let k = build_field(p, 1, t).unwrap();
        assert_eq!(k.modulus(), smallest_irreducible(p as u32, t as usize).as_slice(), "p={p} t={t}");
    }
    assert_eq!(build_field(2, 1, 1).unwrap().modulus(), &[0, 1]);
    assert_eq!(build_field(2, 1, 2).unwrap().modulus(), &[1, 1, 1]);
    assert_eq!(build_field(3, 1, 2).unwrap().modulus(), &[1, 0, 1]);
}

#[test]
fn field_examples() {
    let f4 = build_field(2, 1, 2).unwrap();
    let w = f4.gen();
    assert_eq!(f4.mul(w, w), f4.add(w, Gf::ONE));
    assert_eq!(f4.frob_q(w, 1), f4.add(w, Gf::ONE));
    let f9 = build_field(3, 1, 2).unwrap();
    assert_eq!(f9.mul(f9.gen(), f9.gen()), f9.from_int(-1));
    assert_eq!(f9.inv(Gf::ZERO), Err(Error::DivisionByZero));
    let f2 = build_field(2, 1, 1).unwrap();
    for x in f2.elements() {
        for j in 0..5 {
            assert_eq!(f2.frob_q(x, j), x);
        }
    }
    assert_eq!(f4.kernel_of(|x| f4.sub(f4.mul(x, x), x)), vec![Gf::ONE]);
    assert_eq!(f4.parse("w").unwrap(), w);
    assert_eq!(f4.parse("2^2:[0,1]").unwrap(), w);
}

#[test]
fn moore_examples() {
    let k = build_field(2, 1, 2).unwrap();
    let w = k.gen();
    let w1 = k.add(w, Gf::ONE);
    assert_eq!(moore::moore_matrix(&k, &[w], 1).unwrap(), vec![vec![w]]);
    assert_eq!(moore::moore_matrix(&k, &[Gf::ONE, w], 2).unwrap(), vec![vec![Gf::ONE, w], vec![Gf::ONE, w1]]);
    assert_eq!(moore::moore_matrix(&k, &[Gf::ONE, w], 3).unwrap().len(), 3);
    assert_eq!(moore::moore_det(&k, &[Gf::ONE, w]), Gf::ONE);
    assert_eq!(moore::moore_det_product(&k, &[Gf::ONE, w]), Gf::ONE);
    assert_eq!(moore::moore_det(&k, &[w1]), w1);
    assert_eq!(moore::moore_det(&k, &[w, w]), Gf::ZERO);
    assert_eq!(moore::cofactor_row(&k, &[Gf::ONE, w], false).unwrap(), vec![w, Gf::ONE]);
    assert!(moore::is_fq_independent(&k, &[Gf::ONE, w]));
    assert!(!moore::is_fq_independent(&k, &[Gf::ONE, Gf::ONE]));

    let f9 = build_field(3, 1, 2).unwrap();
    let i = f9.gen();
    assert_eq!(moore::cofactor_row(&f9, &[Gf::ONE, i], true).unwrap(), vec![i, f9.from_int(-1)]);
    assert!(!moore::is_fq_independent(&f9, &[i, f9.mul(f9.from_int(2), i)]));

    // A dependent triple has a dependent cofactor row.
    let f8 = build_field(2, 1, 3).unwrap();
    let a = [Gf(1), Gf(2), Gf(3)];
    assert_eq!(moore::moore_det(&f8, &moore::minors(&f8, &a, true)), Gf::ZERO);
    assert_eq!(moore::cofactor_row(&f8, &[Gf(1)], true).unwrap_err(), Error::TupleTooShort { need: 2, got: 1 });
}

fn small_field() -> impl Strategy<Value = std::sync::Arc<FieldCtx>> {
    prop::sample::select(vec![(2u64, 1u32, 6u32), (3, 1, 4), (2, 2, 3), (5, 1, 3), (3, 2, 2)])
        .prop_map(|(p, s, t)| build_field(p, s, t).unwrap())
}

fn field_and_tuple(max_n: usize) -> impl Strategy<Value = (std::sync::Arc<FieldCtx>, Vec<Gf>)> {
    small_field().prop_flat_map(move |k| {
        let order = k.order();
        (Just(k), prop::collection::vec((0..order).prop_map(Gf), 1..=max_n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((k, v) in field_and_tuple(3)) {
        let a = v[0];
        let b = *v.get(1).unwrap_or(&Gf::ONE);
        let c = *v.get(2).unwrap_or(&Gf::ONE);
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.frob_p(k.add(a, b), 1), k.add(k.frob_p(a, 1), k.frob_p(b, 1)));
        prop_assert_eq!(k.frob_q(a, k.t() as u64), a);
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), Gf::ONE);
        }
    }

    #[test]
    fn det_matches_product((k, a) in field_and_tuple(4)) {
        prop_assert_eq!(moore::moore_det(&k, &a), moore::moore_det_product(&k, &a));
    }

    #[test]
    fn independence_and_cofactors((k, a) in field_and_tuple(4)) {
        let d = moore::moore_det(&k, &a);
        prop_assert_eq!(moore::is_fq_independent(&k, &a), !d.is_zero());
        if a.len() >= 2 {
            let m = moore::minors(&k, &a, true);
            prop_assert_eq!(d.is_zero(), moore::moore_det(&k, &m).is_zero());
        }
    }

    /// Scaling one entry by λ ∈ F_q scales Δ by λ.
    #[test]
    fn det_is_fq_multilinear((k, a) in field_and_tuple(4), i in 0usize..4, j in 0usize..64) {
        let i = i % a.len();
        let sub = k.subfield_elements();
        let lam = sub[j % sub.len()];
        let mut b = a.clone();
        b[i] = k.mul(lam, b[i]);
        prop_assert_eq!(moore::moore_det(&k, &b), k.mul(lam, moore::moore_det(&k, &a)));
    }
}
