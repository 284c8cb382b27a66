//! The identities, written once against `Ring` and cross-multiplied so that
//! no division occurs. Each builder takes the variable values and returns
//! labelled (lhs, rhs) pairs.
//!
//! Index conventions are 0-based in code; "signed" cofactors carry (−1)^i.

use crate::moore::{cofactor_row_in, delta_omit_in, det_laplace, moore_det_in, moore_rows};
use crate::ring::{sign, theta, Ring};

pub type Check<E> = (String, E, E);

fn omit<E: Clone>(a: &[E], i: usize) -> Vec<E> {
    a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect()
}

/// Signed cofactors of `all` for the first n positions: (−1)^i Δ_{N−1}(all without i).
fn leading_cofactors<R: Ring>(r: &R, all: &[R::Elem], n: usize, signed: bool) -> Vec<R::Elem> {
    (0..n)
        .map(|i| r.signed(&moore_det_in(r, &omit(all, i)), signed && i % 2 == 1))
        .collect()
}

/// Δ_n(δ_1..δ_n) = Δ_m(X)^{q^{n−1}} Δ_{n+m}(Y,X)^S, signed and unsigned.
/// `vars` = (Y_1..Y_n, X_1..X_m).
pub fn thm1<R: Ring>(r: &R, vars: &[R::Elem], n: usize) -> Vec<Check<R::Elem>> {
    let q = r.q();
    let x = &vars[n..];
    let s = theta(q, n as u32 - 1);
    let big = moore_det_in(r, vars);
    let small = moore_det_in(r, x);
    let rhs = r.mul(&r.pow(&small, q.pow(n as u32 - 1)), &r.pow(&big, s));
    let signed = moore_det_in(r, &leading_cofactors(r, vars, n, true));
    let unsigned = moore_det_in(r, &leading_cofactors(r, vars, n, false));
    let rhs_unsigned = r.mul(&sign(r, (n / 2) as u64), &rhs);
    vec![
        ("signed cofactors".into(), signed, rhs),
        ("unsigned cofactors".into(), unsigned, rhs_unsigned),
    ]
}

/// The matrix 𝓜_n(c̲)·ᵗ𝓜_n(Y̲) with c̲ the signed cofactors, against its
/// predicted shape. Entries are 0-based (i, j):
///   row 0: only (0, n−1) = (−1)^{n−1}Δ;
///   (i, i−1) = Δ^{q^{i−1}};
///   (i, j), j ≤ i−2: α_{i−j−1}^{q^j} with α_k = Σ_l c_l^{q^{k+1}} Y_l;
///   everything else 0.
pub fn cofactor_matrix<R: Ring>(r: &R, y: &[R::Elem]) -> Vec<Check<R::Elem>> {
    let n = y.len();
    let c = cofactor_row_in(r, y, true).expect("n >= 2");
    shifted_block(r, &c, y, n, &moore_det_in(r, y), "")
}

/// Entries (i, j) for i, j < rows of 𝓜(c̲)·ᵗ𝓜(z̲) against the shifted pattern,
/// where z̲ has N entries and Δ = Δ_N(z̲).
fn shifted_block<R: Ring>(
    r: &R,
    c: &[R::Elem],
    z: &[R::Elem],
    rows: usize,
    delta: &R::Elem,
    tag: &str,
) -> Vec<Check<R::Elem>> {
    let big_n = z.len();
    let mc = moore_rows(r, c, rows);
    let mz = moore_rows(r, z, rows);
    let alpha = |k: usize| -> R::Elem {
        let mut acc = r.zero();
        for l in 0..big_n {
            acc = r.add(&acc, &r.mul(&r.frob_q(&c[l], k as u64 + 1), &z[l]));
        }
        acc
    };
    let alphas: Vec<R::Elem> = (0..rows).map(alpha).collect();
    let mut out = Vec::with_capacity(rows * rows);
    for i in 0..rows {
        for j in 0..rows {
            let mut lhs = r.zero();
            for l in 0..big_n {
                lhs = r.add(&lhs, &r.mul(&mc[i][l], &mz[j][l]));
            }
            let rhs = if i == 0 {
                if j == big_n - 1 {
                    r.signed(delta, (big_n - 1) % 2 == 1)
                } else {
                    r.zero()
                }
            } else if j + 1 == i {
                r.frob_q(delta, i as u64 - 1)
            } else if j + 2 <= i {
                r.frob_q(&alphas[i - j - 1], j as u64)
            } else {
                r.zero()
            };
            out.push((format!("{tag}({},{})", i + 1, j + 1), lhs, rhs));
        }
    }
    out
}

/// Block form of A·ᵗ𝓜_{n+m}(Y̲,X̲) with A = [[𝓜_n(δ_1..n), 𝓜_{n,m}(δ_{n+1..})], [0, I_m]],
/// then det N = Δ^S Δ_m(X̲)^{q^{n−1}} = Δ_n(δ_1..n) and det M = Δ_n(δ_1..n)·Δ.
pub fn thm2<R: Ring>(r: &R, vars: &[R::Elem], n: usize) -> Vec<Check<R::Elem>> {
    let q = r.q();
    let big_n = vars.len();
    let m = big_n - n;
    let delta = moore_det_in(r, vars);
    let d = cofactor_row_in(r, vars, true).expect("n + m >= 2");
    let mut checks = Vec::new();

    // Rows 1..n of M: the first n columns form M_1, the rest M_2.
    let top = shifted_block_full(r, &d, vars, n);
    let full = {
        let mz = moore_rows(r, vars, big_n);
        let mut rows = top.clone();
        for j in 0..m {
            rows.push((0..big_n).map(|k| mz[k][n + j].clone()).collect());
        }
        rows
    };
    checks.extend(shifted_block(r, &d, vars, n, &delta, "M1"));
    for i in 0..n {
        for j in 0..m {
            let rhs = if i == 0 && j == m - 1 {
                r.signed(&delta, (big_n - 1) % 2 == 1)
            } else {
                r.zero()
            };
            checks.push((format!("M2({},{})", i + 1, j + 1), top[i][n + j].clone(), rhs));
        }
    }
    // M_3 = ᵗ𝓜_{n,m}(X̲), M_4 = ᵗ𝓜_m(X̲^{q^n}).
    for j in 0..m {
        for k in 0..big_n {
            let expect = r.frob_q(&vars[n + j], k as u64);
            let label = if k < n { format!("M3({},{})", j + 1, k + 1) } else { format!("M4({},{})", j + 1, k - n + 1) };
            checks.push((label, full[n + j][k].clone(), expect));
        }
    }

    let s = theta(q, n as u32 - 1);
    let det_n_pred = r.mul(&r.pow(&delta, s), &r.pow(&moore_det_in(r, &vars[n..]), q.pow(n as u32 - 1)));
    let n_minor: Vec<Vec<R::Elem>> = full[1..].iter().map(|row| row[..big_n - 1].to_vec()).collect();
    let det_n = det_laplace(r, &n_minor);
    let det_delta = moore_det_in(r, &d[..n]);
    checks.push(("det N".into(), det_n.clone(), det_n_pred.clone()));
    checks.push(("Delta_n(delta)".into(), det_delta.clone(), det_n_pred));
    checks.push(("det M".into(), det_laplace(r, &full), r.mul(&det_delta, &delta)));
    checks.push(("det M by row 1".into(), r.mul(&delta, &det_n), r.mul(&det_delta, &delta)));
    checks
}

/// Rows 0..rows of 𝓜(c̲)·ᵗ𝓜_N(z̲), all N columns.
fn shifted_block_full<R: Ring>(r: &R, c: &[R::Elem], z: &[R::Elem], rows: usize) -> Vec<Vec<R::Elem>> {
    let big_n = z.len();
    let mc = moore_rows(r, c, rows);
    let mz = moore_rows(r, z, big_n);
    (0..rows)
        .map(|i| {
            (0..big_n)
                .map(|j| {
                    let mut acc = r.zero();
                    for l in 0..big_n {
                        acc = r.add(&acc, &r.mul(&mc[i][l], &mz[j][l]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Coefficient identities for the minors of w̲:
///   Δ_n(c̲)^{q−1} = Δ^{q^{n−1}−1}                      (signed c̲)
///   Δ_n(c̲′) = (−1)^{⌊n/2⌋} Δ^S                          (unsigned c̲′)
///   Δ[m](c̲′) = (−1)^{⌊n/2⌋} Δ^{θ_n−q^{m−1}−q^m} Δ[n−m](w̲)^{q^{m−1}},  1 ≤ m ≤ n−1.
pub fn ore<R: Ring>(r: &R, w: &[R::Elem]) -> Vec<Check<R::Elem>> {
    let n = w.len();
    let q = r.q();
    let nn = n as u32;
    let delta = moore_det_in(r, w);
    let signed = cofactor_row_in(r, w, true).expect("n >= 2");
    let unsigned = cofactor_row_in(r, w, false).expect("n >= 2");
    let sgn = sign(r, (n / 2) as u64);
    let mut out = vec![
        (
            "eq5".into(),
            r.pow(&moore_det_in(r, &signed), q - 1),
            r.pow(&delta, q.pow(nn - 1) - 1),
        ),
        (
            "eq7".into(),
            moore_det_in(r, &unsigned),
            r.mul(&sgn, &r.pow(&delta, theta(q, nn - 1))),
        ),
    ];
    for m in 1..n {
        let mm = m as u32;
        let e = theta(q, nn) - q.pow(mm - 1) - q.pow(mm);
        let rhs = r.mul(
            &sgn,
            &r.mul(&r.pow(&delta, e), &r.frob_q(&delta_omit_in(r, w, n - m), m as u64 - 1)),
        );
        out.push((format!("eq8 m={m}"), delta_omit_in(r, &unsigned, m), rhs));
    }
    out
}

/// φ(a̲) = unsigned minors of a̲.
pub fn phi<R: Ring>(r: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    if a.len() == 1 {
        return vec![r.one()];
    }
    cofactor_row_in(r, a, false).expect("n >= 2")
}

/// φ² closed form, the fiber law under λ, and the n+1 variable identity.
/// `vars` = (a_1..a_n, λ, Y_1..Y_{n+1}).
pub fn phi_laws<R: Ring>(r: &R, vars: &[R::Elem], n: usize) -> Vec<Check<R::Elem>> {
    let q = r.q();
    let nn = n as u32;
    let a = &vars[..n];
    let lambda = &vars[n];
    let y = &vars[n + 1..];
    let delta = moore_det_in(r, a);
    let once = phi(r, a);
    let twice = phi(r, &once);
    let scale = r.mul(
        &sign(r, ((n - 1) / 2) as u64),
        &r.pow(&delta, if n >= 2 { theta(q, nn - 2) } else { 0 }),
    );
    let mut out = Vec::new();
    for i in 0..n {
        let rhs = r.mul(&scale, &r.frob_q(&a[i], n as u64 - 2));
        out.push((format!("phi^2[{}]", i + 1), twice[i].clone(), rhs));
    }
    let scaled: Vec<R::Elem> = a.iter().map(|x| r.mul(lambda, x)).collect();
    let factor = r.pow(lambda, theta(q, nn - 1));
    for (i, v) in phi(r, &scaled).into_iter().enumerate() {
        out.push((format!("fiber[{}]", i + 1), v, r.mul(&factor, &once[i])));
    }
    let minors = phi(r, y);
    let big = moore_det_in(r, y);
    let tail = r.mul(&sign(r, (n / 2) as u64), &r.pow(&big, theta(q, nn - 1)));
    for i in 0..=n {
        let lhs = moore_det_in(r, &omit(&minors, i));
        let rhs = r.mul(&r.frob_q(&y[i], n as u64 - 1), &tail);
        out.push((format!("nf16[{}]", i + 1), lhs, rhs));
    }
    out
}

/// Upper bounds on the total degree of every check, for choosing the
/// specialization field. Δ_k of variables is homogeneous of degree θ_k.
pub mod degree {
    use crate::ring::theta;

    pub fn thm1(n: usize, m: usize, q: u64) -> u64 {
        let (n, big) = (n as u32, (n + m) as u32);
        theta(q, n) * theta(q, big - 1)
    }

    pub fn cofactor_matrix(n: usize, q: u64) -> u64 {
        let nn = n as u32;
        (theta(q, nn - 1) + 1) * q.pow(nn - 1) + theta(q, nn) * q.pow(nn)
    }

    pub fn thm2(n: usize, m: usize, q: u64) -> u64 {
        let big = (n + m) as u32;
        let entry = (theta(q, big - 1) + 1) * q.pow(big - 1);
        (entry * big as u64).max(theta(q, n as u32) * theta(q, big - 1) + theta(q, big))
    }

    pub fn ore(n: usize, q: u64) -> u64 {
        let nn = n as u32;
        theta(q, nn - 1) * theta(q, nn + 1) + theta(q, nn) * q.pow(nn)
    }

    pub fn phi(n: usize, q: u64) -> u64 {
        let nn = n as u32;
        let phi2 = theta(q, nn - 1) * theta(q, nn - 1);
        let fiber = theta(q, nn - 1) * (theta(q, nn - 1) + 1);
        let nf16 = theta(q, nn) * theta(q, nn);
        phi2.max(fiber).max(nf16) + q.pow(nn)
    }
}
