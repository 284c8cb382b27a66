//! Moore matrices and determinants.
//!
//! Sign convention, used everywhere in the crate: the signed cofactor row of
//! a̲ = (a_1, …, a_n) is ((−1)^{i−1} Δ_{n−1}(â_i))_i, i.e. the cofactors of
//! the first row of the Moore matrix 𝓜_n(a̲). Unsigned mode drops the sign.

use crate::error::{Error, Result};
use crate::gf::linalg::{self, Matrix};
use crate::gf::{FieldCtx, Gf};
use crate::ring::Ring;

/// rows × n table with entry (i, j) = a_j^{q^i}.
pub fn moore_rows<R: Ring>(r: &R, a: &[R::Elem], rows: usize) -> Vec<Vec<R::Elem>> {
    let mut out: Vec<Vec<R::Elem>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let row = if i == 0 {
            a.to_vec()
        } else {
            out[i - 1].iter().map(|x| r.frob_q(x, 1)).collect()
        };
        out.push(row);
    }
    out
}

/// Determinant of a square matrix over any `Ring` by Laplace expansion along
/// rows, memoized on the set of used columns (n·2^n products).
pub fn det_laplace<R: Ring>(r: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "det of a non-square matrix");
    assert!(n <= 20, "Laplace expansion limited to n <= 20");
    if n == 0 {
        return r.one();
    }
    let full = (1usize << n) - 1;
    // memo[mask] = det of rows popcount(mask).. restricted to columns not in mask.
    let mut memo: Vec<Option<R::Elem>> = vec![None; 1 << n];
    memo[full] = Some(r.one());
    let mut masks: Vec<usize> = (0..full).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    for mask in masks {
        let row = mask.count_ones() as usize;
        let mut acc = r.zero();
        let mut free_before = 0usize;
        for (j, entry) in m[row].iter().enumerate() {
            if mask & (1 << j) != 0 {
                continue;
            }
            if !r.is_zero(entry) {
                if let Some(sub) = &memo[mask | (1 << j)] {
                    if !r.is_zero(sub) {
                        let t = r.mul(entry, sub);
                        acc = if free_before % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
                    }
                }
            }
            free_before += 1;
        }
        memo[mask] = Some(acc);
    }
    memo[0].take().unwrap()
}

/// Δ_n(a̲) over any ring.
pub fn moore_det_in<R: Ring>(r: &R, a: &[R::Elem]) -> R::Elem {
    det_laplace(r, &moore_rows(r, a, a.len()))
}

/// Δ_n(a̲) as Π_i Π_{ε ∈ F_q^{i−1}} (a_i + ε_{i−1}a_{i−1} + … + ε_1 a_1).
pub fn moore_det_product_in<R: Ring>(r: &R, a: &[R::Elem]) -> R::Elem {
    let scalars = r.fq_scalars();
    let q = scalars.len();
    let mut acc = r.one();
    for i in 0..a.len() {
        // All F_q-combinations of a_0..a_{i-1}, built incrementally.
        let mut combos = vec![r.zero()];
        for prev in &a[..i] {
            let mut next = Vec::with_capacity(combos.len() * q);
            for c in &combos {
                for s in &scalars {
                    next.push(r.add(c, &r.mul(s, prev)));
                }
            }
            combos = next;
        }
        for c in combos {
            acc = r.mul(&acc, &r.add(&a[i], &c));
            if r.is_zero(&acc) {
                return acc;
            }
        }
    }
    acc
}

/// Signed or unsigned cofactor row over any ring; needs n ≥ 2.
pub fn cofactor_row_in<R: Ring>(r: &R, a: &[R::Elem], signed: bool) -> Result<Vec<R::Elem>> {
    if a.len() < 2 {
        return Err(Error::TupleTooShort { need: 2, got: a.len() });
    }
    Ok((0..a.len())
        .map(|i| {
            let hat: Vec<R::Elem> = a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
            let d = moore_det_in(r, &hat);
            r.signed(&d, signed && i % 2 == 1)
        })
        .collect())
}

/// Δ[m](a̲): determinant of the (n+1)×n Moore matrix with Frobenius row m removed.
pub fn delta_omit_in<R: Ring>(r: &R, a: &[R::Elem], m: usize) -> R::Elem {
    let n = a.len();
    assert!(m <= n);
    let rows: Vec<Vec<R::Elem>> = moore_rows(r, a, n + 1)
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != m)
        .map(|(_, row)| row)
        .collect();
    det_laplace(r, &rows)
}

/// Coefficients (in X^{q^m}, m = 0..=n) of the bordered determinant Δ_{n+1}(a̲, X),
/// expanded along the last column: the X^{q^m} coefficient is (−1)^{n+m} Δ[m](a̲).
pub fn bordered_coeffs_in<R: Ring>(r: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len();
    (0..=n)
        .map(|m| r.signed(&delta_omit_in(r, a, m), (n + m) % 2 == 1))
        .collect()
}

// ---- field versions ------------------------------------------------------

pub fn moore_matrix(k: &FieldCtx, a: &[Gf], rows: usize) -> Result<Matrix> {
    if a.is_empty() {
        return Err(Error::EmptyTuple);
    }
    if rows == 0 {
        return Err(Error::Precondition("a Moore matrix needs at least one row".into()));
    }
    Ok(moore_rows(k, a, rows))
}

/// Δ_n(a̲) by Gaussian elimination. The empty tuple has determinant 1.
pub fn moore_det(k: &FieldCtx, a: &[Gf]) -> Gf {
    linalg::det(k, &moore_rows(k, a, a.len()))
}

/// Δ_n(a̲) by Moore's product formula.
pub fn moore_det_product(k: &FieldCtx, a: &[Gf]) -> Gf {
    moore_det_product_in(k, a)
}

pub fn cofactor_row(k: &FieldCtx, a: &[Gf], signed: bool) -> Result<Vec<Gf>> {
    if a.len() < 2 {
        return Err(Error::TupleTooShort { need: 2, got: a.len() });
    }
    Ok((0..a.len())
        .map(|i| {
            let hat: Vec<Gf> = a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            let d = moore_det(k, &hat);
            if signed && i % 2 == 1 {
                k.neg(d)
            } else {
                d
            }
        })
        .collect())
}

/// Cofactor row extended to n = 1 by Δ_0 = 1.
pub fn minors(k: &FieldCtx, a: &[Gf], signed: bool) -> Vec<Gf> {
    if a.len() == 1 {
        vec![Gf::ONE]
    } else {
        cofactor_row(k, a, signed).expect("n >= 2")
    }
}

pub fn is_fq_independent(k: &FieldCtx, a: &[Gf]) -> bool {
    !moore_det(k, a).is_zero()
}

pub fn delta_omit(k: &FieldCtx, a: &[Gf], m: usize) -> Gf {
    let n = a.len();
    assert!(m <= n);
    let rows: Matrix = moore_rows(k, a, n + 1)
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != m)
        .map(|(_, row)| row)
        .collect();
    linalg::det(k, &rows)
}

pub fn bordered_coeffs(k: &FieldCtx, a: &[Gf]) -> Vec<Gf> {
    let n = a.len();
    (0..=n)
        .map(|m| {
            let d = delta_omit(k, a, m);
            if (n + m) % 2 == 1 {
                k.neg(d)
            } else {
                d
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use crate::poly::{DensePoly, PolyRing};

    #[test]
    fn small_cases() {
        let f4 = build_field(2, 1, 2).unwrap();
        let w = f4.gen();
        assert_eq!(
            moore_matrix(&f4, &[Gf::ONE, w], 2).unwrap(),
            vec![vec![Gf::ONE, w], vec![Gf::ONE, f4.add(w, Gf::ONE)]]
        );
        assert_eq!(moore_det(&f4, &[Gf::ONE, w]), Gf::ONE);
        assert_eq!(moore_det_product(&f4, &[Gf::ONE, w]), Gf::ONE);
        assert_eq!(moore_det(&f4, &[w, w]), Gf::ZERO);
        assert_eq!(moore_det(&f4, &[w]), w);
        assert_eq!(moore_matrix(&f4, &[w], 3).unwrap().len(), 3);
        assert_eq!(moore_matrix(&f4, &[], 1), Err(Error::EmptyTuple));
        assert!(!is_fq_independent(&f4, &[Gf::ONE, Gf::ONE]));
    }

    #[test]
    fn two_element_cofactors() {
        let k = build_field(3, 1, 2).unwrap();
        let (a, b) = (Gf(4), Gf(7));
        assert_eq!(cofactor_row(&k, &[a, b], false).unwrap(), vec![b, a]);
        assert_eq!(cofactor_row(&k, &[a, b], true).unwrap(), vec![b, k.neg(a)]);
        assert_eq!(cofactor_row(&k, &[a], true), Err(Error::TupleTooShort { need: 2, got: 1 }));
    }

    #[test]
    fn laplace_matches_elimination_and_product() {
        let k = build_field(3, 1, 3).unwrap();
        let mut x = 7u32;
        for n in 1..=4 {
            for _ in 0..30 {
                let a: Vec<Gf> = (0..n)
                    .map(|_| {
                        x = x.wrapping_mul(2654435761).wrapping_add(97);
                        Gf((x >> 8) % 27)
                    })
                    .collect();
                let d = moore_det(&k, &a);
                assert_eq!(moore_det_in(&*k, &a), d);
                assert_eq!(moore_det_product(&k, &a), d);
            }
        }
    }

    #[test]
    fn first_row_expansion_gives_the_determinant() {
        // Σ_i c_i a_i^{q^{n-1}} over the last row uses last-row cofactors; the
        // first-row cofactors pair with the first row instead.
        let k = build_field(2, 1, 4).unwrap();
        let a = [Gf(3), Gf(5), Gf(9)];
        let c = cofactor_row(&k, &a, true).unwrap();
        // The first-row cofactors of 𝓜_3 are the signed minors raised to q.
        let lhs = k.sum(c.iter().zip(&a).map(|(&ci, &ai)| k.mul(k.frob_q(ci, 1), ai)));
        assert_eq!(lhs, moore_det(&k, &a));
    }

    #[test]
    fn bordered_determinant_over_polynomials() {
        let k = build_field(2, 1, 3).unwrap();
        let ring = PolyRing { k: k.clone() };
        let a = [Gf(1), Gf(2)];
        let mut entries: Vec<DensePoly> = a.iter().map(|&x| DensePoly::constant(x)).collect();
        entries.push(DensePoly::monomial(Gf::ONE, 1));
        let det = moore_det_in(&ring, &entries);
        let expect = DensePoly::from_additive(&k, &bordered_coeffs(&k, &a));
        assert_eq!(det, expect);
        let generic: Vec<Gf> = bordered_coeffs_in(&*k, &a);
        assert_eq!(generic, bordered_coeffs(&k, &a));
    }
}
