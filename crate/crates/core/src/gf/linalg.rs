//! Dense linear algebra over a `FieldCtx`.

use super::{FieldCtx, Gf};

pub type Matrix = Vec<Vec<Gf>>;

/// Row echelon form in place; returns (pivot columns, number of row swaps).
fn echelon(k: &FieldCtx, m: &mut Matrix, reduce: bool) -> (Vec<usize>, usize) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if piv != r {
            m.swap(r, piv);
            swaps += 1;
        }
        let inv = k.inv(m[r][c]).expect("pivot is nonzero");
        let start = if reduce { 0 } else { r + 1 };
        for i in start..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = k.mul(m[i][c], inv);
            for j in c..cols {
                let t = k.mul(f, m[r][j]);
                m[i][j] = k.sub(m[i][j], t);
            }
        }
        if reduce {
            for j in c..cols {
                m[r][j] = k.mul(m[r][j], inv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, swaps)
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn det(k: &FieldCtx, m: &Matrix) -> Gf {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "det of a non-square matrix");
    if n == 0 {
        return Gf::ONE;
    }
    let mut a = m.clone();
    let (pivots, swaps) = echelon(k, &mut a, false);
    if pivots.len() < n {
        return Gf::ZERO;
    }
    let diag = k.product((0..n).map(|i| a[i][i]));
    if swaps % 2 == 1 {
        k.neg(diag)
    } else {
        diag
    }
}

pub fn rank(k: &FieldCtx, m: &Matrix) -> usize {
    let mut a = m.clone();
    echelon(k, &mut a, false).0.len()
}

/// Some x with m x = rhs, if the system is consistent.
pub fn solve(k: &FieldCtx, m: &Matrix, rhs: &[Gf]) -> Option<Vec<Gf>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut r = r.clone();
            r.push(b);
            r
        })
        .collect();
    let (pivots, _) = echelon(k, &mut aug, true);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Gf::ZERO; cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols];
    }
    Some(x)
}

/// Basis of the right kernel {x : m x = 0}.
pub fn nullspace(k: &FieldCtx, m: &Matrix, cols: usize) -> Vec<Vec<Gf>> {
    let mut a = m.clone();
    let (pivots, _) = echelon(k, &mut a, true);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Gf::ZERO; cols];
            v[f] = Gf::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(a[r][f]);
            }
            v
        })
        .collect()
}

pub fn mat_mul(k: &FieldCtx, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| k.sum((0..inner).map(|l| k.mul(row[l], b[l][j]))))
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    fn leibniz(k: &FieldCtx, m: &Matrix) -> Gf {
        let n = m.len();
        let mut idx: Vec<usize> = (0..n).collect();
        let mut total = Gf::ZERO;
        permute(&mut idx, 0, &mut |perm| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let t = k.product((0..n).map(|i| m[i][perm[i]]));
            total = if inversions % 2 == 0 { k.add(total, t) } else { k.sub(total, t) };
        });
        total
    }

    fn permute(v: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
        if i == v.len() {
            f(v);
            return;
        }
        for j in i..v.len() {
            v.swap(i, j);
            permute(v, i + 1, f);
            v.swap(i, j);
        }
    }

    #[test]
    fn det_agrees_with_leibniz() {
        let k = build_field(3, 1, 2).unwrap();
        let mut x = 1u32;
        for n in 1..=4 {
            for _ in 0..40 {
                let m: Matrix = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                x = x.wrapping_mul(1103515245).wrapping_add(12345);
                                Gf((x >> 16) % 9)
                            })
                            .collect()
                    })
                    .collect();
                assert_eq!(det(&k, &m), leibniz(&k, &m));
            }
        }
    }

    #[test]
    fn solve_and_nullspace() {
        let k = build_field(5, 1, 1).unwrap();
        let m: Matrix = vec![vec![Gf(1), Gf(2), Gf(3)], vec![Gf(2), Gf(1), Gf(1)]];
        let ns = nullspace(&k, &m, 3);
        assert_eq!(ns.len(), 1);
        let prod = mat_mul(&k, &m, &transpose(&ns));
        assert!(prod.iter().flatten().all(|x| x.is_zero()));
        let x = solve(&k, &m, &[Gf(1), Gf(0)]).unwrap();
        let check = mat_mul(&k, &m, &transpose(&vec![x]));
        assert_eq!(check, vec![vec![Gf(1)], vec![Gf(0)]]);
        assert_eq!(rank(&k, &m), 2);
    }
}
