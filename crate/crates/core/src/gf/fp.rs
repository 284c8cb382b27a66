//! Prime-field helpers: primality, dense polynomials over F_p used to pick the
//! defining modulus, and Gaussian elimination over F_p.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

pub(crate) fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

#[inline]
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, p as u64 - 2, p)
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `m` (coefficients low to high).
fn rem_monic(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    trim(&mut a);
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = mul_mod(lead, c, p);
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(&mut a);
    }
    a
}

fn mul_poly(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    trim(&mut out);
    out
}

fn gcd_poly(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        let monic: Vec<u32> = b.iter().map(|&c| mul_mod(c, inv, p)).collect();
        let r = rem_monic(a, &monic, p);
        a = monic;
        b = r;
    }
    a
}

/// Ben-Or test: a monic `f` of degree d is irreducible over F_p iff
/// gcd(X^{p^k} - X, f) = 1 for every 1 <= k <= d/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    if d <= 1 {
        return d == 1;
    }
    let x = vec![0, 1];
    let mut h = rem_monic(x.clone(), f, p);
    for _ in 1..=d / 2 {
        // h <- h^p mod f
        let mut acc = vec![1u32];
        let mut base = h.clone();
        let mut e = p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem_monic(mul_poly(&acc, &base, p), f, p);
            }
            base = rem_monic(mul_poly(&base, &base, p), f, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let g = gcd_poly(f.to_vec(), diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `d`,
/// comparing the constant term first.
pub(crate) fn smallest_irreducible(p: u32, d: usize) -> Vec<u32> {
    let total = (p as u64).pow(d as u32);
    for k in 0..total {
        // c_{d-1} varies fastest, c_0 slowest.
        let mut f = vec![0u32; d + 1];
        let mut rest = k;
        for i in (0..d).rev() {
            f[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        f[d] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Row-reduce `m` in place over F_p; returns the pivot columns.
pub(crate) fn rref(m: &mut [Vec<u32>], p: u32) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = mul_mod(f, m[r][j], p);
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of {x : m x = 0}, returned in reduced echelon form.
pub(crate) fn nullspace(m: &[Vec<u32>], cols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<u32>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u32; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][f]) % p;
            }
            v
        })
        .collect();
    let pv = rref(&mut basis, p);
    basis.truncate(pv.len());
    basis
}

/// Some solution of `m x = rhs`, if one exists.
pub(crate) fn solve(m: &[Vec<u32>], rhs: &[u32], p: u32) -> Option<Vec<u32>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut aug: Vec<Vec<u32>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    let pivots = rref(&mut aug, p);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![0u32; cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Brute-force irreducibility: no monic factor of degree 1..=d/2.
    fn irreducible_by_division(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        for k in 1..=d / 2 {
            for idx in 0..(p as u64).pow(k as u32) {
                let mut g = vec![0u32; k + 1];
                let mut rest = idx;
                for c in g.iter_mut().take(k) {
                    *c = (rest % p as u64) as u32;
                    rest /= p as u64;
                }
                g[k] = 1;
                if rem_monic(f.to_vec(), &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn ben_or_agrees_with_trial_division() {
        for &(p, d) in &[(2u32, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            for idx in 0..(p as u64).pow(d as u32) {
                let mut f = vec![0u32; d + 1];
                let mut rest = idx;
                for c in f.iter_mut().take(d) {
                    *c = (rest % p as u64) as u32;
                    rest /= p as u64;
                }
                f[d] = 1;
                assert_eq!(is_irreducible(&f, p), irreducible_by_division(&f, p), "{f:?} mod {p}");
            }
        }
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(2, 1), vec![0, 1]);
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1, 1]);
    }

    #[test]
    fn nullspace_and_solve() {
        // x + y = 0 over F_2
        let m = vec![vec![1, 1]];
        assert_eq!(nullspace(&m, 2, 2), vec![vec![1, 1]]);
        let m = vec![vec![1, 2], vec![2, 1]];
        assert_eq!(solve(&m, &[1, 2], 5).map(|x| {
            let a = (x[0] + 2 * x[1]) % 5;
            let b = (2 * x[0] + x[1]) % 5;
            (a, b)
        }), Some((1, 2)));
        let singular = vec![vec![1, 1], vec![1, 1]];
        assert!(solve(&singular, &[0, 1], 2).is_none());
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(65537));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(91));
        assert_eq!(distinct_prime_factors(1 << 10), vec![2]);
        assert_eq!(distinct_prime_factors(728), vec![2, 7, 13]);
    }
}
