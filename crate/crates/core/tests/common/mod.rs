//! Independent oracles shared by the acceptance suite and the property tests.
//! Nothing here calls into the normal-form code under test.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of all `k x k` minors (the `k`-th determinantal divisor).
pub fn minor_gcd(m: &[Vec<i64>], k: usize) -> i128 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if k == 0 {
        return 1;
    }
    let row_sets = combinations(rows, k);
    let col_sets = combinations(cols, k);
    let mut g = 0i128;
    for rs in &row_sets {
        for cs in &col_sets {
            let sub: Vec<Vec<i128>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect())
                .collect();
            g = g.gcd(&bareiss_det(&sub));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

/// Invariant factors `D_k / D_(k-1)` up to the rank.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len().min(m.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=n {
        let d = minor_gcd(m, k);
        if d == 0 {
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

/// Polarization type read off a nondegenerate alternating matrix: its
/// invariant factors come in equal pairs, one entry per pair.
pub fn alternating_type(m: &[Vec<i64>]) -> Option<Vec<i128>> {
    let f = invariant_factors(m);
    if f.len() != m.len() || f.len() % 2 == 1 {
        return None;
    }
    let mut out = Vec::new();
    for pair in f.chunks(2) {
        if pair[0] != pair[1] {
            return None;
        }
        out.push(pair[0]);
    }
    Some(out)
}

/// Reduced row echelon form over `Q`, zero rows dropped.
pub fn rref(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    a
}

/// Coordinates of `v` in the rows of `basis` (rows independent), if `v` is
/// in their rational span.
pub fn rational_coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let n = v.len();
    // Solve x * basis = v, i.e. basis^T x^T = v^T, by elimination on the
    // augmented n x (k+1) system.
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> = (0..k)
                .map(|i| BigRational::from_integer(basis[i][j].into()))
                .collect();
            row.push(BigRational::from_integer(v[j].into()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..n).any(|i| !a[i][k].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][k].clone();
    }
    Some(x)
}

pub fn is_integral(xs: &[BigRational]) -> bool {
    xs.iter().all(|x| x.is_integer())
}

pub fn to_i64_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
    use num_traits::ToPrimitive;
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().expect("small entries"))
                .collect()
        })
        .collect()
}

/// Whether `h` is in row Hermite normal form: zero rows last, positive
/// pivots moving strictly right, entries above each pivot reduced into
/// `[0, pivot)`.
pub fn is_row_hermite(h: &[Vec<i64>]) -> bool {
    let mut last: Option<usize> = None;
    let mut seen_zero = false;
    for (i, row) in h.iter().enumerate() {
        match row.iter().position(|&x| x != 0) {
            None => seen_zero = true,
            Some(c) => {
                if seen_zero || last.is_some_and(|l| c <= l) || row[c] <= 0 {
                    return false;
                }
                if h[..i]
                    .iter()
                    .any(|above| above[c] < 0 || above[c] >= row[c])
                {
                    return false;
                }
                last = Some(c);
            }
        }
    }
    true
}

/// Brute-force exponent bound: largest `delta` with `delta^n <= k^n d^(n-1)`.
pub fn exhaustive_delta(k: u64, d: u64, n: u32) -> u128 {
    let bound = (k as u128).pow(n) * (d as u128).pow(n - 1);
    let mut delta = 1u128;
    while (delta + 1).checked_pow(n).is_some_and(|x| x <= bound) {
        delta += 1;
    }
    delta
}

/// Brute-force perfect power test.
pub fn is_perfect_power(x: u128, g: u32) -> bool {
    let mut r = 0u128;
    loop {
        match r.checked_pow(g) {
            Some(p) if p < x => r += 1,
            Some(p) => return p == x,
            None => return false,
        }
    }
}
