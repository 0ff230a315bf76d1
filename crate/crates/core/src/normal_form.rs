//! Hermite and Smith normal forms over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
///
/// The result has no zero rows, strictly increasing pivot columns, positive
/// pivots, and every entry above a pivot reduced into `[0, pivot)`. Two
/// generating sets span the same lattice exactly when their forms agree.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down column c until only row r is nonzero below the diagonal
        loop {
            let Some(p) = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&i, &j| a[(i, c)].abs().cmp(&a[(j, c)].abs()))
            else {
                break;
            };
            a.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                sub_row_multiple(&mut a, i, r, &q);
                if !a[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            for x in a.row_mut(r) {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[(i, c)].div_floor(&a[(r, c)]);
            if !q.is_zero() {
                sub_row_multiple(&mut a, i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    IntMatrix::from_rows(cols, (0..r).map(|i| a.row(i).to_vec()).collect())
}

fn sub_row_multiple(a: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for j in 0..a.cols() {
        let s = &a[(source, j)] * q;
        a[(target, j)] -= s;
    }
}

/// Pivot column of each row of a matrix in Hermite form.
pub fn pivot_columns(h: &IntMatrix) -> Vec<usize> {
    (0..h.rows())
        .map(|i| {
            h.row(i)
                .iter()
                .position(|x| !x.is_zero())
                .expect("hermite form has no zero rows")
        })
        .collect()
}

/// Whether `v` lies in the row lattice of a Hermite-form matrix.
pub fn hermite_contains(h: &IntMatrix, v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for (i, p) in pivot_columns(h).into_iter().enumerate() {
        if v[..p].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, rem) = v[p].div_rem(&h[(i, p)]);
        if !rem.is_zero() {
            return false;
        }
        for (x, y) in v.iter_mut().zip(h.row(i)) {
            *x -= &q * y;
        }
    }
    v.iter().all(Zero::is_zero)
}

/// Smith form `U * A * V = D` with `U` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Nonzero elementary divisors `d_1 | d_2 | ... | d_r`, all positive.
    pub divisors: Vec<BigInt>,
    /// The left transform `U`.
    pub left: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

/// Smith normal form by row and column reduction, pivoting on the entry of
/// least absolute value. Only the left transform is tracked.
pub fn smith(m: &IntMatrix) -> Smith {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut u = IntMatrix::identity(rows);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = least_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                sub_row_multiple(&mut a, i, t, &q);
                sub_row_multiple(&mut u, i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                for i in 0..rows {
                    let s = &a[(i, t)] * &q;
                    a[(i, j)] -= s;
                }
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // enforce d_t | every remaining entry
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
                match bad {
                    None => break,
                    Some(i) => {
                        add_row(&mut a, t, i);
                        add_row(&mut u, t, i);
                        continue;
                    }
                }
            }
            // a smaller remainder appeared; move it onto the diagonal
            let (pi, pj) = least_entry_in_cross(&a, t);
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            swap_cols(&mut a, t, pj);
        }
        if a[(t, t)].is_negative() {
            for x in a.row_mut(t) {
                *x = -&*x;
            }
            for x in u.row_mut(t) {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let divisors = (0..t).map(|i| a[(i, i)].clone()).collect();
    Smith { divisors, left: u }
}

fn least_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn least_entry_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t..a.rows() {
        if !a[(i, t)].is_zero() && (a[best].is_zero() || a[(i, t)].abs() < a[best].abs()) {
            best = (i, t);
        }
    }
    for j in t..a.cols() {
        if !a[(t, j)].is_zero() && (a[best].is_zero() || a[(t, j)].abs() < a[best].abs()) {
            best = (t, j);
        }
    }
    best
}

fn swap_cols(a: &mut IntMatrix, x: usize, y: usize) {
    if x != y {
        for i in 0..a.rows() {
            let tmp = a[(i, x)].clone();
            a[(i, x)] = a[(i, y)].clone();
            a[(i, y)] = tmp;
        }
    }
}

fn add_row(a: &mut IntMatrix, target: usize, source: usize) {
    sub_row_multiple(a, target, source, &-BigInt::one());
}

/// Basis of the saturation `(Q-span of rows) ∩ Z^n` of independent rows.
///
/// From `U * B * V = D` we get `U * B = D * V^-1`, so dividing row `i` of
/// `U * B` by `d_i` yields rows of the unimodular `V^-1`; those span a
/// primitive lattice with the same rational span.
pub fn saturate_rows(basis: &IntMatrix) -> IntMatrix {
    let s = smith(basis);
    assert_eq!(
        s.rank(),
        basis.rows(),
        "saturate_rows needs independent rows"
    );
    let ub = &s.left * basis;
    let rows = (0..basis.rows())
        .map(|i| {
            ub.row(i)
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(&s.divisors[i]);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect()
        })
        .collect();
    hermite_rows(&IntMatrix::from_rows(basis.cols(), rows))
}

/// Index of the row lattice inside its saturation, i.e. the product of the
/// elementary divisors. For a square nonsingular matrix this is `|det|`.
pub fn lattice_index(m: &IntMatrix) -> BigInt {
    smith(m).divisors.iter().product()
}
