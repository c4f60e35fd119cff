//! Small exact linear algebra helpers: rational Gaussian elimination,
//! Hermite and Smith normal forms over the integers, and canonical
//! reduction modulo an integer row lattice.

use crate::arith::{rat, Rat};
use num::traits::{One, Signed, Zero};
use num::{BigInt, Integer};

pub type RatMat = Vec<Vec<Rat>>;
pub type IntMat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> RatMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect()
}

pub fn mat_mul(a: &RatMat, b: &RatMat) -> RatMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                let p = &a[i][t] * &b[t][j];
                out[i][j] += p;
            }
        }
    }
    out
}

/// Gauss-Jordan inverse; panics on singular input.
pub fn mat_inv(a: &RatMat) -> RatMat {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.iter().cloned().collect();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("singular matrix");
        m.swap(col, piv);
        inv.swap(col, piv);
        let d = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= &d;
            inv[col][j] /= &d;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let t1 = &f * &m[col][j];
                    m[r][j] -= t1;
                    let t2 = &f * &inv[col][j];
                    inv[r][j] -= t2;
                }
            }
        }
    }
    inv
}

pub fn det(a: &RatMat) -> Rat {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut d = rat(1);
    for col in 0..n {
        let piv = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return rat(0),
        };
        if piv != col {
            m.swap(col, piv);
            d = -d;
        }
        d *= &m[col][col];
        let pv = m[col][col].clone();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &pv;
                for j in col..n {
                    let t = &f * &m[col][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    d
}

/// Rank over Q by Gaussian elimination.
pub fn rank(a: &RatMat) -> usize {
    if a.is_empty() {
        return 0;
    }
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let piv = match (r..rows).find(|&i| !m[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, piv);
        let pv = m[r][c].clone();
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &pv;
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right nullspace {x : A x = 0}, as rows.
pub fn nullspace(a: &RatMat) -> Vec<Vec<Rat>> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = m[0].len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let piv = match (r..rows).find(|&i| !m[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, piv);
        let pv = m[r][c].clone();
        for j in c..cols {
            m[r][j] /= &pv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().cloned().collect();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = rat(1);
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Row-style Hermite normal form (upper triangular, positive pivots,
/// entries above a pivot reduced into [0, pivot)). Input rows may be
/// linearly dependent; zero rows are dropped.
pub fn hnf(rows: &IntMat) -> IntMat {
    let mut m: IntMat = rows.to_vec();
    if m.is_empty() {
        return m;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        // eliminate below row r in column c by gcd steps
        loop {
            let mut nonzero: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                m.swap(r, nonzero[0]);
                break;
            }
            nonzero.sort_by_key(|&i| m[i][c].abs());
            let a = nonzero[0];
            for &i in &nonzero[1..] {
                let f = (&m[i][c] / &m[a][c]).clone();
                for j in 0..cols {
                    let t = &f * &m[a][j];
                    m[i][j] -= t;
                }
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for j in 0..cols {
                    m[r][j] = -m[r][j].clone();
                }
            }
            // reduce entries above
            for i in 0..r {
                if !m[i][c].is_zero() {
                    let f = m[i][c].div_floor(&m[r][c]);
                    if !f.is_zero() {
                        for j in 0..cols {
                            let t = &f * &m[r][j];
                            m[i][j] -= t;
                        }
                    }
                }
            }
            r += 1;
        }
        if r == m.len() {
            break;
        }
    }
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// Smith normal form: returns (d, q) where d are the diagonal invariant
/// factors of `a` (square, full rank) and q is the unimodular column
/// transform, i.e. lattice membership of x in rowspan(a) is equivalent to
/// (x q)_i = 0 mod d_i for all i.
pub fn snf_reducer(a: &IntMat) -> (Vec<BigInt>, IntMat) {
    let n = a.len();
    assert!(n > 0 && a[0].len() == n);
    let mut m = a.to_vec();
    let mut q: IntMat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    for t in 0..n {
        loop {
            // find pivot with minimal nonzero absolute value in the submatrix
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !m[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let (bi, bj) = best.expect("rank-deficient matrix in snf_reducer");
            m.swap(t, bi);
            swap_cols(&mut m, t, bj);
            swap_cols(&mut q, t, bj);
            let mut clean = true;
            for i in t + 1..n {
                if !m[i][t].is_zero() {
                    let f = m[i][t].div_floor(&m[t][t]);
                    for j in t..n {
                        let s = &f * &m[t][j];
                        m[i][j] -= s;
                    }
                    if !m[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !m[t][j].is_zero() {
                    let f = m[t][j].div_floor(&m[t][t]);
                    add_col_multiple(&mut m, j, t, &(-&f));
                    add_col_multiple(&mut q, j, t, &(-&f));
                    if !m[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean
                && (t + 1..n).all(|i| m[i][t].is_zero())
                && (t + 1..n).all(|j| m[t][j].is_zero())
            {
                break;
            }
        }
        if m[t][t].is_negative() {
            for i in 0..n {
                m[i][t] = -m[i][t].clone();
                q[i][t] = -q[i][t].clone();
            }
        }
    }
    let d = (0..n).map(|i| m[i][i].clone()).collect();
    (d, q)
}

fn swap_cols(m: &mut IntMat, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn add_col_multiple(m: &mut IntMat, target: usize, source: usize, f: &BigInt) {
    for row in m.iter_mut() {
        let t = f * &row[source];
        row[target] += t;
    }
}

/// Canonical representative of x modulo the row lattice with SNF data (d, q).
pub fn reduce_mod_lattice(x: &[BigInt], d: &[BigInt], q: &IntMat) -> Vec<BigInt> {
    let n = x.len();
    let mut y = vec![BigInt::zero(); n];
    for j in 0..n {
        for i in 0..n {
            y[j] += &x[i] * &q[i][j];
        }
        y[j] = y[j].mod_floor(&d[j]);
    }
    y
}

/// Scale a rational matrix to a primitive integer matrix (common denominator
/// cleared); returns (integer matrix, denominator) with a = int / den.
pub fn clear_denominators(a: &RatMat) -> (IntMat, BigInt) {
    let mut den = BigInt::one();
    for row in a {
        for x in row {
            den = den.lcm(x.denom());
        }
    }
    let int = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.numer() * (&den / x.denom()))
                .collect()
        })
        .collect();
    (int, den)
}
