//! Integer lattice algorithms on small dense matrices.
//!
//! Everything works in `i128` internally; inputs and outputs are `i64`.
//! Matrices are row-major `Vec<Vec<_>>`. A "lattice spanned by rows" means
//! the Z-span of the row vectors.

use num_integer::Integer;

type Mat = Vec<Vec<i128>>;

fn widen(rows: &[Vec<i64>]) -> Mat {
    rows.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

fn narrow(rows: Mat) -> Vec<Vec<i64>> {
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).expect("lattice entry overflows i64"))
                .collect()
        })
        .collect()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides by the gcd of the entries. Zero vectors come back unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

/// Determinant by Bareiss fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = widen(m);
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflows i64")
}

/// Result of column-reducing a matrix `A` (m x n): `A * V = H` where the
/// first `rank` columns of `H` are nonzero and the rest vanish, and `V` is
/// unimodular with inverse `V_inv`.
struct ColumnReduction {
    h: Mat,
    v: Mat,
    v_inv: Mat,
    rank: usize,
}

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn column_reduce(a: &Mat, n: usize) -> ColumnReduction {
    let m = a.len();
    let mut h = a.clone();
    let mut v = identity(n);
    let mut v_inv = identity(n);

    // col_j += f * col_k ; V_inv row_k -= f * row_j
    let add_col = |h: &mut Mat, v: &mut Mat, v_inv: &mut Mat, j: usize, k: usize, f: i128| {
        if f == 0 {
            return;
        }
        for row in h.iter_mut() {
            row[j] += f * row[k];
        }
        for row in v.iter_mut() {
            row[j] += f * row[k];
        }
        for c in 0..n {
            let t = v_inv[j][c];
            v_inv[k][c] -= f * t;
        }
    };
    let swap_col = |h: &mut Mat, v: &mut Mat, v_inv: &mut Mat, j: usize, k: usize| {
        if j == k {
            return;
        }
        for row in h.iter_mut() {
            row.swap(j, k);
        }
        for row in v.iter_mut() {
            row.swap(j, k);
        }
        v_inv.swap(j, k);
    };
    let neg_col = |h: &mut Mat, v: &mut Mat, v_inv: &mut Mat, j: usize| {
        for row in h.iter_mut() {
            row[j] = -row[j];
        }
        for row in v.iter_mut() {
            row[j] = -row[j];
        }
        for x in v_inv[j].iter_mut() {
            *x = -*x;
        }
    };

    let mut r = 0;
    for i in 0..m {
        if r == n {
            break;
        }
        // Euclid on row i across columns r..n until only column r is nonzero.
        loop {
            let piv = (r..n)
                .filter(|&j| h[i][j] != 0)
                .min_by_key(|&j| (h[i][j].abs(), j));
            let Some(p) = piv else { break };
            swap_col(&mut h, &mut v, &mut v_inv, r, p);
            let mut done = true;
            for j in r + 1..n {
                if h[i][j] != 0 {
                    let f = Integer::div_floor(&h[i][j], &h[i][r]);
                    add_col(&mut h, &mut v, &mut v_inv, j, r, -f);
                    if h[i][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[i][r] == 0 {
            continue;
        }
        if h[i][r] < 0 {
            neg_col(&mut h, &mut v, &mut v_inv, r);
        }
        // Reduce earlier pivot columns modulo this pivot for canonical form.
        for j in 0..r {
            let f = Integer::div_floor(&h[i][j], &h[i][r]);
            add_col(&mut h, &mut v, &mut v_inv, j, r, -f);
        }
        r += 1;
    }
    ColumnReduction { h, v, v_inv, rank: r }
}

fn transpose(a: &Mat, ncols: usize) -> Mat {
    (0..ncols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Canonical (Hermite) basis of the lattice spanned by `rows`, all of
/// length `n`. Returns `rank` rows.
pub fn lattice_basis(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    // Column-reduce the transpose: columns of Aᵀ are the generators.
    let at = transpose(&widen(rows), n);
    let cr = column_reduce(&at, rows.len());
    let basis = transpose(&cr.h, rows.len());
    narrow(basis.into_iter().take(cr.rank).collect())
}

/// Integer basis of `{x ∈ Z^n : a x = 0}`.
pub fn kernel(a: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if a.is_empty() {
        return narrow(identity(n));
    }
    let cr = column_reduce(&widen(a), n);
    let basis: Mat = (cr.rank..n)
        .map(|j| cr.v.iter().map(|row| row[j]).collect())
        .collect();
    lattice_basis(&narrow(basis), n)
}

/// Rank of an integer matrix.
pub fn rank(a: &[Vec<i64>], n: usize) -> usize {
    if a.is_empty() {
        return 0;
    }
    column_reduce(&widen(a), n).rank
}

/// Saturation `(span_R L) ∩ Z^n` of the lattice spanned by `rows`.
pub fn saturation(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let k = kernel(rows, n);
    kernel(&k, n)
}

/// Gcd of all maximal minors of a full-row-rank `k x n` matrix.
pub fn gcd_maximal_minors(rows: &[Vec<i64>]) -> i64 {
    let k = rows.len();
    if k == 0 {
        return 1;
    }
    let n = rows[0].len();
    let mut g = 0i64;
    for cols in combinations(n, k) {
        let sub: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        g = g.gcd(&det(&sub));
    }
    g
}

/// Index of the lattice spanned by `rows` in its saturation (1 when
/// saturated). The rows must be linearly independent.
pub fn saturation_index(rows: &[Vec<i64>]) -> i64 {
    gcd_maximal_minors(rows)
}

/// Extends a basis of a saturated rank-`k` sublattice to a basis of `Z^n`.
/// Returns the unimodular matrix whose first `k` rows are `rows` (unchanged)
/// and the inverse of that matrix.
pub fn complete_basis(rows: &[Vec<i64>], n: usize) -> Option<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let k = rows.len();
    let mut full: Vec<Vec<i64>> = rows.to_vec();
    if k > 0 {
        let cr = column_reduce(&widen(rows), n);
        if cr.rank != k {
            return None;
        }
        let hk: Vec<Vec<i64>> = narrow(cr.h.iter().map(|r| r[..k].to_vec()).collect());
        if det(&hk).abs() != 1 {
            return None;
        }
        full.extend(narrow(cr.v_inv[k..].to_vec()));
    } else {
        full = narrow(identity(n));
    }
    let inv = unimodular_inverse(&full)?;
    Some((full, inv))
}

/// Inverse of a unimodular matrix, or `None` if `det != ±1`.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let d = det(m);
    if d.abs() != 1 {
        return None;
    }
    // adjugate / det
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != j)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != i)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = sign * det(&minor) * d;
        }
    }
    Some(inv)
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Solves `x B = v` for integer `x`, where the rows of `B` are linearly
/// independent. `None` if `v` is not in the Z-span.
pub fn coordinates_in(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    use crate::arith::{q, solve};
    let n = v.len();
    let a: Vec<Vec<crate::arith::Q>> = (0..n)
        .map(|j| basis.iter().map(|r| q(r[j])).collect())
        .collect();
    let b: Vec<_> = v.iter().map(|&x| q(x)).collect();
    let x = solve(&a, &b)?;
    x.iter()
        .map(|c| {
            if c.is_integer() {
                i64::try_from(c.to_integer()).ok()
            } else {
                None
            }
        })
        .collect()
}

/// Lexicographic k-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}
