//! Exact rational helpers shared by the combinatorial modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn to_f64_vec(v: &[Q]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

pub fn dot_qi(a: &[Q], b: &[i64]) -> Q {
    a.iter()
        .zip(b)
        .fold(Q::zero(), |acc, (x, &y)| acc + x * BigInt::from(y))
}

pub fn dot_q(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Centroid of a list of integer points.
pub fn centroid_i(points: &[&[i64]]) -> Vec<Q> {
    let n = points[0].len();
    let k = BigInt::from(points.len());
    (0..n)
        .map(|j| {
            let s: i64 = points.iter().map(|p| p[j]).sum();
            Q::new(BigInt::from(s), k.clone())
        })
        .collect()
}

pub fn centroid_q(points: &[Vec<Q>]) -> Vec<Q> {
    let n = points[0].len();
    let k = q(points.len() as i64);
    (0..n)
        .map(|j| points.iter().fold(Q::zero(), |acc, p| acc + &p[j]) / &k)
        .collect()
}

pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn denominator_lcm(v: &[Q]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| {
        let d = x.denom();
        let g = num_integer::Integer::gcd(&acc, d);
        acc / g * d
    })
}

/// Row-reduces `rows` in place and returns the rank.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for j in c..ncols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Affine rank (dimension of the affine hull) of a point set.
pub fn affine_dim(points: &[Vec<Q>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let rows = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(rows)
}

/// Solves `a x = b` where `a` is m x n with m >= n. Returns `None` when the
/// system is inconsistent or has no unique solution.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    if m == 0 {
        return None;
    }
    let n = a[0].len();
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::with_capacity(n);
    for c in 0..n {
        let p = (r..m).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(r, p);
        let inv = Q::one() / &aug[r][c];
        for j in c..=n {
            aug[r][j] = &aug[r][j] * &inv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=n {
                    let t = &f * &aug[r][j];
                    aug[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Basis of the right null space of `a` (rows of length n).
pub fn nullspace(a: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let mut rows: Vec<Vec<Q>> = a.to_vec();
    let m = rows.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for j in 0..n {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -rows[i][f].clone();
            }
            v
        })
        .collect()
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_qvec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(","))
}

pub fn fmt_ivec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Fixed 12-significant-digit rendering used in every report and CSV file.
/// Rust's float formatting rounds the exact binary value half-to-even.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        trim_zeros(&s)
    } else {
        format!("{}e{}", trim_zeros(mant), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".to_string()
        } else {
            t.to_string()
        }
    } else {
        s.to_string()
    }
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}
