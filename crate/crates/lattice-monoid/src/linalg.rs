//! Exact linear algebra over the integers and the rationals.
//!
//! Matrices are small and dense. Integer routines work in `i128` and
//! panic on overflow; rational routines use big rationals.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Vector = Vec<i64>;
pub type Matrix = Vec<Vec<i64>>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: i64, a: &[i64]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// `m * x` where `m` is given by rows.
pub fn mat_vec(m: &[Vec<i64>], x: &[i64]) -> Vector {
    m.iter().map(|row| dot(row, x)).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<i64>], ncols: usize) -> Matrix {
    (0..ncols)
        .map(|j| m.iter().map(|r| r[j]).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Divides out the gcd of the entries. The zero vector is returned as is.
pub fn primitive(v: &[i64]) -> Vector {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow in lattice computation")
}

fn widen(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

fn row_gcd(row: &[i128]) -> i128 {
    row.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Rank over the rationals of a set of integer vectors.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a = widen(rows);
    let ncols = a[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let (x, y) = (a[r][c], a[i][c]);
            for j in c..ncols {
                a[i][j] = a[i][j] * x - a[r][j] * y;
            }
            let g = row_gcd(&a[i]);
            if g > 1 {
                a[i].iter_mut().for_each(|v| *v /= g);
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = widen(m);
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .expect("integer overflow in determinant");
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Adjugate of a square matrix, so that `adj * m = det * I`.
pub fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Matrix = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = s * det(&minor);
        }
    }
    adj
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Option<Matrix> {
    let d = det(m);
    if d.abs() != 1 {
        return None;
    }
    Some(
        adjugate(m)
            .into_iter()
            .map(|r| r.into_iter().map(|x| narrow(x * d)).collect())
            .collect(),
    )
}

/// Row Hermite normal form: a canonical basis of the lattice spanned by
/// `rows`. Rows are in echelon form with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hnf(rows: &[Vec<i64>]) -> Matrix {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut a = widen(rows);
    let ncols = a[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..a.len() {
                if a[i][c] != 0 && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c] != 0 {
                    let q = Integer::div_floor(&a[i][c], &a[r][c]);
                    for j in c..ncols {
                        a[i][j] -= q * a[r][j];
                    }
                    if a[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            a[r].iter_mut().for_each(|v| *v = -*v);
        }
        for i in 0..r {
            let q = Integer::div_floor(&a[i][c], &a[r][c]);
            if q != 0 {
                for j in c..ncols {
                    a[i][j] -= q * a[r][j];
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.into_iter()
        .map(|row| row.into_iter().map(narrow).collect())
        .collect()
}

fn pivot(row: &[i64]) -> usize {
    row.iter().position(|&x| x != 0).expect("zero row in HNF")
}

/// Coordinates of `x` in an HNF basis, or `None` when `x` is not in the lattice.
pub fn lattice_coords(basis: &[Vec<i64>], x: &[i64]) -> Option<Vector> {
    let mut v = x.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let p = pivot(row);
        if v[..p].iter().any(|&e| e != 0) {
            return None;
        }
        if v[p] % row[p] != 0 {
            return None;
        }
        let q = v[p] / row[p];
        for (e, b) in v.iter_mut().zip(row) {
            *e -= q * b;
        }
        coords.push(q);
    }
    is_zero(&v).then_some(coords)
}

pub fn lattice_contains(basis: &[Vec<i64>], x: &[i64]) -> bool {
    lattice_coords(basis, x).is_some()
}

/// Canonical representative of `x` modulo the lattice with HNF `basis`.
pub fn lattice_reduce(basis: &[Vec<i64>], x: &[i64]) -> Vector {
    let mut v = x.to_vec();
    for row in basis {
        let p = pivot(row);
        let q = Integer::div_floor(&v[p], &row[p]);
        if q != 0 {
            for (e, b) in v.iter_mut().zip(row) {
                *e -= q * b;
            }
        }
    }
    v
}

/// HNF basis of `{x in Z^n : a x = 0}` where `a` is given by rows.
pub fn integer_kernel(a: &[Vec<i64>], n: usize) -> Matrix {
    let m = a.len();
    let rows: Matrix = (0..n)
        .map(|j| {
            let mut r: Vector = a.iter().map(|row| row[j]).collect();
            r.extend((0..n).map(|k| i64::from(k == j)));
            r
        })
        .collect();
    let h = hnf(&rows);
    let ker: Matrix = h
        .into_iter()
        .filter(|r| r[..m].iter().all(|&x| x == 0))
        .map(|r| r[m..].to_vec())
        .collect();
    hnf(&ker)
}

/// HNF basis of the saturation `span_Q(vectors) ∩ Z^n`.
pub fn saturated_span(vectors: &[Vec<i64>], n: usize) -> Matrix {
    let ann = integer_kernel(vectors, n);
    integer_kernel(&ann, n)
}

/// A surjection `Z^n -> Z^(n-k)` whose kernel is the saturation of the
/// span of `sub` (`k` its rank). Rows are in HNF.
pub fn quotient_map(sub: &[Vec<i64>], n: usize) -> Matrix {
    integer_kernel(sub, n)
}

fn to_big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub fn rref(mut a: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
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
                for j in c..ncols {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Solves `sum_j x_j cols[j] = b`. Free variables are set to zero.
/// Returns `None` if the system is inconsistent.
pub fn solve(cols: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let k = cols.len();
    let rows: Vec<Vec<BigRational>> = (0..b.len())
        .map(|i| {
            let mut r: Vec<BigRational> = cols.iter().map(|c| to_big(c[i])).collect();
            r.push(to_big(b[i]));
            r
        })
        .collect();
    let (red, piv) = rref(rows);
    if piv.last() == Some(&k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (row, &p) in red.iter().zip(&piv) {
        x[p] = row[k].clone();
    }
    Some(x)
}

/// Like [`solve`] but requires the columns to be linearly independent.
pub fn solve_unique(cols: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    if rank(cols) < cols.len() {
        return None;
    }
    solve(cols, b)
}

/// Scales a rational vector to a primitive integer vector.
pub fn clear_denominators(v: &[BigRational]) -> Vector {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            y.to_i64().expect("integer overflow")
        })
        .collect()
}

/// Basis of the rational kernel `{x : a x = 0}`, each vector primitive.
pub fn rational_kernel(a: &[Vec<i64>], n: usize) -> Matrix {
    let rows: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|&x| to_big(x)).collect())
        .collect();
    let (red, piv) = rref(rows);
    (0..n)
        .filter(|c| !piv.contains(c))
        .map(|f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (row, &p) in red.iter().zip(&piv) {
                v[p] = -row[f].clone();
            }
            clear_denominators(&v)
        })
        .collect()
}

pub fn big(x: i64) -> BigRational {
    to_big(x)
}

pub fn is_nonneg(x: &BigRational) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_is_canonical() {
        let a = hnf(&[vec![2, 4], vec![1, 3]]);
        let b = hnf(&[vec![1, 3], vec![1, 1]]);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn kernel_and_quotient() {
        let k = integer_kernel(&[vec![1, 1, 1]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(v, &[1, 1, 1]), 0);
        }
        let q = quotient_map(&[vec![2, 0]], 2);
        assert_eq!(q, vec![vec![0, 1]]);
        assert_eq!(saturated_span(&[vec![2, 4]], 2), vec![vec![1, 2]]);
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![1, 2], vec![3, 4]]), -2);
        assert_eq!(det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]]), -5);
        let m = vec![vec![2, 1], vec![1, 1]];
        assert_eq!(unimodular_inverse(&m), Some(vec![vec![1, -1], vec![-1, 2]]));
    }

    #[test]
    fn lattice_membership() {
        let b = hnf(&[vec![2, 0], vec![1, 1]]);
        assert!(lattice_contains(&b, &[3, 1]));
        assert!(!lattice_contains(&b, &[1, 0]));
        assert_eq!(lattice_reduce(&b, &[5, 1]), vec![0, 0]);
    }

    #[test]
    fn rational_solving() {
        let x = solve_unique(&[vec![1, 0], vec![1, 1]], &[3, 2]).unwrap();
        assert_eq!(x, vec![big(1), big(2)]);
        assert!(solve(&[vec![1, 1]], &[1, 0]).is_none());
        assert_eq!(rank(&[vec![1, 2], vec![2, 4], vec![0, 1]]), 2);
        assert_eq!(rational_kernel(&[vec![1, 2]], 2), vec![vec![-2, 1]]);
    }
}
