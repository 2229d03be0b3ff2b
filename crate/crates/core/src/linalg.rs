//! Small dense exact linear algebra over the rationals and the integers.
//!
//! Matrices here are tiny (at most a few dozen rows and columns), so a plain
//! `Vec<Vec<_>>` representation is used throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type BigQ = BigRational;

pub fn q(n: i64) -> BigQ {
    BigQ::from_integer(BigInt::from(n))
}

/// Reduced row echelon form of `m`, in place. Returns the pivot columns.
pub fn rref(m: &mut [Vec<BigQ>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (head, tail) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in head.iter_mut().zip(tail.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<BigQ>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<BigQ>> {
    m.iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect()
}

/// Rank of the submatrix of `m` formed by the given columns.
pub fn column_rank(m: &[Vec<i64>], cols: &[usize]) -> usize {
    let sub: Vec<Vec<BigQ>> = m
        .iter()
        .map(|row| cols.iter().map(|&c| q(row[c])).collect())
        .collect();
    rank(&sub)
}

/// Basis of the rational null space of `m` (with `ncols` columns), one vector
/// per free column, with a 1 in that free column.
pub fn nullspace(m: &[Vec<BigQ>], ncols: usize) -> Vec<Vec<BigQ>> {
    let mut r = m.to_vec();
    let pivots = rref(&mut r);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigQ::zero(); ncols];
        v[free] = BigQ::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[BigQ]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn det_i64(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(p) => {
                    a.swap(k, p);
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

/// Formats a rational as `p` or `p/q`.
pub fn fmt_q(x: &BigQ) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}
