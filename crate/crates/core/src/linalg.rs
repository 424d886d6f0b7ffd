//! Small exact linear algebra over ℚ and ℤ used by the lattice, monopole and
//! degeneration code. Matrices are row-major `Vec<Vec<_>>`.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::symbolic::{q, Q};

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
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
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect()
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    let mut a = to_q(m);
    rref(&mut a).len()
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Primitive vector up to sign: the first nonzero entry is made positive.
pub fn primitive_up_to_sign(v: &[i64]) -> Vec<i64> {
    let p = primitive(v);
    match p.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => p.iter().map(|y| -y).collect(),
        _ => p,
    }
}

/// Integer basis (primitive vectors) of the rational null space of `m`,
/// an `rows × ncols` matrix.
pub fn nullspace(m: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut a = to_q(m);
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut v = vec![Q::zero(); ncols];
        v[f] = q(1);
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -a[i][f].clone();
        }
        out.push(clear_denominators(&v));
    }
    out
}

/// Smallest integer multiple of a rational vector, made primitive.
pub fn clear_denominators(v: &[Q]) -> Vec<i64> {
    let l = v
        .iter()
        .fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<i64> = v
        .iter()
        .map(|x| {
            (x * Q::from_integer(l.clone()))
                .to_integer()
                .to_i64()
                .expect("small entries")
        })
        .collect();
    primitive(&ints)
}

/// Solves `A x = b` over ℚ; `None` if inconsistent. Returns one solution.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][cols].clone();
    }
    Some(x)
}

/// Determinant of a small integer matrix by fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> i128 {
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
                Some(i) => {
                    a.swap(k, i);
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

/// Characteristic data `det(I − s·M) = Σ_k c_k s^k`, returned as `[c_0..c_n]`.
/// Computed as signed sums of principal minors.
pub fn det_one_minus(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let mut out = vec![0i128; n + 1];
    for mask in 0u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let minor: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| m[i][j]).collect())
            .collect();
        let k = idx.len();
        let d = det(&minor);
        out[k] += if k.is_multiple_of(2) { d } else { -d };
    }
    out
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_nonneg_int(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        assert_eq!(det(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), 0);
    }

    #[test]
    fn nullspace_of_row() {
        let ns = nullspace(&[vec![1, 1]], 2);
        assert_eq!(ns, vec![vec![-1, 1]]);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
    }

    #[test]
    fn one_minus_reflection() {
        // det(1 − s·(−1)) = 1 + s
        assert_eq!(det_one_minus(&[vec![-1]]), vec![1, 1]);
        // swap matrix: det(I − sP) = 1 − s²
        assert_eq!(det_one_minus(&[vec![0, 1], vec![1, 0]]), vec![1, 0, -1]);
    }
}
