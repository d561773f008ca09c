//! Small square integer matrices and exact rational linear solves.
//!
//! Group elements act on simple-coroot coordinates through these matrices;
//! entries stay tiny (bounded by root-system structure constants), so `i64`
//! is ample and overflow is not a concern at the supported ranks.

use num::{BigInt, BigRational, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IMat {
    n: usize,
    e: Vec<i64>,
}

impl IMat {
    pub fn identity(n: usize) -> Self {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        IMat { n, e }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        let mut e = Vec::with_capacity(n * n);
        for r in rows {
            e.extend_from_slice(r);
        }
        IMat { n, e }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.e[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.e[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.e[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    e[i * n + j] += a * other.e[k * n + j];
                }
            }
        }
        IMat { n, e }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn apply_bigint(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.n {
                    acc += BigInt::from(self.get(i, j)) * &v[j];
                }
                acc
            })
            .collect()
    }

    pub fn apply_rational(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..self.n {
                    acc += BigRational::from(BigInt::from(self.get(i, j))) * &v[j];
                }
                acc
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) != (i == j) as i64 {
                    return false;
                }
            }
        }
        true
    }
}

/// Gauss-Jordan elimination over exact rationals.
///
/// Solves `a * x = b` for a (possibly non-square) coefficient matrix given as
/// rows. Returns a particular solution together with a basis of the solution
/// space of the homogeneous system, or `None` when the system is
/// inconsistent.
pub fn solve_rational(
    a: &[Vec<BigRational>],
    b: &[BigRational],
) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let m = a.len();
    assert_eq!(b.len(), m);
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=n {
                    let t = &f * &aug[r][j];
                    aug[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m {
            break;
        }
    }

    for row in aug.iter().skip(r) {
        if !row[n].is_zero() {
            return None;
        }
    }

    let mut particular = vec![BigRational::zero(); n];
    for (k, &c) in pivot_cols.iter().enumerate() {
        particular[c] = aug[k][n].clone();
    }

    let mut basis = Vec::new();
    for f in 0..n {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![BigRational::zero(); n];
        v[f] = BigRational::from(BigInt::from(1));
        for (k, &c) in pivot_cols.iter().enumerate() {
            v[c] = -aug[k][f].clone();
        }
        basis.push(v);
    }
    Some((particular, basis))
}

/// Sign of the first nonzero coordinate; 0 for the zero vector.
pub fn leading_sign(v: &[i64]) -> i64 {
    for &x in v {
        if x != 0 {
            return x.signum();
        }
    }
    0
}

pub fn rational_is_integer(x: &BigRational) -> bool {
    x.denom().abs() == BigInt::from(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn identity_and_mul() {
        let id = IMat::identity(3);
        let m = IMat::from_rows(&[vec![1, 2, 0], vec![0, 1, 0], vec![3, 0, 1]]);
        assert_eq!(id.mul(&m), m);
        assert_eq!(m.mul(&id), m);
        assert!(id.is_identity());
        assert!(!m.is_identity());
    }

    #[test]
    fn apply_matches_mul() {
        let m = IMat::from_rows(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(m.apply(&[1, 0]), vec![2, -1]);
        assert_eq!(m.apply(&[1, 1]), vec![1, 1]);
    }

    #[test]
    fn solve_unique() {
        // 2x = 1, over the rationals
        let (x, null) = solve_rational(&[vec![q(2, 1)]], &[q(1, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 2)]);
        assert!(null.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        // x + y = 1 has a one-dimensional solution space
        let (x, null) = solve_rational(&[vec![q(1, 1), q(1, 1)]], &[q(1, 1)]).unwrap();
        assert!((&x[0] + &x[1]).is_one());
        assert_eq!(null.len(), 1);
        assert!((&null[0][0] + &null[0][1]).is_zero());
    }

    #[test]
    fn solve_inconsistent() {
        let rows = vec![vec![q(1, 1), q(0, 1)], vec![q(1, 1), q(0, 1)]];
        assert!(solve_rational(&rows, &[q(1, 1), q(2, 1)]).is_none());
    }

    #[test]
    fn leading_sign_cases() {
        assert_eq!(leading_sign(&[0, 0]), 0);
        assert_eq!(leading_sign(&[0, -2, 5]), -1);
        assert_eq!(leading_sign(&[3, -2]), 1);
    }
}
