//! Integer lattices: Smith normal form with unimodular transforms, kernel
//! lattices, and finite quotients L/M with explicit coset representatives.
//!
//! Everything here is `BigInt`; the matrices coming from Weyl group elements
//! are tiny but the intermediate entries of a Smith reduction are not
//! bounded by the input size.

use num::bigint::Sign;
use num::{BigInt, Integer, One, Signed, Zero};

use crate::{Error, Result};

/// Dense row-major matrix over `BigInt`. Not square in general.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    e: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            e: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    /// Square matrix from the coroot action of a Weyl element.
    pub fn from_imat(m: &crate::matrix::IMat) -> Self {
        let n = m.n();
        let mut out = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, BigInt::from(m.get(i, j)));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.e[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.e[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    let cur = out.get(i, j) + t;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.e.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.e.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_dst += c * row_src
    fn row_addmul(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let t = c * self.get(src, j);
            let cur = self.get(dst, j) + t;
            self.set(dst, j, cur);
        }
    }

    /// col_dst += c * col_src
    fn col_addmul(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let t = c * self.get(i, src);
            let cur = self.get(i, dst) + t;
            self.set(i, dst, cur);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let cur = -self.get(i, j);
            self.set(i, j, cur);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let cur = -self.get(i, j);
            self.set(i, j, cur);
        }
    }

    pub fn is_diagonal(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Fraction-free (Bareiss) determinant. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row_vec(i)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    fn row_vec(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }
}

/// `u * input * v = d` with `u`, `v` unimodular and `d` in Smith normal
/// form: diagonal, non-negative, each entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`, maintained during the reduction.
    pub u_inv: IntMatrix,
    /// Inverse of `v`, maintained during the reduction.
    pub v_inv: IntMatrix,
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = BigInt::zero();
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            // strict improvement only, so ties go to the first row-major hit
            if best.is_none() || a < best_abs {
                best = Some((i, j));
                best_abs = a;
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    let move_pivot = |d: &mut IntMatrix,
                          u: &mut IntMatrix,
                          u_inv: &mut IntMatrix,
                          v: &mut IntMatrix,
                          v_inv: &mut IntMatrix,
                          t: usize|
     -> bool {
        let Some((pi, pj)) = smallest_nonzero(d, t) else {
            return false;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);
        true
    };

    let mut t = 0;
    while t < rows.min(cols) {
        if !move_pivot(&mut d, &mut u, &mut u_inv, &mut v, &mut v_inv, t) {
            break;
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t) / d.get(t, t);
                if !q.is_zero() {
                    let negq = -&q;
                    d.row_addmul(i, t, &negq);
                    u.row_addmul(i, t, &negq);
                    u_inv.col_addmul(t, i, &q);
                }
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j) / d.get(t, t);
                if !q.is_zero() {
                    let negq = -&q;
                    d.col_addmul(j, t, &negq);
                    v.col_addmul(j, t, &negq);
                    v_inv.row_addmul(t, j, &q);
                }
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder strictly smaller than the pivot appeared
                move_pivot(&mut d, &mut u, &mut u_inv, &mut v, &mut v_inv, t);
                continue;
            }
            // pivot row and column are clear; force the pivot to divide the
            // remaining submatrix before moving on
            let nondiv = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(d.get(i, j) % d.get(t, t)).is_zero());
            if let Some((i, _)) = nondiv {
                let one = BigInt::one();
                let neg_one = -&one;
                d.row_addmul(t, i, &one);
                u.row_addmul(t, i, &one);
                u_inv.col_addmul(i, t, &neg_one);
                continue;
            }
            break;
        }
        if d.get(t, t).sign() == Sign::Minus {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }

    SmithDecomposition {
        u,
        d,
        v,
        u_inv,
        v_inv,
    }
}

/// Basis of the lattice of integer vectors x with m x = 0, as columns of the
/// Smith transform. The basis is saturated: any integer kernel vector is an
/// integer combination of it.
pub fn kernel_lattice(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let mind = m.rows().min(m.cols());
    let mut basis = Vec::new();
    for j in 0..m.cols() {
        if j >= mind || snf.d.get(j, j).is_zero() {
            basis.push(snf.v.column(j));
        }
    }
    basis
}

/// Finite quotient L/M of a sublattice of Z^ambient_rank by a finite-index
/// sublattice of relations, with explicit coset representatives.
///
/// Coset indices follow the mixed-radix order of the Smith coordinates, most
/// significant digit first, so index 0 is always the zero coset.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    ambient_rank: usize,
    generators: Vec<Vec<BigInt>>,
    relations: Vec<Vec<BigInt>>,
    rank: usize,
    basis: IntMatrix,
    solve_u: IntMatrix,
    solve_d: Vec<BigInt>,
    rel_u: IntMatrix,
    divisors: Vec<BigInt>,
    nontrivial_divisors: Vec<BigInt>,
    strides: Vec<usize>,
    coset_reps: Vec<Vec<BigInt>>,
}

const MAX_COSETS: usize = 1_000_000;

pub fn quotient(
    generators: &[Vec<BigInt>],
    relations: &[Vec<BigInt>],
    ambient_rank: usize,
) -> Result<LatticeQuotient> {
    for v in generators.iter().chain(relations) {
        if v.len() != ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: ambient_rank,
                got: v.len(),
            });
        }
    }

    // columns = generators
    let k = generators.len();
    let mut g = IntMatrix::zero(ambient_rank, k);
    for (j, gen) in generators.iter().enumerate() {
        for i in 0..ambient_rank {
            g.set(i, j, gen[i].clone());
        }
    }
    let gs = smith_normal_form(&g);
    let rank = (0..ambient_rank.min(k))
        .take_while(|&i| !gs.d.get(i, i).is_zero())
        .count();
    let solve_d: Vec<BigInt> = (0..rank).map(|i| gs.d.get(i, i).clone()).collect();
    let mut basis = IntMatrix::zero(ambient_rank, rank);
    for c in 0..rank {
        for r in 0..ambient_rank {
            basis.set(r, c, gs.u_inv.get(r, c) * &solve_d[c]);
        }
    }
    let solve_u = gs.u;

    // relations in basis coordinates
    let m = relations.len();
    let mut c_mat = IntMatrix::zero(rank, m);
    for (j, rel) in relations.iter().enumerate() {
        let x = solve_in_basis(&solve_u, &solve_d, rank, rel).ok_or_else(|| Error::NotInLattice {
            vector: rel.clone(),
        })?;
        for i in 0..rank {
            c_mat.set(i, j, x[i].clone());
        }
    }
    let cs = smith_normal_form(&c_mat);
    let rel_rank = (0..rank.min(m))
        .take_while(|&i| !cs.d.get(i, i).is_zero())
        .count();
    if rel_rank < rank {
        return Err(Error::InfiniteQuotient {
            lattice_rank: rank,
            relations_rank: rel_rank,
        });
    }
    let divisors: Vec<BigInt> = (0..rank).map(|i| cs.d.get(i, i).clone()).collect();
    let nontrivial_divisors: Vec<BigInt> =
        divisors.iter().filter(|d| !d.is_one()).cloned().collect();

    let mut count = 1usize;
    for dv in &divisors {
        let dv_usize = usize::try_from(dv).map_err(|_| Error::BudgetExceeded {
            what: "lattice quotient coset enumeration".to_string(),
            budget: MAX_COSETS,
        })?;
        count = count
            .checked_mul(dv_usize)
            .filter(|&c| c <= MAX_COSETS)
            .ok_or_else(|| Error::BudgetExceeded {
                what: "lattice quotient coset enumeration".to_string(),
                budget: MAX_COSETS,
            })?;
    }
    let mut strides = vec![1usize; rank];
    for i in (0..rank.saturating_sub(1)).rev() {
        let next = usize::try_from(&divisors[i + 1]).expect("divisor fits usize");
        strides[i] = strides[i + 1] * next;
    }

    let mut coset_reps = Vec::with_capacity(count);
    for idx in 0..count {
        let mut y = Vec::with_capacity(rank);
        for i in 0..rank {
            let di = usize::try_from(&divisors[i]).expect("divisor fits usize");
            y.push(BigInt::from((idx / strides[i]) % di));
        }
        let x = cs.u_inv.apply(&y);
        coset_reps.push(basis.apply(&x));
    }

    Ok(LatticeQuotient {
        ambient_rank,
        generators: generators.to_vec(),
        relations: relations.to_vec(),
        rank,
        basis,
        solve_u,
        solve_d,
        rel_u: cs.u,
        divisors,
        nontrivial_divisors,
        strides,
        coset_reps,
    })
}

/// x with basis * x = v, if v lies in the lattice spanned by the basis.
fn solve_in_basis(
    solve_u: &IntMatrix,
    solve_d: &[BigInt],
    rank: usize,
    v: &[BigInt],
) -> Option<Vec<BigInt>> {
    let y = solve_u.apply(v);
    for yi in y.iter().skip(rank) {
        if !yi.is_zero() {
            return None;
        }
    }
    let mut x = Vec::with_capacity(rank);
    for i in 0..rank {
        let (q, r) = y[i].div_rem(&solve_d[i]);
        if !r.is_zero() {
            return None;
        }
        x.push(q);
    }
    Some(x)
}

impl LatticeQuotient {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<BigInt>] {
        &self.relations
    }

    /// Rank of the lattice spanned by the generators.
    pub fn lattice_rank(&self) -> usize {
        self.rank
    }

    /// Columns form a basis of the lattice spanned by the generators, in
    /// ambient coordinates.
    pub fn lattice_basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Elementary divisors greater than one, in divisibility order.
    pub fn elementary_divisors(&self) -> &[BigInt] {
        &self.nontrivial_divisors
    }

    pub fn coset_count(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn coset_reps(&self) -> &[Vec<BigInt>] {
        &self.coset_reps
    }

    pub fn coset_rep(&self, idx: usize) -> &[BigInt] {
        &self.coset_reps[idx]
    }

    /// Index of the coset of `v`. Fails when `v` is outside the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Result<usize> {
        if v.len() != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                got: v.len(),
            });
        }
        let x = solve_in_basis(&self.solve_u, &self.solve_d, self.rank, v).ok_or_else(|| {
            Error::NotInLattice {
                vector: v.to_vec(),
            }
        })?;
        let y = self.rel_u.apply(&x);
        let mut idx = 0usize;
        for i in 0..self.rank {
            let di = &self.divisors[i];
            let digit = usize::try_from(&y[i].mod_floor(di)).expect("digit fits usize");
            idx += digit * self.strides[i];
        }
        Ok(idx)
    }

    /// Whether `v` lies in the relation lattice M.
    pub fn is_relation(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.reduce(v)? == 0)
    }
}
