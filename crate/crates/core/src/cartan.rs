//! Root data for the irreducible root systems A-G in Bourbaki numbering.
//!
//! Convention, fixed once for the whole crate: the Cartan matrix entry is
//! `a[i][j] = <coroot_i, root_j>`, roots carry simple-root coordinates,
//! coroots carry simple-coroot coordinates, and the pairing of a coroot `d`
//! with a root `c` is `d^T A c`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational};

use crate::matrix::IMat;
use crate::{Budgets, Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLetter {
    pub fn from_char(c: char) -> Option<TypeLetter> {
        match c.to_ascii_uppercase() {
            'A' => Some(TypeLetter::A),
            'B' => Some(TypeLetter::B),
            'C' => Some(TypeLetter::C),
            'D' => Some(TypeLetter::D),
            'E' => Some(TypeLetter::E),
            'F' => Some(TypeLetter::F),
            'G' => Some(TypeLetter::G),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            TypeLetter::A => 'A',
            TypeLetter::B => 'B',
            TypeLetter::C => 'C',
            TypeLetter::D => 'D',
            TypeLetter::E => 'E',
            TypeLetter::F => 'F',
            TypeLetter::G => 'G',
        }
    }
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A validated irreducible root system: Cartan matrix plus the full list of
/// positive roots and their coroots, in matching order.
#[derive(Clone, Debug)]
pub struct RootDatum {
    type_letter: TypeLetter,
    rank: usize,
    cartan: IMat,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    highest_root: Vec<i64>,
    highest_coroot: Vec<i64>,
}

pub fn build_datum(letter: TypeLetter, rank: usize) -> Result<RootDatum> {
    build_datum_with(letter, rank, &Budgets::default())
}

pub fn build_datum_with(letter: TypeLetter, rank: usize, budgets: &Budgets) -> Result<RootDatum> {
    validate_type(letter, rank, budgets)?;
    let cartan = cartan_matrix(letter, rank);
    let (positive_roots, positive_coroots) = enumerate_positive_roots(&cartan);
    let highest = positive_roots
        .len()
        .checked_sub(1)
        .expect("a root system has at least one positive root");
    // enumeration is sorted by (height, lex); the last entry is the unique
    // root of maximal height
    let highest_root = positive_roots[highest].clone();
    let highest_coroot = positive_coroots[highest].clone();
    Ok(RootDatum {
        type_letter: letter,
        rank,
        cartan,
        positive_roots,
        positive_coroots,
        highest_root,
        highest_coroot,
    })
}

fn validate_type(letter: TypeLetter, rank: usize, budgets: &Budgets) -> Result<()> {
    let fail = |constraint: &str| {
        Err(Error::InvalidType {
            letter: letter.as_char(),
            rank,
            constraint: constraint.to_string(),
        })
    };
    match letter {
        TypeLetter::A if rank < 1 => return fail("type A requires rank >= 1"),
        TypeLetter::B if rank < 2 => return fail("type B requires rank >= 2"),
        TypeLetter::C if rank < 2 => return fail("type C requires rank >= 2"),
        TypeLetter::D if rank < 3 => return fail("type D requires rank >= 3"),
        TypeLetter::E if !(6..=8).contains(&rank) => return fail("type E requires rank 6, 7 or 8"),
        TypeLetter::F if rank != 4 => return fail("type F requires rank 4"),
        TypeLetter::G if rank != 2 => return fail("type G requires rank 2"),
        _ => {}
    }
    if rank > budgets.max_rank {
        return Err(Error::BudgetExceeded {
            what: format!("rank {rank} root system (max_rank)"),
            budget: budgets.max_rank,
        });
    }
    Ok(())
}

fn cartan_matrix(letter: TypeLetter, rank: usize) -> IMat {
    let n = rank;
    let mut m = IMat::identity(n);
    for i in 0..n {
        m.set(i, i, 2);
    }
    let mut edge = |i: usize, j: usize| {
        // simple edge between nodes i and j (1-based)
        m.set(i - 1, j - 1, -1);
        m.set(j - 1, i - 1, -1);
    };
    match letter {
        TypeLetter::A => {
            for i in 1..n {
                edge(i, i + 1);
            }
        }
        TypeLetter::B => {
            for i in 1..n {
                edge(i, i + 1);
            }
            // alpha_n is short: <coroot_n, root_{n-1}> = -2
            m.set(n - 1, n - 2, -2);
        }
        TypeLetter::C => {
            for i in 1..n {
                edge(i, i + 1);
            }
            // alpha_n is long: <coroot_{n-1}, root_n> = -2
            m.set(n - 2, n - 1, -2);
        }
        TypeLetter::D => {
            for i in 1..n - 1 {
                edge(i, i + 1);
            }
            edge(n - 2, n);
        }
        TypeLetter::E => {
            edge(1, 3);
            edge(2, 4);
            for i in 3..n {
                edge(i, i + 1);
            }
        }
        TypeLetter::F => {
            edge(1, 2);
            edge(2, 3);
            edge(3, 4);
            // alpha_3, alpha_4 short: <coroot_3, root_2> = -2
            m.set(2, 1, -2);
        }
        TypeLetter::G => {
            // alpha_1 short: <coroot_1, root_2> = -3
            m.set(0, 1, -3);
            m.set(1, 0, -1);
        }
    }
    m
}

/// Closure of the simple (root, coroot) pairs under simple reflections,
/// restricted to the positive half. Returned sorted by (height, lex), both
/// lists index-aligned.
fn enumerate_positive_roots(cartan: &IMat) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = cartan.n();
    let mut seen: BTreeMap<(i64, Vec<i64>), Vec<i64>> = BTreeMap::new();
    let mut queue: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for i in 0..n {
        let mut r = vec![0; n];
        r[i] = 1;
        let c = r.clone();
        seen.insert((1, r.clone()), c.clone());
        queue.push((r, c));
    }
    while let Some((r, c)) = queue.pop() {
        for i in 0..n {
            let r2 = reflect_root(cartan, &r, i);
            if crate::matrix::leading_sign(&r2) < 0 {
                continue;
            }
            let key = (r2.iter().sum::<i64>(), r2.clone());
            if !seen.contains_key(&key) {
                let c2 = reflect_coroot(cartan, &c, i);
                seen.insert(key, c2.clone());
                queue.push((r2, c2));
            }
        }
    }
    let mut roots = Vec::with_capacity(seen.len());
    let mut coroots = Vec::with_capacity(seen.len());
    for ((_, r), c) in seen {
        roots.push(r);
        coroots.push(c);
    }
    (roots, coroots)
}

/// s_i on root coordinates, 0-based generator index.
fn reflect_root(cartan: &IMat, c: &[i64], i: usize) -> Vec<i64> {
    let n = cartan.n();
    let pairing: i64 = (0..n).map(|j| cartan.get(i, j) * c[j]).sum();
    let mut out = c.to_vec();
    out[i] -= pairing;
    out
}

/// s_i on coroot coordinates, 0-based generator index.
fn reflect_coroot(cartan: &IMat, d: &[i64], i: usize) -> Vec<i64> {
    let n = cartan.n();
    let pairing: i64 = (0..n).map(|j| cartan.get(j, i) * d[j]).sum();
    let mut out = d.to_vec();
    out[i] -= pairing;
    out
}

impl RootDatum {
    pub fn type_letter(&self) -> TypeLetter {
        self.type_letter
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Coroot of `positive_roots()[k]` is at index k.
    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.highest_root
    }

    pub fn highest_coroot(&self) -> &[i64] {
        &self.highest_coroot
    }

    /// `<d, c> = d^T A c` for a coroot-coordinate vector `d` and a
    /// root-coordinate vector `c`.
    pub fn pairing(&self, coroot: &[i64], root: &[i64]) -> Result<i64> {
        if coroot.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: coroot.len(),
            });
        }
        if root.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: root.len(),
            });
        }
        Ok(self.pairing_unchecked(coroot, root))
    }

    pub(crate) fn pairing_unchecked(&self, coroot: &[i64], root: &[i64]) -> i64 {
        let mut acc = 0i64;
        for i in 0..self.rank {
            if coroot[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += coroot[i] * self.cartan.get(i, j) * root[j];
            }
        }
        acc
    }

    /// Pairing of a rational point (coroot coordinates) with a root.
    pub fn pairing_point(&self, point: &[BigRational], root: &[i64]) -> BigRational {
        assert_eq!(point.len(), self.rank);
        assert_eq!(root.len(), self.rank);
        let mut acc = BigRational::from(BigInt::from(0));
        for i in 0..self.rank {
            let mut row = 0i64;
            for j in 0..self.rank {
                row += self.cartan.get(i, j) * root[j];
            }
            if row != 0 {
                acc += &point[i] * BigRational::from(BigInt::from(row));
            }
        }
        acc
    }

    /// Matrix of s_i acting on simple-coroot coordinates, generators 1-based.
    pub fn simple_reflection_matrix(&self, i: usize) -> Result<IMat> {
        if i == 0 || i > self.rank {
            return Err(Error::GeneratorIndex {
                index: i,
                rank: self.rank,
            });
        }
        let k = i - 1;
        let mut m = IMat::identity(self.rank);
        for j in 0..self.rank {
            // column k of the identity minus the Cartan column: d_k -= <d, alpha_i>
            m.set(k, j, ((j == k) as i64) - self.cartan.get(j, k));
        }
        Ok(m)
    }

    /// Height of the highest root (sum of its simple-root coordinates).
    pub fn highest_root_height(&self) -> i64 {
        self.highest_root.iter().sum()
    }
}

/// Number of positive roots according to the classical tables.
pub fn classical_positive_root_count(letter: TypeLetter, rank: usize) -> Option<usize> {
    let n = rank;
    Some(match letter {
        TypeLetter::A => n * (n + 1) / 2,
        TypeLetter::B | TypeLetter::C => n * n,
        TypeLetter::D => n * (n - 1),
        TypeLetter::E => match n {
            6 => 36,
            7 => 63,
            8 => 120,
            _ => return None,
        },
        TypeLetter::F => 24,
        TypeLetter::G => 6,
    })
}

/// Order of the finite Weyl group according to the classical tables.
pub fn classical_weyl_order(letter: TypeLetter, rank: usize) -> Option<u128> {
    fn fact(n: usize) -> u128 {
        (1..=n as u128).product()
    }
    let n = rank;
    Some(match letter {
        TypeLetter::A => fact(n + 1),
        TypeLetter::B | TypeLetter::C => (1u128 << n) * fact(n),
        TypeLetter::D => (1u128 << (n - 1)) * fact(n),
        TypeLetter::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            8 => 696_729_600,
            _ => return None,
        },
        TypeLetter::F => 1_152,
        TypeLetter::G => 12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn datum(l: char, rank: usize) -> RootDatum {
        build_datum(TypeLetter::from_char(l).unwrap(), rank).unwrap()
    }

    #[test]
    fn rejects_bad_ranks() {
        for (l, r) in [('D', 2), ('E', 5), ('E', 9), ('F', 3), ('G', 1), ('A', 0)] {
            let res = build_datum(TypeLetter::from_char(l).unwrap(), r);
            assert!(matches!(res, Err(Error::InvalidType { .. })), "{l}{r}");
        }
        assert!(matches!(
            build_datum(TypeLetter::A, 9),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn root_counts_match_classical_tables() {
        let cases = [
            ('A', 1),
            ('A', 4),
            ('A', 8),
            ('B', 2),
            ('B', 5),
            ('C', 3),
            ('D', 4),
            ('D', 6),
            ('E', 6),
            ('E', 7),
            ('E', 8),
            ('F', 4),
            ('G', 2),
        ];
        for (l, r) in cases {
            let d = datum(l, r);
            let expect = classical_positive_root_count(d.type_letter(), r).unwrap();
            assert_eq!(d.positive_roots().len(), expect, "{l}{r}");
            assert_eq!(d.positive_coroots().len(), expect, "{l}{r}");
        }
    }

    #[test]
    fn highest_root_dominates() {
        for (l, r) in [('A', 3), ('B', 4), ('C', 2), ('D', 4), ('F', 4), ('G', 2)] {
            let d = datum(l, r);
            for root in d.positive_roots() {
                for j in 0..r {
                    assert!(d.highest_root()[j] >= root[j], "{l}{r} {root:?}");
                }
            }
        }
    }

    #[test]
    fn g2_tables() {
        let d = datum('G', 2);
        assert_eq!(d.cartan().get(0, 1), -3);
        assert_eq!(d.cartan().get(1, 0), -1);
        assert_eq!(d.highest_root(), &[3, 2]);
        let mut roots = d.positive_roots().to_vec();
        roots.sort();
        assert_eq!(
            roots,
            vec![
                vec![0, 1],
                vec![1, 0],
                vec![1, 1],
                vec![2, 1],
                vec![3, 1],
                vec![3, 2],
            ]
        );
    }

    #[test]
    fn b2_and_c2_tables() {
        let b = datum('B', 2);
        assert_eq!(b.highest_root(), &[1, 2]);
        assert_eq!(b.highest_coroot(), &[1, 1]);
        let c = datum('C', 2);
        assert_eq!(c.highest_root(), &[2, 1]);
        assert_eq!(c.highest_coroot(), &[1, 1]);
    }

    #[test]
    fn pairing_of_highest_coroot_with_highest_root() {
        for (l, r) in [('A', 1), ('A', 3), ('B', 3), ('C', 2), ('G', 2), ('F', 4)] {
            let d = datum(l, r);
            let v = d.pairing(d.highest_coroot(), d.highest_root()).unwrap();
            assert_eq!(v, 2, "{l}{r}");
        }
    }

    #[test]
    fn pairing_is_bilinear() {
        let d = datum('F', 4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_cafe);
        for _ in 0..200 {
            let a: Vec<i64> = (0..4).map(|_| rng.gen_range(-5..=5)).collect();
            let b: Vec<i64> = (0..4).map(|_| rng.gen_range(-5..=5)).collect();
            let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-5..=5)).collect();
            let sum: Vec<i64> = (0..4).map(|i| a[i] + b[i]).collect();
            assert_eq!(
                d.pairing(&sum, &c).unwrap(),
                d.pairing(&a, &c).unwrap() + d.pairing(&b, &c).unwrap()
            );
        }
    }

    #[test]
    fn pairing_rejects_dimension_mismatch() {
        let d = datum('A', 2);
        assert!(matches!(
            d.pairing(&[1], &[1, 0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coroots_are_aligned_with_roots() {
        // <root_k^vee, root_k> = 2 for every k, in every type
        for (l, r) in [('A', 2), ('B', 3), ('C', 3), ('D', 4), ('G', 2)] {
            let d = datum(l, r);
            for k in 0..d.positive_roots().len() {
                let v = d
                    .pairing(&d.positive_coroots()[k], &d.positive_roots()[k])
                    .unwrap();
                assert_eq!(v, 2, "{l}{r} index {k}");
            }
        }
    }

    #[test]
    fn simple_reflection_matrix_a2() {
        let d = datum('A', 2);
        let s1 = d.simple_reflection_matrix(1).unwrap();
        // s_1 on coroot coordinates: e1 -> -e1, e2 -> e1 + e2
        assert_eq!(s1.apply(&[1, 0]), vec![-1, 0]);
        assert_eq!(s1.apply(&[0, 1]), vec![1, 1]);
        assert!(s1.mul(&s1).is_identity());
        assert!(d.simple_reflection_matrix(0).is_err());
        assert!(d.simple_reflection_matrix(3).is_err());
    }
}
