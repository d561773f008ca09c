//! Finite Weyl groups as matrix groups on coroot coordinates.
//!
//! Elements carry their canonical word: the lexicographically least reduced
//! word in the generators s_1 < s_2 < ... < s_n. Words are stored 1-based to
//! leave room for the affine generator s_0.

use std::collections::HashMap;

use crate::cartan::RootDatum;
use crate::matrix::IMat;
use crate::{Budgets, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    matrix: IMat,
    word: Vec<u8>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            matrix: IMat::identity(rank),
            word: Vec::new(),
        }
    }

    pub fn matrix(&self) -> &IMat {
        &self.matrix
    }

    /// Canonical reduced word, letters in 1..=rank.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn rank(&self) -> usize {
        self.matrix.n()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_involution(&self) -> bool {
        self.matrix.mul(&self.matrix).is_identity()
    }

    /// Action on a coroot-coordinate vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.apply(v)
    }
}

fn gen_matrices(datum: &RootDatum) -> Vec<IMat> {
    (1..=datum.rank())
        .map(|i| {
            datum
                .simple_reflection_matrix(i)
                .expect("generator index in range")
        })
        .collect()
}

fn col_nonpositive(m: &IMat, j: usize) -> bool {
    (0..m.n()).all(|i| m.get(i, j) <= 0)
}

/// The element with the given coroot-action matrix, with its canonical word.
///
/// Greedy descent: at each step take the smallest i with l(s_i x) < l(x),
/// which is detected on the columns of the inverse matrix. The word produced
/// is the lexicographically least reduced word.
pub fn element_from_matrix(m: IMat, datum: &RootDatum) -> WeylElement {
    let gens = gen_matrices(datum);
    let n = datum.rank();
    debug_assert_eq!(m.n(), n);

    // peel any reduced word off the right to obtain the inverse matrix
    let mut cur = m.clone();
    let mut inv = IMat::identity(n);
    while !cur.is_identity() {
        let i = (0..n)
            .find(|&i| col_nonpositive(&cur, i))
            .expect("non-identity element with no right descent; matrix is not in the group");
        cur = cur.mul(&gens[i]);
        inv = inv.mul(&gens[i]);
    }

    let mut word = Vec::new();
    let mut cur = m.clone();
    let mut cur_inv = inv;
    while !cur.is_identity() {
        let i = (0..n)
            .find(|&i| col_nonpositive(&cur_inv, i))
            .expect("non-identity element with no left descent");
        word.push((i + 1) as u8);
        cur = gens[i].mul(&cur);
        cur_inv = cur_inv.mul(&gens[i]);
    }
    WeylElement { matrix: m, word }
}

/// s_i as an element, generators 1-based.
pub fn simple_reflection(i: usize, datum: &RootDatum) -> Result<WeylElement> {
    let matrix = datum.simple_reflection_matrix(i)?;
    Ok(WeylElement {
        matrix,
        word: vec![i as u8],
    })
}

pub fn matrix_of_word(word: &[u8], datum: &RootDatum) -> IMat {
    let gens = gen_matrices(datum);
    let mut m = IMat::identity(datum.rank());
    for &i in word {
        m = m.mul(&gens[(i - 1) as usize]);
    }
    m
}

pub fn multiply(a: &WeylElement, b: &WeylElement, datum: &RootDatum) -> WeylElement {
    element_from_matrix(a.matrix.mul(&b.matrix), datum)
}

pub fn inverse(a: &WeylElement, datum: &RootDatum) -> WeylElement {
    let mut rev: Vec<u8> = a.word.to_vec();
    rev.reverse();
    element_from_matrix(matrix_of_word(&rev, datum), datum)
}

/// A fully enumerated finite Weyl group. Element indices are canonical:
/// sorted by (length, word), so index 0 is the identity.
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    index: HashMap<IMat, usize>,
    inverse_idx: Vec<usize>,
    gen_idx: Vec<usize>,
}

pub fn enumerate_group(datum: &RootDatum, budgets: &Budgets) -> Result<WeylGroup> {
    let n = datum.rank();
    let gens = gen_matrices(datum);
    let budget_err = || Error::BudgetExceeded {
        what: format!(
            "finite Weyl group enumeration for type {}{} (max_group_elements)",
            datum.type_letter(),
            datum.rank()
        ),
        budget: budgets.max_group_elements,
    };

    let mut elements = vec![WeylElement::identity(n)];
    let mut index: HashMap<IMat, usize> = HashMap::new();
    index.insert(elements[0].matrix.clone(), 0);
    let mut frontier: Vec<usize> = vec![0];

    while !frontier.is_empty() {
        let mut next: HashMap<IMat, Vec<u8>> = HashMap::new();
        for &ei in &frontier {
            for (g, gm) in gens.iter().enumerate() {
                let m2 = elements[ei].matrix.mul(gm);
                if index.contains_key(&m2) {
                    continue;
                }
                let mut cand = elements[ei].word.clone();
                cand.push((g + 1) as u8);
                match next.entry(m2) {
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        if cand < *o.get() {
                            o.insert(cand);
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(cand);
                    }
                }
            }
        }
        let mut batch: Vec<(IMat, Vec<u8>)> = next.into_iter().collect();
        batch.sort_by(|a, b| a.1.cmp(&b.1));
        if elements.len() + batch.len() > budgets.max_group_elements {
            return Err(budget_err());
        }
        frontier = Vec::with_capacity(batch.len());
        for (m, word) in batch {
            let idx = elements.len();
            index.insert(m.clone(), idx);
            elements.push(WeylElement { matrix: m, word });
            frontier.push(idx);
        }
    }

    let mut inverse_idx = Vec::with_capacity(elements.len());
    for e in &elements {
        let mut rev = e.word.clone();
        rev.reverse();
        let m = matrix_of_word(&rev, datum);
        inverse_idx.push(*index.get(&m).expect("inverse is in the group"));
    }
    let gen_idx = gens
        .iter()
        .map(|g| *index.get(g).expect("generator is in the group"))
        .collect();

    Ok(WeylGroup {
        rank: n,
        elements,
        index,
        inverse_idx,
        gen_idx,
    })
}

/// One conjugacy class of involutions (elements of order dividing 2).
#[derive(Clone, Debug)]
pub struct FiniteInvolutionClass {
    /// Element index of the canonical representative: the member minimal in
    /// (length, word) order.
    pub rep: usize,
    /// Sorted element indices of all members.
    pub members: Vec<usize>,
    /// For each member m, an element u with u m u^{-1} = rep.
    pub conjugator_to_rep: HashMap<usize, usize>,
}

impl WeylGroup {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn index_of(&self, m: &IMat) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].matrix.mul(&self.elements[b].matrix);
        *self.index.get(&m).expect("group is closed under products")
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse_idx[a]
    }

    /// Index of s_i, generators 1-based.
    pub fn generator(&self, i: usize) -> usize {
        self.gen_idx[i - 1]
    }

    /// Conjugacy classes of elements with square one, identity class first,
    /// ordered by canonical representative.
    pub fn involution_classes(&self) -> Vec<FiniteInvolutionClass> {
        let order = self.order();
        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for seed in 0..order {
            if class_of[seed] != usize::MAX || self.product(seed, seed) != 0 {
                continue;
            }
            let class_id = classes.len();
            let mut members = vec![seed];
            let mut g_of: HashMap<usize, usize> = HashMap::new();
            class_of[seed] = class_id;
            g_of.insert(seed, 0);
            let mut qi = 0;
            while qi < members.len() {
                let m = members[qi];
                qi += 1;
                for i in 1..=self.rank {
                    let s = self.generator(i);
                    let m2 = self.product(self.product(s, m), s);
                    if class_of[m2] == usize::MAX {
                        class_of[m2] = class_id;
                        g_of.insert(m2, self.product(s, g_of[&m]));
                        members.push(m2);
                    }
                }
            }
            members.sort_unstable();
            // element order is canonical, so the smallest index is the
            // (length, word)-minimal representative
            let rep = members[0];
            let g_rep = g_of[&rep];
            let conjugator_to_rep = members
                .iter()
                .map(|&m| (m, self.product(g_rep, self.inverse(g_of[&m]))))
                .collect();
            classes.push(FiniteInvolutionClass {
                rep,
                members,
                conjugator_to_rep,
            });
        }
        classes
    }

    /// Sorted indices of all elements commuting with `w`.
    pub fn centralizer(&self, w: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&v| self.product(v, w) == self.product(w, v))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_datum, classical_weyl_order, TypeLetter};

    fn datum(l: char, rank: usize) -> RootDatum {
        build_datum(TypeLetter::from_char(l).unwrap(), rank).unwrap()
    }

    fn group(l: char, rank: usize) -> (RootDatum, WeylGroup) {
        let d = datum(l, rank);
        let g = enumerate_group(&d, &Budgets::default()).unwrap();
        (d, g)
    }

    #[test]
    fn orders_match_classical_tables() {
        for (l, r) in [('A', 1), ('A', 3), ('B', 2), ('B', 3), ('C', 2), ('D', 4), ('F', 4), ('G', 2)]
        {
            let (d, g) = group(l, r);
            let expect = classical_weyl_order(d.type_letter(), r).unwrap();
            assert_eq!(g.order() as u128, expect, "{l}{r}");
        }
    }

    #[test]
    fn element_order_is_canonical() {
        let (_, g) = group('A', 3);
        for w in g.elements().windows(2) {
            let a = (w[0].length(), w[0].word());
            let b = (w[1].length(), w[1].word());
            assert!(a < b, "{:?} !< {:?}", w[0].word(), w[1].word());
        }
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn greedy_canonical_word_agrees_with_bfs() {
        for (l, r) in [('A', 3), ('B', 3), ('G', 2)] {
            let (d, g) = group(l, r);
            for e in g.elements() {
                let rebuilt = element_from_matrix(e.matrix().clone(), &d);
                assert_eq!(rebuilt.word(), e.word(), "{l}{r}");
            }
        }
    }

    #[test]
    fn words_are_reduced_and_rebuild_matrix() {
        let (d, g) = group('B', 3);
        for e in g.elements() {
            assert_eq!(&matrix_of_word(e.word(), &d), e.matrix());
        }
        // longest element of B3 has length 9 = number of positive roots
        let max_len = g.elements().iter().map(|e| e.length()).max().unwrap();
        assert_eq!(max_len, d.positive_roots().len());
    }

    #[test]
    fn product_and_inverse_lookup() {
        let (d, g) = group('A', 3);
        for a in 0..g.order() {
            assert_eq!(g.product(a, g.inverse(a)), 0);
            assert_eq!(g.product(g.inverse(a), a), 0);
        }
        let s1 = g.generator(1);
        let s2 = g.generator(2);
        let m = multiply(g.element(s1), g.element(s2), &d);
        assert_eq!(g.index_of(m.matrix()), Some(g.product(s1, s2)));
        assert_eq!(m.word(), &[1, 2]);
    }

    #[test]
    fn budget_rejects_large_group() {
        let d = datum('F', 4);
        let tight = Budgets {
            max_group_elements: 100,
            ..Budgets::default()
        };
        let res = enumerate_group(&d, &tight);
        assert!(matches!(res, Err(Error::BudgetExceeded { budget: 100, .. })));
    }

    #[test]
    fn involution_classes_a2() {
        let (_, g) = group('A', 2);
        let classes = g.involution_classes();
        // identity plus the single reflection class
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].members, vec![0]);
        assert_eq!(classes[1].members.len(), 3);
        assert_eq!(g.element(classes[1].rep).word(), &[1]);
    }

    #[test]
    fn involution_classes_c2() {
        let (_, g) = group('C', 2);
        let classes = g.involution_classes();
        // identity, two reflection classes, and the long element -1
        assert_eq!(classes.len(), 4);
        let sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 6);
        assert_eq!(classes[0].members, vec![0]);
    }

    #[test]
    fn conjugators_map_members_to_rep() {
        let (_, g) = group('B', 3);
        for c in g.involution_classes() {
            for &m in &c.members {
                let u = c.conjugator_to_rep[&m];
                let conj = g.product(g.product(u, m), g.inverse(u));
                assert_eq!(conj, c.rep);
            }
        }
    }

    #[test]
    fn centralizer_contains_class_sized_complement() {
        // |class| * |centralizer| = |W| for any element
        let (_, g) = group('B', 3);
        for c in g.involution_classes() {
            let z = g.centralizer(c.rep);
            assert_eq!(z.len() * c.members.len(), g.order());
            assert!(z.contains(&0));
            assert!(z.contains(&c.rep));
        }
    }

    #[test]
    fn involutions_square_to_identity() {
        let (_, g) = group('G', 2);
        let classes = g.involution_classes();
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        for c in &classes {
            for &m in &c.members {
                assert_eq!(g.product(m, m), 0);
            }
        }
        // G2 dihedral of order 12: identity, -1, and two reflection classes of 3
        assert_eq!(total, 8);
        assert_eq!(classes.len(), 4);
    }
}
