//! The affine Weyl group: semidirect product of the coroot lattice with the
//! finite Weyl group.
//!
//! An element `(lambda, w)` is the affine map `x -> w(x) + lambda`, i.e. the
//! group element `t_lambda w`. Generators are s_1..s_n from the finite group
//! plus the affine reflection s_0 = t_theta^vee s_theta in the wall
//! `<x, theta> = 1`; generator order is s_0 < s_1 < ... < s_n and affine
//! words use those letters.

use std::collections::HashMap;

use num::{BigInt, BigRational, One, Zero};

use crate::cartan::RootDatum;
use crate::matrix::{self, IMat};
use crate::weyl::{self, WeylElement};
use crate::{Budgets, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineElement {
    translation: Vec<i64>,
    finite: WeylElement,
}

impl AffineElement {
    pub fn identity(rank: usize) -> Self {
        AffineElement {
            translation: vec![0; rank],
            finite: WeylElement::identity(rank),
        }
    }

    pub fn new(translation: Vec<i64>, finite: WeylElement) -> Result<Self> {
        if translation.len() != finite.rank() {
            return Err(Error::DimensionMismatch {
                expected: finite.rank(),
                got: translation.len(),
            });
        }
        Ok(AffineElement { translation, finite })
    }

    /// Pure translation by a coroot-lattice vector.
    pub fn from_translation(v: Vec<i64>) -> Self {
        let rank = v.len();
        AffineElement {
            translation: v,
            finite: WeylElement::identity(rank),
        }
    }

    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn finite_part(&self) -> &WeylElement {
        &self.finite
    }

    pub fn rank(&self) -> usize {
        self.finite.rank()
    }

    pub fn is_identity(&self) -> bool {
        self.finite.is_identity() && self.translation.iter().all(|&x| x == 0)
    }

    /// The affine map on a point in coroot coordinates: w(p) + lambda.
    pub fn apply_point(&self, p: &[BigRational]) -> Vec<BigRational> {
        let mut out = self.finite.matrix().apply_rational(p);
        for (o, t) in out.iter_mut().zip(&self.translation) {
            *o += BigRational::from(BigInt::from(*t));
        }
        out
    }
}

/// (t_a u)(t_b v) = t_{a + u(b)} (u v)
pub fn multiply(a: &AffineElement, b: &AffineElement, datum: &RootDatum) -> AffineElement {
    let moved = a.finite.matrix().apply(&b.translation);
    let translation: Vec<i64> = a
        .translation
        .iter()
        .zip(&moved)
        .map(|(x, y)| x + y)
        .collect();
    AffineElement {
        translation,
        finite: weyl::multiply(&a.finite, &b.finite, datum),
    }
}

/// (t_a w)^{-1} = t_{-w^{-1}(a)} w^{-1}
pub fn inverse(a: &AffineElement, datum: &RootDatum) -> AffineElement {
    let w_inv = weyl::inverse(&a.finite, datum);
    let translation: Vec<i64> = w_inv.apply(&a.translation).iter().map(|x| -x).collect();
    AffineElement {
        translation,
        finite: w_inv,
    }
}

pub fn is_involution(x: &AffineElement, datum: &RootDatum) -> bool {
    multiply(x, x, datum).is_identity()
}

/// Order-dividing-2 test without forming the square: w^2 = 1 and
/// lambda + w(lambda) = 0.
pub fn order_two_criterion(x: &AffineElement) -> bool {
    if !x.finite.is_involution() {
        return false;
    }
    let moved = x.finite.apply(&x.translation);
    x.translation.iter().zip(&moved).all(|(a, b)| a + b == 0)
}

/// Reflection in the highest root, as a finite element.
pub fn theta_reflection(datum: &RootDatum) -> WeylElement {
    let n = datum.rank();
    let theta = datum.highest_root();
    let theta_v = datum.highest_coroot();
    // z_j = <e_j, theta>, so s_theta(d) = d - (z . d) theta^vee
    let z: Vec<i64> = (0..n)
        .map(|j| (0..n).map(|k| datum.cartan().get(j, k) * theta[k]).sum())
        .collect();
    let mut m = IMat::identity(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, ((i == j) as i64) - theta_v[i] * z[j]);
        }
    }
    weyl::element_from_matrix(m, datum)
}

/// Generators [s_0, s_1, ..., s_n], indexed by letter.
pub fn affine_generators(datum: &RootDatum) -> Vec<AffineElement> {
    let mut gens = Vec::with_capacity(datum.rank() + 1);
    gens.push(AffineElement {
        translation: datum.highest_coroot().to_vec(),
        finite: theta_reflection(datum),
    });
    for i in 1..=datum.rank() {
        gens.push(AffineElement {
            translation: vec![0; datum.rank()],
            finite: weyl::simple_reflection(i, datum).expect("index in range"),
        });
    }
    gens
}

/// Word length of `t_lambda w` in the generators s_0..s_n:
/// sum over positive roots a of |<lambda, a>| when w^{-1} a > 0,
/// and of |<lambda, a> - 1| when w^{-1} a < 0.
pub fn im_length(x: &AffineElement, datum: &RootDatum) -> usize {
    let mut rev: Vec<u8> = x.finite.word().to_vec();
    rev.reverse();
    let w_inv = weyl::matrix_of_word(&rev, datum);
    let mut total = 0i64;
    for (root, coroot) in datum
        .positive_roots()
        .iter()
        .zip(datum.positive_coroots())
    {
        let pre = w_inv.apply(coroot);
        let t = datum.pairing_unchecked(&x.translation, root);
        total += if matrix::leading_sign(&pre) > 0 {
            t.abs()
        } else {
            (t - 1).abs()
        };
    }
    total as usize
}

/// Lexicographically least reduced word, by greedy smallest left descent.
pub fn affine_canonical_word(x: &AffineElement, datum: &RootDatum) -> Vec<u8> {
    let gens = affine_generators(datum);
    let mut cur = x.clone();
    let mut len = im_length(&cur, datum);
    let mut word = Vec::with_capacity(len);
    while len > 0 {
        let mut step = None;
        for (i, g) in gens.iter().enumerate() {
            let y = multiply(g, &cur, datum);
            let l = im_length(&y, datum);
            if l < len {
                step = Some((i as u8, y, l));
                break;
            }
        }
        let (i, y, l) = step.expect("positive-length element with no left descent");
        word.push(i);
        cur = y;
        len = l;
    }
    word
}

/// Product of the affine generators named by `word`.
pub fn element_of_affine_word(word: &[u8], datum: &RootDatum) -> AffineElement {
    let gens = affine_generators(datum);
    let mut x = AffineElement::identity(datum.rank());
    for &i in word {
        x = multiply(&x, &gens[i as usize], datum);
    }
    x
}

type AffineKey = (Vec<i64>, IMat);

/// Cayley ball of the affine Weyl group: all elements of length at most the
/// radius, in canonical order (distance, then word lex), each with its
/// distance and canonical word.
pub struct Ball {
    radius: usize,
    elements: Vec<AffineElement>,
    dist: Vec<usize>,
    words: Vec<Vec<u8>>,
    index: HashMap<AffineKey, usize>,
    cumulative: Vec<usize>,
}

pub fn ball(datum: &RootDatum, radius: usize, budgets: &Budgets) -> Result<Ball> {
    let rank = datum.rank();
    let gens = affine_generators(datum);
    let gen_parts: Vec<(Vec<i64>, IMat)> = gens
        .iter()
        .map(|g| (g.translation.clone(), g.finite.matrix().clone()))
        .collect();
    let mut finite_cache: HashMap<IMat, WeylElement> = HashMap::new();

    let mut elements = vec![AffineElement::identity(rank)];
    let mut dist = vec![0usize];
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut index: HashMap<AffineKey, usize> = HashMap::new();
    index.insert(
        (vec![0; rank], IMat::identity(rank)),
        0,
    );
    let mut cumulative = vec![1usize];
    let mut frontier: Vec<usize> = vec![0];

    for level in 1..=radius {
        let mut next: HashMap<AffineKey, Vec<u8>> = HashMap::new();
        for &ei in &frontier {
            let (xt, xm) = (&elements[ei].translation, elements[ei].finite.matrix());
            for (gi, (gt, gm)) in gen_parts.iter().enumerate() {
                let moved = xm.apply(gt);
                let t2: Vec<i64> = xt.iter().zip(&moved).map(|(a, b)| a + b).collect();
                let m2 = xm.mul(gm);
                let key = (t2, m2);
                if index.contains_key(&key) {
                    continue;
                }
                let mut cand = words[ei].clone();
                cand.push(gi as u8);
                match next.entry(key) {
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
        let mut batch: Vec<(AffineKey, Vec<u8>)> = next.into_iter().collect();
        batch.sort_by(|a, b| a.1.cmp(&b.1));
        if elements.len() + batch.len() > budgets.max_ball_elements {
            return Err(Error::BudgetExceeded {
                what: format!(
                    "alcove ball enumeration at radius {radius} for type {}{} (max_ball_elements)",
                    datum.type_letter(),
                    datum.rank()
                ),
                budget: budgets.max_ball_elements,
            });
        }
        frontier = Vec::with_capacity(batch.len());
        for ((t, m), word) in batch {
            let finite = finite_cache
                .entry(m.clone())
                .or_insert_with(|| weyl::element_from_matrix(m.clone(), datum))
                .clone();
            let idx = elements.len();
            index.insert((t.clone(), m), idx);
            elements.push(AffineElement {
                translation: t,
                finite,
            });
            dist.push(level);
            words.push(word);
            frontier.push(idx);
        }
        cumulative.push(elements.len());
        if frontier.is_empty() {
            // affine groups are infinite, but stay well-defined anyway
            while cumulative.len() <= radius {
                cumulative.push(elements.len());
            }
            break;
        }
    }

    Ok(Ball {
        radius,
        elements,
        dist,
        words,
        index,
        cumulative,
    })
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, i: usize) -> &AffineElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[AffineElement] {
        &self.elements
    }

    pub fn dist(&self, i: usize) -> usize {
        self.dist[i]
    }

    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i]
    }

    pub fn index_of(&self, x: &AffineElement) -> Option<usize> {
        let key = (x.translation.clone(), x.finite.matrix().clone());
        self.index.get(&key).copied()
    }

    /// Number of elements at distance <= r.
    pub fn size_at_radius(&self, r: usize) -> usize {
        self.cumulative[r.min(self.radius)]
    }
}

/// Interior point of the base alcove: the point with <p, alpha_i> equal to
/// 1/(h+2) for every simple root, h the height of the highest root; then
/// <p, theta> = h/(h+2) < 1.
pub fn base_point(datum: &RootDatum) -> Vec<BigRational> {
    let n = datum.rank();
    let h = datum.highest_root_height();
    let t = BigRational::new(BigInt::one(), BigInt::from(h + 2));
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from(BigInt::from(datum.cartan().get(j, i))))
                .collect()
        })
        .collect();
    let rhs = vec![t; n];
    let (p, null) = matrix::solve_rational(&rows, &rhs).expect("Cartan matrix is invertible");
    debug_assert!(null.is_empty());
    p
}

/// An alcove, carried as its group label x (the alcove is x applied to the
/// base alcove) together with an interior sample point.
#[derive(Clone, PartialEq, Debug)]
pub struct Alcove {
    label: AffineElement,
    sample_point: Vec<BigRational>,
}

impl Alcove {
    pub fn from_label(label: AffineElement, datum: &RootDatum) -> Alcove {
        let sample_point = label.apply_point(&base_point(datum));
        Alcove {
            label,
            sample_point,
        }
    }

    pub fn label(&self) -> &AffineElement {
        &self.label
    }

    pub fn sample_point(&self) -> &[BigRational] {
        &self.sample_point
    }
}

/// Label of the alcove containing `point`, by folding across violated walls
/// of the base alcove. Each fold removes exactly one wall separating the
/// point from the base alcove, so the separating-wall count is a strictly
/// decreasing loop variant. Points on any wall are rejected.
pub fn locate(point: &[BigRational], datum: &RootDatum) -> Result<AffineElement> {
    let n = datum.rank();
    if point.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: point.len(),
        });
    }
    let one = BigRational::from(BigInt::one());

    let mut remaining: usize = 0;
    for root in datum.positive_roots() {
        let t = datum.pairing_point(point, root);
        if t.is_integer() {
            return Err(Error::PointOnWall {
                root: root.clone(),
                level: t.to_integer(),
            });
        }
        let crossed = if t > one {
            t.floor().to_integer()
        } else if t < BigRational::zero() {
            -t.floor().to_integer()
        } else {
            BigInt::zero()
        };
        remaining += usize::try_from(&crossed).map_err(|_| {
            Error::Internal("separating wall count does not fit usize".to_string())
        })?;
    }

    let gens = affine_generators(datum);
    let simple_roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect();
    let mut q = point.to_vec();
    let mut g = AffineElement::identity(n);
    loop {
        let mut wall = None;
        for i in 0..n {
            if datum.pairing_point(&q, &simple_roots[i]) < BigRational::zero() {
                wall = Some(i + 1);
                break;
            }
        }
        if wall.is_none() && datum.pairing_point(&q, datum.highest_root()) > one {
            wall = Some(0);
        }
        let Some(i) = wall else {
            break;
        };
        if remaining == 0 {
            return Err(Error::Internal(
                "alcove fold failed to make progress".to_string(),
            ));
        }
        remaining -= 1;
        q = gens[i].apply_point(&q);
        g = multiply(&g, &gens[i], datum);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_datum, TypeLetter};
    use rand::{Rng, SeedableRng};

    fn datum(l: char, rank: usize) -> RootDatum {
        build_datum(TypeLetter::from_char(l).unwrap(), rank).unwrap()
    }

    fn small_ball(l: char, rank: usize, r: usize) -> (RootDatum, Ball) {
        let d = datum(l, rank);
        let b = ball(&d, r, &Budgets::default()).unwrap();
        (d, b)
    }

    #[test]
    fn generators_are_involutions() {
        for (l, r) in [('A', 1), ('A', 2), ('C', 2), ('G', 2), ('B', 3)] {
            let d = datum(l, r);
            for (i, g) in affine_generators(&d).iter().enumerate() {
                assert!(is_involution(g, &d), "{l}{r} s_{i}");
                assert!(order_two_criterion(g), "{l}{r} s_{i}");
            }
        }
    }

    #[test]
    fn s0_is_translation_times_theta_reflection() {
        let d = datum('A', 2);
        let s0 = &affine_generators(&d)[0];
        assert_eq!(s0.translation(), d.highest_coroot());
        assert_eq!(s0.finite_part().word(), &[1, 2, 1]);
    }

    #[test]
    fn group_axioms_on_random_ball_elements() {
        let (d, b) = small_ball('C', 2, 4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xaff1);
        let base = base_point(&d);
        for _ in 0..300 {
            let x = b.element(rng.gen_range(0..b.len()));
            let y = b.element(rng.gen_range(0..b.len()));
            let z = b.element(rng.gen_range(0..b.len()));
            let xy_z = multiply(&multiply(x, y, &d), z, &d);
            let x_yz = multiply(x, &multiply(y, z, &d), &d);
            assert_eq!(xy_z, x_yz);
            // and as affine maps
            let via_maps = x.apply_point(&y.apply_point(&z.apply_point(&base)));
            assert_eq!(xy_z.apply_point(&base), via_maps);
            let inv = inverse(x, &d);
            assert!(multiply(x, &inv, &d).is_identity());
            assert!(multiply(&inv, x, &d).is_identity());
        }
    }

    #[test]
    fn order_two_criterion_matches_squaring() {
        let (d, b) = small_ball('C', 2, 4);
        for x in b.elements() {
            assert_eq!(order_two_criterion(x), is_involution(x, &d));
        }
    }

    #[test]
    fn im_length_fixed_values() {
        let d1 = datum('A', 1);
        // t_{alpha^vee} = s_0 s_1 has length 2
        let t = AffineElement::from_translation(vec![1]);
        assert_eq!(im_length(&t, &d1), 2);
        assert_eq!(affine_canonical_word(&t, &d1), vec![0, 1]);

        let d2 = datum('A', 2);
        let gens = affine_generators(&d2);
        assert_eq!(im_length(&gens[0], &d2), 1);
        let s1s0 = multiply(&gens[1], &gens[0], &d2);
        assert_eq!(im_length(&s1s0, &d2), 2);
        let s0s1 = multiply(&gens[0], &gens[1], &d2);
        assert_eq!(im_length(&s0s1, &d2), 2);
        assert_eq!(im_length(&AffineElement::identity(2), &d2), 0);
    }

    #[test]
    fn ball_sizes_in_rank_one() {
        // the affine group of A1 is the infinite dihedral group
        let d = datum('A', 1);
        for r in 0..=6 {
            let b = ball(&d, r, &Budgets::default()).unwrap();
            assert_eq!(b.len(), 2 * r + 1);
        }
    }

    #[test]
    fn ball_order_and_words() {
        let (d, b) = small_ball('A', 1, 2);
        let expected: Vec<Vec<u8>> = vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0]];
        let got: Vec<Vec<u8>> = (0..b.len()).map(|i| b.word(i).to_vec()).collect();
        assert_eq!(got, expected);
        for i in 0..b.len() {
            assert_eq!(b.dist(i), b.word(i).len());
            assert_eq!(&element_of_affine_word(b.word(i), &d), b.element(i));
        }
    }

    #[test]
    fn ball_distance_is_im_length() {
        let (d, b) = small_ball('A', 2, 5);
        for i in 0..b.len() {
            assert_eq!(b.dist(i), im_length(b.element(i), &d), "element {i}");
        }
    }

    #[test]
    fn ball_words_are_canonical() {
        let (d, b) = small_ball('C', 2, 4);
        for i in 0..b.len() {
            assert_eq!(
                b.word(i),
                affine_canonical_word(b.element(i), &d).as_slice(),
                "element {i}"
            );
        }
    }

    #[test]
    fn ball_respects_budget() {
        let d = datum('A', 2);
        let tight = Budgets {
            max_ball_elements: 10,
            ..Budgets::default()
        };
        assert!(matches!(
            ball(&d, 3, &tight),
            Err(Error::BudgetExceeded { budget: 10, .. })
        ));
    }

    #[test]
    fn base_point_is_interior() {
        for (l, r) in [('A', 1), ('A', 3), ('B', 3), ('C', 2), ('D', 4), ('G', 2), ('F', 4)] {
            let d = datum(l, r);
            let p = base_point(&d);
            let one = BigRational::from(BigInt::one());
            for root in d.positive_roots() {
                let t = d.pairing_point(&p, root);
                assert!(t > BigRational::zero() && t < one, "{l}{r} {root:?}");
            }
        }
    }

    #[test]
    fn locate_roundtrip_on_ball() {
        for (l, r, radius) in [('A', 2, 4), ('G', 2, 3), ('A', 1, 5)] {
            let (d, b) = small_ball(l, r, radius);
            for i in 0..b.len() {
                let a = Alcove::from_label(b.element(i).clone(), &d);
                let found = locate(a.sample_point(), &d).unwrap();
                assert_eq!(&found, a.label(), "{l}{r} element {i}");
            }
        }
    }

    #[test]
    fn locate_rejects_wall_points() {
        let d = datum('A', 2);
        let zero = vec![BigRational::zero(), BigRational::zero()];
        match locate(&zero, &d) {
            Err(Error::PointOnWall { level, .. }) => assert_eq!(level, BigInt::zero()),
            other => panic!("expected wall rejection, got {other:?}"),
        }
        // a point on the theta wall <x, theta> = 1
        let p = vec![
            BigRational::new(BigInt::from(1), BigInt::from(3)),
            BigRational::new(BigInt::from(2), BigInt::from(3)),
        ];
        assert!(matches!(
            locate(&p, &d),
            Err(Error::PointOnWall { .. })
        ));
    }

    #[test]
    fn translation_lengths_grow_linearly() {
        let d = datum('A', 1);
        for k in 1..=4i64 {
            let t = AffineElement::from_translation(vec![k]);
            assert_eq!(im_length(&t, &d), 2 * k as usize);
        }
    }
}
