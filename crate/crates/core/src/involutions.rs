//! Conjugacy classes of order-dividing-2 elements of the affine Weyl group.
//!
//! Conjugating t_lambda w by t_mu v (with v w v^{-1} = w) sends lambda to
//! v(lambda) + (1 - w)mu. An affine involution class is therefore a pair: a
//! finite involution class with representative w, and an orbit of the finite
//! centralizer of w on ker(1 + w) / (1 - w)Q^vee. That quotient is finite
//! (2 ker(1 + w) lies inside the relation lattice) with all elementary
//! divisors 1 or 2.

use std::collections::HashMap;

use num::BigInt;

use crate::affine::{self, AffineElement};
use crate::cartan::RootDatum;
use crate::matrix::IMat;
use crate::unionfind::UnionFind;
use crate::weyl::{self, FiniteInvolutionClass, WeylElement, WeylGroup};
use crate::zlattice::{kernel_lattice, quotient, IntMatrix, LatticeQuotient};
use crate::{Budgets, Error, Result};

#[derive(Clone, Debug)]
pub struct InvolutionClass {
    /// Canonical representative of the finite involution class.
    pub finite_class_rep: WeylElement,
    /// Canonical translation part: representative of the minimal coset in
    /// the centralizer orbit.
    pub lambda_rep: Vec<i64>,
    /// The class representative t_{lambda_rep} w as a group element.
    pub sigma: AffineElement,
    /// Elementary divisors (> 1) of ker(1 + w)/(1 - w)Q^vee.
    pub elementary_divisors: Vec<u64>,
    pub finite_class_index: usize,
    pub orbit_index: usize,
}

struct FiniteClassData {
    class: FiniteInvolutionClass,
    quotient: LatticeQuotient,
    /// Orbit id of each coset under the centralizer action.
    coset_orbit: Vec<usize>,
}

/// Complete classification for one root system, with constant-time class
/// lookup for arbitrary involutions.
pub struct Classification {
    rank: usize,
    classes: Vec<InvolutionClass>,
    group: WeylGroup,
    finite: Vec<FiniteClassData>,
    /// finite involution matrix -> (finite class index, conjugator index u
    /// with u m u^{-1} = rep)
    member_map: HashMap<IMat, (usize, usize)>,
    pair_to_class: HashMap<(usize, usize), usize>,
}

pub fn classify(datum: &RootDatum, budgets: &Budgets) -> Result<Classification> {
    let rank = datum.rank();
    let group = weyl::enumerate_group(datum, budgets)?;
    let fcs = group.involution_classes();

    struct Rec {
        fc: usize,
        orbit: usize,
        lambda: Vec<i64>,
        divisors: Vec<u64>,
    }
    let mut recs: Vec<Rec> = Vec::new();
    let mut finite: Vec<FiniteClassData> = Vec::with_capacity(fcs.len());

    for (fc_idx, fc) in fcs.into_iter().enumerate() {
        let w = group.element(fc.rep).matrix().clone();
        let mut one_plus = IntMatrix::zero(rank, rank);
        let mut rel_cols: Vec<Vec<BigInt>> = Vec::with_capacity(rank);
        for j in 0..rank {
            let mut col = Vec::with_capacity(rank);
            for i in 0..rank {
                let delta = (i == j) as i64;
                one_plus.set(i, j, BigInt::from(delta + w.get(i, j)));
                col.push(BigInt::from(delta - w.get(i, j)));
            }
            rel_cols.push(col);
        }
        let l_basis = kernel_lattice(&one_plus);
        let q = quotient(&l_basis, &rel_cols, rank)?;
        let cen = group.centralizer(fc.rep);

        let count = q.coset_count();
        let mut coset_orbit = vec![usize::MAX; count];
        let mut n_orbits = 0usize;
        for c0 in 0..count {
            if coset_orbit[c0] != usize::MAX {
                continue;
            }
            let oid = n_orbits;
            n_orbits += 1;
            let rep_vec = q.coset_rep(c0).to_vec();
            for &v in &cen {
                let img = group.element(v).matrix().apply_bigint(&rep_vec);
                let ci = q.reduce(&img)?;
                if coset_orbit[ci] == usize::MAX {
                    coset_orbit[ci] = oid;
                } else if coset_orbit[ci] != oid {
                    return Err(Error::Internal(
                        "centralizer orbits on cosets are not disjoint".to_string(),
                    ));
                }
            }
            // c0 is the smallest coset index in its orbit: earlier cosets
            // are all assigned already
            let lambda: Vec<i64> = rep_vec
                .iter()
                .map(|x| i64::try_from(x).expect("coset representative fits i64"))
                .collect();
            let divisors: Vec<u64> = q
                .elementary_divisors()
                .iter()
                .map(|d| u64::try_from(d).expect("elementary divisor fits u64"))
                .collect();
            recs.push(Rec {
                fc: fc_idx,
                orbit: oid,
                lambda,
                divisors,
            });
        }
        finite.push(FiniteClassData {
            class: fc,
            quotient: q,
            coset_orbit,
        });
    }

    recs.sort_by(|a, b| {
        let wa = group.element(finite[a.fc].class.rep).word();
        let wb = group.element(finite[b.fc].class.rep).word();
        wa.cmp(wb).then_with(|| a.lambda.cmp(&b.lambda))
    });

    let mut classes = Vec::with_capacity(recs.len());
    let mut pair_to_class = HashMap::new();
    for (idx, rec) in recs.into_iter().enumerate() {
        let rep = group.element(finite[rec.fc].class.rep).clone();
        let sigma = AffineElement::new(rec.lambda.clone(), rep.clone())?;
        debug_assert!(affine::order_two_criterion(&sigma));
        pair_to_class.insert((rec.fc, rec.orbit), idx);
        classes.push(InvolutionClass {
            finite_class_rep: rep,
            lambda_rep: rec.lambda,
            sigma,
            elementary_divisors: rec.divisors,
            finite_class_index: rec.fc,
            orbit_index: rec.orbit,
        });
    }

    let mut member_map = HashMap::new();
    for (fc_idx, fd) in finite.iter().enumerate() {
        for (&m, &u) in &fd.class.conjugator_to_rep {
            member_map.insert(group.element(m).matrix().clone(), (fc_idx, u));
        }
    }

    Ok(Classification {
        rank,
        classes,
        group,
        finite,
        member_map,
        pair_to_class,
    })
}

impl Classification {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn classes(&self) -> &[InvolutionClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, idx: usize) -> Result<&InvolutionClass> {
        self.classes.get(idx).ok_or(Error::InvalidClassIndex {
            index: idx,
            count: self.classes.len(),
        })
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    /// Index of the class of an arbitrary involution.
    pub fn class_of(&self, x: &AffineElement) -> Result<usize> {
        if !affine::order_two_criterion(x) {
            return Err(Error::NotAnInvolution);
        }
        let &(fc_idx, u_idx) = self
            .member_map
            .get(x.finite_part().matrix())
            .ok_or_else(|| {
                Error::Internal("finite part of an involution not in any class".to_string())
            })?;
        let u = self.group.element(u_idx);
        let moved: Vec<BigInt> = u
            .apply(x.translation())
            .into_iter()
            .map(BigInt::from)
            .collect();
        let fd = &self.finite[fc_idx];
        let coset = fd.quotient.reduce(&moved)?;
        let orbit = fd.coset_orbit[coset];
        Ok(self.pair_to_class[&(fc_idx, orbit)])
    }
}

/// Brute-force partition of the involutions in ball(r_elements) by
/// conjugacy, joining x and g x g^{-1} for every g in ball(r_conjugators).
/// Parts are ordered by their first element in ball order, members likewise.
pub struct ClassCensus {
    pub parts: Vec<Vec<AffineElement>>,
}

pub fn brute_force_class_census(
    datum: &RootDatum,
    r_elements: usize,
    r_conjugators: usize,
    budgets: &Budgets,
) -> Result<ClassCensus> {
    let ball_e = affine::ball(datum, r_elements, budgets)?;
    let ball_c = affine::ball(datum, r_conjugators, budgets)?;
    let inv_idx: Vec<usize> = (0..ball_e.len())
        .filter(|&i| affine::order_two_criterion(ball_e.element(i)))
        .collect();
    let pos: HashMap<usize, usize> = inv_idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();

    let mut uf = UnionFind::new(inv_idx.len());
    for gi in 0..ball_c.len() {
        let g = ball_c.element(gi);
        let g_inv = affine::inverse(g, datum);
        for (p, &xi) in inv_idx.iter().enumerate() {
            let y = affine::multiply(
                &affine::multiply(g, ball_e.element(xi), datum),
                &g_inv,
                datum,
            );
            if let Some(yi) = ball_e.index_of(&y) {
                let py = pos[&yi];
                uf.union(p, py);
            }
        }
    }

    let parts = uf
        .partition()
        .into_iter()
        .map(|part| {
            part.into_iter()
                .map(|p| ball_e.element(inv_idx[p]).clone())
                .collect()
        })
        .collect();
    Ok(ClassCensus { parts })
}
