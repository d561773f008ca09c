//! Centralizer orbits on alcoves.
//!
//! For an involution sigma, alcoves x and y lie in the same orbit of the
//! centralizer of sigma exactly when x^{-1} sigma x = y^{-1} sigma y: the
//! witness g = y x^{-1} then commutes with sigma. Censuses group a Cayley
//! ball by that invariant, in ball order, so the output is deterministic and
//! independent of how the invariants were computed (including in parallel).

use std::collections::HashMap;

use rayon::prelude::*;

use crate::affine::{self, AffineElement, Alcove, Ball};
use crate::cartan::RootDatum;
use crate::matrix::IMat;
use crate::unionfind::UnionFind;
use crate::weyl;
use crate::{Budgets, Error, Result};

/// x^{-1} sigma x. Rejects non-involutions.
pub fn orbit_invariant(
    sigma: &AffineElement,
    x: &AffineElement,
    datum: &RootDatum,
) -> Result<AffineElement> {
    if !affine::order_two_criterion(sigma) {
        return Err(Error::NotAnInvolution);
    }
    let x_inv = affine::inverse(x, datum);
    Ok(affine::multiply(
        &affine::multiply(&x_inv, sigma, datum),
        x,
        datum,
    ))
}

/// sigma applied to an alcove: the alcove labelled sigma * label.
pub fn apply_involution(sigma: &AffineElement, a: &Alcove, datum: &RootDatum) -> Result<Alcove> {
    if !affine::order_two_criterion(sigma) {
        return Err(Error::NotAnInvolution);
    }
    let label = affine::multiply(sigma, a.label(), datum);
    Ok(Alcove::from_label(label, datum))
}

#[derive(Clone, Debug)]
pub struct OrbitRecord {
    /// Common value of x^{-1} sigma x on the orbit.
    pub invariant: AffineElement,
    /// First alcove of the orbit in ball order; its distance is minimal.
    pub min_rep: Alcove,
    pub min_rep_word: Vec<u8>,
    pub min_rep_dist: usize,
    pub size_in_ball: usize,
}

#[derive(Debug)]
pub struct OrbitCensus {
    pub sigma: AffineElement,
    pub radius: usize,
    pub ball_size: usize,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitRecord>,
}

impl OrbitCensus {
    /// Orbit counts at every radius r <= radius of the underlying ball:
    /// an orbit is visible at r once its minimal representative is.
    pub fn counts_by_radius(&self) -> Vec<usize> {
        (0..=self.radius)
            .map(|r| self.orbits.iter().filter(|o| o.min_rep_dist <= r).count())
            .collect()
    }
}

pub fn census(
    sigma: &AffineElement,
    datum: &RootDatum,
    radius: usize,
    budgets: &Budgets,
    parallel: bool,
) -> Result<OrbitCensus> {
    let ball = affine::ball(datum, radius, budgets)?;
    census_on_ball(sigma, &ball, datum, parallel)
}

pub fn census_on_ball(
    sigma: &AffineElement,
    ball: &Ball,
    datum: &RootDatum,
    parallel: bool,
) -> Result<OrbitCensus> {
    Ok(census_with_assignment(sigma, ball, datum, parallel)?.0)
}

/// Census plus the orbit index of every ball element.
pub fn census_with_assignment(
    sigma: &AffineElement,
    ball: &Ball,
    datum: &RootDatum,
    parallel: bool,
) -> Result<(OrbitCensus, Vec<usize>)> {
    if !affine::order_two_criterion(sigma) {
        return Err(Error::NotAnInvolution);
    }
    if sigma.rank() != datum.rank() {
        return Err(Error::DimensionMismatch {
            expected: datum.rank(),
            got: sigma.rank(),
        });
    }

    // inverses of the finitely many finite parts, computed up front so the
    // per-element work is pure arithmetic
    let mut inv_cache: HashMap<IMat, IMat> = HashMap::new();
    for x in ball.elements() {
        let m = x.finite_part().matrix();
        if !inv_cache.contains_key(m) {
            let mut rev: Vec<u8> = x.finite_part().word().to_vec();
            rev.reverse();
            inv_cache.insert(m.clone(), weyl::matrix_of_word(&rev, datum));
        }
    }

    let sig_t = sigma.translation();
    let sig_m = sigma.finite_part().matrix();
    let invariant_key = |x: &AffineElement| -> (Vec<i64>, IMat) {
        let m_inv = &inv_cache[x.finite_part().matrix()];
        // x^{-1} sigma x = (m_inv (sig_t - t + sig_m t), m_inv sig_m m)
        let t = x.translation();
        let moved = sig_m.apply(t);
        let pre: Vec<i64> = (0..t.len()).map(|i| sig_t[i] - t[i] + moved[i]).collect();
        (m_inv.apply(&pre), m_inv.mul(sig_m).mul(x.finite_part().matrix()))
    };

    let keys: Vec<(Vec<i64>, IMat)> = if parallel {
        ball.elements().par_iter().map(invariant_key).collect()
    } else {
        ball.elements().iter().map(invariant_key).collect()
    };

    // group in ball order; first occurrence fixes the orbit index
    let mut orbit_of_key: HashMap<(Vec<i64>, IMat), usize> = HashMap::new();
    let mut assignment = Vec::with_capacity(keys.len());
    let mut firsts: Vec<usize> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    for (i, key) in keys.into_iter().enumerate() {
        let next = orbit_of_key.len();
        let oid = *orbit_of_key.entry(key).or_insert(next);
        if oid == next && oid == firsts.len() {
            firsts.push(i);
            sizes.push(0);
        }
        sizes[oid] += 1;
        assignment.push(oid);
    }

    let mut orbits = Vec::with_capacity(firsts.len());
    for (oid, &first) in firsts.iter().enumerate() {
        let x = ball.element(first);
        let invariant = orbit_invariant(sigma, x, datum)?;
        orbits.push(OrbitRecord {
            invariant,
            min_rep: Alcove::from_label(x.clone(), datum),
            min_rep_word: ball.word(first).to_vec(),
            min_rep_dist: ball.dist(first),
            size_in_ball: sizes[oid],
        });
    }

    let census = OrbitCensus {
        sigma: sigma.clone(),
        radius: ball.radius(),
        ball_size: ball.len(),
        orbit_count: orbits.len(),
        orbits,
    };
    Ok((census, assignment))
}

/// Brute-force partition of the ball into centralizer orbits: x and g x are
/// joined for every g in ball(r_conjugators) commuting with sigma. Parts are
/// lists of ball indices, ordered by first member.
pub fn brute_force_census_on(
    sigma: &AffineElement,
    ball: &Ball,
    datum: &RootDatum,
    r_conjugators: usize,
    budgets: &Budgets,
) -> Result<Vec<Vec<usize>>> {
    if !affine::order_two_criterion(sigma) {
        return Err(Error::NotAnInvolution);
    }
    let ball_c = affine::ball(datum, r_conjugators, budgets)?;
    let mut uf = UnionFind::new(ball.len());
    for gi in 0..ball_c.len() {
        let g = ball_c.element(gi);
        if affine::multiply(g, sigma, datum) != affine::multiply(sigma, g, datum) {
            continue;
        }
        for xi in 0..ball.len() {
            let y = affine::multiply(g, ball.element(xi), datum);
            if let Some(yi) = ball.index_of(&y) {
                uf.union(xi, yi);
            }
        }
    }
    Ok(uf.partition())
}
