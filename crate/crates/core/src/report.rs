//! Decomposition reports: the class table, per-class orbit censuses and
//! growth totals for one root system at one radius, serialized as JSON.
//!
//! Serialization is Vec-and-integer only, so `to_json` output is
//! byte-deterministic for a given input and tool version. Words are arrays
//! of generator indices with 0 the affine generator; translation vectors are
//! in simple-coroot coordinates.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::affine::{self, affine_canonical_word};
use crate::cartan::RootDatum;
use crate::involutions::{self, classify};
use crate::orbits;
use crate::{Budgets, Error, Result};

/// Fixed conventions a reader needs to interpret the tables, also embedded
/// in every report.
pub const CONVENTION_NOTE: &str = "Cartan entry a[i][j] is the pairing of coroot i with root j, in Bourbaki \
     numbering. Elements are written t_lambda w, multiplied by (lambda, w)(mu, v) \
     = (lambda + w(mu), wv); translation vectors are in simple-coroot coordinates. \
     Generator 0 reflects through the wall where the highest root equals 1; \
     generators 1..=rank are the finite simple reflections. Words are \
     lexicographically least reduced words. Classes are listed identity first, \
     then by (finite representative word, translation representative). Alcoves \
     are identified with group elements via the fundamental alcove as base \
     point, and censuses are tables of orbits of that alcove set.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub type_letter: String,
    pub rank: usize,
    pub radius: usize,
    pub ball_size: usize,
    pub class_count: usize,
    pub tool_version: String,
    pub config_hash: String,
    pub convention_note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub index: usize,
    pub finite_word: Vec<u8>,
    pub lambda: Vec<i64>,
    pub sigma_word: Vec<u8>,
    pub elementary_divisors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    /// Canonical word of the orbit invariant; stable as the radius grows.
    pub invariant_word: Vec<u8>,
    pub min_rep_word: Vec<u8>,
    pub min_rep_dist: usize,
    pub size_in_ball: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub orbit_count: usize,
    pub orbits: Vec<OrbitSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub class: ClassSummary,
    pub census: CensusSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalsRow {
    pub radius: usize,
    pub ball_size: usize,
    /// Orbits visible at this radius, one entry per class.
    pub orbit_counts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub meta: ReportMeta,
    pub classes: Vec<ClassEntry>,
    pub totals: Vec<TotalsRow>,
}

/// The classes-only fragment of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTable {
    pub type_letter: String,
    pub rank: usize,
    pub class_count: usize,
    pub tool_version: String,
    pub classes: Vec<ClassSummary>,
}

pub fn build_class_table(datum: &RootDatum, budgets: &Budgets) -> Result<ClassTable> {
    let classification = classify(datum, budgets)?;
    let classes = classification
        .classes()
        .iter()
        .enumerate()
        .map(|(i, cl)| ClassSummary {
            index: i,
            finite_word: cl.finite_class_rep.word().to_vec(),
            lambda: cl.lambda_rep.clone(),
            sigma_word: affine_canonical_word(&cl.sigma, datum),
            elementary_divisors: cl.elementary_divisors.clone(),
        })
        .collect();
    Ok(ClassTable {
        type_letter: datum.type_letter().as_char().to_string(),
        rank: datum.rank(),
        class_count: classification.class_count(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        classes,
    })
}

/// Hex SHA-256 of everything that determines report content. The
/// parallelism switch is excluded: it cannot change the output.
pub fn config_hash(datum: &RootDatum, radius: usize, budgets: &Budgets) -> String {
    let mut h = Sha256::new();
    h.update(
        format!(
            "type={};rank={};radius={};max_rank={};max_group={};max_ball={}",
            datum.type_letter().as_char(),
            datum.rank(),
            radius,
            budgets.max_rank,
            budgets.max_group_elements,
            budgets.max_ball_elements,
        )
        .as_bytes(),
    );
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn build_report(
    datum: &RootDatum,
    radius: usize,
    budgets: &Budgets,
    parallel: bool,
) -> Result<DecompositionReport> {
    let classification = classify(datum, budgets)?;
    let ball = affine::ball(datum, radius, budgets)?;

    let mut classes = Vec::with_capacity(classification.class_count());
    let mut censuses = Vec::with_capacity(classification.class_count());
    for (i, cl) in classification.classes().iter().enumerate() {
        let census = orbits::census_on_ball(&cl.sigma, &ball, datum, parallel)?;
        classes.push(ClassEntry {
            class: ClassSummary {
                index: i,
                finite_word: cl.finite_class_rep.word().to_vec(),
                lambda: cl.lambda_rep.clone(),
                sigma_word: affine_canonical_word(&cl.sigma, datum),
                elementary_divisors: cl.elementary_divisors.clone(),
            },
            census: CensusSummary {
                orbit_count: census.orbit_count,
                orbits: census
                    .orbits
                    .iter()
                    .map(|o| OrbitSummary {
                        invariant_word: affine_canonical_word(&o.invariant, datum),
                        min_rep_word: o.min_rep_word.clone(),
                        min_rep_dist: o.min_rep_dist,
                        size_in_ball: o.size_in_ball,
                    })
                    .collect(),
            },
        });
        censuses.push(census);
    }

    let totals = (0..=radius)
        .map(|r| TotalsRow {
            radius: r,
            ball_size: ball.size_at_radius(r),
            orbit_counts: censuses
                .iter()
                .map(|c| c.orbits.iter().filter(|o| o.min_rep_dist <= r).count())
                .collect(),
        })
        .collect();

    let report = DecompositionReport {
        meta: ReportMeta {
            type_letter: datum.type_letter().as_char().to_string(),
            rank: datum.rank(),
            radius,
            ball_size: ball.len(),
            class_count: classes.len(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash: config_hash(datum, radius, budgets),
            convention_note: CONVENTION_NOTE.to_string(),
        },
        classes,
        totals,
    };
    report.validate()?;
    Ok(report)
}

pub fn to_json(report: &DecompositionReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)
        .map_err(|e| Error::InvalidReport(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn class_table_to_json(table: &ClassTable) -> Result<String> {
    let mut s =
        serde_json::to_string_pretty(table).map_err(|e| Error::InvalidReport(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<DecompositionReport> {
    let report: DecompositionReport =
        serde_json::from_str(text).map_err(|e| Error::InvalidReport(e.to_string()))?;
    report.validate()?;
    Ok(report)
}

impl DecompositionReport {
    /// Internal consistency: the totals table must be recomputable from the
    /// per-class censuses, and each census must partition the ball.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidReport(msg));
        if self.meta.class_count != self.classes.len() {
            return fail(format!(
                "class_count {} but {} class entries",
                self.meta.class_count,
                self.classes.len()
            ));
        }
        for (i, entry) in self.classes.iter().enumerate() {
            if entry.class.index != i {
                return fail(format!("class entry {i} has index {}", entry.class.index));
            }
            if entry.census.orbit_count != entry.census.orbits.len() {
                return fail(format!(
                    "class {i}: orbit_count {} but {} orbit entries",
                    entry.census.orbit_count,
                    entry.census.orbits.len()
                ));
            }
            let total: usize = entry.census.orbits.iter().map(|o| o.size_in_ball).sum();
            if total != self.meta.ball_size {
                return fail(format!(
                    "class {i}: orbit sizes sum to {total}, ball has {}",
                    self.meta.ball_size
                ));
            }
            for o in &entry.census.orbits {
                if o.min_rep_dist > self.meta.radius || o.min_rep_word.len() != o.min_rep_dist {
                    return fail(format!("class {i}: inconsistent orbit representative"));
                }
            }
        }
        if self.totals.len() != self.meta.radius + 1 {
            return fail(format!(
                "{} totals rows for radius {}",
                self.totals.len(),
                self.meta.radius
            ));
        }
        let mut prev_ball = 0usize;
        for (r, row) in self.totals.iter().enumerate() {
            if row.radius != r {
                return fail(format!("totals row {r} labelled {}", row.radius));
            }
            if row.ball_size < prev_ball {
                return fail(format!("ball size shrinks at radius {r}"));
            }
            prev_ball = row.ball_size;
            if row.orbit_counts.len() != self.classes.len() {
                return fail(format!("totals row {r} has wrong class count"));
            }
            for (c, &count) in row.orbit_counts.iter().enumerate() {
                let expect = self.classes[c]
                    .census
                    .orbits
                    .iter()
                    .filter(|o| o.min_rep_dist <= r)
                    .count();
                if count != expect {
                    return fail(format!(
                        "totals row {r} class {c}: {count} orbits, census says {expect}"
                    ));
                }
            }
        }
        if prev_ball != self.meta.ball_size {
            return fail(format!(
                "final totals ball size {prev_ball} != {}",
                self.meta.ball_size
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct OrbitOracleLine {
    pub class_index: usize,
    pub exact_orbit_count: usize,
    pub brute_part_count: usize,
    pub refines: bool,
    pub equal: bool,
    /// Ball words of two elements one brute part puts together but the
    /// invariant separates.
    pub witness: Option<(Vec<u8>, Vec<u8>)>,
}

#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub class_refines: bool,
    pub class_equal: bool,
    pub brute_class_parts: usize,
    pub classes_met: usize,
    /// Canonical words of two involutions one brute part puts together but
    /// classification separates.
    pub class_witness: Option<(Vec<u8>, Vec<u8>)>,
    pub per_class: Vec<OrbitOracleLine>,
}

impl OracleOutcome {
    /// Refinement is the hard guarantee; a failure means a genuine bug.
    pub fn refinement_ok(&self) -> bool {
        self.class_refines && self.per_class.iter().all(|l| l.refines)
    }

    /// Full agreement, which needs a conjugator radius large enough to
    /// exhibit every identification.
    pub fn all_equal(&self) -> bool {
        self.refinement_ok() && self.class_equal && self.per_class.iter().all(|l| l.equal)
    }
}

/// Run both brute-force partitions against the exact ones. Brute parts only
/// ever join genuinely equivalent elements, so they must refine the exact
/// partitions at any conjugator radius; equality additionally needs the
/// conjugators to reach far enough.
pub fn run_oracle(
    datum: &RootDatum,
    radius: usize,
    conjugator_radius: usize,
    budgets: &Budgets,
) -> Result<OracleOutcome> {
    let classification = classify(datum, budgets)?;

    let class_census =
        involutions::brute_force_class_census(datum, radius, conjugator_radius, budgets)?;
    let mut class_refines = true;
    let mut class_witness = None;
    let mut met = std::collections::BTreeSet::new();
    for part in &class_census.parts {
        let first = classification.class_of(&part[0])?;
        met.insert(first);
        for x in part {
            let cx = classification.class_of(x)?;
            met.insert(cx);
            if cx != first && class_witness.is_none() {
                class_refines = false;
                class_witness = Some((
                    affine_canonical_word(&part[0], datum),
                    affine_canonical_word(x, datum),
                ));
            }
        }
    }
    let class_equal = class_refines && class_census.parts.len() == met.len();

    let ball = affine::ball(datum, radius, budgets)?;
    let mut per_class = Vec::with_capacity(classification.class_count());
    for (i, cl) in classification.classes().iter().enumerate() {
        let (census, assignment) =
            orbits::census_with_assignment(&cl.sigma, &ball, datum, false)?;
        let parts =
            orbits::brute_force_census_on(&cl.sigma, &ball, datum, conjugator_radius, budgets)?;
        let mut refines = true;
        let mut witness = None;
        for part in &parts {
            for &x in part {
                if assignment[x] != assignment[part[0]] {
                    refines = false;
                    if witness.is_none() {
                        witness =
                            Some((ball.word(part[0]).to_vec(), ball.word(x).to_vec()));
                    }
                }
            }
        }
        per_class.push(OrbitOracleLine {
            class_index: i,
            exact_orbit_count: census.orbit_count,
            brute_part_count: parts.len(),
            refines,
            equal: refines && parts.len() == census.orbit_count,
            witness,
        });
    }

    Ok(OracleOutcome {
        class_refines,
        class_equal,
        brute_class_parts: class_census.parts.len(),
        classes_met: met.len(),
        class_witness,
        per_class,
    })
}
