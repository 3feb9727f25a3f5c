//! Antichains of annuli and the coarse distance estimate.
//!
//! In the Farey models every proper essential subsurface is an annulus, and
//! distinct annuli are never nested, so an antichain is just a set of axes.
//! Large projections only occur at pivots of long fans in the triangle strip
//! between the two curves, which is where candidates are drawn from.

use serde::Serialize;

use crate::annular::{annular_distance, make_axis};
use crate::error::{Error, Result};
use crate::farey::{farey_distance, Ladder, Slope};
use crate::teich::{geodesic_between, thick_part, ThickPart};

/// Smallest admissible threshold.
pub const MIN_THRESHOLD: i64 = 4;

/// Axes whose projection distance for the base pair is at least
/// `threshold_lo`, containing every axis with projection at least
/// `threshold_hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Antichain {
    pub base_pair: (Slope, Slope),
    pub threshold_lo: i64,
    pub threshold_hi: i64,
    /// Sorted by slope order.
    pub members: Vec<Slope>,
}

impl Antichain {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Slope) -> bool {
        self.members.binary_search(s).is_ok()
    }
}

/// All axes with projection distance at least `threshold` between `a` and `b`.
pub fn antichain_of_maxima(a: &Slope, b: &Slope, threshold: i64) -> Result<Antichain> {
    if threshold < MIN_THRESHOLD {
        return Err(Error::ThresholdTooSmall(threshold));
    }
    let ladder = Ladder::new(a, b);
    let mut members = Vec::new();
    for g in ladder.interior() {
        if annular_distance(&make_axis(g), a, b)? >= threshold.into() {
            members.push(g.clone());
        }
    }
    members.sort();
    members.dedup();
    Ok(Antichain {
        base_pair: (a.clone(), b.clone()),
        threshold_lo: threshold,
        threshold_hi: threshold,
        members,
    })
}

/// Accumulation inequality with constant one: `d(a, b) >= |J|`.
pub fn accumulation_bound(ch: &Antichain) -> bool {
    farey_distance(&ch.base_pair.0, &ch.base_pair.1) >= ch.members.len() as u64
}

/// Inputs to the coarse estimate of the distance between two curves.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateReport {
    pub a: Slope,
    pub b: Slope,
    pub j_size: u64,
    pub gamma_total: f64,
    pub distance: u64,
    /// Filled in by the sweep that fits the comparison constant.
    pub fitted_k: Option<f64>,
}

impl EstimateReport {
    /// `|J| + |Γ(ε, L)|`.
    pub fn estimate(&self) -> f64 {
        self.j_size as f64 + self.gamma_total
    }
}

/// Antichain size, thick-part length and true distance for one pair.
pub fn distance_estimate(
    a: &Slope,
    b: &Slope,
    threshold: i64,
    epsilon: f64,
    min_length: f64,
) -> Result<EstimateReport> {
    if a == b {
        return Err(Error::DegeneratePair(a.to_string()));
    }
    let ch = antichain_of_maxima(a, b, threshold)?;
    let tp = thick_part(&geodesic_between(a, b)?, epsilon, min_length)?;
    Ok(EstimateReport {
        a: a.clone(),
        b: b.clone(),
        j_size: ch.members.len() as u64,
        gamma_total: tp.total,
        distance: farey_distance(a, b),
        fitted_k: None,
    })
}

/// Whether the thick part has at most `|J| + 1` intervals.
pub fn interval_count_bound(ch: &Antichain, tp: &ThickPart) -> Result<bool> {
    if ch.base_pair != tp.endpoints {
        return Err(Error::ParameterMismatch(format!(
            "antichain for ({}, {}) but thick part for ({}, {})",
            ch.base_pair.0, ch.base_pair.1, tp.endpoints.0, tp.endpoints.1
        )));
    }
    Ok(tp.intervals.len() <= ch.members.len() + 1)
}
