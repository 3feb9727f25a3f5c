//! Empirical constants relating projections, shortness and progress along
//! geodesics.

use num_traits::ToPrimitive;

use crate::annular::{annular_distance, make_axis};
use crate::error::Result;
use crate::farey::{farey_distance, Ladder, Slope};
use crate::par::Execution;
use crate::teich::{geodesic_between, thick_part, thin_intervals};

use super::{sample_pairs, ExperimentConfig};

/// Shortness threshold for the projection-forces-shortness direction.
pub const EPSILON_0: f64 = 0.1;
/// Shortness threshold for the shortness-forces-projection direction.
pub const EPSILON_1: f64 = 0.05;
const PROGRESS_STEP: f64 = 0.5;
const P_GRID: f64 = 0.01;

#[derive(Clone, Debug, PartialEq)]
pub struct TeichConstants {
    /// Least `T` such that every axis with projection `>= T` gets
    /// `EPSILON_0`-short; `None` when no axis was examined.
    pub t_min: Option<u64>,
    /// Smallest projection of a curve that got `EPSILON_1`-short.
    pub t1: Option<u64>,
    /// Least grid `P` with `|d(γ0, γ1) - (t1 - t0)/P| <= P` on thick intervals.
    pub p: f64,
    /// Just above `8P`, so that `L0 / 2P > 4`.
    pub l0: f64,
    pub long_thick_violations: usize,
    pub pairs: usize,
}

struct PairData {
    /// (projection, gets EPSILON_0-short)
    axes: Vec<(u64, bool)>,
    /// projections of EPSILON_1-short curves
    thin_projections: Vec<u64>,
    /// (d, Δt) for shadow pairs inside one thick interval
    progress: Vec<(u64, f64)>,
}

fn pair_data(a: &Slope, b: &Slope, cfg: &ExperimentConfig) -> Result<PairData> {
    let g = geodesic_between(a, b)?;
    let thin0 = thin_intervals(&g, EPSILON_0)?;
    let thin1 = thin_intervals(&g, EPSILON_1)?;
    let projection = |c: &Slope| -> Result<u64> {
        Ok(annular_distance(&make_axis(c), a, b)?
            .to_u64()
            .unwrap_or(u64::MAX))
    };
    let mut axes = Vec::new();
    for c in Ladder::new(a, b).interior() {
        axes.push((projection(c)?, thin0.iter().any(|w| &w.curve == c)));
    }
    let thin_projections = thin1
        .iter()
        .map(|w| projection(&w.curve))
        .collect::<Result<_>>()?;
    let mut progress = Vec::new();
    for &(lo, hi) in &thick_part(&g, cfg.epsilon, cfg.min_length)?.intervals {
        let n = ((hi - lo) / PROGRESS_STEP).floor() as usize;
        let samples: Vec<(f64, Slope)> = (0..=n)
            .map(|i| {
                let t = lo + i as f64 * PROGRESS_STEP;
                (t, g.systole_at(t).realizers.swap_remove(0))
            })
            .collect();
        for i in 0..samples.len() {
            for j in (i + 1)..samples.len() {
                progress.push((
                    farey_distance(&samples[i].1, &samples[j].1),
                    samples[j].0 - samples[i].0,
                ));
            }
        }
    }
    Ok(PairData {
        axes,
        thin_projections,
        progress,
    })
}

fn progress_holds(p: f64, data: &[(u64, f64)]) -> bool {
    data.iter()
        .all(|&(d, dt)| (d as f64 - dt / p).abs() <= p + 1e-9)
}

pub fn fit_teich_constants(cfg: &ExperimentConfig, exec: Execution) -> Result<TeichConstants> {
    cfg.validate()?;
    let pairs = sample_pairs(cfg)?;
    let data = exec
        .map(&pairs, |(a, b)| pair_data(a, b, cfg))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let examined = data.iter().any(|d| !d.axes.is_empty());
    let t_min = examined.then(|| {
        data.iter()
            .flat_map(|d| &d.axes)
            .filter(|(_, short)| !short)
            .map(|(p, _)| p + 1)
            .max()
            .unwrap_or(1)
    });
    let t1 = data.iter().flat_map(|d| &d.thin_projections).min().copied();

    let progress: Vec<(u64, f64)> = data
        .iter()
        .flat_map(|d| d.progress.iter().copied())
        .collect();
    let mut p = P_GRID;
    while !progress_holds(p, &progress) {
        p += P_GRID;
    }
    let l0 = 8.0 * p + P_GRID;

    let mut long_thick_violations = 0;
    for (a, b) in &pairs {
        let total = thick_part(&geodesic_between(a, b)?, cfg.epsilon, l0)?.total;
        if (farey_distance(a, b) as f64) < total / (2.0 * p) - 1e-9 {
            long_thick_violations += 1;
        }
    }
    Ok(TeichConstants {
        t_min,
        t1,
        p,
        l0,
        long_thick_violations,
        pairs: pairs.len(),
    })
}
