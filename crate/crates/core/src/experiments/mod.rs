//! Seeded sweeps that check the coarse inequalities, fit their constants and
//! emit reports.

mod backtrack;
mod bgi;
mod config;
mod estimate;
mod profile;
mod qi;
mod report;
mod retraction;
mod teichfit;

pub use backtrack::{backtrack_excess, run_backtrack_test, BacktrackReport, SHADOW_STEP};
pub use bgi::{run_bgi_test, BgiReport};
pub use config::ExperimentConfig;
pub use estimate::{fit_k, run_estimate_sweep, EstimateSweep};
pub use profile::{geodesic_profile, profile_report, ProfileRow};
pub use qi::{fit_cover, paper_upper_factor, run_cover_qi, QIFitReport};
pub use report::{emit_report, render, Cell, Format, Report, Scatter, SCHEMA};
pub use retraction::{check_retraction, farey_ball, with_chord, FiniteGraphMapCheck, Verdict};
pub use teichfit::{fit_teich_constants, TeichConstants, EPSILON_0, EPSILON_1};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::farey::Slope;

/// Deterministic random slope with `|p|, q <= bound`.
pub fn random_slope<R: Rng>(rng: &mut R, bound: u64) -> Slope {
    let b = bound as i64;
    loop {
        let p = rng.gen_range(-b..=b);
        let q = rng.gen_range(0..=b);
        if num_integer::gcd(p, q) == 1 && (q > 0 || p == 1) {
            return Slope::from_ints(p, q).expect("primitive");
        }
    }
}

/// `count` pairs of distinct slopes with `|p|, q <= bound`, reproducible from
/// `seed`.
pub fn sample_pairs_with(seed: u64, count: usize, bound: u64) -> Result<Vec<(Slope, Slope)>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if bound == 0 {
        return Err(Error::InvalidParameter(
            "slope bound 0 admits no pair of distinct slopes".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = random_slope(&mut rng, bound);
        let b = random_slope(&mut rng, bound);
        if a != b {
            out.push((a, b));
        }
    }
    Ok(out)
}

pub fn sample_pairs(cfg: &ExperimentConfig) -> Result<Vec<(Slope, Slope)>> {
    sample_pairs_with(cfg.seed, cfg.sample_count, cfg.slope_size_bound)
}

/// Index split used by every fitted constant: even positions train, odd
/// positions test.
pub(crate) fn split_halves<T: Clone>(items: &[T]) -> (Vec<T>, Vec<T>) {
    let train = items.iter().step_by(2).cloned().collect();
    let test = items.iter().skip(1).step_by(2).cloned().collect();
    (train, test)
}
