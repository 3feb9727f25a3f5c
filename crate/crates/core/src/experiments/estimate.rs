//! Sweep for the two-sided estimate `d ≍_K |J| + |Γ(ε,L)|`.

use crate::antichain::{distance_estimate, EstimateReport};
use crate::error::Result;
use crate::par::Execution;
use crate::teich::TOLERANCE;

use super::report::{Report, Scatter};
use super::{sample_pairs, split_halves, ExperimentConfig};

pub const FIT_RULE: &str = "K = max(1, max over train of d/(x+1), x/(d+1)), x = |J| + |Gamma|";

#[derive(Clone, Debug, PartialEq)]
pub struct EstimateSweep {
    /// Sorted by pair.
    pub reports: Vec<EstimateReport>,
    pub fitted_k: Option<f64>,
    pub train_size: usize,
    pub test_size: usize,
    pub test_violations: usize,
}

/// Least `K >= 1` with `d <= K x + K` and `x <= K d + K` on every report.
pub fn fit_k(reports: &[EstimateReport]) -> Option<f64> {
    if reports.is_empty() {
        return None;
    }
    let k = reports
        .iter()
        .map(|r| {
            let (d, x) = (r.distance as f64, r.estimate());
            (d / (x + 1.0)).max(x / (d + 1.0))
        })
        .fold(1.0, f64::max);
    Some(k)
}

pub(crate) fn violates(r: &EstimateReport, k: f64) -> bool {
    let (d, x) = (r.distance as f64, r.estimate());
    d > k * x + k + TOLERANCE || x > k * d + k + TOLERANCE
}

/// Computes one report per sampled pair, fits `K` on the even-indexed half
/// and counts violations on the odd-indexed half.
pub fn run_estimate_sweep(cfg: &ExperimentConfig, exec: Execution) -> Result<EstimateSweep> {
    cfg.validate()?;
    let pairs = sample_pairs(cfg)?;
    let reports = exec
        .map(&pairs, |(a, b)| {
            distance_estimate(a, b, cfg.threshold, cfg.epsilon, cfg.min_length)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(fit_sweep(reports))
}

pub(crate) fn fit_sweep(reports: Vec<EstimateReport>) -> EstimateSweep {
    let (train, test) = split_halves(&reports);
    let fitted_k = fit_k(&train);
    let test_violations = match fitted_k {
        Some(k) => test.iter().filter(|r| violates(r, k)).count(),
        None => 0,
    };
    let mut reports = reports;
    for r in &mut reports {
        r.fitted_k = fitted_k;
    }
    reports.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    EstimateSweep {
        reports,
        fitted_k,
        train_size: train.len(),
        test_size: test.len(),
        test_violations,
    }
}

impl EstimateSweep {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new(
            "estimate",
            vec!["a", "b", "j_size", "gamma_total", "distance", "fitted_k"],
        );
        for x in &self.reports {
            r.push_row(vec![
                x.a.to_string().into(),
                x.b.to_string().into(),
                x.j_size.into(),
                x.gamma_total.into(),
                x.distance.into(),
                x.fitted_k.into(),
            ]);
        }
        r.summary = vec![
            ("fitted_k", self.fitted_k.into()),
            ("fit_rule", FIT_RULE.into()),
            ("train_size", self.train_size.into()),
            ("test_size", self.test_size.into()),
            ("test_violations", self.test_violations.into()),
        ];
        r.plot = Some(Scatter {
            title: "distance against antichain plus thick length".into(),
            x_label: "|J| + |Γ(ε,L)|".into(),
            y_label: "distance".into(),
            points: self
                .reports
                .iter()
                .map(|x| (x.estimate(), x.distance as f64))
                .collect(),
            connect: false,
        });
        r
    }
}
