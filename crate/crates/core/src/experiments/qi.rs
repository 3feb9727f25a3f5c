//! Quasi-isometry check for the covering relation.

use crate::covers::CoverSpec;
use crate::error::{Error, Result};
use crate::farey::{farey_distance, Slope};
use crate::par::Execution;

use super::report::{Report, Scatter};
use super::{sample_pairs, ExperimentConfig};

/// Upper distortion factor `2 log2(2d) + 2` for a degree-`d` cover.
pub fn paper_upper_factor(degree: u64) -> f64 {
    2.0 * (2.0 * degree as f64).log2() + 2.0
}

#[derive(Clone, Debug, PartialEq)]
pub struct QiRecord {
    pub a: Slope,
    pub b: Slope,
    pub lift_a: Slope,
    pub lift_b: Slope,
    pub base_distance: u64,
    pub lifted_distance: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QIFitReport {
    pub cover: CoverSpec,
    pub fitted_q: f64,
    pub paper_upper_factor: f64,
    /// Pairs with `d_up > factor * d_base`.
    pub violations: usize,
    /// Pairs whose distance changed under the relation.
    pub changed: usize,
    pub max_base_distance: u64,
    pub max_lifted_distance: u64,
    pub records: Vec<QiRecord>,
}

fn qi_record(cover: &CoverSpec, (a, b): &(Slope, Slope)) -> QiRecord {
    let (lift_a, lift_b) = (cover.lift(a), cover.lift(b));
    QiRecord {
        base_distance: farey_distance(a, b),
        lifted_distance: farey_distance(&lift_a, &lift_b),
        a: a.clone(),
        b: b.clone(),
        lift_a,
        lift_b,
    }
}

/// Lifts sampled pairs through `cover` and fits the least `Q >= 1` with
/// `d_base <= Q d_up + Q` and `d_up <= Q d_base + Q`.
pub fn fit_cover(cover: &CoverSpec, pairs: &[(Slope, Slope)], exec: Execution) -> QIFitReport {
    let mut records = exec.map(pairs, |p| qi_record(cover, p));
    records.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    let factor = paper_upper_factor(cover.degree());
    let mut fitted_q = 1.0f64;
    let (mut violations, mut changed, mut max_base, mut max_up) = (0, 0, 0, 0);
    for r in &records {
        let (db, du) = (r.base_distance as f64, r.lifted_distance as f64);
        fitted_q = fitted_q.max(db / (du + 1.0)).max(du / (db + 1.0));
        if du > factor * db {
            violations += 1;
        }
        if r.base_distance != r.lifted_distance {
            changed += 1;
        }
        max_base = max_base.max(r.base_distance);
        max_up = max_up.max(r.lifted_distance);
    }
    QIFitReport {
        cover: cover.clone(),
        fitted_q,
        paper_upper_factor: factor,
        violations,
        changed,
        max_base_distance: max_base,
        max_lifted_distance: max_up,
        records,
    }
}

pub fn run_cover_qi(cfg: &ExperimentConfig, exec: Execution) -> Result<QIFitReport> {
    cfg.validate()?;
    let cover = cfg
        .cover
        .as_ref()
        .ok_or_else(|| Error::Config("cover-qi needs a cover".into()))?;
    Ok(fit_cover(cover, &sample_pairs(cfg)?, exec))
}

impl QIFitReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new(
            "cover-qi",
            vec![
                "a",
                "b",
                "lift_a",
                "lift_b",
                "base_distance",
                "lifted_distance",
            ],
        );
        for x in &self.records {
            r.push_row(vec![
                x.a.to_string().into(),
                x.b.to_string().into(),
                x.lift_a.to_string().into(),
                x.lift_b.to_string().into(),
                x.base_distance.into(),
                x.lifted_distance.into(),
            ]);
        }
        r.summary = vec![
            ("cover", self.cover.to_string().into()),
            ("degree", self.cover.degree().into()),
            ("fitted_q", self.fitted_q.into()),
            ("paper_upper_factor", self.paper_upper_factor.into()),
            ("violations", self.violations.into()),
            ("changed", self.changed.into()),
            ("samples", self.records.len().into()),
            ("max_base_distance", self.max_base_distance.into()),
            ("max_lifted_distance", self.max_lifted_distance.into()),
        ];
        r.plot = Some(Scatter {
            title: format!("lifted vs base distance, cover {}", self.cover),
            x_label: "base distance".into(),
            y_label: "lifted distance".into(),
            points: self
                .records
                .iter()
                .map(|x| (x.base_distance as f64, x.lifted_distance as f64))
                .collect(),
            connect: false,
        });
        r
    }
}
