//! Bounded geodesic image: large annular projection forces the axis onto
//! every geodesic.
//!
//! Every geodesic between two slopes runs through strip vertices (each strip
//! edge separates the endpoints, and a detour off the strip is never
//! shorter), so pairs inside the oracle box are certified exactly by
//! deletion-BFS on the boxed graph. Off-strip axes have projection at most 2
//! and are not examined.

use num_traits::ToPrimitive;

use crate::annular::{annular_distance, make_axis};
use crate::error::Result;
use crate::farey::{BoundedFareyGraph, Certification, Ladder, Slope};
use crate::par::Execution;

use super::report::{Report, Scatter};
use super::{sample_pairs_with, ExperimentConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct BgiRecord {
    pub a: Slope,
    pub b: Slope,
    pub axis: Slope,
    pub projection: u64,
    pub certification: Certification,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BgiReport {
    /// Least `M` such that every examined axis with projection `>= M` lies
    /// on all geodesics.
    pub fitted_m: u64,
    pub pairs: usize,
    pub contained: usize,
    pub not_contained: usize,
    pub skipped: usize,
    pub max_projection: u64,
    pub records: Vec<BgiRecord>,
}

impl BgiReport {
    pub fn passes(&self, limit: u64) -> bool {
        self.fitted_m <= limit
    }
}

fn certify_pair(graph: &BoundedFareyGraph, a: &Slope, b: &Slope) -> Result<Vec<BgiRecord>> {
    let ladder = Ladder::new(a, b);
    let mut out = Vec::new();
    for g in ladder.interior() {
        let projection = annular_distance(&make_axis(g), a, b)?
            .to_u64()
            .unwrap_or(u64::MAX);
        let certification = graph.all_geodesics_contain(a, b, g)?;
        out.push(BgiRecord {
            a: a.clone(),
            b: b.clone(),
            axis: g.clone(),
            projection,
            certification,
        });
    }
    Ok(out)
}

/// Samples pairs inside the oracle box and certifies every strip axis.
pub fn run_bgi_test(cfg: &ExperimentConfig, exec: Execution) -> Result<BgiReport> {
    cfg.validate()?;
    let graph = BoundedFareyGraph::new(cfg.oracle_bound)?;
    let pairs = sample_pairs_with(cfg.seed, cfg.sample_count, cfg.oracle_bound)?;
    let mut records = Vec::new();
    for batch in exec.map(&pairs, |(a, b)| certify_pair(&graph, a, b)) {
        records.extend(batch?);
    }
    records.sort_by(|x, y| (&x.a, &x.b, &x.axis).cmp(&(&y.a, &y.b, &y.axis)));
    let count = |c: Certification| records.iter().filter(|r| r.certification == c).count();
    let fitted_m = records
        .iter()
        .filter(|r| r.certification == Certification::NotContained)
        .map(|r| r.projection + 1)
        .max()
        .unwrap_or(1);
    Ok(BgiReport {
        fitted_m,
        pairs: pairs.len(),
        contained: count(Certification::Contained),
        not_contained: count(Certification::NotContained),
        skipped: count(Certification::Inconclusive),
        max_projection: records.iter().map(|r| r.projection).max().unwrap_or(0),
        records,
    })
}

fn cert_name(c: Certification) -> &'static str {
    match c {
        Certification::Contained => "contained",
        Certification::NotContained => "not_contained",
        Certification::Inconclusive => "inconclusive",
    }
}

impl BgiReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("bgi", vec!["a", "b", "axis", "projection", "certification"]);
        for x in &self.records {
            r.push_row(vec![
                x.a.to_string().into(),
                x.b.to_string().into(),
                x.axis.to_string().into(),
                x.projection.into(),
                cert_name(x.certification).into(),
            ]);
        }
        r.summary = vec![
            ("fitted_m", self.fitted_m.into()),
            ("pairs", self.pairs.into()),
            ("contained", self.contained.into()),
            ("not_contained", self.not_contained.into()),
            ("skipped", self.skipped.into()),
            ("max_projection", self.max_projection.into()),
        ];
        r.plot = Some(Scatter {
            title: "projection against containment (1 = on every geodesic)".into(),
            x_label: "annular projection".into(),
            y_label: "contained".into(),
            points: self
                .records
                .iter()
                .map(|x| {
                    (
                        x.projection as f64,
                        (x.certification == Certification::Contained) as u8 as f64,
                    )
                })
                .collect(),
            connect: false,
        });
        r
    }
}
