//! Reverse triangle inequality along shadows of geodesics.

use crate::error::Result;
use crate::farey::{farey_distance, Slope};
use crate::par::Execution;
use crate::teich::{geodesic_between, shadow};

use super::report::{Report, Scatter};
use super::{sample_pairs, ExperimentConfig};

/// Default sampling step along geodesics.
pub const SHADOW_STEP: f64 = 0.05;

/// Largest `d(γi, γj) + d(γj, γk) - d(γi, γk)` over ordered triples.
pub fn backtrack_excess(curves: &[Slope]) -> u64 {
    let n = curves.len();
    let mut d = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            d[i][j] = farey_distance(&curves[i], &curves[j]);
        }
    }
    let mut worst = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                worst = worst.max((d[i][j] + d[j][k]).saturating_sub(d[i][k]));
            }
        }
    }
    worst
}

#[derive(Clone, Debug, PartialEq)]
pub struct BacktrackRecord {
    pub a: Slope,
    pub b: Slope,
    pub shadow_len: usize,
    pub excess: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BacktrackReport {
    pub fitted_b: u64,
    pub step: f64,
    pub records: Vec<BacktrackRecord>,
}

impl BacktrackReport {
    pub fn passes(&self, limit: u64) -> bool {
        self.fitted_b <= limit
    }
}

pub fn run_backtrack_test(
    cfg: &ExperimentConfig,
    step: f64,
    exec: Execution,
) -> Result<BacktrackReport> {
    cfg.validate()?;
    let pairs = sample_pairs(cfg)?;
    let mut records = Vec::with_capacity(pairs.len());
    for rec in exec.map(&pairs, |(a, b)| -> Result<BacktrackRecord> {
        let curves: Vec<Slope> = shadow(&geodesic_between(a, b)?, step)?
            .into_iter()
            .map(|(_, s)| s)
            .collect();
        Ok(BacktrackRecord {
            a: a.clone(),
            b: b.clone(),
            shadow_len: curves.len(),
            excess: backtrack_excess(&curves),
        })
    }) {
        records.push(rec?);
    }
    records.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    let fitted_b = records.iter().map(|r| r.excess).max().unwrap_or(0);
    Ok(BacktrackReport {
        fitted_b,
        step,
        records,
    })
}

impl BacktrackReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("backtrack", vec!["a", "b", "shadow_len", "excess"]);
        for x in &self.records {
            r.push_row(vec![
                x.a.to_string().into(),
                x.b.to_string().into(),
                x.shadow_len.into(),
                x.excess.into(),
            ]);
        }
        r.summary = vec![
            ("fitted_b", self.fitted_b.into()),
            ("step", self.step.into()),
            ("pairs", self.records.len().into()),
        ];
        r.plot = Some(Scatter {
            title: "backtracking excess against shadow length".into(),
            x_label: "shadow length".into(),
            y_label: "excess".into(),
            points: self
                .records
                .iter()
                .map(|x| (x.shadow_len as f64, x.excess as f64))
                .collect(),
            connect: false,
        });
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::teich::GeodesicSegment;

    fn s(p: i64, q: i64) -> Slope {
        Slope::from_ints(p, q).unwrap()
    }

    #[test]
    fn monotone_paths_have_no_excess() {
        assert_eq!(backtrack_excess(&[s(1, 0), s(0, 1), s(1, 3), s(2, 7)]), 0);
        assert_eq!(backtrack_excess(&[s(0, 1), s(1, 0), s(0, 1)]), 2);
        assert_eq!(backtrack_excess(&[]), 0);
    }

    #[test]
    fn vertical_shadow_has_no_excess() {
        let g = GeodesicSegment::with_times(&s(0, 1), &s(1, 0), -4.0, 4.0).unwrap();
        let curves: Vec<Slope> = shadow(&g, 0.01)
            .unwrap()
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        assert_eq!(backtrack_excess(&curves), 0);
    }
}
