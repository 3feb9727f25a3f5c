//! Systole profile along one geodesic.

use crate::error::Result;
use crate::farey::Slope;
use crate::teich::{sample_times, thin_intervals, GeodesicSegment};

use super::report::{Report, Scatter};

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRow {
    pub time: f64,
    pub systole: f64,
    pub realizer: Slope,
    /// Curves shorter than epsilon at this time.
    pub thin: Vec<Slope>,
}

pub fn geodesic_profile(g: &GeodesicSegment, step: f64, epsilon: f64) -> Result<Vec<ProfileRow>> {
    let windows = thin_intervals(g, epsilon)?;
    let mut rows = Vec::new();
    for t in sample_times(g, step)? {
        let sys = g.systole_at(t);
        let thin = windows
            .iter()
            .filter(|w| w.t_enter <= t && t <= w.t_exit)
            .map(|w| w.curve.clone())
            .collect();
        rows.push(ProfileRow {
            time: t,
            systole: sys.value,
            realizer: sys.realizers[0].clone(),
            thin,
        });
    }
    Ok(rows)
}

pub fn profile_report(a: &Slope, b: &Slope, epsilon: f64, rows: &[ProfileRow]) -> Report {
    let mut r = Report::new("profile", vec!["time", "systole", "realizer", "thin"]);
    for x in rows {
        let thin: Vec<String> = x.thin.iter().map(Slope::to_string).collect();
        r.push_row(vec![
            x.time.into(),
            x.systole.into(),
            x.realizer.to_string().into(),
            thin.join(";").into(),
        ]);
    }
    r.summary = vec![
        ("a", a.to_string().into()),
        ("b", b.to_string().into()),
        ("epsilon", epsilon.into()),
    ];
    r.plot = Some(Scatter {
        title: format!("systole along the geodesic {a} to {b}"),
        x_label: "time".into(),
        y_label: "systole".into(),
        points: rows.iter().map(|x| (x.time, x.systole)).collect(),
        connect: true,
    });
    r
}
