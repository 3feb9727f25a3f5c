//! Report tables and their CSV, JSON and SVG renderings.
//!
//! All renderings are byte-deterministic: rows keep their given order,
//! JSON object keys are sorted, and reals use Rust's shortest round-trip
//! formatting (SVG coordinates use two decimals).

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

pub const SCHEMA: &str = "curvecov-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(Error::InvalidParameter(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Real(x) => x.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
            Cell::Text(t) if t.contains([',', '"', '\n']) => {
                format!("\"{}\"", t.replace('"', "\"\""))
            }
            Cell::Text(t) => t.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => json!(n),
            Cell::Real(x) if x.is_finite() => json!(x),
            Cell::Real(_) | Cell::Null => Value::Null,
            Cell::Text(t) => json!(t),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Cell {
        Cell::Int(n as i64)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Cell {
        Cell::Int(n as i64)
    }
}

impl From<i64> for Cell {
    fn from(n: i64) -> Cell {
        Cell::Int(n)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Cell {
        Cell::Real(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Cell {
        Cell::Bool(b)
    }
}

impl From<String> for Cell {
    fn from(t: String) -> Cell {
        Cell::Text(t)
    }
}

impl From<&str> for Cell {
    fn from(t: &str) -> Cell {
        Cell::Text(t.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Cell {
        v.map(Into::into).unwrap_or(Cell::Null)
    }
}

/// Points for a static SVG chart; `connect` draws a polyline instead of dots.
#[derive(Clone, Debug, PartialEq)]
pub struct Scatter {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
    pub connect: bool,
}

/// A named table with a fixed header, summary fields and an optional chart.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub kind: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
    pub plot: Option<Scatter>,
}

impl Report {
    pub fn new(kind: &'static str, header: Vec<&'static str>) -> Report {
        Report {
            kind,
            header,
            rows: Vec::new(),
            summary: Vec::new(),
            plot: None,
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn summary_value(&self, key: &str) -> Option<&Cell> {
        self.summary.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }
}

fn render_csv(r: &Report) -> String {
    let mut out = r.header.join(",");
    out.push('\n');
    for row in &r.rows {
        let cells: Vec<String> = row.iter().map(Cell::csv).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn render_json(r: &Report) -> String {
    let records: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            Value::Object(
                r.header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.to_string(), v.json()))
                    .collect(),
            )
        })
        .collect();
    let summary: Map<String, Value> = r
        .summary
        .iter()
        .map(|(k, v)| (k.to_string(), v.json()))
        .collect();
    let doc = json!({ "schema": SCHEMA, "kind": r.kind, "summary": summary, "records": records });
    let mut text = serde_json::to_string_pretty(&doc).expect("report values serialize");
    text.push('\n');
    text
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn render_svg(r: &Report) -> Result<String> {
    let plot = r
        .plot
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter(format!("{} reports have no chart", r.kind)))?;
    let (w, h, m) = (640.0, 420.0, 60.0);
    let finite: Vec<(f64, f64)> = plot
        .points
        .iter()
        .copied()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    let span = |vals: &mut dyn Iterator<Item = f64>| {
        let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
        if lo > hi {
            (0.0, 1.0)
        } else if hi - lo < 1e-12 {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo, hi)
        }
    };
    let (x0, x1) = span(&mut finite.iter().map(|p| p.0));
    let (y0, y1) = span(&mut finite.iter().map(|p| p.1));
    let sx = |x: f64| m + (x - x0) / (x1 - x0) * (w - 2.0 * m);
    let sy = |y: f64| h - m - (y - y0) / (y1 - y0) * (h - 2.0 * m);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-size="15" text-anchor="middle">{}</text>"#,
        w / 2.0,
        escape(&plot.title)
    );
    let _ = writeln!(
        s,
        r#"<path d="M{m} {m} V{:.2} H{:.2}" fill="none" stroke="black"/>"#,
        h - m,
        w - m
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            sx(xv),
            h - m + 16.0,
            tick(xv)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
            m - 6.0,
            sy(yv) + 4.0,
            tick(yv)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">{}</text>"#,
        w / 2.0,
        h - 16.0,
        escape(&plot.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{}" font-size="13" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        h / 2.0,
        h / 2.0,
        escape(&plot.y_label)
    );
    if plot.connect {
        let pts: Vec<String> = finite
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="steelblue"/>"#,
            pts.join(" ")
        );
    } else {
        for &(x, y) in &finite {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="steelblue"/>"#,
                sx(x),
                sy(y)
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn tick(v: f64) -> String {
    let t = format!("{v:.2}");
    t.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn render(r: &Report, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(render_csv(r)),
        Format::Json => Ok(render_json(r)),
        Format::Svg => render_svg(r),
    }
}

/// Writes the rendered report to `path`.
pub fn emit_report(r: &Report, format: Format, path: &Path) -> Result<()> {
    std::fs::write(path, render(r, format)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", vec!["a", "b", "x"]);
        r.push_row(vec!["0/1".into(), "1,0".into(), 0.5.into()]);
        r.summary.push(("k", Cell::Real(2.0)));
        r
    }

    #[test]
    fn csv_quotes_and_header_only() {
        assert_eq!(
            render(&sample(), Format::Csv).unwrap(),
            "a,b,x\n0/1,\"1,0\",0.5\n"
        );
        let empty = Report::new("demo", vec!["a", "b"]);
        assert_eq!(render(&empty, Format::Csv).unwrap(), "a,b\n");
    }

    #[test]
    fn json_has_schema_and_records() {
        let v: Value = serde_json::from_str(&render(&sample(), Format::Json).unwrap()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["records"].as_array().unwrap().len(), 1);
        assert_eq!(v["records"][0]["x"], 0.5);
        assert_eq!(v["summary"]["k"], 2.0);
    }

    #[test]
    fn svg_is_static_and_deterministic() {
        let mut r = sample();
        assert!(render(&r, Format::Svg).is_err());
        r.plot = Some(Scatter {
            title: "t".into(),
            x_label: "|J| + |Γ(ε,L)|".into(),
            y_label: "distance".into(),
            points: vec![(1.0, 2.0), (3.0, 1.0)],
            connect: false,
        });
        let a = render(&r, Format::Svg).unwrap();
        assert_eq!(a, render(&r, Format::Svg).unwrap());
        assert!(a.contains("distance") && a.contains("|J| + |Γ(ε,L)|"));
        assert!(!a.contains("<script"));
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let err =
            emit_report(&sample(), Format::Csv, Path::new("/nonexistent-dir/x.csv")).unwrap_err();
        assert!(matches!(err, Error::Io(_)));
    }
}
