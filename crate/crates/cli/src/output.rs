//! JSON records written to standard output, with every number rounded to
//! 12 significant digits.

use ifsbound::{BoundReport, LineHits, Point};
use serde::Serialize;

/// `x` rounded to 12 significant digits; non-finite values pass through.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn sig12_all(xs: impl IntoIterator<Item = f64>) -> Vec<f64> {
    xs.into_iter().map(sig12).collect()
}

#[derive(Debug, Serialize)]
pub struct BoundRecord {
    pub method: &'static str,
    pub center: Vec<f64>,
    pub radius: f64,
    pub slack: Vec<f64>,
    pub lambda_star: f64,
    pub mu_star: f64,
    pub notes: Vec<String>,
}

impl BoundRecord {
    pub fn new<P: Point>(report: &BoundReport<P>) -> Self {
        let mut notes = report.notes.clone();
        if let Some(coarse) = report.coarse_radius {
            notes.push(format!("coarse radius {}", sig12(coarse)));
        }
        Self {
            method: report.method.as_str(),
            center: sig12_all(report.ball.center.coords()),
            radius: sig12(report.ball.radius),
            slack: sig12_all(report.slack.iter().copied()),
            lambda_star: sig12(report.lambda_star),
            mu_star: sig12(report.mu_star),
            notes,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyRecord {
    pub center: Vec<f64>,
    pub radius: f64,
    pub slack: Vec<f64>,
    pub contained: bool,
}

impl VerifyRecord {
    pub fn new<P: Point>(center: &P, radius: f64, slack: &[f64], contained: bool) -> Self {
        Self {
            center: sig12_all(center.coords()),
            radius: sig12(radius),
            slack: sig12_all(slack.iter().copied()),
            contained,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct IntervalRecord {
    pub intervals: Vec<[f64; 2]>,
    pub truncated: bool,
}

impl From<&LineHits> for IntervalRecord {
    fn from(hits: &LineHits) -> Self {
        Self {
            intervals: hits
                .intervals
                .iter()
                .map(|&(lo, hi)| [sig12(lo), sig12(hi)])
                .collect(),
            truncated: hits.truncated,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PointsRecord {
    pub points: Vec<Vec<f64>>,
}

impl PointsRecord {
    pub fn new<P: Point>(points: &[P]) -> Self {
        Self {
            points: points.iter().map(|p| sig12_all(p.coords())).collect(),
        }
    }
}

/// One compact JSON line.
pub fn to_line<T: Serialize>(record: &T) -> String {
    let mut s = serde_json::to_string(record).expect("records serialize");
    s.push('\n');
    s
}
