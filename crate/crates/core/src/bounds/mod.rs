//! Explicit bounding balls for IFS attractors.
//!
//! Every construction here is certified the same way: a ball `B` with
//! `T_k(B) ⊆ B` for all maps bounds the attractor. For a similitude that
//! inclusion reduces to one scalar inequality per map,
//! `μ_k |c - p_k| ≤ (1 - λ_k) r`, and [`verify_containment`] reports the
//! slack of each.

mod circum;
mod tighten;

pub use circum::{apply_m, circumcircle_bifractal, circumcircle_trifractal, MStep};
pub use tighten::tighten;

use serde::Serialize;

use crate::geometry::{Ball, Point, Point2, CONTAINMENT_TOL};
use crate::ifs::{Ifs2, IfsSystem, Similitude};
use crate::minball::{min_ball, radius_function};

/// Which construction produced a ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    General,
    GeneralArithmetic,
    GeneralHarmonic,
    CircumTri,
    CircumBi,
    Tightened,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::General => "general",
            Method::GeneralArithmetic => "general_arithmetic",
            Method::GeneralHarmonic => "general_harmonic",
            Method::CircumTri => "circum_tri",
            Method::CircumBi => "circum_bi",
            Method::Tightened => "tightened",
        }
    }
}

/// Center choice for [`general_bounding_ball`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CenterStrategy {
    /// Minimizer of ρ, the center of the fixed points' minimal ball.
    Optimal,
    Arithmetic,
    Harmonic,
    /// Whichever of the three gives the smallest ρ.
    #[default]
    Best,
}

/// A certified bounding ball and the quantities behind it.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport<P> {
    pub ball: Ball<P>,
    pub method: Method,
    /// `(1 - λ_k) r - μ_k |c - p_k|` per map.
    pub slack: Vec<f64>,
    pub lambda_star: f64,
    pub mu_star: f64,
    /// For tightening, the coarser radius `r' + λ_*^L r`.
    pub coarse_radius: Option<f64>,
    pub notes: Vec<String>,
}

impl<P: Point> BoundReport<P> {
    pub(crate) fn new<S: Similitude<Point = P>>(
        ifs: &IfsSystem<S>,
        ball: Ball<P>,
        method: Method,
    ) -> Self {
        Self {
            slack: verify_containment(ifs, &ball),
            ball,
            method,
            lambda_star: ifs.lambda_star(),
            mu_star: ifs.mu_star(),
            coarse_radius: None,
            notes: Vec::new(),
        }
    }

    pub fn min_slack(&self) -> f64 {
        self.slack.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// True when `T_k(B) ⊆ B` holds for every map, within tolerance.
    pub fn is_certified(&self) -> bool {
        slack_ok(self.min_slack(), self.ball.radius)
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

pub(crate) fn slack_ok(slack: f64, radius: f64) -> bool {
    slack >= -CONTAINMENT_TOL * (1.0 + radius)
}

/// Per-map containment slack `s_k = (1 - λ_k) r - μ_k |c - p_k|`.
///
/// All `s_k ≥ 0` is equivalent to `T_k(B) ⊆ B` for every map, which in
/// turn puts the whole attractor inside `B`.
pub fn verify_containment<S: Similitude>(ifs: &IfsSystem<S>, ball: &Ball<S::Point>) -> Vec<f64> {
    ifs.maps()
        .iter()
        .map(|m| (1.0 - m.lambda()) * ball.radius - m.mu() * ball.center.dist(&m.fixed_point()))
        .collect()
}

/// Arithmetic and harmonically weighted means of the fixed points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanCenters<P> {
    pub arithmetic: P,
    pub harmonic: P,
    /// Set when some ρ(p_k) vanished and `harmonic` is the arithmetic mean.
    pub harmonic_fallback: bool,
}

pub fn mean_centers<S: Similitude>(ifs: &IfsSystem<S>) -> MeanCenters<S::Point> {
    let points = ifs.fixed_points();
    let n = points.len() as f64;
    let arithmetic = points.iter().fold(S::Point::origin(), |acc, p| acc + *p) * (1.0 / n);

    let weights: Vec<f64> = points.iter().map(|p| radius_function(ifs, p)).collect();
    if weights.iter().any(|&w| w <= 0.0) {
        return MeanCenters {
            arithmetic,
            harmonic: arithmetic,
            harmonic_fallback: true,
        };
    }
    let total: f64 = weights.iter().map(|w| 1.0 / w).sum();
    let harmonic = points
        .iter()
        .zip(&weights)
        .fold(S::Point::origin(), |acc, (p, w)| acc + *p * (1.0 / w))
        * (1.0 / total);
    MeanCenters {
        arithmetic,
        harmonic,
        harmonic_fallback: false,
    }
}

/// `r(c) = μ_* ρ(c) / (1 - λ_*)`.
pub fn general_radius<S: Similitude>(ifs: &IfsSystem<S>, center: &S::Point) -> f64 {
    ifs.mu_star() * radius_function(ifs, center) / (1.0 - ifs.lambda_star())
}

/// The ball `(c, μ_* ρ(c) / (1 - λ_*))` for the chosen center.
///
/// With the optimal center this is the smallest ball of that radius
/// formula over all centers; it is not claimed to be the smallest ball
/// bounding the attractor.
pub fn general_bounding_ball<S: Similitude>(
    ifs: &IfsSystem<S>,
    strategy: CenterStrategy,
) -> BoundReport<S::Point> {
    let optimal = || -> S::Point {
        // Fixed points are finite by construction, so this cannot fail.
        min_ball(&ifs.fixed_points())
            .expect("fixed points are finite and nonempty")
            .0
            .center
    };
    let means = || mean_centers(ifs);

    let (center, method, fallback) = match strategy {
        CenterStrategy::Optimal => (optimal(), Method::General, false),
        CenterStrategy::Arithmetic => (means().arithmetic, Method::GeneralArithmetic, false),
        CenterStrategy::Harmonic => {
            let m = means();
            (m.harmonic, Method::GeneralHarmonic, m.harmonic_fallback)
        }
        CenterStrategy::Best => {
            let m = means();
            let candidates = [
                (optimal(), Method::General, false),
                (m.arithmetic, Method::GeneralArithmetic, false),
                (m.harmonic, Method::GeneralHarmonic, m.harmonic_fallback),
            ];
            // Strict comparison keeps the earliest candidate on ties.
            let mut best = candidates[0];
            let mut best_rho = radius_function(ifs, &best.0);
            for cand in &candidates[1..] {
                let rho = radius_function(ifs, &cand.0);
                if rho < best_rho {
                    best = *cand;
                    best_rho = rho;
                }
            }
            best
        }
    };

    let ball = Ball::new(center, general_radius(ifs, &center));
    let mut report = BoundReport::new(ifs, ball, method);
    if fallback {
        report = report
            .with_note("harmonic mean undefined (coincident fixed points); used arithmetic mean");
    }
    report
}

/// Smallest certified planar ball among the circumcircle (two or three
/// maps, when it exists) and the best general ball.
pub fn auto_bound(ifs: &Ifs2) -> BoundReport<Point2> {
    auto_bound_with(ifs, CenterStrategy::Best)
}

/// [`auto_bound`] with the general ball built from `strategy`.
pub fn auto_bound_with(ifs: &Ifs2, strategy: CenterStrategy) -> BoundReport<Point2> {
    let general = general_bounding_ball(ifs, strategy);
    let circum = match ifs.len() {
        2 => Some(circumcircle_bifractal(ifs)),
        3 => Some(circumcircle_trifractal(ifs)),
        _ => None,
    };
    match circum {
        None => general,
        Some(Err(e)) => general.with_note(format!(
            "circumcircle unavailable ({e}); fell back to general"
        )),
        Some(Ok(c)) if !c.is_certified() => {
            general.with_note("circumcircle failed verification; fell back to general")
        }
        Some(Ok(c)) if c.ball.radius <= general.ball.radius => c,
        Some(Ok(c)) => general.with_note(format!(
            "general ball is tighter than the circumcircle (r = {})",
            c.ball.radius
        )),
    }
}
