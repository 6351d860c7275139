//! Circumcircles of two- and three-map planar systems.
//!
//! Both are "Apollonian" circles: every map sends the circle to an
//! internally tangent one, so each containment slack is zero.

use num_complex::Complex64;

use super::{BoundReport, Method};
use crate::error::{Error, Result};
use crate::geometry::{Ball, Point, Point2, CONTAINMENT_TOL};
use crate::ifs::{Ifs2, Similitude};

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn dot(a: Complex64, b: Complex64) -> f64 {
    a.re * b.re + a.im * b.im
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Tangency residuals `|T_k(c) - c| + λ_k r - r`.
pub(crate) fn tangency_residuals(ifs: &Ifs2, ball: &Ball<Point2>) -> Vec<f64> {
    ifs.maps()
        .iter()
        .map(|m| m.apply(ball.center).dist(&ball.center) + m.lambda() * ball.radius - ball.radius)
        .collect()
}

/// Smallest circle with `|T_k(c) - c| + λ_k r = r` for all three maps.
///
/// Each condition is `|p_k - c| = α_k r` with `α_k = (1 - λ_k)/|1 - φ_k|`.
/// Eliminating between them gives `c = c₀ + c₁ r²` and a quadratic in r²,
/// of which the smaller positive root is taken.
pub fn circumcircle_trifractal(ifs: &Ifs2) -> Result<BoundReport<Point2>> {
    if ifs.len() != 3 {
        return Err(Error::WrongMapCount {
            expected: 3,
            actual: ifs.len(),
        });
    }
    let maps = ifs.maps();
    let p = [
        maps[0].fixed_point(),
        maps[1].fixed_point(),
        maps[2].fixed_point(),
    ];
    let alpha: Vec<f64> = maps.iter().map(|m| (1.0 - m.lambda()) / m.mu()).collect();
    let a2: Vec<f64> = alpha.iter().map(|a| a * a).collect();
    let m2: Vec<f64> = p.iter().map(|z| z.norm_sqr()).collect();

    let big_a = p[0] * (a2[2] - a2[1]) + p[1] * (a2[0] - a2[2]) + p[2] * (a2[1] - a2[0]);
    let big_b = p[0] * (m2[1] - m2[2]) + p[1] * (m2[2] - m2[0]) + p[2] * (m2[0] - m2[1]);
    let big_c = 2.0 * cross(p[1] - p[0], p[1] - p[2]);

    let scale = (p[1] - p[0]).norm() * (p[1] - p[2]).norm();
    if big_c == 0.0 || big_c.abs() <= 1e-14 * scale {
        return Err(Error::Collinear);
    }

    let c0 = big_b / (I * big_c);
    let r0 = (c0 - p[0]).norm();
    let c1 = big_a / (I * big_c);

    let (center, radius) = if big_a == Complex64::new(0.0, 0.0) {
        (c0, r0 / alpha[0])
    } else {
        let d = dot(c0, c1)
            + (a2[0] * cross(p[1], p[2]) + a2[1] * cross(p[2], p[0]) + a2[2] * cross(p[0], p[1]))
                / big_c;
        let c1_sq = c1.norm_sqr();
        let disc = d * d - c1_sq * r0 * r0;
        if disc < 0.0 {
            return Err(Error::NoRealCircumcircle(format!(
                "negative discriminant {disc:e}"
            )));
        }
        // Smaller root of |c1|² x² + 2D x + r0² = 0, written as r0²/(-D + √disc)
        // so it stays accurate when c1 is tiny.
        let denom = -d + disc.sqrt();
        if denom <= 0.0 {
            return Err(Error::NoRealCircumcircle(format!(
                "no positive root (D = {d:e})"
            )));
        }
        let r_sq = r0 * r0 / denom;
        (c0 + c1 * r_sq, r_sq.sqrt())
    };

    if !(radius.is_finite() && center.re.is_finite() && center.im.is_finite()) {
        return Err(Error::NoRealCircumcircle("non-finite solution".into()));
    }
    let ball = Ball::new(center, radius);
    let worst = tangency_residuals(ifs, &ball)
        .into_iter()
        .fold(0.0, |acc: f64, r| acc.max(r.abs()));
    if worst > CONTAINMENT_TOL * (1.0 + radius) {
        return Err(Error::NoRealCircumcircle(format!(
            "tangency residual {worst:e} too large"
        )));
    }
    Ok(BoundReport::new(ifs, ball, Method::CircumTri))
}

/// One step of the outer-tangent map for a two-map system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MStep {
    pub ball: Ball<Point2>,
    /// `T_1(c) = T_2(c)`: no tangent direction exists.
    pub degenerate: bool,
    /// One image disk contains the other; the outer tangent circle then
    /// does not cover the larger image.
    pub nested: bool,
}

/// Outer tangent circle of the two images `T_1(B)` and `T_2(B)`:
///
/// ```text
/// m1 = (T1(c) + T2(c))/2 + r (λ2 - λ1)/2 · u,   u = (T2(c) - T1(c)) / |T2(c) - T1(c)|
/// m2 = (λ1 + λ2)/2 · r + |T2(c) - T1(c)| / 2
/// ```
pub fn apply_m(ifs: &Ifs2, ball: &Ball<Point2>) -> Result<MStep> {
    let [m1, m2] = ifs.maps() else {
        return Err(Error::WrongMapCount {
            expected: 2,
            actual: ifs.len(),
        });
    };
    let (a, b) = (m1.apply(ball.center), m2.apply(ball.center));
    let (l1, l2) = (m1.lambda(), m2.lambda());
    let gap = (b - a).norm();
    if gap == 0.0 {
        return Ok(MStep {
            ball: Ball::new(a, l1.max(l2) * ball.radius),
            degenerate: true,
            nested: false,
        });
    }
    let u = (b - a) / gap;
    let r = ball.radius;
    Ok(MStep {
        ball: Ball::new(
            (a + b) * 0.5 + u * (r * (l2 - l1) / 2.0),
            (l1 + l2) / 2.0 * r + gap / 2.0,
        ),
        degenerate: false,
        nested: gap < (l1 - l2).abs() * r,
    })
}

/// Closed-form fixed circle of [`apply_m`].
///
/// With `λ = (λ1 + λ2)/2`, `ν = (λ2 - λ1)/(2(1 - λ))` and
/// `w1 = (1 - ν)(1 - φ1)`, `w2 = (1 + ν)(1 - φ2)`:
/// `c = (w1 p1 + w2 p2)/(w1 + w2)` and
/// `r = |1 - φ1||1 - φ2| |p2 - p1| / ((1 - λ)|w1 + w2|)`.
pub fn circumcircle_bifractal(ifs: &Ifs2) -> Result<BoundReport<Point2>> {
    let [t1, t2] = ifs.maps() else {
        return Err(Error::WrongMapCount {
            expected: 2,
            actual: ifs.len(),
        });
    };
    let (p1, p2) = (t1.fixed_point(), t2.fixed_point());
    if p1 == p2 {
        return Ok(BoundReport::new(ifs, Ball::point(p1), Method::CircumBi)
            .with_note("degenerate: coincident fixed points, attractor is a single point"));
    }
    let one = Complex64::new(1.0, 0.0);
    let (phi1, phi2) = (t1.phi(), t2.phi());
    let (l1, l2) = (t1.lambda(), t2.lambda());
    let lambda = (l1 + l2) / 2.0;
    let nu = (l2 - l1) / (2.0 * (1.0 - lambda));
    let w1 = (one - phi1) * (1.0 - nu);
    let w2 = (one - phi2) * (1.0 + nu);
    let den = w1 + w2;
    if den.norm() <= 1e-15 * (w1.norm() + w2.norm()) {
        return Err(Error::NoRealCircumcircle("zero denominator".into()));
    }
    let center = (w1 * p1 + w2 * p2) / den;
    let radius = (one - phi1).norm() * (one - phi2).norm() / ((1.0 - lambda) * den.norm())
        * (p2 - p1).norm();
    Ok(BoundReport::new(
        ifs,
        Ball::new(center, radius),
        Method::CircumBi,
    ))
}
