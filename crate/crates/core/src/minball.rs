//! Smallest enclosing circle/sphere of a finite point set.
//!
//! Welzl's recursion with the move-to-front heuristic (Gärtner's variant),
//! run over a deterministically shuffled copy of the input. The result
//! carries its support set as an optimality certificate.

use crate::error::{Error, Result};
use crate::geometry::{circumcenter3, Ball, Point, CONTAINMENT_TOL};
use crate::ifs::{IfsSystem, Similitude};
use crate::rng::SplitMix64;

/// Seed for the input shuffle; fixed so results are reproducible.
const SHUFFLE_SEED: u64 = 0x5EED_0FC1_AC1E;

// Slack used inside the recursion to decide whether a point violates the
// current ball. Much tighter than CONTAINMENT_TOL so the certificate
// survives the final check.
const INNER_TOL: f64 = 1e-12;

/// Boundary points determining a minimal ball.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportSet<P> {
    pub points: Vec<P>,
}

/// ρ(z) = max_k |p_k - z|, the smallest radius of a ball centered at `z`
/// holding every fixed point.
pub fn radius_function<S: Similitude>(ifs: &IfsSystem<S>, z: &S::Point) -> f64 {
    max_distance(&ifs.fixed_points(), z)
}

pub(crate) fn max_distance<P: Point>(points: &[P], z: &P) -> f64 {
    points.iter().map(|p| p.dist(z)).fold(0.0, f64::max)
}

/// Ball of the given boundary points.
///
/// One point gives a zero ball, two the diametral ball, and `d + 1` points
/// their circumball. Three points in space give the circle through them.
/// Degenerate configurations fall back to the smallest ball covering them.
pub fn ball_from_support<P: Point>(points: &[P]) -> Ball<P> {
    match points {
        [] => Ball::point(P::origin()),
        [a] => Ball::point(*a),
        [a, b] => Ball::diametral(*a, *b),
        [a, b, c] => match circumcenter3(*a, *b, *c) {
            Some(o) => Ball::new(o, max_distance(points, &o)),
            None => farthest_pair_ball(points),
        },
        _ => match P::full_circumcenter(points) {
            Some(o) => Ball::new(o, max_distance(points, &o)),
            None => subset_cover(points),
        },
    }
}

fn farthest_pair_ball<P: Point>(points: &[P]) -> Ball<P> {
    let mut best = Ball::point(points[0]);
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let cand = Ball::diametral(*a, *b);
            if cand.radius > best.radius {
                best = cand;
            }
        }
    }
    best
}

// Smallest pair/triple ball covering every point of a small degenerate set.
fn subset_cover<P: Point>(points: &[P]) -> Ball<P> {
    let covers = |b: &Ball<P>| points.iter().all(|p| b.contains_with(p, INNER_TOL));
    let mut best: Option<Ball<P>> = None;
    let mut consider = |b: Ball<P>| {
        if covers(&b) && best.is_none_or(|cur| b.radius < cur.radius) {
            best = Some(b);
        }
    };
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            consider(Ball::diametral(points[i], points[j]));
            for k in j + 1..n {
                if let Some(o) = circumcenter3(points[i], points[j], points[k]) {
                    consider(Ball::new(o, o.dist(&points[i])));
                }
            }
        }
    }
    best.unwrap_or_else(|| farthest_pair_ball(points))
}

/// Smallest ball holding every point, with its support set.
pub fn min_ball<P: Point>(points: &[P]) -> Result<(Ball<P>, SupportSet<P>)> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite(i));
    }

    let mut order: Vec<usize> = (0..points.len()).collect();
    SplitMix64::new(SHUFFLE_SEED).shuffle(&mut order);
    let mut list: Vec<P> = order.iter().map(|&i| points[i]).collect();

    let mut support = Vec::with_capacity(P::DIM + 1);
    let end = list.len();
    let (ball, support) = mtf(&mut list, end, &mut support);
    let ball = ball.expect("nonempty input yields a ball");
    Ok((
        ball,
        SupportSet {
            points: prune_support(support),
        },
    ))
}

/// Gärtner's move-to-front recursion: smallest ball holding `list[..end]`
/// with every point of `support` on its boundary. Returns the ball and the
/// boundary set that produced it; `None` stands for the empty ball.
fn mtf<P: Point>(list: &mut Vec<P>, end: usize, support: &mut Vec<P>) -> (Option<Ball<P>>, Vec<P>) {
    let mut best = if support.is_empty() {
        None
    } else {
        Some(ball_from_support(support))
    };
    let mut best_support = support.clone();
    if support.len() == P::DIM + 1 {
        return (best, best_support);
    }
    for i in 0..end {
        let p = list[i];
        let outside = match &best {
            None => true,
            Some(b) => b.excess(&p) > INNER_TOL * (1.0 + b.radius),
        };
        if outside {
            support.push(p);
            let (b, s) = mtf(list, i, support);
            support.pop();
            best = b;
            best_support = s;
            let moved = list.remove(i);
            list.insert(0, moved);
        }
    }
    (best, best_support)
}

// Drop support points whose removal does not shrink the ball.
fn prune_support<P: Point>(mut support: Vec<P>) -> Vec<P> {
    let mut i = 0;
    while support.len() > 1 && i < support.len() {
        let full = brute_cover(&support).radius;
        let mut rest = support.clone();
        rest.remove(i);
        if brute_cover(&rest).radius >= full - 1e-12 * (1.0 + full) {
            support = rest;
            i = 0;
        } else {
            i += 1;
        }
    }
    support
}

// Minimal covering ball of at most d+1 points by candidate enumeration.
fn brute_cover<P: Point>(points: &[P]) -> Ball<P> {
    if points.len() == 1 {
        return Ball::point(points[0]);
    }
    let covers = |b: &Ball<P>| points.iter().all(|p| b.contains_with(p, INNER_TOL));
    let mut best = ball_from_support(points);
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            let b = Ball::diametral(points[i], points[j]);
            if covers(&b) && b.radius < best.radius {
                best = b;
            }
            for k in j + 1..n {
                let b = ball_from_support(&[points[i], points[j], points[k]]);
                if covers(&b) && b.radius < best.radius {
                    best = b;
                }
            }
        }
    }
    best
}

/// Checks every point is within `CONTAINMENT_TOL * (1 + r)` of the ball.
pub fn covers_all<P: Point>(ball: &Ball<P>, points: &[P]) -> bool {
    points
        .iter()
        .all(|p| ball.contains_with(p, CONTAINMENT_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::Similitude2;
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector3;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ifs_with_points(points: &[Complex64]) -> IfsSystem<Similitude2> {
        IfsSystem::new(
            points
                .iter()
                .map(|p| Similitude2::new(*p, c(0.5, 0.0)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn radius_function_examples() {
        let cantor = ifs_with_points(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(radius_function(&cantor, &c(0.0, 0.0)), 1.0);
        assert_eq!(radius_function(&cantor, &c(0.5, 0.0)), 0.5);
        let tri = ifs_with_points(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);
        assert_eq!(radius_function(&tri, &c(0.0, 0.0)), 1.0);
    }

    #[test]
    fn support_ball_examples() {
        let b = ball_from_support(&[c(0.3, 0.2)]);
        assert_eq!((b.center, b.radius), (c(0.3, 0.2), 0.0));
        let b = ball_from_support(&[c(0.0, 0.0), c(2.0, 0.0)]);
        assert_eq!((b.center, b.radius), (c(1.0, 0.0), 1.0));
        let b = ball_from_support(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);
        assert_abs_diff_eq!(b.center.re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(b.center.im, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(b.radius, 0.5f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn collinear_support_falls_back_to_widest_pair() {
        let b = ball_from_support(&[c(0.0, 0.0), c(3.0, 0.0), c(1.0, 0.0)]);
        assert_eq!((b.center, b.radius), (c(1.5, 0.0), 1.5));
        let flat = [
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(2.0, 0.0, 0.0),
            Vector3::new(0.0, 2.0, 0.0),
            Vector3::new(1.0, 1.0, 0.0),
        ];
        let b = ball_from_support(&flat);
        assert!(flat.iter().all(|p| b.contains(p)));
        assert_abs_diff_eq!(b.radius, 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn min_ball_examples() {
        let (b, _) = min_ball(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!((b.center, b.radius), (c(0.5, 0.0), 0.5));

        let (b, s) = min_ball(&[c(0.0, 0.0), c(2.0, 0.0), c(1.0, 0.5)]).unwrap();
        assert_abs_diff_eq!(b.center.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b.center.im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b.radius, 1.0, epsilon = 1e-15);
        assert_eq!(s.points.len(), 2);

        let h = 3f64.sqrt() / 2.0;
        let (b, s) = min_ball(&[c(0.0, 0.0), c(1.0, 0.0), c(0.5, h)]).unwrap();
        assert_abs_diff_eq!(b.center.re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(b.center.im, 0.288675134594813, epsilon = 1e-12);
        assert_abs_diff_eq!(b.radius, 0.577350269189626, epsilon = 1e-12);
        assert_eq!(s.points.len(), 3);
    }

    #[test]
    fn min_ball_errors() {
        assert_eq!(min_ball::<Complex64>(&[]), Err(Error::EmptyPointSet));
        assert_eq!(
            min_ball(&[c(0.0, 0.0), c(f64::NAN, 0.0)]),
            Err(Error::NonFinite(1))
        );
    }

    #[test]
    fn duplicate_points() {
        let pts = vec![c(0.25, -1.0); 17];
        let (b, s) = min_ball(&pts).unwrap();
        assert_eq!((b.center, b.radius), (c(0.25, -1.0), 0.0));
        assert_eq!(s.points.len(), 1);
    }

    #[test]
    fn regular_tetrahedron() {
        let pts = [
            Vector3::new(1.0, 1.0, 1.0),
            Vector3::new(1.0, -1.0, -1.0),
            Vector3::new(-1.0, 1.0, -1.0),
            Vector3::new(-1.0, -1.0, 1.0),
            Vector3::new(0.1, 0.2, -0.3),
        ];
        let (b, s) = min_ball(&pts).unwrap();
        assert_abs_diff_eq!(b.center.norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.radius, 3f64.sqrt(), epsilon = 1e-12);
        assert_eq!(s.points.len(), 4);
    }

    fn arb_cloud() -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 1..200)
            .prop_map(|v| v.into_iter().map(|(x, y)| c(x, y)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn covers_and_certifies(pts in arb_cloud()) {
            let (b, s) = min_ball(&pts).unwrap();
            prop_assert!(covers_all(&b, &pts));
            for p in &s.points {
                prop_assert!((b.center.dist(p) - b.radius).abs() <= 1e-9 * (1.0 + b.radius));
            }
            let again = min_ball(&pts).unwrap().0;
            prop_assert_eq!(b.center.re.to_bits(), again.center.re.to_bits());
            prop_assert_eq!(b.center.im.to_bits(), again.center.im.to_bits());
            prop_assert_eq!(b.radius.to_bits(), again.radius.to_bits());
            if s.points.len() > 1 {
                for i in 0..s.points.len() {
                    let mut rest = s.points.clone();
                    rest.remove(i);
                    prop_assert!(min_ball(&rest).unwrap().0.radius < b.radius);
                }
            }
        }

        #[test]
        fn radius_function_is_convex(
            pts in arb_cloud(),
            a in (-10.0..10.0f64, -10.0..10.0f64),
            z in (-10.0..10.0f64, -10.0..10.0f64),
            t in 0.0..=1.0f64,
        ) {
            let ifs = ifs_with_points(&pts);
            let (z1, z2) = (c(a.0, a.1), c(z.0, z.1));
            let mid = z1 * t + z2 * (1.0 - t);
            let lhs = radius_function(&ifs, &mid);
            let rhs = t * radius_function(&ifs, &z1) + (1.0 - t) * radius_function(&ifs, &z2);
            prop_assert!(lhs <= rhs + 1e-12);
        }
    }
}
