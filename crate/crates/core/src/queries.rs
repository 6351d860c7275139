//! Fractal-line intersection by bounding-ball subdivision.
//!
//! Starting from a certified bound `B`, the tree of images `T_w(B)` is
//! refined breadth-first; the children of `T_w(B)` are the `T_w(T_k(B))`,
//! which cover the piece `T_w(F)`. A node whose ball misses the line is dropped: its
//! piece `T_w(F)` of the attractor misses it too. A node whose radius is at
//! most `eps` becomes a leaf and contributes the chord it cuts from the
//! line, widened by `eps`.

use crate::bounds::verify_containment;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{Ball, Point, CONTAINMENT_TOL};
use crate::ifs::{AddressWord, IfsSystem, NodeBudget, Similitude};

/// The line `a + t u` with unit direction `u`; `t` is arclength.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line<P> {
    anchor: P,
    dir: P,
}

impl<P: Point> Line<P> {
    /// Normalizes `dir`; fails when it is zero or not finite.
    pub fn new(anchor: P, dir: P) -> Result<Self> {
        let len = dir.norm();
        if !(len > 0.0 && len.is_finite() && anchor.is_finite()) {
            return Err(Error::InvalidArgument(
                "line needs a finite anchor and a nonzero direction".into(),
            ));
        }
        Ok(Self {
            anchor,
            dir: dir * (1.0 / len),
        })
    }

    pub fn anchor(&self) -> P {
        self.anchor
    }

    pub fn dir(&self) -> P {
        self.dir
    }

    pub fn at(&self, t: f64) -> P {
        self.anchor + self.dir * t
    }

    /// Parameter of the orthogonal projection of `z`.
    pub fn project(&self, z: &P) -> f64 {
        (*z - self.anchor).dot(&self.dir)
    }

    pub fn distance(&self, z: &P) -> f64 {
        let v = *z - self.anchor;
        (v - self.dir * v.dot(&self.dir)).norm()
    }
}

/// `max(0, dist(c, line) - r)`; zero iff the line meets the closed ball.
pub fn line_ball_distance<P: Point>(line: &Line<P>, ball: &Ball<P>) -> f64 {
    (line.distance(&ball.center) - ball.radius).max(0.0)
}

/// Parameter range contributed by one surviving leaf.
#[derive(Clone, Debug, PartialEq)]
pub struct HitInterval {
    pub t_lo: f64,
    pub t_hi: f64,
    pub word: AddressWord,
}

impl HitInterval {
    pub fn depth(&self) -> usize {
        self.word.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineHits {
    /// Leaf intervals sorted by `(t_lo, t_hi, word)`.
    pub leaves: Vec<HitInterval>,
    /// Union of the leaf intervals as disjoint sorted ranges.
    pub intervals: Vec<(f64, f64)>,
    /// The node budget ran out; unfinished nodes were emitted as leaves,
    /// so coverage still holds at a coarser resolution.
    pub truncated: bool,
    pub nodes_visited: usize,
}

impl LineHits {
    pub fn covers(&self, t: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo <= t && t <= hi)
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }
}

enum Fate {
    Pruned,
    Leaf,
    Split,
}

fn leaf_interval<P: Point>(
    line: &Line<P>,
    word: AddressWord,
    ball: &Ball<P>,
    eps: f64,
) -> HitInterval {
    let t0 = line.project(&ball.center);
    let d = line.distance(&ball.center);
    let h = (ball.radius * ball.radius - d * d).max(0.0).sqrt();
    HitInterval {
        t_lo: t0 - h - eps,
        t_hi: t0 + h + eps,
        word,
    }
}

/// Intervals of the line, at resolution `eps`, that hold every attractor
/// point on it. `bound` must satisfy the containment check. Balls are
/// pruned once their distance to the line exceeds `1e-9 (1 + r)`.
pub fn intersect_line<S: Similitude>(
    ifs: &IfsSystem<S>,
    line: &Line<S::Point>,
    eps: f64,
    bound: &Ball<S::Point>,
    budget: NodeBudget,
    exec: Exec,
) -> Result<LineHits> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let worst = verify_containment(ifs, bound)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    if worst < -CONTAINMENT_TOL * (1.0 + bound.radius) {
        return Err(Error::NotBounding { worst_slack: worst });
    }

    // Rounding can push a tangent line just outside a ball that touches it.
    let prune_tol = CONTAINMENT_TOL * (1.0 + bound.radius);
    let maps = ifs.maps();
    let n = maps.len();
    let mut frontier = vec![(AddressWord::empty(), *bound)];
    let mut leaves = Vec::new();
    let mut visited = 1usize;
    let mut truncated = false;

    while !frontier.is_empty() {
        let fates = exec.map_slice(&frontier, |(_, b)| {
            if line_ball_distance(line, b) > prune_tol {
                Fate::Pruned
            } else if b.radius <= eps {
                Fate::Leaf
            } else {
                Fate::Split
            }
        });

        let mut split = Vec::new();
        for ((word, ball), fate) in frontier.into_iter().zip(fates) {
            match fate {
                Fate::Pruned => {}
                Fate::Leaf => leaves.push(leaf_interval(line, word, &ball, eps)),
                Fate::Split => split.push((word, ball)),
            }
        }

        let children = split.len().saturating_mul(n);
        if visited.saturating_add(children) > budget.0 {
            truncated = true;
            leaves.extend(
                split
                    .into_iter()
                    .map(|(w, b)| leaf_interval(line, w, &b, eps)),
            );
            break;
        }
        visited += children;
        let parents = &split;
        frontier = exec.map_range(children, |i| {
            let word = parents[i / n].0.append(i % n);
            let (center, factor) = word.0.iter().rev().fold((bound.center, 1.0), |(z, f), &k| {
                (maps[k].apply(z), f * maps[k].lambda())
            });
            (word, Ball::new(center, factor * bound.radius))
        });
    }

    leaves.sort_by(|a, b| {
        a.t_lo
            .total_cmp(&b.t_lo)
            .then(a.t_hi.total_cmp(&b.t_hi))
            .then_with(|| a.word.cmp(&b.word))
    });
    let intervals = merge(&leaves);
    Ok(LineHits {
        leaves,
        intervals,
        truncated,
        nodes_visited: visited,
    })
}

fn merge(sorted: &[HitInterval]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for h in sorted {
        match out.last_mut() {
            Some(last) if h.t_lo <= last.1 => last.1 = last.1.max(h.t_hi),
            _ => out.push((h.t_lo, h.t_hi)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::{address_points, Ifs2, Similitude2};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cantor() -> Ifs2 {
        IfsSystem::new(vec![
            Similitude2::new(c(0.0, 0.0), c(1.0 / 3.0, 0.0)).unwrap(),
            Similitude2::new(c(1.0, 0.0), c(1.0 / 3.0, 0.0)).unwrap(),
        ])
        .unwrap()
    }

    fn horizontal(y: f64) -> Line<Complex64> {
        Line::new(c(0.0, y), c(1.0, 0.0)).unwrap()
    }

    #[test]
    fn distance_examples() {
        let b = Ball::new(c(0.5, 0.0), 0.5);
        assert_eq!(line_ball_distance(&horizontal(2.0), &b), 1.5);
        assert_eq!(line_ball_distance(&horizontal(0.0), &b), 0.0);
        assert_eq!(
            line_ball_distance(&horizontal(0.5), &Ball::new(c(0.0, 0.0), 0.5)),
            0.0
        );
    }

    #[test]
    fn direction_is_normalized() {
        let l = Line::new(c(1.0, 1.0), c(3.0, 4.0)).unwrap();
        assert!((l.dir().norm() - 1.0).abs() <= 1e-12);
        assert!(Line::new(c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn miss_is_pruned_at_root() {
        let bound = Ball::new(c(0.5, 0.0), 0.5);
        let hits = intersect_line(
            &cantor(),
            &horizontal(2.0),
            0.01,
            &bound,
            NodeBudget::default(),
            Exec::default(),
        )
        .unwrap();
        assert!(hits.intervals.is_empty());
        assert!(!hits.truncated);
        assert_eq!(hits.nodes_visited, 1);
    }

    #[test]
    fn cantor_axis_is_covered() {
        let bound = Ball::new(c(0.5, 0.0), 0.5);
        let eps = 1e-3;
        let hits = intersect_line(
            &cantor(),
            &horizontal(0.0),
            eps,
            &bound,
            NodeBudget::default(),
            Exec::default(),
        )
        .unwrap();
        assert!(!hits.truncated);
        assert!(hits.covers(0.0) && hits.covers(1.0));
        for z in address_points(&cantor(), 10, NodeBudget::default(), Exec::default()).unwrap() {
            assert!(hits.covers(z.re), "{} uncovered", z.re);
        }
        // 64 leaves of width 3^-6 + 2 eps, some merged
        assert!(hits.total_length() <= 64.0 * (1.0 / 729.0 + 2.0 * eps) + 1e-12);
        assert!(hits.total_length() >= (2.0f64 / 3.0).powi(6) - 1e-12);
        assert!(hits.leaves.iter().all(|h| h.depth() == 6));
        assert!(hits.intervals.windows(2).all(|w| w[0].1 < w[1].0));
    }

    #[test]
    fn rejects_non_bounding_ball() {
        let bad = Ball::new(c(0.5, 0.0), 0.4);
        let res = intersect_line(
            &cantor(),
            &horizontal(0.0),
            0.01,
            &bad,
            NodeBudget::default(),
            Exec::default(),
        );
        assert!(matches!(res, Err(Error::NotBounding { .. })));
        let res = intersect_line(
            &cantor(),
            &horizontal(0.0),
            0.0,
            &Ball::new(c(0.5, 0.0), 0.5),
            NodeBudget::default(),
            Exec::default(),
        );
        assert!(matches!(res, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn truncation_keeps_coverage() {
        let bound = Ball::new(c(0.5, 0.0), 0.5);
        let hits = intersect_line(
            &cantor(),
            &horizontal(0.0),
            1e-9,
            &bound,
            NodeBudget(100),
            Exec::default(),
        )
        .unwrap();
        assert!(hits.truncated);
        assert!(hits.nodes_visited <= 100);
        for z in address_points(&cantor(), 10, NodeBudget::default(), Exec::default()).unwrap() {
            assert!(hits.covers(z.re));
        }
    }

    #[test]
    fn tangent_line_hits_only_near_tangency() {
        // The Cantor set touches y = 0.5 nowhere; the bound is tangent at t = 0.5.
        let bound = Ball::new(c(0.5, 0.0), 0.5);
        let hits = intersect_line(
            &cantor(),
            &horizontal(0.5),
            0.01,
            &bound,
            NodeBudget::default(),
            Exec::default(),
        )
        .unwrap();
        assert!(hits
            .intervals
            .iter()
            .all(|&(lo, hi)| lo >= 0.5 - 0.02 && hi <= 0.5 + 0.02));
    }
}
