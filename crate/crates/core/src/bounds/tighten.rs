use super::{slack_ok, verify_containment, BoundReport, Method};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{Ball, Point};
use crate::ifs::{word_images, IfsSystem, NodeBudget, Similitude};
use crate::minball::min_ball;

/// Shrinks a bounding ball through `levels` Hutchinson iterations.
///
/// The attractor lies in the union of `T_w(B) = B(c_w, λ_w r)` over all
/// words of length `levels`. The new center `c'` is the minimal-ball center
/// of the `c_w`, and the radius is the exact cover
/// `max_w |c_w - c'| + λ_w r`, which never exceeds the coarser
/// `r' + λ_*^L r` (reported as `coarse_radius`). If the cover radius would
/// exceed `r`, the input ball is returned unchanged.
///
/// The result contains the attractor but need not map into itself, so its
/// slack list may be negative.
pub fn tighten<S: Similitude>(
    ifs: &IfsSystem<S>,
    ball: &Ball<S::Point>,
    levels: usize,
    budget: NodeBudget,
    exec: Exec,
) -> Result<BoundReport<S::Point>> {
    let worst = verify_containment(ifs, ball)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    if !slack_ok(worst, ball.radius) {
        return Err(Error::NotBounding { worst_slack: worst });
    }

    let images = word_images(ifs, ball.center, levels, budget, exec)?;
    let centers: Vec<S::Point> = images.iter().map(|(c, _)| *c).collect();
    let (inner, _) = min_ball(&centers)?;
    let c = inner.center;
    let r = ball.radius;
    let cover = exec.max_of(&images, |(cw, fw)| cw.dist(&c) + fw * r);
    let coarse = inner.radius + ifs.lambda_star().powi(levels as i32) * r;

    let mut report = if cover <= r {
        BoundReport::new(ifs, Ball::new(c, cover), Method::Tightened)
    } else {
        BoundReport::new(ifs, *ball, Method::Tightened)
            .with_note("cover radius exceeded the input radius; input ball kept")
    };
    report.coarse_radius = Some(coarse);
    if !report.is_certified() {
        report = report
            .with_note("contains the attractor via the level cover; T_k(B) ⊆ B does not hold");
    }
    Ok(report)
}
