//! Explicit bounding circles and spheres for attractors of similitude
//! iterated function systems.
//!
//! * [`bounds::general_bounding_ball`]: `(c, μ_* ρ(c) / (1 - λ_*))` for any
//!   number of maps, in the plane or in space.
//! * [`bounds::circumcircle_trifractal`] and [`bounds::circumcircle_bifractal`]:
//!   closed-form circles whose images are all internally tangent.
//! * [`bounds::tighten`]: refinement through a few Hutchinson levels.
//! * [`queries::intersect_line`]: attractor-line intersection by subdivision.
//!
//! Every ball is checked against [`bounds::verify_containment`], and the
//! tests compare against exact attractor points from [`ifs::address_points`].
//!
//! The word enumerations run on rayon when the `parallel` feature is on
//! (the default); see [`Exec`].

pub mod bounds;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod ifs;
pub mod minball;
pub mod queries;
pub mod render;
pub mod rng;

pub use bounds::{
    apply_m, auto_bound, auto_bound_with, circumcircle_bifractal, circumcircle_trifractal,
    general_bounding_ball, mean_centers, tighten, verify_containment, BoundReport, CenterStrategy,
    Method,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use geometry::{Ball, Point, Point2, Point3, CONTAINMENT_TOL};
pub use ifs::{
    address_points, apply_map_ball, apply_word, chaos_game, hutchinson_balls, mu_norm, AddressWord,
    ChaosConfig, Ifs2, Ifs3, IfsSystem, NodeBudget, Similitude, Similitude2, Similitude3,
};
pub use minball::{ball_from_support, min_ball, radius_function, SupportSet};
pub use queries::{intersect_line, line_ball_distance, HitInterval, Line, LineHits};
