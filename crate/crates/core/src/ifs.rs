//! IFS data model: similitudes, systems of them, and the exact-membership
//! samplers every bound in the crate is checked against.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Rotation3, Unit, UnitQuaternion, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{Ball, Point, Point2, Point3};
use crate::rng::SplitMix64;

/// A contracting similitude `T(z) = p + λR(z - p)`.
pub trait Similitude: Copy + std::fmt::Debug + Send + Sync {
    type Point: Point;

    fn fixed_point(&self) -> Self::Point;

    /// Contraction factor λ in (0, 1).
    fn lambda(&self) -> f64;

    /// Operator norm of `I - λR`. In the plane this is `|1 - φ|`.
    fn mu(&self) -> f64;

    fn apply(&self, z: Self::Point) -> Self::Point;
}

/// Planar similitude `T(z) = p + φ(z - p)` with complex factor `φ = λe^{iθ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Similitude2 {
    p: Point2,
    phi: Complex64,
}

impl Similitude2 {
    pub fn new(p: Point2, phi: Complex64) -> Result<Self> {
        let lambda = phi.norm();
        if !(p.re.is_finite() && p.im.is_finite()) {
            return Err(Error::InvalidMap("fixed point is not finite".into()));
        }
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::InvalidMap(format!(
                "|phi| = {lambda} is outside (0, 1)"
            )));
        }
        Ok(Self { p, phi })
    }

    pub fn from_polar(p: Point2, lambda: f64, theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidMap("rotation angle is not finite".into()));
        }
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::InvalidMap(format!(
                "lambda = {lambda} is outside (0, 1)"
            )));
        }
        Self::new(p, Complex64::from_polar(lambda, theta))
    }

    pub fn phi(&self) -> Complex64 {
        self.phi
    }

    /// Rotation angle in (-π, π].
    pub fn theta(&self) -> f64 {
        let t = self.phi.arg();
        if t <= -PI {
            PI
        } else {
            t
        }
    }
}

impl Similitude for Similitude2 {
    type Point = Point2;

    fn fixed_point(&self) -> Point2 {
        self.p
    }

    fn lambda(&self) -> f64 {
        self.phi.norm()
    }

    fn mu(&self) -> f64 {
        (Complex64::new(1.0, 0.0) - self.phi).norm()
    }

    fn apply(&self, z: Point2) -> Point2 {
        self.p + self.phi * (z - self.p)
    }
}

/// Spatial similitude `T(z) = p + λR(z - p)` with a proper rotation `R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Similitude3 {
    p: Point3,
    lambda: f64,
    rotation: Rotation3<f64>,
}

const ORTHONORMAL_TOL: f64 = 1e-12;

impl Similitude3 {
    /// Builds the rotation from an axis and an angle in radians. The matrix
    /// is produced through a unit quaternion, so it is orthonormal to
    /// rounding.
    pub fn from_axis_angle(p: Point3, lambda: f64, axis: Vector3<f64>, angle: f64) -> Result<Self> {
        check_lambda(lambda)?;
        if !angle.is_finite() {
            return Err(Error::InvalidRotation("angle is not finite".into()));
        }
        let axis = Unit::try_new(axis, 1e-300)
            .filter(|a| a.iter().all(|c| c.is_finite()))
            .ok_or_else(|| {
                Error::InvalidRotation("rotation axis must be a nonzero vector".into())
            })?;
        let rotation = UnitQuaternion::from_axis_angle(&axis, angle).to_rotation_matrix();
        Self::checked(p, lambda, rotation)
    }

    /// Accepts a raw matrix only if it already is a proper rotation.
    pub fn from_matrix(p: Point3, lambda: f64, m: Matrix3<f64>) -> Result<Self> {
        check_lambda(lambda)?;
        if (m.determinant() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidRotation(format!(
                "determinant {} is not +1",
                m.determinant()
            )));
        }
        Self::checked(p, lambda, Rotation3::from_matrix_unchecked(m))
    }

    fn checked(p: Point3, lambda: f64, rotation: Rotation3<f64>) -> Result<Self> {
        if !p.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidMap("fixed point is not finite".into()));
        }
        let m = rotation.matrix();
        let defect = (m.transpose() * m - Matrix3::identity()).amax();
        if defect > ORTHONORMAL_TOL {
            return Err(Error::InvalidRotation(format!(
                "|R^T R - I|_max = {defect:e} exceeds {ORTHONORMAL_TOL:e}"
            )));
        }
        Ok(Self {
            p,
            lambda,
            rotation,
        })
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        self.rotation.matrix()
    }

    /// Rotation angle in [0, π], from the trace.
    pub fn angle(&self) -> f64 {
        cos_angle(self.rotation.matrix()).acos()
    }

    /// Axis and angle of the rotation, `None` for the identity.
    pub fn axis_angle(&self) -> Option<(Vector3<f64>, f64)> {
        self.rotation.axis_angle().map(|(a, t)| (a.into_inner(), t))
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidMap(format!(
            "lambda = {lambda} is outside (0, 1)"
        )))
    }
}

fn cos_angle(m: &Matrix3<f64>) -> f64 {
    ((m.trace() - 1.0) / 2.0).clamp(-1.0, 1.0)
}

impl Similitude for Similitude3 {
    type Point = Point3;

    fn fixed_point(&self) -> Point3 {
        self.p
    }

    fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `sqrt(1 + λ² - 2λ cos θ)`: `I - λR` acts on the rotation plane as
    /// `1 - λe^{iθ}` and on the axis as `1 - λ`, and the plane term dominates.
    fn mu(&self) -> f64 {
        let c = cos_angle(self.rotation.matrix()).min(1.0);
        let l = self.lambda;
        (1.0 + l * l - 2.0 * l * c).max(0.0).sqrt()
    }

    fn apply(&self, z: Point3) -> Point3 {
        self.p + self.rotation * (z - self.p) * self.lambda
    }
}

/// Spectral norm `‖I - λR‖` of a spatial similitude.
pub fn mu_norm(m: &Similitude3) -> f64 {
    m.mu()
}

/// An ordered, nonempty list of similitudes of one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct IfsSystem<S> {
    maps: Vec<S>,
}

pub type Ifs2 = IfsSystem<Similitude2>;
pub type Ifs3 = IfsSystem<Similitude3>;

impl<S: Similitude> IfsSystem<S> {
    pub fn new(maps: Vec<S>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::EmptySystem);
        }
        Ok(Self { maps })
    }

    pub fn maps(&self) -> &[S] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn fixed_points(&self) -> Vec<S::Point> {
        self.maps.iter().map(|m| m.fixed_point()).collect()
    }

    /// Largest contraction factor λ_*.
    pub fn lambda_star(&self) -> f64 {
        self.maps.iter().map(|m| m.lambda()).fold(0.0, f64::max)
    }

    /// Largest `‖I - λ_k R_k‖`, μ_*.
    pub fn mu_star(&self) -> f64 {
        self.maps.iter().map(|m| m.mu()).fold(0.0, f64::max)
    }
}

/// Image of a ball under a similitude: the ball `(T(c), λr)`.
pub fn apply_map_ball<S: Similitude>(m: &S, b: &Ball<S::Point>) -> Ball<S::Point> {
    Ball::new(m.apply(b.center), m.lambda() * b.radius)
}

/// All images `T_k(b)`, map index major, input order minor.
pub fn hutchinson_balls<S: Similitude>(
    ifs: &IfsSystem<S>,
    balls: &[Ball<S::Point>],
) -> Vec<Ball<S::Point>> {
    ifs.maps()
        .iter()
        .flat_map(|m| balls.iter().map(move |b| apply_map_ball(m, b)))
        .collect()
}

/// A finite address `w = w_1 … w_L` naming `T_w = T_{w_1} ∘ … ∘ T_{w_L}`.
///
/// Indices are zero-based map positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AddressWord(pub Vec<usize>);

impl AddressWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word `k·self`, i.e. `T_k ∘ T_self`.
    pub fn prepend(&self, k: usize) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(k);
        v.extend_from_slice(&self.0);
        Self(v)
    }

    /// The word `self·k`, i.e. `T_self ∘ T_k`.
    pub fn append(&self, k: usize) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(k);
        Self(v)
    }

    pub fn validate(&self, maps: usize) -> Result<()> {
        match self.0.iter().find(|&&k| k >= maps) {
            Some(&index) => Err(Error::IndexOutOfRange { index, maps }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for AddressWord {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

/// `T_w(z)` together with the accumulated factor `λ_w = ∏ λ_{w_i}`.
pub fn apply_word<S: Similitude>(
    ifs: &IfsSystem<S>,
    word: &AddressWord,
    z: S::Point,
) -> Result<(S::Point, f64)> {
    word.validate(ifs.len())?;
    let maps = ifs.maps();
    Ok(word.0.iter().rev().fold((z, 1.0), |(z, f), &k| {
        (maps[k].apply(z), f * maps[k].lambda())
    }))
}

/// Cap on enumerated nodes for the `n^L` word expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeBudget(pub usize);

impl Default for NodeBudget {
    fn default() -> Self {
        NodeBudget(1_000_000)
    }
}

impl NodeBudget {
    pub fn check(self, required: usize) -> Result<()> {
        if required > self.0 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// `n^depth * factor`, saturating.
pub(crate) fn expansion_size(n: usize, depth: usize, factor: usize) -> usize {
    let mut total = factor;
    for _ in 0..depth {
        total = total.saturating_mul(n);
    }
    total
}

/// Images `T_w(z)` and factors `λ_w` of `z` under every word of length
/// `depth`, ordered lexicographically by word.
pub fn word_images<S: Similitude>(
    ifs: &IfsSystem<S>,
    z: S::Point,
    depth: usize,
    budget: NodeBudget,
    exec: Exec,
) -> Result<Vec<(S::Point, f64)>> {
    let n = ifs.len();
    budget.check(expansion_size(n, depth, 1))?;
    let maps = ifs.maps();
    let mut level = vec![(z, 1.0)];
    // Prepending the outermost map index keeps the output in word order.
    for _ in 0..depth {
        let prev = &level;
        let len = prev.len();
        level = exec.map_range(n * len, |i| {
            let (k, j) = (i / len, i % len);
            let (p, f) = prev[j];
            (maps[k].apply(p), f * maps[k].lambda())
        });
    }
    Ok(level)
}

/// `{T_w(p_j) : |w| = depth, j = 1..n}`, all exact members of the
/// attractor. Ordered by word, then by fixed point.
pub fn address_points<S: Similitude>(
    ifs: &IfsSystem<S>,
    depth: usize,
    budget: NodeBudget,
    exec: Exec,
) -> Result<Vec<S::Point>> {
    let n = ifs.len();
    budget.check(expansion_size(n, depth, n))?;
    let maps = ifs.maps();
    let mut level = ifs.fixed_points();
    for _ in 0..depth {
        let prev = &level;
        let len = prev.len();
        level = exec.map_range(n * len, |i| maps[i / len].apply(prev[i % len]));
    }
    Ok(level)
}

/// Settings for [`chaos_game`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChaosConfig {
    /// Iterates discarded before output starts.
    pub burn_in: usize,
}

impl Default for ChaosConfig {
    fn default() -> Self {
        Self { burn_in: 20 }
    }
}

/// Random iteration toward the attractor.
///
/// Starts at `p_1`, then repeatedly applies the map `rng.below(n)` drawn
/// from [`SplitMix64`] seeded with `seed`. The first `burn_in` iterates are
/// dropped and the next `count` are returned. Since the start point lies in
/// the attractor, every output is in fact an exact member up to rounding.
pub fn chaos_game<S: Similitude>(
    ifs: &IfsSystem<S>,
    count: usize,
    seed: u64,
    config: ChaosConfig,
) -> Vec<S::Point> {
    let maps = ifs.maps();
    let mut rng = SplitMix64::new(seed);
    let mut z = maps[0].fixed_point();
    for _ in 0..config.burn_in {
        z = maps[rng.below(maps.len())].apply(z);
    }
    (0..count)
        .map(|_| {
            z = maps[rng.below(maps.len())].apply(z);
            z
        })
        .collect()
}
