//! Point abstraction shared by the planar and spatial code paths.
//!
//! Planar points are complex numbers, so a similitude is `p + φ(z - p)`
//! with a complex factor. Spatial points are `nalgebra` 3-vectors.

use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type Point2 = Complex64;
pub type Point3 = Vector3<f64>;

/// Euclidean point in two or three dimensions.
pub trait Point:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<f64, Output = Self>
{
    const DIM: usize;

    fn origin() -> Self;
    fn dot(&self, other: &Self) -> f64;
    fn coords(&self) -> Vec<f64>;
    fn from_coords(coords: &[f64]) -> Option<Self>;

    /// Center of the unique ball with `d + 1` affinely independent points
    /// on its boundary (3 in the plane, 4 in space). `None` when the points
    /// are degenerate.
    fn full_circumcenter(points: &[Self]) -> Option<Self>;

    fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    fn dist(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }

    fn is_finite(&self) -> bool {
        self.coords().iter().all(|c| c.is_finite())
    }

    fn midpoint(a: Self, b: Self) -> Self {
        a + (b - a) * 0.5
    }
}

impl Point for Point2 {
    const DIM: usize = 2;

    fn origin() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn dot(&self, other: &Self) -> f64 {
        self.re * other.re + self.im * other.im
    }

    fn norm(&self) -> f64 {
        // hypot avoids overflow and is what |z| means for complex numbers
        Complex64::norm(*self)
    }

    fn coords(&self) -> Vec<f64> {
        vec![self.re, self.im]
    }

    fn from_coords(coords: &[f64]) -> Option<Self> {
        match coords {
            [x, y] => Some(Complex64::new(*x, *y)),
            _ => None,
        }
    }

    fn full_circumcenter(points: &[Self]) -> Option<Self> {
        match points {
            [a, b, c] => circumcenter3(*a, *b, *c),
            _ => None,
        }
    }
}

impl Point for Point3 {
    const DIM: usize = 3;

    fn origin() -> Self {
        Vector3::zeros()
    }

    fn dot(&self, other: &Self) -> f64 {
        Vector3::dot(self, other)
    }

    fn coords(&self) -> Vec<f64> {
        vec![self.x, self.y, self.z]
    }

    fn from_coords(coords: &[f64]) -> Option<Self> {
        match coords {
            [x, y, z] => Some(Vector3::new(*x, *y, *z)),
            _ => None,
        }
    }

    fn full_circumcenter(points: &[Self]) -> Option<Self> {
        let [p0, p1, p2, p3] = points else {
            return None;
        };
        let (a, b, c) = (p1 - p0, p2 - p0, p3 - p0);
        let m = Matrix3::from_rows(&[a.transpose(), b.transpose(), c.transpose()]);
        let scale = a.norm() * b.norm() * c.norm();
        if scale == 0.0 || m.determinant().abs() <= 1e-12 * scale {
            return None;
        }
        let rhs = Vector3::new(a.norm_squared(), b.norm_squared(), c.norm_squared()) * 0.5;
        m.lu().solve(&rhs).map(|x| p0 + x)
    }
}

/// Circumcenter of three points in the plane they span, in any dimension.
///
/// Returns `None` for (near-)collinear input.
pub fn circumcenter3<P: Point>(p0: P, p1: P, p2: P) -> Option<P> {
    let a = p1 - p0;
    let b = p2 - p0;
    let aa = a.norm_sq();
    let bb = b.norm_sq();
    let ab = a.dot(&b);
    let gram = aa * bb - ab * ab;
    if gram <= 1e-14 * aa * bb || gram == 0.0 {
        return None;
    }
    let s = bb * (aa - ab) / (2.0 * gram);
    let t = aa * (bb - ab) / (2.0 * gram);
    Some(p0 + a * s + b * t)
}

/// Closed ball: a disk in the plane or a solid sphere in space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball<P> {
    pub center: P,
    pub radius: f64,
}

impl<P: Point> Ball<P> {
    /// Panics in debug builds on a negative radius.
    pub fn new(center: P, radius: f64) -> Self {
        debug_assert!(radius >= 0.0, "negative radius {radius}");
        Self { center, radius }
    }

    pub fn point(center: P) -> Self {
        Self::new(center, 0.0)
    }

    pub fn diametral(a: P, b: P) -> Self {
        Self::new(P::midpoint(a, b), 0.5 * a.dist(&b))
    }

    /// Membership with the crate-wide relative tolerance `tol * (1 + r)`.
    pub fn contains_with(&self, z: &P, tol: f64) -> bool {
        self.center.dist(z) <= self.radius + tol * (1.0 + self.radius)
    }

    pub fn contains(&self, z: &P) -> bool {
        self.contains_with(z, CONTAINMENT_TOL)
    }

    /// Signed excess `|z - c| - r`; positive means outside.
    pub fn excess(&self, z: &P) -> f64 {
        self.center.dist(z) - self.radius
    }
}

/// Relative containment tolerance, applied as `CONTAINMENT_TOL * (1 + r)`.
pub const CONTAINMENT_TOL: f64 = 1e-9;
