//! Planar primitives: points, directed lines, circles, tangents and
//! intersections, plus angle arithmetic on the unit circle.
//!
//! Everything is double precision. Incidence predicates take an explicit
//! tolerance; the `*_tol`-less helpers use a relative tolerance derived from
//! the magnitude of their inputs.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base tolerance for incidence predicates, scaled by the coordinate range.
pub const EPS: f64 = 1e-9;

/// Two unit directions whose cross product is below this are parallel.
pub const PARALLEL_TOL: f64 = 1e-12;

/// `EPS · max(1, scale)`.
pub fn scaled_eps(scale: f64) -> f64 {
    EPS * scale.abs().max(1.0)
}

/// Maps any finite angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Counter-clockwise distance from `from` to `to`, in `[0, 2π)`.
pub fn ccw_distance(from: f64, to: f64) -> f64 {
    normalize_angle(to - from)
}

/// Unit vector at angle `theta`.
#[inline]
pub fn unit(theta: f64) -> Point {
    let (s, c) = theta.sin_cos();
    Point::new(c, s)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product; positive when `o` is CCW of `self`.
    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Rotated by -90°, i.e. pointing to the right of `self`.
    #[inline]
    pub fn right_normal(self) -> Point {
        Point::new(self.y, -self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Polar angle of `p` seen from `origin`, CCW from the positive x-axis, in `[0, 2π)`.
pub fn polar_angle(p: Point, origin: Point) -> Result<f64> {
    let d = p - origin;
    if d.x == 0.0 && d.y == 0.0 {
        return Err(Error::DegenerateDirection);
    }
    Ok(normalize_angle(d.y.atan2(d.x)))
}

/// A line with an orientation. `direction` is a unit vector at `angle`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectedLine {
    pub anchor: Point,
    pub direction: Point,
    pub angle: f64,
}

impl DirectedLine {
    pub fn new(anchor: Point, angle: f64) -> Self {
        let angle = normalize_angle(angle);
        Self {
            anchor,
            direction: unit(angle),
            angle,
        }
    }

    /// The line from `a` towards `b`.
    pub fn through(a: Point, b: Point) -> Result<Self> {
        Ok(Self::new(a, polar_angle(b, a)?))
    }

    /// Vertical line `X = x`, pointing up.
    pub fn vertical(x: f64) -> Self {
        Self {
            anchor: Point::new(x, 0.0),
            direction: Point::new(0.0, 1.0),
            angle: PI / 2.0,
        }
    }

    pub fn horizontal(y: f64) -> Self {
        Self::new(Point::new(0.0, y), 0.0)
    }

    #[inline]
    pub fn point_at(&self, t: f64) -> Point {
        self.anchor + self.direction * t
    }

    /// Signed position of the projection of `p` along the line.
    #[inline]
    pub fn param_of(&self, p: Point) -> f64 {
        (p - self.anchor).dot(self.direction)
    }

    /// Signed distance of `p`; positive on the left of the direction.
    #[inline]
    pub fn side(&self, p: Point) -> f64 {
        self.direction.cross(p - self.anchor)
    }

    pub fn is_parallel(&self, other: &DirectedLine) -> bool {
        self.direction.cross(other.direction).abs() <= PARALLEL_TOL
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.anchor, self.angle + PI)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub const fn new(center: Point, radius: f64) -> Self {
        Self { center, radius }
    }
}

/// Outer tangent lines of two circles of equal radius, both oriented from
/// `c1` towards `c2`. The first returned line lies to the right of that
/// direction, the second to the left.
pub fn outer_tangents(c1: &Circle, c2: &Circle) -> Result<(DirectedLine, DirectedLine)> {
    let r = c1.radius;
    let scale = c1.radius.abs().max(c2.radius.abs()).max(1.0);
    if r <= 0.0 || (c1.radius - c2.radius).abs() > EPS * scale {
        return Err(Error::UnequalRadii);
    }
    let angle = polar_angle(c2.center, c1.center)?;
    let d = unit(angle);
    let n = d.right_normal();
    Ok((
        DirectedLine {
            anchor: c1.center + n * r,
            direction: d,
            angle,
        },
        DirectedLine {
            anchor: c1.center - n * r,
            direction: d,
            angle,
        },
    ))
}

/// Intersection point of two lines, or `None` when they are parallel.
pub fn line_line_intersection(a: &DirectedLine, b: &DirectedLine) -> Option<Point> {
    let denom = a.direction.cross(b.direction);
    if denom.abs() <= PARALLEL_TOL {
        return None;
    }
    let s = (b.anchor - a.anchor).cross(b.direction) / denom;
    Some(a.point_at(s))
}

fn magnitude(points: &[Point], r: f64) -> f64 {
    points
        .iter()
        .fold(r.abs(), |m, p| m.max(p.x.abs()).max(p.y.abs()))
}

/// Intersections of a line with a circle, ordered along the line's direction.
/// A tangency yields exactly one point.
pub fn line_circle_intersections(l: &DirectedLine, c: &Circle) -> ArrayVec<Point, 2> {
    let tol = scaled_eps(magnitude(&[l.anchor, c.center], c.radius));
    line_circle_intersections_tol(l, c, tol)
}

/// [`line_circle_intersections`] with an explicit tangency tolerance on the
/// center-to-line distance.
pub fn line_circle_intersections_tol(l: &DirectedLine, c: &Circle, tol: f64) -> ArrayVec<Point, 2> {
    let mut out = ArrayVec::new();
    let h = l.side(c.center);
    let foot_t = l.param_of(c.center);
    let gap = h.abs() - c.radius;
    if gap > tol {
        return out;
    }
    if gap.abs() <= tol {
        out.push(l.point_at(foot_t));
        return out;
    }
    let half = (c.radius * c.radius - h * h).max(0.0).sqrt();
    out.push(l.point_at(foot_t - half));
    out.push(l.point_at(foot_t + half));
    out
}

/// Intersections of two circles. Coincident circles report nothing.
pub fn circle_circle_intersections(c1: &Circle, c2: &Circle) -> ArrayVec<Point, 2> {
    let tol = scaled_eps(magnitude(&[c1.center, c2.center], c1.radius.max(c2.radius)));
    circle_circle_intersections_tol(c1, c2, tol)
}

pub fn circle_circle_intersections_tol(c1: &Circle, c2: &Circle, tol: f64) -> ArrayVec<Point, 2> {
    let mut out = ArrayVec::new();
    let delta = c2.center - c1.center;
    let d = delta.norm();
    if d == 0.0 {
        return out;
    }
    let (r1, r2) = (c1.radius, c2.radius);
    if d > r1 + r2 + tol || d < (r1 - r2).abs() - tol {
        return out;
    }
    let along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let dir = delta * (1.0 / d);
    let base = c1.center + dir * along;
    let h2 = r1 * r1 - along * along;
    if (d - (r1 + r2)).abs() <= tol || (d - (r1 - r2).abs()).abs() <= tol || h2 <= 0.0 {
        out.push(base);
        return out;
    }
    let h = h2.sqrt();
    let n = Point::new(-dir.y, dir.x);
    out.push(base + n * h);
    out.push(base - n * h);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    fn close_pt(p: Point, x: f64, y: f64) -> bool {
        (p.x - x).abs() < 1e-12 && (p.y - y).abs() < 1e-12
    }

    #[test]
    fn polar_angle_quadrants() {
        let o = Point::new(0.0, 0.0);
        assert!(close(polar_angle(Point::new(1.0, 1.0), o).unwrap(), PI / 4.0));
        assert!(close(polar_angle(Point::new(-1.0, 0.0), o).unwrap(), PI));
        assert!(close(polar_angle(Point::new(0.0, -2.0), o).unwrap(), 1.5 * PI));
        assert_eq!(polar_angle(o, o), Err(Error::DegenerateDirection));
    }

    #[test]
    fn normalize_never_returns_tau() {
        assert_eq!(normalize_angle(-1e-300), 0.0);
        assert!(close(normalize_angle(-PI / 2.0), 1.5 * PI));
        assert!(close(normalize_angle(5.0 * PI), PI));
    }

    #[test]
    fn tangents_of_horizontal_pair() {
        let a = Circle::new(Point::new(0.0, 0.0), 1.0);
        let b = Circle::new(Point::new(10.0, 0.0), 1.0);
        let (right, left) = outer_tangents(&a, &b).unwrap();
        assert!(close(right.anchor.y, -1.0) && close(right.direction.y, 0.0));
        assert!(close(left.anchor.y, 1.0));
        assert!(close(right.direction.x, 1.0));
    }

    #[test]
    fn tangents_of_vertical_pair() {
        let a = Circle::new(Point::new(0.0, 0.0), 1.0);
        let b = Circle::new(Point::new(0.0, 10.0), 1.0);
        let (right, left) = outer_tangents(&a, &b).unwrap();
        assert!(close(right.anchor.x, 1.0));
        assert!(close(left.anchor.x, -1.0));
    }

    #[test]
    fn tangents_are_at_radius_from_both_centers() {
        let a = Circle::new(Point::new(0.0, 0.0), 2.0);
        let b = Circle::new(Point::new(6.0, 8.0), 2.0);
        let (right, left) = outer_tangents(&a, &b).unwrap();
        for l in [right, left] {
            assert!(close(l.side(a.center).abs(), 2.0));
            assert!(close(l.side(b.center).abs(), 2.0));
        }
        // right of the direction (6,8)/10 means negative side
        assert!(close(right.side(a.center), 2.0));
        assert!(close(left.side(a.center), -2.0));
        // both parallel to 4x - 3y = 0
        assert!(close(right.direction.cross(Point::new(0.6, 0.8)), 0.0));
    }

    #[test]
    fn tangent_errors() {
        let a = Circle::new(Point::new(0.0, 0.0), 1.0);
        assert_eq!(outer_tangents(&a, &a), Err(Error::DegenerateDirection));
        let b = Circle::new(Point::new(3.0, 0.0), 2.0);
        assert_eq!(outer_tangents(&a, &b), Err(Error::UnequalRadii));
    }

    #[test]
    fn line_line_cases() {
        let p = line_line_intersection(&DirectedLine::horizontal(0.0), &DirectedLine::vertical(3.0)).unwrap();
        assert!(close_pt(p, 3.0, 0.0));
        assert!(line_line_intersection(&DirectedLine::horizontal(1.0), &DirectedLine::horizontal(2.0)).is_none());
        let diag = DirectedLine::new(Point::new(0.0, 0.0), PI / 4.0);
        let anti = DirectedLine::new(Point::new(0.0, 4.0), -PI / 4.0);
        let p = line_line_intersection(&diag, &anti).unwrap();
        assert!(close_pt(p, 2.0, 2.0));
    }

    #[test]
    fn line_circle_cases() {
        let c = Circle::new(Point::new(0.0, 0.0), 1.0);
        let two = line_circle_intersections(&DirectedLine::horizontal(0.0), &c);
        assert_eq!(two.len(), 2);
        assert!(close_pt(two[0], -1.0, 0.0) && close_pt(two[1], 1.0, 0.0));
        assert!(line_circle_intersections(&DirectedLine::horizontal(2.0), &c).is_empty());
        let one = line_circle_intersections(&DirectedLine::horizontal(1.0), &c);
        assert_eq!(one.len(), 1);
        assert!(close_pt(one[0], 0.0, 1.0));
        // order follows the direction
        let rev = line_circle_intersections(&DirectedLine::horizontal(0.0).reversed(), &c);
        assert!(close_pt(rev[0], 1.0, 0.0));
    }

    #[test]
    fn circle_circle_cases() {
        let a = Circle::new(Point::new(0.0, 0.0), 1.0);
        let touch = circle_circle_intersections(&a, &Circle::new(Point::new(2.0, 0.0), 1.0));
        assert_eq!(touch.len(), 1);
        assert!(close_pt(touch[0], 1.0, 0.0));
        let b = Circle::new(Point::new(1.0, 0.0), 1.0);
        let two = circle_circle_intersections(&a, &b);
        assert_eq!(two.len(), 2);
        for p in &two {
            assert!(close(p.x, 0.5) && close(p.y.abs(), 3f64.sqrt() / 2.0));
            assert!(close(p.dist(a.center), 1.0) && close(p.dist(b.center), 1.0));
        }
        assert!(circle_circle_intersections(&a, &Circle::new(Point::new(4.0, 0.0), 1.0)).is_empty());
    }
}
