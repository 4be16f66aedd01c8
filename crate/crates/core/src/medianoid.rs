//! The follower's best response to a fixed leader: the weight loss `W*(x)`,
//! the maximizing angle set MA(x), its covering interval CA(x) and the
//! wedge of points that cannot do better than `x`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{ccw_distance, normalize_angle, polar_angle, unit, DirectedLine, Point};
use crate::instance::{Customer, Instance};

/// Angular slack used when comparing arc endpoints and wedge directions.
pub const ANGLE_TOL: f64 = 1e-9;

/// An open arc `(begin, begin + length)` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpenArc {
    pub begin: f64,
    pub length: f64,
}

impl OpenArc {
    pub fn new(begin: f64, length: f64) -> Self {
        Self {
            begin: normalize_angle(begin),
            length,
        }
    }

    pub fn end(&self) -> f64 {
        normalize_angle(self.begin + self.length)
    }

    pub fn midpoint(&self) -> f64 {
        normalize_angle(self.begin + 0.5 * self.length)
    }

    pub fn contains(&self, theta: f64) -> bool {
        if self.length >= TAU {
            return true;
        }
        let d = ccw_distance(self.begin, theta);
        d > 0.0 && d < self.length
    }

    pub fn is_full(&self) -> bool {
        self.length >= TAU
    }
}

/// Maximizing arcs in CCW order together with the weight they attain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcSet {
    pub arcs: Vec<OpenArc>,
    pub attained_weight: f64,
}

impl ArcSet {
    pub fn is_full_circle(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].is_full()
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(theta))
    }
}

/// Minimal closed interval `[begin, end]` (CCW) covering every maximizing arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoveringInterval {
    pub begin: f64,
    pub end: f64,
    pub span: f64,
}

impl CoveringInterval {
    /// Whether `theta` lies in the closed interval.
    pub fn contains(&self, theta: f64) -> bool {
        ccw_distance(self.begin, theta) <= self.span
    }

    pub fn midpoint(&self) -> f64 {
        normalize_angle(self.begin + 0.5 * self.span)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WedgeDirection {
    Upward,
    Downward,
    SidewardRight,
    SidewardLeft,
}

impl WedgeDirection {
    pub fn is_sideward(self) -> bool {
        matches!(self, Self::SidewardRight | Self::SidewardLeft)
    }
}

/// `{p : (p−apex)·u(θ_b) ≥ 0 and (p−apex)·u(θ_e) ≥ 0}` where `[θ_b, θ_e]`
/// is the covering interval. Points outside it lose at least as much
/// weight as the apex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wedge {
    pub apex: Point,
    pub begin: f64,
    pub end: f64,
    /// Angular width of the wedge, `π − δ(CA)`.
    pub ccw_span: f64,
    /// Direction relative to the vertical line through the apex.
    pub classification: WedgeDirection,
}

impl Wedge {
    pub fn from_covering(apex: Point, ca: &CoveringInterval) -> Self {
        let mut w = Self {
            apex,
            begin: ca.begin,
            end: ca.end,
            ccw_span: (PI - ca.span).max(0.0),
            classification: WedgeDirection::Upward,
        };
        w.classification = w.direction_relative(FRAC_PI_2);
        w
    }

    /// Directions `(start, length)` of the rays from the apex that stay in the wedge.
    pub fn direction_arc(&self) -> (f64, f64) {
        (normalize_angle(self.end - FRAC_PI_2), self.ccw_span)
    }

    /// Central direction of the wedge.
    pub fn bisector(&self) -> f64 {
        let (s, l) = self.direction_arc();
        normalize_angle(s + 0.5 * l)
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        let d = p - self.apex;
        d.dot(unit(self.begin)) >= -tol && d.dot(unit(self.end)) >= -tol
    }

    /// Classifies the wedge against a line through the apex whose "up"
    /// direction has angle `up`. Boundary cases resolve to up/down, which
    /// keeps the corresponding ray inside the wedge.
    pub fn direction_relative(&self, up: f64) -> WedgeDirection {
        let (s, l) = self.direction_arc();
        let inside = |a: f64| {
            let d = ccw_distance(s, a);
            d <= l + ANGLE_TOL || d >= TAU - ANGLE_TOL
        };
        if inside(up) {
            WedgeDirection::Upward
        } else if inside(up + PI) {
            WedgeDirection::Downward
        } else if (self.bisector() - (up - FRAC_PI_2)).cos() > 0.0 {
            WedgeDirection::SidewardRight
        } else {
            WedgeDirection::SidewardLeft
        }
    }

    pub fn direction_on_line(&self, line: &DirectedLine) -> WedgeDirection {
        self.direction_relative(line.angle)
    }
}

/// Direction of `w` on the vertical line through its apex.
pub fn classify_wedge_on_vertical(w: &Wedge) -> WedgeDirection {
    w.direction_relative(FRAC_PI_2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MedianoidResult {
    pub weight_loss: f64,
    pub witness_angle: f64,
    pub ma: ArcSet,
    pub ca: Option<CoveringInterval>,
    pub wedge: Option<Wedge>,
    pub strong_centroid: bool,
}

impl MedianoidResult {
    /// Wedge direction relative to a line with up-angle `up`, or `None` at a
    /// strong centroid.
    pub fn direction(&self, up: f64) -> Option<WedgeDirection> {
        self.wedge.as_ref().map(|w| w.direction_relative(up))
    }
}

/// Open arc of follower angles that capture `v` against a leader at `x`,
/// with the strict test `(v−x)·u(θ) > R/2`.
pub fn capture_arc(v: &Customer, x: Point, separation: f64) -> Option<OpenArc> {
    capture_arc_at(v.site, x, 0.5 * separation)
}

pub(crate) fn capture_arc_at(v: Point, x: Point, threshold: f64) -> Option<OpenArc> {
    let d = v.dist(x);
    if d <= threshold {
        return None;
    }
    let phi = (threshold / d).acos();
    let center = polar_angle(v, x).ok()?;
    Some(OpenArc::new(center - phi, 2.0 * phi))
}

/// Projection a customer must exceed to be captured. The tolerance sends
/// near-ties to the leader.
pub(crate) fn capture_threshold(inst: &Instance) -> f64 {
    inst.half_separation() + inst.eps()
}

/// `W(x, θ)` by direct summation.
pub fn weight_at_angle(inst: &Instance, x: Point, theta: f64) -> f64 {
    weight_at_angle_with(inst, x, theta, capture_threshold(inst))
}

pub(crate) fn weight_at_angle_with(inst: &Instance, x: Point, theta: f64, threshold: f64) -> f64 {
    let u = unit(theta);
    inst.customers()
        .iter()
        .filter(|c| (c.site - x).dot(u) > threshold)
        .map(|c| c.weight)
        .sum()
}

/// Capture arcs at `x` under the instance threshold.
pub(crate) fn capture_arcs(inst: &Instance, x: Point) -> Vec<(OpenArc, f64)> {
    let t = capture_threshold(inst);
    inst.customers()
        .iter()
        .filter_map(|c| capture_arc_at(c.site, x, t).map(|a| (a, c.weight)))
        .collect()
}

/// Sorted distinct endpoint angles of a set of arcs.
pub(crate) fn event_angles(arcs: &[(OpenArc, f64)]) -> Vec<f64> {
    let mut a: Vec<f64> = arcs.iter().flat_map(|(arc, _)| [arc.begin, arc.end()]).collect();
    a.sort_by(f64::total_cmp);
    a.dedup();
    a
}

/// Angle sweep in O(n log n).
pub fn solve_medianoid(inst: &Instance, x: Point) -> Result<MedianoidResult> {
    inst.require_positive_separation()?;
    let arcs = capture_arcs(inst, x);
    if arcs.is_empty() {
        return Ok(MedianoidResult {
            weight_loss: 0.0,
            witness_angle: 0.0,
            ma: ArcSet {
                arcs: vec![OpenArc::new(0.0, TAU)],
                attained_weight: 0.0,
            },
            ca: None,
            wedge: None,
            strong_centroid: true,
        });
    }

    let mut events: Vec<(f64, f64)> = Vec::with_capacity(2 * arcs.len());
    for (arc, w) in &arcs {
        events.push((arc.begin, *w));
        events.push((arc.end(), -*w));
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    let angles = event_angles(&arcs);
    let k = angles.len();

    // weight on the interval that wraps through angle 0
    let last = angles[k - 1];
    let wrap_mid = if k == 1 {
        normalize_angle(last + PI)
    } else {
        normalize_angle(last + 0.5 * ccw_distance(last, angles[0]))
    };
    let mut weight = arcs
        .iter()
        .filter(|(a, _)| a.contains(wrap_mid))
        .map(|(_, w)| *w)
        .sum::<f64>();

    // plateau i is the open interval (angles[i], angles[i+1]), cyclically
    let mut plateau = Vec::with_capacity(k);
    let mut e = 0;
    for &a in &angles {
        while e < events.len() && events[e].0 == a {
            weight += events[e].1;
            e += 1;
        }
        plateau.push(weight);
    }
    let total = inst.total_weight();
    let best = plateau.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let wtol = 1e-12 * total;

    let mut ma = Vec::new();
    for i in 0..k {
        if plateau[i] >= best - wtol {
            let b = angles[i];
            let len = if k == 1 { TAU } else { ccw_distance(b, angles[(i + 1) % k]) };
            ma.push(OpenArc { begin: b, length: len });
        }
    }
    let witness_angle = ma[0].midpoint();
    let weight_loss = best.max(0.0);

    let ca = covering_interval(&ma);
    let strong = ca.span > PI + ANGLE_TOL;
    let wedge = (!strong).then(|| Wedge::from_covering(x, &ca));
    Ok(MedianoidResult {
        weight_loss,
        witness_angle,
        ma: ArcSet {
            arcs: ma,
            attained_weight: weight_loss,
        },
        ca: Some(ca),
        wedge,
        strong_centroid: strong,
    })
}

/// Complement of the largest gap between consecutive arcs; ties go to the
/// smallest begin angle.
fn covering_interval(ma: &[OpenArc]) -> CoveringInterval {
    if ma.len() == 1 {
        let a = ma[0];
        return CoveringInterval {
            begin: a.begin,
            end: a.end(),
            span: a.length,
        };
    }
    let m = ma.len();
    let mut best: Option<(f64, f64, usize)> = None;
    for i in 0..m {
        let next = (i + 1) % m;
        let gap = ccw_distance(ma[i].end(), ma[next].begin);
        let begin = ma[next].begin;
        let better = match best {
            None => true,
            Some((g, b, _)) => gap > g || (gap == g && begin < b),
        };
        if better {
            best = Some((gap, begin, i));
        }
    }
    let (gap, begin, i) = best.expect("at least two arcs");
    CoveringInterval {
        begin,
        end: ma[i].end(),
        span: TAU - gap,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Customer;

    fn inst(cs: &[(f64, f64, f64)], r: f64) -> Instance {
        Instance::new(cs.iter().map(|&(x, y, w)| Customer::new(x, y, w)).collect(), r).unwrap()
    }

    fn strict_oracle(v: Point, x: Point, r: f64, theta: f64) -> bool {
        (v - x).dot(unit(theta)) > r
    }

    #[test]
    fn capture_arc_examples() {
        let o = Point::new(0.0, 0.0);
        let arc = capture_arc(&Customer::new(2.0, 0.0, 1.0), o, 2.0).unwrap();
        assert!((arc.length - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((ccw_distance(arc.begin, 5.0 * PI / 3.0)).min(TAU - ccw_distance(arc.begin, 5.0 * PI / 3.0)) < 1e-12);
        for k in 0..360 {
            let th = k as f64 * TAU / 360.0 + 0.001;
            assert_eq!(arc.contains(th), strict_oracle(Point::new(2.0, 0.0), o, 1.0, th), "{th}");
        }
        assert!(capture_arc(&Customer::new(1.0, 0.0, 1.0), o, 2.0).is_none());
        let arc = capture_arc(&Customer::new(0.0, 5.0, 1.0), o, 2.0).unwrap();
        assert!((arc.midpoint() - FRAC_PI_2).abs() < 1e-12);
        assert!((arc.length - 2.0 * 0.2f64.acos()).abs() < 1e-12);
        assert!(capture_arc(&Customer::new(0.0, 0.0, 1.0), o, 2.0).is_none());
    }

    #[test]
    fn weight_at_angle_examples() {
        let o = Point::new(0.0, 0.0);
        let one = inst(&[(2.0, 0.0, 5.0)], 2.0);
        assert_eq!(weight_at_angle(&one, o, 0.0), 5.0);
        assert_eq!(weight_at_angle(&one, o, PI), 0.0);
        let two = inst(&[(10.0, 0.0, 3.0), (-10.0, 1.0, 4.0)], 2.0);
        assert_eq!(weight_at_angle(&two, o, 0.0), 3.0);
        assert_eq!(weight_at_angle(&two, o, PI), 4.0);
    }

    #[test]
    fn single_customer_sweep() {
        let one = inst(&[(3.0, 0.0, 5.0)], 2.0);
        let res = solve_medianoid(&one, Point::new(0.0, 0.0)).unwrap();
        assert_eq!(res.weight_loss, 5.0);
        assert_eq!(res.ma.arcs.len(), 1);
        assert!(res.ma.contains(0.0));
        assert!(!res.strong_centroid);
        let w = res.wedge.unwrap();
        // CA straddles 0, so the wedge opens towards the customer
        assert_eq!(w.classification, WedgeDirection::SidewardRight);
    }

    #[test]
    fn nothing_capturable() {
        let one = inst(&[(0.5, 0.0, 5.0)], 2.0);
        let res = solve_medianoid(&one, Point::new(0.0, 0.0)).unwrap();
        assert_eq!(res.weight_loss, 0.0);
        assert!(res.ma.is_full_circle());
        assert!(res.ca.is_none() && res.wedge.is_none() && res.strong_centroid);
    }

    #[test]
    fn zero_separation_is_unsupported() {
        let one = inst(&[(0.5, 0.0, 5.0)], 0.0);
        assert!(solve_medianoid(&one, Point::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn two_opposite_customers_give_strong_centroid() {
        let two = inst(&[(10.0, 0.0, 1.0), (-10.0, 1.0, 1.0)], 2.0);
        let res = solve_medianoid(&two, Point::new(0.0, 0.5)).unwrap();
        assert_eq!(res.weight_loss, 1.0);
        assert_eq!(res.ma.arcs.len(), 2);
        assert!(res.strong_centroid);
    }

    fn ca(begin: f64, end: f64) -> CoveringInterval {
        CoveringInterval {
            begin: normalize_angle(begin),
            end: normalize_angle(end),
            span: ccw_distance(begin, end),
        }
    }

    #[test]
    fn property_one_classification() {
        let o = Point::new(0.0, 0.0);
        let up = Wedge::from_covering(o, &ca(PI / 4.0, 3.0 * PI / 4.0));
        assert_eq!(classify_wedge_on_vertical(&up), WedgeDirection::Upward);
        let down = Wedge::from_covering(o, &ca(7.0 * PI / 6.0, 11.0 * PI / 6.0));
        assert_eq!(classify_wedge_on_vertical(&down), WedgeDirection::Downward);
        let right = Wedge::from_covering(o, &ca(-PI / 6.0, PI / 6.0));
        assert_eq!(classify_wedge_on_vertical(&right), WedgeDirection::SidewardRight);
        let left = Wedge::from_covering(o, &ca(5.0 * PI / 6.0, 7.0 * PI / 6.0));
        assert_eq!(classify_wedge_on_vertical(&left), WedgeDirection::SidewardLeft);
    }

    #[test]
    fn wedge_membership() {
        let o = Point::new(0.0, 0.0);
        let up = Wedge::from_covering(o, &ca(PI / 4.0, 3.0 * PI / 4.0));
        assert!(up.contains(Point::new(0.0, 1.0), 0.0));
        assert!(up.contains(Point::new(0.9, 1.0), 0.0));
        assert!(!up.contains(Point::new(1.1, 1.0), 0.0));
        assert!(!up.contains(Point::new(0.0, -1.0), 0.0));
        assert!((up.ccw_span - PI / 2.0).abs() < 1e-12);
    }
}
