//! Deciding, for a vertical line, on which side of it an optimal leader
//! location lies.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{ccw_distance, normalize_angle, polar_angle, DirectedLine, Point};
use crate::instance::Instance;
use crate::linesearch::{
    breakpoint_sequences, evaluate, search_sequences, AngularIndex, BreakpointSequences, Evaluated, LineObjective,
    LineSearchOutcome,
};
use crate::medianoid::{Wedge, WedgeDirection, ANGLE_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

/// The box around every circle of 𝒞(V) and two horizontal lines clear of it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingFrame {
    pub bbox: Rect,
    pub t_top: DirectedLine,
    pub t_btm: DirectedLine,
}

impl BoundingFrame {
    pub fn lines(&self) -> [DirectedLine; 2] {
        [self.t_top, self.t_btm]
    }
}

pub fn build_frame(inst: &Instance) -> BoundingFrame {
    let r = inst.half_separation();
    let mut min = Point::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for c in inst.customers() {
        min.x = min.x.min(c.site.x - r);
        min.y = min.y.min(c.site.y - r);
        max.x = max.x.max(c.site.x + r);
        max.y = max.y.max(c.site.y + r);
    }
    let clearance = inst.separation().max(1.0);
    BoundingFrame {
        bbox: Rect { min, max },
        t_top: DirectedLine::horizontal(max.y + clearance),
        t_btm: DirectedLine::horizontal(min.y - clearance),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Verdict {
    /// Some point on the line is at least as good as everything strictly left of it.
    PruneLeft,
    /// Some point on the line is at least as good as everything strictly right of it.
    PruneRight,
    StrongCentroid(Point),
    ConditionalCentroid(Point),
}

impl Verdict {
    pub fn certified_point(&self) -> Option<Point> {
        match *self {
            Verdict::StrongCentroid(p) | Verdict::ConditionalCentroid(p) => Some(p),
            _ => None,
        }
    }

    fn from_sideward(dir: WedgeDirection) -> Self {
        if dir == WedgeDirection::SidewardRight {
            Verdict::PruneLeft
        } else {
            Verdict::PruneRight
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PseudoWedgeClass {
    Null,
    SidewardRight,
    SidewardLeft,
}

/// A wedge trimmed by the closed half-plane `{p : (p−apex)·u(θ) ≥ 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PseudoWedge {
    pub apex: Point,
    pub wedge: Wedge,
    pub theta: f64,
    /// Weight of the closed half-plane beyond the bisector at `theta`.
    pub half_plane_weight: f64,
    pub class: PseudoWedgeClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Evidence {
    /// The line misses the bounding box.
    BoxMiss,
    /// A point on the line with a sideward wedge.
    Sideward { point: Point, direction: WedgeDirection },
    /// A point on the line whose covering interval exceeds π.
    Strong { point: Point },
    Pseudo(PseudoWedge),
}

/// Where in the procedure the verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    BoxMiss,
    /// While locating the anchors `x_D` and `x_U`.
    Anchors,
    /// At a breakpoint strictly between the anchors.
    Breakpoint,
    /// At the midpoint `x_B` of the anchors.
    Bisector,
    PseudoWedge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PruneDecision {
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub phase: Phase,
    /// Lowest breakpoint with a downward wedge.
    pub x_d: Option<Point>,
    /// Highest breakpoint with an upward wedge.
    pub x_u: Option<Point>,
    pub x_b: Option<Point>,
    /// Medianoid evaluations spent.
    pub evaluations: usize,
}

impl PruneDecision {
    fn early(verdict: Verdict, evidence: Evidence, phase: Phase) -> Self {
        Self {
            verdict,
            evidence,
            phase,
            x_d: None,
            x_u: None,
            x_b: None,
            evaluations: 0,
        }
    }
}

/// `x_D` and `x_U` on a line, or the decision reached while looking for them.
#[derive(Debug, Clone, PartialEq)]
pub enum Anchors {
    Found { x_d: Evaluated, x_u: Evaluated },
    Early(PruneDecision),
}

fn from_evaluated(ev: &Evaluated, phase: Phase) -> Option<PruneDecision> {
    match ev.medianoid.direction(FRAC_PI_2) {
        None => Some(PruneDecision::early(
            Verdict::StrongCentroid(ev.point),
            Evidence::Strong { point: ev.point },
            phase,
        )),
        Some(d) if d.is_sideward() => Some(PruneDecision::early(
            Verdict::from_sideward(d),
            Evidence::Sideward {
                point: ev.point,
                direction: d,
            },
            phase,
        )),
        _ => None,
    }
}

fn anchors_on(inst: &Instance, bs: &BreakpointSequences<'_>, frame: &BoundingFrame) -> Result<(Anchors, usize)> {
    let mut evals = 0;
    let mut pick = |objective, fallback: &DirectedLine, want: WedgeDirection| -> Result<std::result::Result<Evaluated, PruneDecision>> {
        let s = search_sequences(inst, bs, objective)?;
        evals += s.stats.iterations;
        match s.outcome {
            LineSearchOutcome::Strong(ev) | LineSearchOutcome::Sideward(ev, _) => {
                Ok(Err(from_evaluated(&ev, Phase::Anchors).expect("sideward or strong")))
            }
            LineSearchOutcome::Finished(Some(ev)) => Ok(Ok(ev)),
            LineSearchOutcome::Finished(None) => {
                let line = bs.line();
                let p = crate::geom::line_line_intersection(line, fallback)
                    .ok_or_else(|| Error::Invariant("frame line parallel to query line".into()))?;
                let t = line.param_of(p);
                let ev = evaluate(inst, line, t)?;
                evals += 1;
                if let Some(d) = from_evaluated(&ev, Phase::Anchors) {
                    return Ok(Err(d));
                }
                if ev.medianoid.direction(FRAC_PI_2) != Some(want) {
                    return Err(Error::Invariant(format!("frame anchor at {:?} is not {:?}", ev.point, want)));
                }
                Ok(Ok(ev))
            }
        }
    };
    let x_d = match pick(LineObjective::LowestDownward, &frame.t_top, WedgeDirection::Downward)? {
        Ok(ev) => ev,
        Err(d) => return Ok((Anchors::Early(d), evals)),
    };
    let x_u = match pick(LineObjective::HighestUpward, &frame.t_btm, WedgeDirection::Upward)? {
        Ok(ev) => ev,
        Err(d) => return Ok((Anchors::Early(d), evals)),
    };
    Ok((Anchors::Found { x_d, x_u }, evals))
}

/// Step 2 on its own: the anchors of a vertical line crossing the frame box.
pub fn find_xd_xu(inst: &Instance, idx: &AngularIndex, frame: &BoundingFrame, x: f64) -> Result<Anchors> {
    let extra = frame.lines();
    let bs = breakpoint_sequences(idx, inst, &DirectedLine::vertical(x), &extra)?;
    Ok(anchors_on(inst, &bs, frame)?.0)
}

/// Decides which side of the vertical line `X = x` can be discarded.
///
/// `PruneLeft` means some point on the line is at least as good as every
/// point strictly to its left (symmetrically for `PruneRight`); centroid
/// verdicts carry a globally optimal point.
pub fn decide(inst: &Instance, idx: &AngularIndex, frame: &BoundingFrame, x: f64) -> Result<PruneDecision> {
    if x < frame.bbox.min.x {
        return Ok(PruneDecision::early(Verdict::PruneLeft, Evidence::BoxMiss, Phase::BoxMiss));
    }
    if x > frame.bbox.max.x {
        return Ok(PruneDecision::early(Verdict::PruneRight, Evidence::BoxMiss, Phase::BoxMiss));
    }
    let line = DirectedLine::vertical(x);
    let extra = frame.lines();
    let bs = breakpoint_sequences(idx, inst, &line, &extra)?;
    let (anchors, mut evaluations) = anchors_on(inst, &bs, frame)?;
    let (mut xd, mut xu) = match anchors {
        Anchors::Early(mut d) => {
            d.evaluations = evaluations;
            return Ok(d);
        }
        Anchors::Found { x_d, x_u } => (x_d, x_u),
    };
    let finish = |mut d: PruneDecision, xd: &Evaluated, xu: &Evaluated, evaluations: usize| {
        d.x_d = Some(xd.point);
        d.x_u = Some(xu.point);
        d.evaluations = evaluations;
        d
    };

    // breakpoints strictly between the anchors are sideward or strong; a
    // vertical verdict there only happens through rounding and moves an anchor
    let tol = inst.eps();
    loop {
        if xu.t >= xd.t {
            return Err(Error::Invariant(format!(
                "anchors out of order on X = {x}: x_U at {} is not below x_D at {}",
                xu.t, xd.t
            )));
        }
        let mid = 0.5 * (xu.t + xd.t);
        let Some(bp) = bs.nearest_inside(xu.t + tol, xd.t - tol, mid) else {
            break;
        };
        let ev = evaluate(inst, &line, bp.t)?;
        evaluations += 1;
        if let Some(d) = from_evaluated(&ev, Phase::Breakpoint) {
            return Ok(finish(d, &xd, &xu, evaluations));
        }
        if ev.medianoid.direction(FRAC_PI_2) == Some(WedgeDirection::Downward) {
            xd = ev;
        } else {
            xu = ev;
        }
    }

    let xb = evaluate(inst, &line, 0.5 * (xu.t + xd.t))?;
    evaluations += 1;
    if let Some(mut d) = from_evaluated(&xb, Phase::Bisector) {
        d.x_b = Some(xb.point);
        return Ok(finish(d, &xd, &xu, evaluations));
    }

    let (wd, wu) = (xd.medianoid.weight_loss, xu.medianoid.weight_loss);
    let (apex, lo, w1) = if wd > wu {
        (&xu, PI, wd)
    } else if wu > wd {
        (&xd, 0.0, wu)
    } else {
        return Err(Error::Invariant(format!(
            "equal weight loss {wd} at both anchors of the non-leaning line X = {x}"
        )));
    };
    let pw = pseudo_wedge_in(inst, apex, lo, w1)?;
    let verdict = match pw.class {
        PseudoWedgeClass::Null => Verdict::ConditionalCentroid(apex.point),
        PseudoWedgeClass::SidewardRight => Verdict::PruneLeft,
        PseudoWedgeClass::SidewardLeft => Verdict::PruneRight,
    };
    let mut d = PruneDecision::early(verdict, Evidence::Pseudo(pw), Phase::PseudoWedge);
    d.x_b = Some(xb.point);
    Ok(finish(d, &xd, &xu, evaluations))
}

/// Which anchor a pseudo wedge is built at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnchorKind {
    /// `x_U`; the trimming angle is taken from `[π, 2π]`.
    Upper,
    /// `x_D`; the trimming angle is taken from `[0, π]`.
    Lower,
}

/// Trims the wedge at `apex` by the closed half-plane `{p : (p−apex)·u(θ) ≥ 0}`
/// for an angle `θ` whose closed bisector half-plane weighs at least `w1`.
pub fn pseudo_wedge(inst: &Instance, apex: Point, kind: AnchorKind, w1: f64) -> Result<PseudoWedge> {
    let ev = Evaluated {
        t: 0.0,
        point: apex,
        medianoid: crate::medianoid::solve_medianoid(inst, apex)?,
    };
    pseudo_wedge_in(inst, &ev, if kind == AnchorKind::Upper { PI } else { 0.0 }, w1)
}

fn pseudo_wedge_in(inst: &Instance, apex: &Evaluated, lo: f64, w1: f64) -> Result<PseudoWedge> {
    let wedge = apex
        .medianoid
        .wedge
        .ok_or_else(|| Error::Invariant("pseudo wedge requested at a strong centroid".into()))?;
    let (theta, weight) = best_closed_angle(inst, apex.point, lo);
    if weight < w1 - 1e-12 * inst.total_weight() {
        return Err(Error::Invariant(format!(
            "no angle in [{lo}, {}] reaches weight {w1} at {:?} (best {weight})",
            lo + PI,
            apex.point
        )));
    }
    let class = classify_pseudo(&wedge, theta);
    Ok(PseudoWedge {
        apex: apex.point,
        wedge,
        theta,
        half_plane_weight: weight,
        class,
    })
}

/// Maximizes over `θ ∈ [lo, lo + π]` the weight of customers `v` with
/// `(v − apex)·u(θ) ≥ r`, returning the middle of the best interval.
///
/// The anchors sit on breakpoints computed with radius `r`, so the test is
/// relaxed by the instance tolerance.
fn best_closed_angle(inst: &Instance, apex: Point, lo: f64) -> (f64, f64) {
    let r = inst.half_separation() - inst.eps();
    // (position, is_begin, weight) in coordinates s = θ − lo
    let mut events: Vec<(f64, bool, f64)> = Vec::new();
    for c in inst.customers() {
        let d = c.site.dist(apex);
        if d < r {
            continue;
        }
        let phi = (r / d).min(1.0).acos();
        let Ok(center) = polar_angle(c.site, apex) else { continue };
        let start = normalize_angle(center - phi - lo);
        for a in [start, start - TAU] {
            let (a, b) = (a.max(0.0), (a + 2.0 * phi).min(PI));
            if a <= b {
                events.push((a, true, c.weight));
                events.push((b, false, c.weight));
            }
        }
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    // (weight, length, middle); longer stretches win ties
    let mut best = (0.0, 0.0, 0.5 * PI);
    let mut offer = |w: f64, a: f64, b: f64| {
        if w > best.0 || (w == best.0 && b - a > best.1) {
            best = (w, b - a, 0.5 * (a + b));
        }
    };
    let (mut i, mut w) = (0, 0.0);
    while i < events.len() {
        let s = events[i].0;
        while i < events.len() && events[i].0 == s && events[i].1 {
            w += events[i].2;
            i += 1;
        }
        offer(w, s, s);
        while i < events.len() && events[i].0 == s && !events[i].1 {
            w -= events[i].2;
            i += 1;
        }
        let next = events.get(i).map_or(PI, |e| e.0);
        if next > s {
            offer(w, s, next);
        }
    }
    (normalize_angle(lo + best.2), best.0)
}

/// Null when the wedge and the half-plane share only the apex; otherwise
/// the side of the vertical line the trimmed wedge lies on.
fn classify_pseudo(wedge: &Wedge, theta: f64) -> PseudoWedgeClass {
    let (s, len) = wedge.direction_arc();
    // the half-plane's directions, relative to the wedge arc start
    let o = ccw_distance(s, theta - FRAC_PI_2);
    let candidates = [(o.max(0.0), len.min(o + PI)), (0.0f64.max(o - TAU), len.min(o - PI))];
    let (a, b) = candidates
        .into_iter()
        .max_by(|x, y| (x.1 - x.0).total_cmp(&(y.1 - y.0)))
        .expect("two candidates");
    if b - a < -ANGLE_TOL {
        return PseudoWedgeClass::Null;
    }
    if (s + 0.5 * (a + b)).cos() >= 0.0 {
        PseudoWedgeClass::SidewardRight
    } else {
        PseudoWedgeClass::SidewardLeft
    }
}
