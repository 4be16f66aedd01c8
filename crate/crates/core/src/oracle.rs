//! Brute-force baselines: candidate enumeration over all tangent and circle
//! intersections, and a direct medianoid evaluator.

use std::f64::consts::TAU;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::centroid::{Certificate, SolveReport, SolverMode, Telemetry};
use crate::error::Result;
use crate::geom::{
    circle_circle_intersections, line_circle_intersections, line_line_intersection, DirectedLine, Point,
};
use crate::instance::Instance;
use crate::linesearch::build_angular_index;
use crate::medianoid::solve_medianoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CandidateKind {
    TangentTangent,
    TangentCircle,
    CircleCircle,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub points: Vec<(Point, CandidateKind)>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn count(&self, kind: CandidateKind) -> usize {
        self.points.iter().filter(|p| p.1 == kind).count()
    }
}

/// Every pairwise intersection of outer tangents and circles of 𝒞(V),
/// with points closer than the instance tolerance merged.
pub fn enumerate_candidates(inst: &Instance) -> Result<CandidateSet> {
    let tangents: Vec<DirectedLine> = if inst.len() < 2 {
        Vec::new()
    } else {
        build_angular_index(inst)?.undirected_tangents().map(|(_, _, _, l)| l).collect()
    };
    let mut raw = Vec::new();
    for (i, a) in tangents.iter().enumerate() {
        for b in &tangents[i + 1..] {
            if let Some(p) = line_line_intersection(a, b) {
                raw.push((p, CandidateKind::TangentTangent));
            }
        }
    }
    for l in &tangents {
        for c in inst.circles() {
            raw.extend(line_circle_intersections(l, &c).into_iter().map(|p| (p, CandidateKind::TangentCircle)));
        }
    }
    for i in 0..inst.len() {
        for j in i + 1..inst.len() {
            raw.extend(
                circle_circle_intersections(&inst.circle(i), &inst.circle(j))
                    .into_iter()
                    .map(|p| (p, CandidateKind::CircleCircle)),
            );
        }
    }
    Ok(CandidateSet {
        points: dedup(raw, inst.eps()),
    })
}

fn dedup(mut pts: Vec<(Point, CandidateKind)>, eps: f64) -> Vec<(Point, CandidateKind)> {
    pts.sort_by(|a, b| a.0.x.total_cmp(&b.0.x).then(a.0.y.total_cmp(&b.0.y)));
    let mut out: Vec<(Point, CandidateKind)> = Vec::with_capacity(pts.len());
    for (p, k) in pts {
        // earlier points within eps in x form a short suffix of `out`
        let dup = out
            .iter()
            .rev()
            .take_while(|q| p.x - q.0.x <= eps)
            .any(|q| (p.y - q.0.y).abs() <= eps);
        if !dup {
            out.push((p, k));
        }
    }
    out
}

/// Argmin of the weight loss over all candidates and the customer sites.
pub fn brute_centroid(inst: &Instance) -> Result<SolveReport> {
    inst.require_positive_separation()?;
    let start = Instant::now();
    let mut tel = Telemetry::default();
    let mut pts: Vec<Point> = inst.customers().iter().map(|c| c.site).collect();
    if inst.len() == 1 {
        tel.certified = Some(Certificate::SingleCustomer);
    } else {
        pts.extend(enumerate_candidates(inst)?.points.into_iter().map(|(p, _)| p));
    }
    let tol = 1e-12 * inst.total_weight();
    let mut best: Option<(f64, f64, Point)> = None;
    for p in pts {
        let m = solve_medianoid(inst, p)?;
        tel.candidates += 1;
        let better = match best {
            None => true,
            Some((w, _, q)) => m.weight_loss < w - tol || (m.weight_loss <= w + tol && (p.x, p.y) < (q.x, q.y)),
        };
        if better {
            best = Some((m.weight_loss, m.witness_angle, p));
        }
    }
    tel.medianoid_evaluations = tel.candidates;
    let (weight_loss, witness_angle, centroid) = best.expect("at least one customer");
    tel.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveReport {
        centroid,
        weight_loss,
        witness_angle,
        solver: SolverMode::Brute,
        telemetry: tel,
    })
}

/// `W*(x)` and a maximizing angle, by counting captured customers directly
/// at the middle of every gap between capture-arc endpoints.
pub fn brute_medianoid(inst: &Instance, x: Point) -> Result<(f64, f64)> {
    inst.require_positive_separation()?;
    let threshold = inst.half_separation() + inst.eps();
    let mut ends = Vec::new();
    for c in inst.customers() {
        let d = c.site - x;
        let len = d.norm();
        if len > threshold {
            let center = d.y.atan2(d.x);
            let half = (threshold / len).acos();
            ends.push((center - half).rem_euclid(TAU));
            ends.push((center + half).rem_euclid(TAU));
        }
    }
    if ends.is_empty() {
        return Ok((0.0, 0.0));
    }
    ends.sort_by(f64::total_cmp);
    let k = ends.len();
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..k {
        let a = ends[i];
        let b = if i + 1 < k { ends[i + 1] } else { ends[0] + TAU };
        if b <= a {
            continue;
        }
        let theta = (0.5 * (a + b)).rem_euclid(TAU);
        let u = Point::new(theta.cos(), theta.sin());
        let w: f64 = inst
            .customers()
            .iter()
            .filter(|c| (c.site - x).dot(u) > threshold)
            .map(|c| c.weight)
            .sum();
        if w > best.0 {
            best = (w, theta);
        }
    }
    Ok((best.0.max(0.0), best.1))
}
