//! Full solvers for the (1|1)_R-centroid.
//!
//! The parametric solver runs three searches, one per family of candidate
//! vertical lines (tangent × tangent, circle × tangent, circle × circle).
//! Each search narrows an open slab with the vertical-line oracle until no
//! candidate of its family is left strictly inside, and the best point on
//! the slab boundaries then dominates the whole family.

mod family;
mod lc;
mod lm;
mod lt;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{circle_circle_intersections, DirectedLine, Point};
use crate::instance::Instance;
use crate::linesearch::{build_angular_index, local_optimum_on_line, AngularIndex, OptimumStatus};
use crate::medianoid::solve_medianoid;
use crate::vprune::build_frame;

pub use family::{FamilyOutcome, FamilySearch, FamilyStats, Slab};
pub use lc::{crossing_abscissae, local_optimal_line_lc};
pub use lm::{crossing_runs, local_optimal_line_lm};
pub use lt::{local_optimal_line_lt, network_depth, odd_even_merge_steps};

use family::Decider;

/// Name of the sorting network driving the tangent-order search.
pub const SORTER: &str = "batcher odd-even merge";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverMode {
    Parametric,
    Intermediate,
    Brute,
}

impl SolverMode {
    pub const ALL: [SolverMode; 3] = [SolverMode::Parametric, SolverMode::Intermediate, SolverMode::Brute];

    pub fn name(self) -> &'static str {
        match self {
            SolverMode::Parametric => "parametric",
            SolverMode::Intermediate => "intermediate",
            SolverMode::Brute => "brute",
        }
    }
}

impl std::fmt::Display for SolverMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SolverMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        SolverMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown solver mode {s:?}"))
    }
}

/// How a certified optimum was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// The only customer's own site.
    SingleCustomer,
    /// An oracle call met a strong or conditional centroid.
    Oracle,
    /// A line search met a strong centroid.
    LineSearch,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Telemetry {
    /// Vertical-line oracle calls.
    pub oracle_calls: usize,
    /// Medianoid evaluations, including those inside oracle calls.
    pub medianoid_evaluations: usize,
    /// Tangent comparisons settled during the sorting-network search.
    pub comparisons_resolved: usize,
    /// Of those, the ones that needed an oracle call.
    pub comparisons_by_oracle: usize,
    pub sorter: Option<String>,
    pub lt: Option<FamilyStats>,
    pub lm: Option<FamilyStats>,
    pub lc: Option<FamilyStats>,
    /// Line-local searches run outside the oracle.
    pub line_searches: usize,
    /// Candidate points evaluated directly.
    pub candidates: usize,
    pub certified: Option<Certificate>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub centroid: Point,
    pub weight_loss: f64,
    /// A best-response direction for the follower at the centroid.
    pub witness_angle: f64,
    pub solver: SolverMode,
    pub telemetry: Telemetry,
}

impl SolveReport {
    /// Where the follower opens in response: `centroid + R·u(witness_angle)`.
    pub fn follower(&self, separation: f64) -> Point {
        self.centroid + crate::geom::unit(self.witness_angle) * separation
    }
}

/// Keeps the lowest weight loss; ties go to the lexicographically smaller point.
#[derive(Debug)]
pub(crate) struct Best {
    pub best: Option<(f64, Point)>,
    tol: f64,
}

impl Best {
    pub fn new(inst: &Instance) -> Self {
        Self {
            best: None,
            tol: 1e-12 * inst.total_weight(),
        }
    }

    pub fn offer(&mut self, w: f64, p: Point) {
        let better = match self.best {
            None => true,
            Some((bw, bp)) => {
                w < bw - self.tol || (w <= bw + self.tol && (p.x, p.y).partial_cmp(&(bp.x, bp.y)) == Some(std::cmp::Ordering::Less))
            }
        };
        if better {
            self.best = Some((w, p));
        }
    }
}

/// Finds a leader location of minimum weight loss.
pub fn solve_centroid(inst: &Instance, mode: SolverMode) -> Result<SolveReport> {
    inst.require_positive_separation()?;
    let start = Instant::now();
    let mut tel = Telemetry::default();
    let point = if inst.len() == 1 {
        tel.certified = Some(Certificate::SingleCustomer);
        inst.site(0)
    } else {
        match mode {
            SolverMode::Parametric => parametric(inst, &mut tel)?,
            SolverMode::Intermediate => intermediate(inst, &mut tel)?,
            SolverMode::Brute => return crate::oracle::brute_centroid(inst),
        }
    };
    let m = solve_medianoid(inst, point)?;
    tel.medianoid_evaluations += 1;
    tel.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveReport {
        centroid: point,
        weight_loss: m.weight_loss,
        witness_angle: m.witness_angle,
        solver: mode,
        telemetry: tel,
    })
}

type FamilyFn = fn(&mut Decider<'_>) -> Result<FamilySearch>;

fn parametric(inst: &Instance, tel: &mut Telemetry) -> Result<Point> {
    let idx = build_angular_index(inst)?;
    let frame = build_frame(inst);
    tel.sorter = Some(SORTER.to_string());
    let families: [(FamilyFn, usize); 3] = [(lt::search, 0), (lm::search, 1), (lc::search, 2)];
    let mut lines = Vec::new();
    for (search, slot) in families {
        let mut dec = Decider::new(inst, &idx, &frame);
        let res = search(&mut dec)?;
        tel.oracle_calls += dec.calls;
        tel.medianoid_evaluations += dec.evaluations;
        let stats = res.stats.clone();
        if slot == 0 {
            tel.comparisons_resolved = stats.comparisons;
            tel.comparisons_by_oracle = stats.comparisons_by_oracle;
        }
        match slot {
            0 => tel.lt = Some(stats),
            1 => tel.lm = Some(stats),
            _ => tel.lc = Some(stats),
        }
        match res.outcome {
            FamilyOutcome::Certified(p) => {
                tel.certified = Some(Certificate::Oracle);
                return Ok(p);
            }
            FamilyOutcome::Slab(s) => lines.extend(s.lines()),
            FamilyOutcome::Empty => {}
        }
    }
    lines.sort_by(f64::total_cmp);
    lines.dedup();
    let mut best = Best::new(inst);
    for x in lines {
        if let Some(p) = line_candidate(inst, &idx, &DirectedLine::vertical(x), &mut best, tel)? {
            return Ok(p);
        }
    }
    finish(inst, best, tel)
}

fn intermediate(inst: &Instance, tel: &mut Telemetry) -> Result<Point> {
    let idx = build_angular_index(inst)?;
    let mut best = Best::new(inst);
    let tangents: Vec<DirectedLine> = idx.undirected_tangents().map(|(_, _, _, l)| l).collect();
    for line in &tangents {
        if let Some(p) = line_candidate(inst, &idx, line, &mut best, tel)? {
            return Ok(p);
        }
    }
    for i in 0..inst.len() {
        for j in i + 1..inst.len() {
            for p in circle_circle_intersections(&inst.circle(i), &inst.circle(j)) {
                best.offer(solve_medianoid(inst, p)?.weight_loss, p);
                tel.candidates += 1;
                tel.medianoid_evaluations += 1;
            }
        }
    }
    finish(inst, best, tel)
}

/// Runs the line-local search; returns the point if it is certified.
fn line_candidate(
    inst: &Instance,
    idx: &AngularIndex,
    line: &DirectedLine,
    best: &mut Best,
    tel: &mut Telemetry,
) -> Result<Option<Point>> {
    let opt = local_optimum_on_line(inst, idx, line)?;
    tel.line_searches += 1;
    tel.medianoid_evaluations += opt.stats.iterations.max(1);
    if opt.status == OptimumStatus::StrongCentroid {
        tel.certified = Some(Certificate::LineSearch);
        return Ok(Some(opt.point));
    }
    best.offer(opt.weight_loss, opt.point);
    Ok(None)
}

fn finish(inst: &Instance, mut best: Best, tel: &mut Telemetry) -> Result<Point> {
    if best.best.is_none() {
        // no candidate line survived; the sites are always safe to try
        for i in 0..inst.len() {
            best.offer(solve_medianoid(inst, inst.site(i))?.weight_loss, inst.site(i));
            tel.candidates += 1;
            tel.medianoid_evaluations += 1;
        }
    }
    Ok(best.best.expect("at least one customer").1)
}
