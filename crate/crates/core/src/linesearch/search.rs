use serde::{Deserialize, Serialize};

use super::index::AngularIndex;
use super::select::{parallel_binary_search, Cut, PruneStats};
use super::sequence::{breakpoint_sequences, BreakpointSequences};
use crate::error::Result;
use crate::geom::{DirectedLine, Point};
use crate::instance::Instance;
use crate::medianoid::{solve_medianoid, MedianoidResult, WedgeDirection};

/// What a pruned search over the breakpoints of a line is looking for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineObjective {
    /// A point of minimum weight loss on the line.
    LocalOptimum,
    /// The lowest breakpoint whose wedge points down.
    LowestDownward,
    /// The highest breakpoint whose wedge points up.
    HighestUpward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OptimumStatus {
    Ordinary,
    /// The point's covering interval exceeds π: it is a global optimum.
    StrongCentroid,
    /// Certified globally optimal through a null pseudo wedge.
    ConditionalCentroid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineLocalOptimum {
    pub point: Point,
    pub weight_loss: f64,
    pub status: OptimumStatus,
    pub stats: PruneStats,
}

/// A point on the query line together with its medianoid.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluated {
    pub t: f64,
    pub point: Point,
    pub medianoid: MedianoidResult,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LineSearchOutcome {
    /// Every breakpoint was either probed or discarded. Holds the best
    /// probed point for [`LineObjective::LocalOptimum`], otherwise the
    /// extreme probed breakpoint with the requested direction.
    Finished(Option<Evaluated>),
    /// A probed breakpoint had a sideward wedge.
    Sideward(Evaluated, WedgeDirection),
    /// A probed breakpoint is a strong centroid.
    Strong(Evaluated),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineSearch {
    pub outcome: LineSearchOutcome,
    pub stats: PruneStats,
}

pub(crate) fn evaluate(inst: &Instance, line: &DirectedLine, t: f64) -> Result<Evaluated> {
    let point = line.point_at(t);
    Ok(Evaluated {
        t,
        point,
        medianoid: solve_medianoid(inst, point)?,
    })
}

/// Runs the pruned search on prebuilt breakpoint sequences.
pub fn search_sequences(inst: &Instance, bs: &BreakpointSequences<'_>, objective: LineObjective) -> Result<LineSearch> {
    let line = *bs.line();
    let lens: Vec<usize> = bs.sequences().iter().map(|s| s.len()).collect();
    let mut best: Option<Evaluated> = None;
    let mut early: Option<LineSearchOutcome> = None;
    let stats = parallel_binary_search(
        &lens,
        |s, j| bs.t_ascending(s, j),
        |m| {
            let ev = evaluate(inst, &line, m)?;
            let dir = match ev.medianoid.direction(line.angle) {
                None => {
                    early = Some(LineSearchOutcome::Strong(ev));
                    return Ok(Cut::Stop);
                }
                Some(d) => d,
            };
            if dir.is_sideward() {
                if objective == LineObjective::LocalOptimum {
                    keep_best(&mut best, ev.clone());
                }
                early = Some(LineSearchOutcome::Sideward(ev, dir));
                return Ok(Cut::Stop);
            }
            let up = dir == WedgeDirection::Upward;
            match objective {
                LineObjective::LocalOptimum => keep_best(&mut best, ev),
                LineObjective::LowestDownward if !up => best = Some(ev),
                LineObjective::HighestUpward if up => best = Some(ev),
                _ => {}
            }
            Ok(if up { Cut::AtMost(m) } else { Cut::AtLeast(m) })
        },
    )?;
    let outcome = match early {
        Some(LineSearchOutcome::Sideward(ev, _)) if objective == LineObjective::LocalOptimum => {
            // the sideward point is optimal on the line; an earlier probe
            // may tie with it
            LineSearchOutcome::Finished(Some(best.unwrap_or(ev)))
        }
        Some(o) => o,
        None => LineSearchOutcome::Finished(best),
    };
    Ok(LineSearch { outcome, stats })
}

fn keep_best(best: &mut Option<Evaluated>, ev: Evaluated) {
    if best.as_ref().is_none_or(|b| ev.medianoid.weight_loss < b.medianoid.weight_loss) {
        *best = Some(ev);
    }
}

/// Builds the breakpoint sequences of `line` (plus `extra` lines) and runs
/// the pruned search.
pub fn search_line(
    inst: &Instance,
    idx: &AngularIndex,
    line: &DirectedLine,
    extra: &[DirectedLine],
    objective: LineObjective,
) -> Result<LineSearch> {
    let bs = breakpoint_sequences(idx, inst, line, extra)?;
    search_sequences(inst, &bs, objective)
}

/// A point of minimum weight loss on a non-horizontal line, found with
/// O(log n) medianoid evaluations. Stops early at a strong centroid.
pub fn local_optimum_on_line(inst: &Instance, idx: &AngularIndex, line: &DirectedLine) -> Result<LineLocalOptimum> {
    let bs = breakpoint_sequences(idx, inst, line, &[])?;
    let search = search_sequences(inst, &bs, LineObjective::LocalOptimum)?;
    let (ev, status) = match search.outcome {
        LineSearchOutcome::Strong(ev) => (ev, OptimumStatus::StrongCentroid),
        LineSearchOutcome::Finished(Some(ev)) | LineSearchOutcome::Sideward(ev, _) => (ev, OptimumStatus::Ordinary),
        LineSearchOutcome::Finished(None) => {
            // no breakpoints: the weight loss is constant along the line
            let ev = evaluate(inst, bs.line(), 0.0)?;
            let status = if ev.medianoid.strong_centroid {
                OptimumStatus::StrongCentroid
            } else {
                OptimumStatus::Ordinary
            };
            (ev, status)
        }
    };
    Ok(LineLocalOptimum {
        point: ev.point,
        weight_loss: ev.medianoid.weight_loss,
        status,
        stats: search.stats,
    })
}
