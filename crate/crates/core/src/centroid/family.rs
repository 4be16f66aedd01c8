use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::Point;
use crate::instance::Instance;
use crate::linesearch::AngularIndex;
use crate::vprune::{decide, BoundingFrame, PruneDecision, Verdict};

/// The open vertical slab `lo < X < hi` still known to matter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slab {
    pub lo: f64,
    pub hi: f64,
}

impl Default for Slab {
    fn default() -> Self {
        Self {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }
}

impl Slab {
    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    /// The finite boundary abscissae.
    pub fn lines(&self) -> Vec<f64> {
        [self.lo, self.hi].into_iter().filter(|x| x.is_finite()).collect()
    }
}

/// How the search over one candidate family ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FamilyOutcome {
    /// An oracle call certified a global optimum.
    Certified(Point),
    /// No candidate of the family lies strictly inside the slab; the best
    /// point on its boundary lines dominates every candidate of the family.
    Slab(Slab),
    /// The family has no candidates.
    Empty,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyStats {
    /// Candidate elements (lines for 𝓛_T, points otherwise).
    pub elements: usize,
    /// Sorted runs the elements were organized into.
    pub runs: usize,
    /// Parallel rounds (network steps for 𝓛_T, probes otherwise).
    pub rounds: usize,
    pub oracle_calls: usize,
    /// Comparisons settled, by the slab or by an oracle call.
    pub comparisons: usize,
    /// Comparisons that needed an oracle call.
    pub comparisons_by_oracle: usize,
    /// Smallest share of surviving elements removed by one probe.
    pub min_prune_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySearch {
    pub outcome: FamilyOutcome,
    pub stats: FamilyStats,
}

impl FamilySearch {
    /// Vertical lines whose local optima dominate the family.
    pub fn lines(&self) -> Vec<f64> {
        match &self.outcome {
            FamilyOutcome::Slab(s) => s.lines(),
            _ => Vec::new(),
        }
    }
}

/// The vertical-line oracle with bookkeeping.
pub(crate) struct Decider<'a> {
    pub inst: &'a Instance,
    pub idx: &'a AngularIndex,
    pub frame: &'a BoundingFrame,
    pub calls: usize,
    pub evaluations: usize,
    pub slab: Slab,
}

impl<'a> Decider<'a> {
    pub fn new(inst: &'a Instance, idx: &'a AngularIndex, frame: &'a BoundingFrame) -> Self {
        Self {
            inst,
            idx,
            frame,
            calls: 0,
            evaluations: 0,
            slab: Slab::default(),
        }
    }

    /// Runs the oracle at `X = x` and narrows the slab. Returns the
    /// certified point, if any.
    pub fn decide(&mut self, x: f64) -> Result<(PruneDecision, Option<Point>)> {
        let d = decide(self.inst, self.idx, self.frame, x)?;
        self.calls += 1;
        self.evaluations += d.evaluations;
        match d.verdict {
            Verdict::PruneLeft => self.slab.lo = self.slab.lo.max(x),
            Verdict::PruneRight => self.slab.hi = self.slab.hi.min(x),
            _ => {}
        }
        let p = d.verdict.certified_point();
        Ok((d, p))
    }
}
