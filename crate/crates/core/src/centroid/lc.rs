//! 𝓛_C: vertical lines through crossings of two circles of 𝒞(V).

use super::family::{Decider, FamilyOutcome, FamilySearch, FamilyStats};
use crate::error::Result;
use crate::geom::circle_circle_intersections;
use crate::instance::Instance;
use crate::linesearch::{parallel_binary_search, AngularIndex, Cut};
use crate::vprune::{BoundingFrame, Verdict};

/// Abscissae of all circle-circle crossings, ascending.
pub fn crossing_abscissae(inst: &Instance) -> Vec<f64> {
    let mut xs = Vec::new();
    for i in 0..inst.len() {
        for j in i + 1..inst.len() {
            xs.extend(circle_circle_intersections(&inst.circle(i), &inst.circle(j)).iter().map(|p| p.x));
        }
    }
    xs.sort_by(f64::total_cmp);
    xs
}

pub fn local_optimal_line_lc(inst: &Instance, idx: &AngularIndex, frame: &BoundingFrame) -> Result<FamilySearch> {
    let mut dec = Decider::new(inst, idx, frame);
    search(&mut dec)
}

pub(crate) fn search(dec: &mut Decider<'_>) -> Result<FamilySearch> {
    let xs = crossing_abscissae(dec.inst);
    let mut stats = FamilyStats {
        elements: xs.len(),
        runs: 1,
        ..FamilyStats::default()
    };
    if xs.is_empty() {
        return Ok(FamilySearch {
            outcome: FamilyOutcome::Empty,
            stats,
        });
    }
    let mut certified = None;
    let prune = parallel_binary_search(
        &[xs.len()],
        |_, j| xs[j],
        |m| {
            stats.oracle_calls += 1;
            let (d, p) = dec.decide(m)?;
            if p.is_some() {
                certified = p;
                return Ok(Cut::Stop);
            }
            Ok(match d.verdict {
                Verdict::PruneLeft => Cut::AtMost(m),
                _ => Cut::AtLeast(m),
            })
        },
    )?;
    stats.rounds = prune.iterations;
    stats.min_prune_fraction = Some(prune.min_fraction);
    let outcome = match certified {
        Some(p) => FamilyOutcome::Certified(p),
        None => FamilyOutcome::Slab(dec.slab),
    };
    Ok(FamilySearch { outcome, stats })
}
