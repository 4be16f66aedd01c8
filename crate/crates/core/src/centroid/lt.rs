//! 𝓛_T: vertical lines through crossings of two outer tangents.
//!
//! The tangents are sorted by their height at the (unknown) optimal
//! abscissa with a Batcher odd-even merge network. Each comparison whose
//! crossing lies inside the current slab is a question for the oracle;
//! within one network step the median crossing is asked repeatedly, which
//! settles at least half of the open questions per call.

use std::cmp::Ordering;

use super::family::{Decider, FamilyOutcome, FamilySearch, FamilyStats, Slab};
use crate::error::Result;
use crate::instance::Instance;
use crate::linesearch::AngularIndex;
use crate::vprune::BoundingFrame;

/// `y = a·x + b`; `None` pads the network and sorts last.
type Lin = Option<(f64, f64)>;

/// Steps of Batcher's odd-even merge sort on `n` (a power of two) wires;
/// each inner vector is one parallel step.
pub fn odd_even_merge_steps(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut steps = Vec::new();
    let mut p = 1;
    while p < n {
        let mut k = p;
        while k >= 1 {
            let mut step = Vec::new();
            let mut j = k % p;
            while j + k < n {
                for i in 0..k.min(n - j - k) {
                    if (i + j) / (2 * p) == (i + j + k) / (2 * p) {
                        step.push((i + j, i + j + k));
                    }
                }
                j += 2 * k;
            }
            if !step.is_empty() {
                steps.push(step);
            }
            k /= 2;
        }
        p *= 2;
    }
    steps
}

/// Network depth for `n` wires: `k(k+1)/2` with `k = ⌈log₂ n⌉`.
pub fn network_depth(n: usize) -> usize {
    let k = n.next_power_of_two().trailing_zeros() as usize;
    k * (k + 1) / 2
}

/// Order of two lines everywhere inside the open slab, or the abscissa of
/// their crossing when it lies inside.
fn compare(p: Lin, q: Lin, slab: &Slab) -> std::result::Result<Ordering, f64> {
    let ((a1, b1), (a2, b2)) = match (p, q) {
        (None, None) => return Ok(Ordering::Equal),
        (None, Some(_)) => return Ok(Ordering::Greater),
        (Some(_), None) => return Ok(Ordering::Less),
        (Some(p), Some(q)) => (p, q),
    };
    if a1 == a2 {
        return Ok(b1.total_cmp(&b2));
    }
    let xc = (b2 - b1) / (a1 - a2);
    if xc <= slab.lo {
        Ok(a1.total_cmp(&a2))
    } else if xc >= slab.hi {
        Ok(a2.total_cmp(&a1))
    } else {
        Err(xc)
    }
}

pub fn local_optimal_line_lt(inst: &Instance, idx: &AngularIndex, frame: &BoundingFrame) -> Result<FamilySearch> {
    let mut dec = Decider::new(inst, idx, frame);
    search(&mut dec)
}

pub(crate) fn search(dec: &mut Decider<'_>) -> Result<FamilySearch> {
    let mut lines: Vec<Lin> = dec
        .idx
        .undirected_tangents()
        .map(|(_, _, _, l)| {
            let a = l.direction.y / l.direction.x;
            Some((a, l.anchor.y - a * l.anchor.x))
        })
        .collect();
    let mut stats = FamilyStats {
        elements: lines.len(),
        runs: 1,
        ..FamilyStats::default()
    };
    if lines.len() < 2 {
        return Ok(FamilySearch {
            outcome: FamilyOutcome::Empty,
            stats,
        });
    }
    let n = lines.len().next_power_of_two();
    lines.resize(n, None);
    let mut pending: Vec<f64> = Vec::new();
    for step in odd_even_merge_steps(n) {
        stats.rounds += 1;
        pending.clear();
        pending.extend(step.iter().filter_map(|&(i, j)| compare(lines[i], lines[j], &dec.slab).err()));
        stats.comparisons += step.len();
        stats.comparisons_by_oracle += pending.len();
        while !pending.is_empty() {
            let mid = pending.len() / 2;
            let (_, &mut x, _) = pending.select_nth_unstable_by(mid, f64::total_cmp);
            let (_, certified) = dec.decide(x)?;
            stats.oracle_calls += 1;
            if let Some(p) = certified {
                return Ok(FamilySearch {
                    outcome: FamilyOutcome::Certified(p),
                    stats,
                });
            }
            let slab = dec.slab;
            pending.retain(|&xc| slab.contains(xc));
        }
        for &(i, j) in &step {
            let ord = compare(lines[i], lines[j], &dec.slab).expect("comparison settled by the slab");
            if ord == Ordering::Greater {
                lines.swap(i, j);
            }
        }
    }
    Ok(FamilySearch {
        outcome: FamilyOutcome::Slab(dec.slab),
        stats,
    })
}
