//! 𝓛_M: vertical lines through crossings of a circle of 𝒞(V) with an
//! outer tangent.
//!
//! For a circle `C(u)` and the tangents of `C(v)` taken in P(v) order, the
//! crossing abscissae split into O(1) monotone runs: the crossing points
//! move along `C(u)` and only turn back where the tangent point itself lies
//! on `C(u)`, switch branch where the tangent leaves the circle, and change
//! x-direction where they pass the leftmost or rightmost point of `C(u)`.
//! Every tangent line is the right tangent of exactly one of its two
//! circles, so crossings with other circles are taken from right tangents
//! only; touching points come from both sides.
//! All runs are then cut down together by a parallel binary search.

use std::f64::consts::{FRAC_PI_2, PI};

use super::family::{Decider, FamilyOutcome, FamilySearch, FamilyStats};
use crate::error::Result;
use crate::geom::{normalize_angle, unit, Point};
use crate::instance::Instance;
use crate::linesearch::{parallel_binary_search, piece_mid, pieces, AngularIndex, Cut, Side};
use crate::vprune::{BoundingFrame, Verdict};

#[derive(Debug, Clone, Copy)]
struct Run {
    u: usize,
    v: usize,
    sigma: f64,
    /// +1 / −1 picks the crossing further along / back along the tangent
    /// direction; 0 for the tangency point when `u == v`.
    branch: f64,
    start: usize,
    len: usize,
    /// Whether x grows with the position in P(v).
    increasing: bool,
}

/// Abscissa of the crossing of `C(u)` with the `sigma`-side tangent of
/// `C(v)` in direction `theta`.
fn crossing_x(v: Point, u: Point, r: f64, sigma: f64, theta: f64, branch: f64) -> Option<f64> {
    let d = unit(theta);
    let anchor = v + d.right_normal() * (sigma * r);
    if branch == 0.0 {
        return Some(anchor.x);
    }
    let w = u - anchor;
    let along = w.dot(d);
    let h = w.cross(d);
    let disc = r * r - h * h;
    if disc < -1e-9 * r * r {
        return None;
    }
    let s = along + branch * disc.max(0.0).sqrt();
    Some(anchor.x + s * d.x)
}

fn cyclic_range(angles: &[f64], a: f64, b: f64) -> (usize, usize) {
    let m = angles.len();
    let ia = angles.partition_point(|&x| x < a);
    let ib = angles.partition_point(|&x| x < b);
    let len = if a <= b { ib.saturating_sub(ia) } else { m - ia + ib };
    (if m == 0 { 0 } else { ia % m }, len)
}

fn build_runs(inst: &Instance, idx: &AngularIndex) -> Vec<Run> {
    let r = inst.half_separation();
    let n = inst.len();
    let mut runs = Vec::new();
    for v in 0..n {
        let angles = idx.angles(v);
        let order = idx.order(v);
        let m = angles.len();
        if m == 0 {
            continue;
        }
        let pv = inst.site(v);
        for side in [Side::Right, Side::Left] {
            let sigma = side.sign();
            // θ = γ + σπ/2 where γ is the direction from v to the tangent point
            let shift = sigma * FRAC_PI_2;
            for u in 0..n {
                let pu = inst.site(u);
                let mut cuts: Vec<f64> = Vec::with_capacity(10);
                let branches: &[f64];
                if u == v {
                    cuts.extend([shift, shift + PI]);
                    branches = &[0.0];
                } else if side == Side::Left {
                    // each line is already a right tangent of one of its circles
                    continue;
                } else {
                    let q = pu - pv;
                    let rho = q.norm();
                    let beta = q.y.atan2(q.x);
                    cuts.extend([beta + FRAC_PI_2, beta - FRAC_PI_2]);
                    if rho > 2.0 * r {
                        let a = (2.0 * r / rho).acos();
                        cuts.extend([beta + a, beta - a]);
                    } else if rho < 2.0 * r {
                        let a = (rho / (2.0 * r)).acos();
                        cuts.extend([beta + a, beta - a]);
                    }
                    for px in [pu.x + r, pu.x - r] {
                        let w = Point::new(px, pu.y) - pv;
                        let wn = w.norm();
                        if wn >= r {
                            let a = (r / wn).min(1.0).acos();
                            let base = w.y.atan2(w.x);
                            cuts.extend([base + a, base - a]);
                        }
                    }
                    for c in cuts.iter_mut() {
                        *c += shift;
                    }
                    branches = &[1.0, -1.0];
                }
                for (a, b) in pieces(cuts) {
                    let (mut start, mut len) = cyclic_range(angles, a, b);
                    if len > 0 && order[start] == u {
                        start = (start + 1) % m;
                        len -= 1;
                    }
                    if len > 0 && order[(start + len - 1) % m] == u {
                        len -= 1;
                    }
                    if len == 0 {
                        continue;
                    }
                    let span = {
                        let s = normalize_angle(b - a);
                        if s == 0.0 {
                            2.0 * PI
                        } else {
                            s
                        }
                    };
                    let mid = piece_mid(a, b);
                    for &branch in branches {
                        if branch != 0.0 {
                            // skip pieces where the tangents miss C(u)
                            let d = unit(mid);
                            let anchor = pv + d.right_normal() * (sigma * r);
                            if (pu - anchor).cross(d).abs() > r {
                                continue;
                            }
                        }
                        let x1 = crossing_x(pv, pu, r, sigma, a + 0.25 * span, branch);
                        let x3 = crossing_x(pv, pu, r, sigma, a + 0.75 * span, branch);
                        let increasing = match (x1, x3) {
                            (Some(x1), Some(x3)) => x3 >= x1,
                            _ => true,
                        };
                        runs.push(Run {
                            u,
                            v,
                            sigma,
                            branch,
                            start,
                            len,
                            increasing,
                        });
                    }
                }
            }
        }
    }
    runs
}

fn key(inst: &Instance, idx: &AngularIndex, run: &Run, j: usize) -> f64 {
    let m = idx.angles(run.v).len();
    let off = if run.increasing { j } else { run.len - 1 - j };
    let theta = idx.angles(run.v)[(run.start + off) % m];
    crossing_x(
        inst.site(run.v),
        inst.site(run.u),
        inst.half_separation(),
        run.sigma,
        theta,
        run.branch,
    )
    .unwrap_or(f64::NAN)
}

/// Every crossing abscissa, run by run, in ascending order within each run.
pub fn crossing_runs(inst: &Instance, idx: &AngularIndex) -> Vec<Vec<f64>> {
    build_runs(inst, idx)
        .iter()
        .map(|run| (0..run.len).map(|j| key(inst, idx, run, j)).collect())
        .collect()
}

pub fn local_optimal_line_lm(inst: &Instance, idx: &AngularIndex, frame: &BoundingFrame) -> Result<FamilySearch> {
    let mut dec = Decider::new(inst, idx, frame);
    search(&mut dec)
}

pub(crate) fn search(dec: &mut Decider<'_>) -> Result<FamilySearch> {
    let (inst, idx) = (dec.inst, dec.idx);
    let runs = build_runs(inst, idx);
    let lens: Vec<usize> = runs.iter().map(|r| r.len).collect();
    let mut stats = FamilyStats {
        elements: lens.iter().sum(),
        runs: runs.len(),
        ..FamilyStats::default()
    };
    if stats.elements == 0 {
        return Ok(FamilySearch {
            outcome: FamilyOutcome::Empty,
            stats,
        });
    }
    let mut certified = None;
    let prune = parallel_binary_search(
        &lens,
        |i, j| key(inst, idx, &runs[i], j),
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
