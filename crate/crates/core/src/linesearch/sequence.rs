use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::index::{AngularIndex, Side};
use crate::error::{Error, Result};
use crate::geom::{line_circle_intersections_tol, normalize_angle, DirectedLine, Point, PARALLEL_TOL};
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BreakpointSource {
    /// Outer tangent of `C(from)` and `C(to)` on `side`, seen along `from → to`.
    Tangent { from: usize, to: usize, side: Side },
    Circle { center: usize },
    /// One of the caller-supplied extra lines, by position.
    Extra(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Breakpoint {
    pub location: Point,
    /// Position along the query line.
    pub t: f64,
    pub source: BreakpointSource,
}

#[derive(Debug, Clone)]
enum Kind {
    /// The cyclic slice `P(v)[start .. start + len]`, read forward or backward.
    Tangent {
        v: usize,
        side: Side,
        start: usize,
        forward: bool,
    },
    Explicit(Vec<Breakpoint>),
}

/// A run of breakpoints in strictly decreasing position along the query
/// line. Tangent runs are views into P(v) and cost O(1) to build.
#[derive(Debug, Clone)]
pub struct ImplicitSequence {
    kind: Kind,
    len: usize,
}

impl ImplicitSequence {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.kind, Kind::Explicit(_))
    }
}

/// All breakpoints of one query line, grouped into sorted runs.
#[derive(Debug, Clone)]
pub struct BreakpointSequences<'a> {
    idx: &'a AngularIndex,
    line: DirectedLine,
    extra: Vec<DirectedLine>,
    seqs: Vec<ImplicitSequence>,
}

/// Orients a non-horizontal line so that its direction has positive y.
pub fn upward(line: &DirectedLine) -> Result<DirectedLine> {
    if line.direction.y.abs() <= PARALLEL_TOL {
        return Err(Error::HorizontalLine);
    }
    Ok(if line.direction.y < 0.0 {
        line.reversed()
    } else {
        *line
    })
}

/// Start index and length of the entries of sorted `angles` in the
/// half-open CCW range `[a, b)`.
fn cyclic_range(angles: &[f64], a: f64, b: f64) -> (usize, usize) {
    let m = angles.len();
    let ia = angles.partition_point(|&x| x < a);
    let ib = angles.partition_point(|&x| x < b);
    let len = if a <= b { ib.saturating_sub(ia) } else { m - ia + ib };
    (if m == 0 { 0 } else { ia % m }, len)
}

/// Splits the circle at `cuts` (absolute angles) and returns each piece as
/// `(begin, end)`.
pub(crate) fn pieces(mut cuts: Vec<f64>) -> Vec<(f64, f64)> {
    for c in cuts.iter_mut() {
        *c = normalize_angle(*c);
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let k = cuts.len();
    (0..k).map(|i| (cuts[i], cuts[(i + 1) % k])).collect()
}

pub(crate) fn piece_mid(a: f64, b: f64) -> f64 {
    let len = normalize_angle(b - a);
    let len = if len == 0.0 { 2.0 * PI } else { len };
    normalize_angle(a + 0.5 * len)
}

/// Position along `line` where `other` crosses it.
#[inline]
pub(crate) fn crossing_param(line: &DirectedLine, other: &DirectedLine) -> f64 {
    (other.anchor - line.anchor).cross(other.direction) / line.direction.cross(other.direction)
}

/// The breakpoints of `line` against every outer tangent (as O(n) implicit
/// runs over the P(v) sequences), against every circle of 𝒞(V) and against
/// the `extra` lines (as explicit sorted runs). Tangents parallel to the line
/// are left out.
pub fn breakpoint_sequences<'a>(
    idx: &'a AngularIndex,
    inst: &Instance,
    line: &DirectedLine,
    extra: &[DirectedLine],
) -> Result<BreakpointSequences<'a>> {
    let line = upward(line)?;
    let r = idx.radius();
    let d = line.direction;
    let n_r = d.right_normal();
    let offset = line.angle - FRAC_PI_2;
    let mut seqs = Vec::new();

    for v in 0..idx.len() {
        let angles = idx.angles(v);
        if angles.is_empty() {
            continue;
        }
        let dv = -(inst.site(v) - line.anchor).dot(n_r);
        for side in [Side::Right, Side::Left] {
            let sigma = side.sign();
            // in the rotated frame the line is vertical; the crossing moves
            // with sign(D − σ r sin θ') and jumps where the tangent is parallel
            let mut cuts = vec![FRAC_PI_2 + offset, 1.5 * PI + offset];
            if dv.abs() < r {
                let s = (sigma * dv / r).asin();
                cuts.push(s + offset);
                cuts.push(PI - s + offset);
            }
            let tangents = idx.tangents(v, side);
            for (a, b) in pieces(cuts) {
                let (mut start, mut len) = cyclic_range(angles, a, b);
                let m = angles.len();
                while len > 0 && line.is_parallel(&tangents[start]) {
                    start = (start + 1) % m;
                    len -= 1;
                }
                while len > 0 && line.is_parallel(&tangents[(start + len - 1) % m]) {
                    len -= 1;
                }
                if len == 0 {
                    continue;
                }
                let mid = piece_mid(a, b) - offset;
                let forward = dv - sigma * r * mid.sin() < 0.0;
                seqs.push(ImplicitSequence {
                    kind: Kind::Tangent {
                        v,
                        side,
                        start,
                        forward,
                    },
                    len,
                });
            }
        }
    }

    let mut circ = Vec::new();
    for c in 0..inst.len() {
        for p in line_circle_intersections_tol(&line, &inst.circle(c), inst.eps()) {
            circ.push(Breakpoint {
                location: p,
                t: line.param_of(p),
                source: BreakpointSource::Circle { center: c },
            });
        }
    }
    push_explicit(&mut seqs, circ);

    let mut ex = Vec::new();
    for (i, l) in extra.iter().enumerate() {
        if !line.is_parallel(l) {
            let t = crossing_param(&line, l);
            ex.push(Breakpoint {
                location: line.point_at(t),
                t,
                source: BreakpointSource::Extra(i),
            });
        }
    }
    push_explicit(&mut seqs, ex);

    Ok(BreakpointSequences {
        idx,
        line,
        extra: extra.to_vec(),
        seqs,
    })
}

fn push_explicit(seqs: &mut Vec<ImplicitSequence>, mut bps: Vec<Breakpoint>) {
    if bps.is_empty() {
        return;
    }
    bps.sort_by(|a, b| b.t.total_cmp(&a.t));
    let len = bps.len();
    seqs.push(ImplicitSequence {
        kind: Kind::Explicit(bps),
        len,
    });
}

impl<'a> BreakpointSequences<'a> {
    /// The query line, oriented upward.
    pub fn line(&self) -> &DirectedLine {
        &self.line
    }

    pub fn sequences(&self) -> &[ImplicitSequence] {
        &self.seqs
    }

    pub fn total_len(&self) -> usize {
        self.seqs.iter().map(|s| s.len).sum()
    }

    fn tangent_pos(&self, seq: &ImplicitSequence, k: usize) -> Option<(usize, Side, usize)> {
        match seq.kind {
            Kind::Tangent {
                v,
                side,
                start,
                forward,
            } => {
                let m = self.idx.order(v).len();
                let off = if forward { k } else { seq.len - 1 - k };
                Some((v, side, (start + off) % m))
            }
            Kind::Explicit(_) => None,
        }
    }

    /// Position along the line of the `k`-th breakpoint of sequence `s`;
    /// decreasing in `k`.
    #[inline]
    pub fn t(&self, s: usize, k: usize) -> f64 {
        let seq = &self.seqs[s];
        match &seq.kind {
            Kind::Explicit(b) => b[k].t,
            _ => {
                let (v, side, pos) = self.tangent_pos(seq, k).expect("tangent run");
                crossing_param(&self.line, self.idx.tangent(v, pos, side))
            }
        }
    }

    /// Same elements in ascending order of position.
    #[inline]
    pub fn t_ascending(&self, s: usize, j: usize) -> f64 {
        self.t(s, self.seqs[s].len - 1 - j)
    }

    pub fn breakpoint(&self, s: usize, k: usize) -> Breakpoint {
        let seq = &self.seqs[s];
        match &seq.kind {
            Kind::Explicit(b) => b[k],
            _ => {
                let (v, side, pos) = self.tangent_pos(seq, k).expect("tangent run");
                let t = crossing_param(&self.line, self.idx.tangent(v, pos, side));
                Breakpoint {
                    location: self.line.point_at(t),
                    t,
                    source: BreakpointSource::Tangent {
                        from: v,
                        to: self.idx.order(v)[pos],
                        side,
                    },
                }
            }
        }
    }

    pub fn extra_lines(&self) -> &[DirectedLine] {
        &self.extra
    }

    /// Every breakpoint, sequence by sequence.
    pub fn iter(&self) -> impl Iterator<Item = Breakpoint> + '_ {
        (0..self.seqs.len()).flat_map(move |s| (0..self.seqs[s].len).map(move |k| self.breakpoint(s, k)))
    }

    /// The breakpoint strictly inside `(lo, hi)` closest to `target`, if any.
    pub fn nearest_inside(&self, lo: f64, hi: f64, target: f64) -> Option<Breakpoint> {
        let mut best: Option<(f64, usize, usize)> = None;
        for s in 0..self.seqs.len() {
            let len = self.seqs[s].len;
            // first ascending index with t >= target
            let j = partition(len, |j| self.t_ascending(s, j) < target);
            for cand in [j.checked_sub(1), (j < len).then_some(j)].into_iter().flatten() {
                let t = self.t_ascending(s, cand);
                if t > lo && t < hi {
                    let dist = (t - target).abs();
                    if best.is_none_or(|b| dist < b.0) {
                        best = Some((dist, s, len - 1 - cand));
                    }
                }
            }
        }
        best.map(|(_, s, k)| self.breakpoint(s, k))
    }
}

/// First index in `0..len` for which `pred` is false, assuming `pred` is
/// true on a prefix.
pub(crate) fn partition(len: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (0, len);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{line_line_intersection, Point};
    use crate::instance::Customer;
    use crate::linesearch::index::build_angular_index;

    fn brute(inst: &Instance, idx: &AngularIndex, line: &DirectedLine) -> Vec<f64> {
        let line = upward(line).unwrap();
        let mut ts = Vec::new();
        for v in 0..idx.len() {
            for side in [Side::Right, Side::Left] {
                for t in idx.tangents(v, side) {
                    if let Some(p) = line_line_intersection(&line, t) {
                        ts.push(line.param_of(p));
                    }
                }
            }
        }
        for c in inst.circles() {
            for p in line_circle_intersections_tol(&line, &c, inst.eps()) {
                ts.push(line.param_of(p));
            }
        }
        ts.sort_by(f64::total_cmp);
        ts
    }

    fn check(inst: &Instance, line: &DirectedLine) {
        let idx = build_angular_index(inst).unwrap();
        let bs = breakpoint_sequences(&idx, inst, line, &[]).unwrap();
        for s in 0..bs.sequences().len() {
            for k in 1..bs.sequences()[s].len() {
                assert!(bs.t(s, k) < bs.t(s, k - 1), "sequence {s} not decreasing at {k}");
            }
        }
        let mut got: Vec<f64> = bs.iter().map(|b| b.t).collect();
        got.sort_by(f64::total_cmp);
        let want = brute(inst, &idx, line);
        assert_eq!(got.len(), want.len());
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() <= 1e-7 * (1.0 + b.abs()), "{a} vs {b}");
        }
        for b in bs.iter() {
            assert!(bs.line().side(b.location).abs() < 1e-7 * (1.0 + b.t.abs()));
        }
    }

    fn sample() -> Instance {
        Instance::new(
            vec![
                Customer::new(0.0, 0.0, 1.0),
                Customer::new(-4.0, 1.0, 2.0),
                Customer::new(3.0, -2.0, 1.0),
                Customer::new(1.0, 5.0, 3.0),
                Customer::new(7.0, 3.0, 1.0),
                Customer::new(-2.0, -6.0, 1.0),
            ],
            3.0,
        )
        .unwrap()
    }

    #[test]
    fn vertical_lines_cover_all_breakpoints() {
        let inst = sample();
        for x in [-20.0, -4.3, -1.0, 0.4, 2.5, 6.9, 30.0] {
            check(&inst, &DirectedLine::vertical(x));
        }
    }

    #[test]
    fn slanted_lines_cover_all_breakpoints() {
        let inst = sample();
        for k in 0..24 {
            let a = 0.1 + k as f64 * 0.26;
            if a.sin().abs() < 1e-3 {
                continue;
            }
            check(&inst, &DirectedLine::new(Point::new(0.3, -0.7), a));
        }
    }

    #[test]
    fn parallel_tangents_are_excluded() {
        let inst = Instance::new(
            vec![Customer::new(0.0, 0.0, 1.0), Customer::new(1.0, 10.0, 1.0)],
            2.0,
        )
        .unwrap();
        let idx = build_angular_index(&inst).unwrap();
        let dir = DirectedLine::through(inst.site(0), inst.site(1)).unwrap();
        let line = DirectedLine::new(Point::new(-20.0, 0.0), dir.angle);
        let bs = breakpoint_sequences(&idx, &inst, &line, &[]).unwrap();
        assert!(bs.iter().all(|b| !matches!(b.source, BreakpointSource::Tangent { .. })));
    }

    #[test]
    fn horizontal_line_is_rejected() {
        let inst = sample();
        let idx = build_angular_index(&inst).unwrap();
        assert!(matches!(
            breakpoint_sequences(&idx, &inst, &DirectedLine::horizontal(1.0), &[]),
            Err(Error::HorizontalLine)
        ));
    }

    #[test]
    fn extra_lines_add_one_breakpoint_each() {
        let inst = sample();
        let idx = build_angular_index(&inst).unwrap();
        let extra = [DirectedLine::horizontal(100.0), DirectedLine::horizontal(-100.0)];
        let bs = breakpoint_sequences(&idx, &inst, &DirectedLine::vertical(0.5), &extra).unwrap();
        let ex: Vec<_> = bs.iter().filter(|b| matches!(b.source, BreakpointSource::Extra(_))).collect();
        assert_eq!(ex.len(), 2);
        assert!((ex[0].t - 100.0).abs() < 1e-12 && (ex[1].t + 100.0).abs() < 1e-12);
    }

    #[test]
    fn nearest_inside_picks_closest() {
        let inst = sample();
        let idx = build_angular_index(&inst).unwrap();
        let bs = breakpoint_sequences(&idx, &inst, &DirectedLine::vertical(0.5), &[]).unwrap();
        let all: Vec<f64> = bs.iter().map(|b| b.t).collect();
        let (lo, hi) = (-3.0, 4.0);
        let target = 0.7;
        let want = all
            .iter()
            .copied()
            .filter(|&t| t > lo && t < hi)
            .min_by(|a, b| (a - target).abs().total_cmp(&(b - target).abs()));
        let got = bs.nearest_inside(lo, hi, target).map(|b| b.t);
        assert_eq!(got, want);
    }
}
