use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{outer_tangents, polar_angle, DirectedLine, EPS};
use crate::instance::Instance;

/// Which outer tangent of an ordered pair `(v, w)`, seen along `v → w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    /// +1 for the right tangent, −1 for the left one.
    pub fn sign(self) -> f64 {
        match self {
            Side::Right => 1.0,
            Side::Left => -1.0,
        }
    }
}

/// For every site `v`, the other sites sorted by polar angle around `v`
/// (the sequence P(v)) and the two outer tangents of `C(v)` and `C(w)` for
/// each `w` in that order.
#[derive(Debug, Clone)]
pub struct AngularIndex {
    radius: f64,
    order: Vec<Vec<usize>>,
    angles: Vec<Vec<f64>>,
    right: Vec<Vec<DirectedLine>>,
    left: Vec<Vec<DirectedLine>>,
}

/// O(n² log n) preprocessing.
pub fn build_angular_index(inst: &Instance) -> Result<AngularIndex> {
    inst.require_positive_separation()?;
    let n = inst.len();
    let r = inst.half_separation();
    let mut idx = AngularIndex {
        radius: r,
        order: Vec::with_capacity(n),
        angles: Vec::with_capacity(n),
        right: Vec::with_capacity(n),
        left: Vec::with_capacity(n),
    };
    for v in 0..n {
        let o = inst.site(v);
        let mut around: Vec<(f64, usize)> = Vec::with_capacity(n.saturating_sub(1));
        for w in (0..n).filter(|&w| w != v) {
            around.push((polar_angle(inst.site(w), o)?, w));
        }
        around.sort_by(|a, b| a.0.total_cmp(&b.0));
        let m = around.len();
        if m >= 2 {
            for k in 0..m {
                let (a, b) = (around[k].1, around[(k + 1) % m].1);
                let (da, db) = (inst.site(a) - o, inst.site(b) - o);
                if da.dot(db) > 0.0 && da.cross(db).abs() <= EPS * da.norm() * db.norm() {
                    let mut t = [v, a, b];
                    t.sort_unstable();
                    return Err(Error::Collinear(t[0], t[1], t[2]));
                }
            }
        }
        let cv = inst.circle(v);
        let mut rs = Vec::with_capacity(m);
        let mut ls = Vec::with_capacity(m);
        for &(_, w) in &around {
            let (r, l) = outer_tangents(&cv, &inst.circle(w))?;
            rs.push(r);
            ls.push(l);
        }
        idx.order.push(around.iter().map(|p| p.1).collect());
        idx.angles.push(around.iter().map(|p| p.0).collect());
        idx.right.push(rs);
        idx.left.push(ls);
    }
    Ok(idx)
}

impl AngularIndex {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// P(v): the other sites in CCW polar-angle order around `v`.
    pub fn order(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    /// Polar angles matching [`Self::order`].
    pub fn angles(&self, v: usize) -> &[f64] {
        &self.angles[v]
    }

    /// Tangent of `C(v)` and `C(P(v)[k])` on the given side, oriented from `v`.
    pub fn tangent(&self, v: usize, k: usize, side: Side) -> &DirectedLine {
        match side {
            Side::Right => &self.right[v][k],
            Side::Left => &self.left[v][k],
        }
    }

    pub fn tangents(&self, v: usize, side: Side) -> &[DirectedLine] {
        match side {
            Side::Right => &self.right[v],
            Side::Left => &self.left[v],
        }
    }

    /// Directed tangent representatives, two per ordered pair.
    pub fn tangent_count(&self) -> usize {
        self.order.iter().map(|o| 2 * o.len()).sum()
    }

    /// Each geometric tangent line once: both sides of every pair `v < w`.
    pub fn undirected_tangents(&self) -> impl Iterator<Item = (usize, usize, Side, DirectedLine)> + '_ {
        (0..self.len()).flat_map(move |v| {
            self.order[v]
                .iter()
                .enumerate()
                .filter(move |&(_, &w)| v < w)
                .flat_map(move |(k, &w)| {
                    [
                        (v, w, Side::Right, self.right[v][k]),
                        (v, w, Side::Left, self.left[v][k]),
                    ]
                })
        })
    }
}
