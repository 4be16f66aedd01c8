use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Circle, Point, EPS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Customer {
    pub site: Point,
    pub weight: f64,
}

impl Customer {
    pub const fn new(x: f64, y: f64, weight: f64) -> Self {
        Self {
            site: Point::new(x, y),
            weight,
        }
    }
}

/// Weighted customers plus the minimal separation `R` between leader and
/// follower.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    customers: Vec<Customer>,
    separation: f64,
    eps: f64,
}

impl Instance {
    /// Validates weights, coordinates and general position.
    pub fn new(customers: Vec<Customer>, separation: f64) -> Result<Self> {
        let inst = Self::new_unvalidated(customers, separation)?;
        inst.validate_general_position()?;
        Ok(inst)
    }

    /// Checks everything except general position.
    pub fn new_unvalidated(customers: Vec<Customer>, separation: f64) -> Result<Self> {
        if customers.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if !separation.is_finite() || separation < 0.0 {
            return Err(Error::InvalidSeparation(separation));
        }
        let mut scale = separation;
        for (index, c) in customers.iter().enumerate() {
            if !c.site.is_finite() {
                return Err(Error::NonFiniteCoordinate { index });
            }
            if !(c.weight.is_finite() && c.weight > 0.0) {
                return Err(Error::InvalidWeight {
                    index,
                    weight: c.weight,
                });
            }
            scale = scale.max(c.site.x.abs()).max(c.site.y.abs());
        }
        Ok(Self {
            customers,
            separation,
            eps: EPS * scale.max(1.0),
        })
    }

    /// Overrides the incidence tolerance.
    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    /// No two sites share an x or y coordinate and no three are collinear.
    ///
    /// Runs in O(n² log n): around each site the others are sorted by
    /// direction modulo π, and only neighbours in that order are compared.
    pub fn validate_general_position(&self) -> Result<()> {
        let n = self.customers.len();
        for axis in ['x', 'y'] {
            let coord = |i: usize| {
                let p = self.customers[i].site;
                if axis == 'x' {
                    p.x
                } else {
                    p.y
                }
            };
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| coord(a).total_cmp(&coord(b)));
            for w in order.windows(2) {
                if (coord(w[1]) - coord(w[0])).abs() <= self.eps {
                    let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
                    return Err(Error::SharedCoordinate {
                        axis,
                        first,
                        second,
                        value: coord(first),
                    });
                }
            }
        }
        if n < 3 {
            return Ok(());
        }
        let mut dirs: Vec<(f64, usize)> = Vec::with_capacity(n - 1);
        for v in 0..n {
            let o = self.customers[v].site;
            dirs.clear();
            for u in (0..n).filter(|&u| u != v) {
                let d = self.customers[u].site - o;
                let a = d.y.atan2(d.x).rem_euclid(std::f64::consts::PI);
                dirs.push((a, u));
            }
            dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
            let m = dirs.len();
            for k in 0..m {
                let (a, b) = (dirs[k].1, dirs[(k + 1) % m].1);
                if a == b {
                    continue;
                }
                let (da, db) = (self.customers[a].site - o, self.customers[b].site - o);
                if da.cross(db).abs() <= EPS * da.norm() * db.norm() {
                    let mut t = [v, a, b];
                    t.sort_unstable();
                    return Err(Error::Collinear(t[0], t[1], t[2]));
                }
            }
        }
        Ok(())
    }

    pub fn customers(&self) -> &[Customer] {
        &self.customers
    }

    pub fn len(&self) -> usize {
        self.customers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.customers.is_empty()
    }

    pub fn site(&self, i: usize) -> Point {
        self.customers[i].site
    }

    /// The separation distance `R`.
    pub fn separation(&self) -> f64 {
        self.separation
    }

    /// `r = R/2`, the radius of the circles in 𝒞(V).
    pub fn half_separation(&self) -> f64 {
        0.5 * self.separation
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn total_weight(&self) -> f64 {
        self.customers.iter().map(|c| c.weight).sum()
    }

    pub fn circle(&self, i: usize) -> Circle {
        Circle::new(self.customers[i].site, self.half_separation())
    }

    pub fn circles(&self) -> impl Iterator<Item = Circle> + '_ {
        (0..self.len()).map(|i| self.circle(i))
    }

    /// Largest absolute coordinate, at least 1.
    pub fn scale(&self) -> f64 {
        self.customers
            .iter()
            .fold(1.0f64, |m, c| m.max(c.site.x.abs()).max(c.site.y.abs()))
    }

    pub(crate) fn require_positive_separation(&self) -> Result<()> {
        if self.separation > 0.0 {
            Ok(())
        } else {
            Err(Error::Unsupported("the solvers need a positive separation R"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Instance::new(vec![], 1.0), Err(Error::EmptyInstance));
        assert!(matches!(
            Instance::new(vec![Customer::new(0.0, 0.0, 0.0)], 1.0),
            Err(Error::InvalidWeight { index: 0, .. })
        ));
        assert!(matches!(
            Instance::new(vec![Customer::new(f64::NAN, 0.0, 1.0)], 1.0),
            Err(Error::NonFiniteCoordinate { index: 0 })
        ));
        assert_eq!(
            Instance::new(vec![Customer::new(0.0, 0.0, 1.0)], -1.0),
            Err(Error::InvalidSeparation(-1.0))
        );
    }

    #[test]
    fn general_position() {
        let tri = vec![
            Customer::new(0.0, 0.0, 1.0),
            Customer::new(4.0, 1.0, 1.0),
            Customer::new(1.0, 3.0, 1.0),
        ];
        assert!(Instance::new(tri, 2.0).is_ok());

        let shared = vec![Customer::new(0.0, 0.0, 1.0), Customer::new(0.0, 5.0, 1.0)];
        assert!(matches!(
            Instance::new(shared, 2.0),
            Err(Error::SharedCoordinate { axis: 'x', .. })
        ));

        let line = vec![
            Customer::new(2.0, 2.0, 1.0),
            Customer::new(0.0, 0.0, 1.0),
            Customer::new(1.0, 1.0, 1.0),
        ];
        assert_eq!(Instance::new(line, 2.0), Err(Error::Collinear(0, 1, 2)));

        // collinear through the middle point, directions differ by π
        let line = vec![
            Customer::new(-3.0, -1.0, 1.0),
            Customer::new(0.0, 0.0, 1.0),
            Customer::new(6.0, 2.0, 1.0),
            Customer::new(1.0, 7.0, 1.0),
        ];
        assert_eq!(Instance::new(line, 2.0), Err(Error::Collinear(0, 1, 2)));
    }

    #[test]
    fn derived_quantities() {
        let inst = Instance::new(
            vec![Customer::new(-30.0, 1.0, 2.0), Customer::new(4.0, -7.0, 3.0)],
            4.0,
        )
        .unwrap();
        assert_eq!(inst.half_separation(), 2.0);
        assert_eq!(inst.total_weight(), 5.0);
        assert_eq!(inst.scale(), 30.0);
        assert!((inst.eps() - 3e-8).abs() < 1e-20);
        assert_eq!(inst.circle(1).radius, 2.0);
    }
}
