#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rivalloc::geom::Point;
use rivalloc::{Customer, Instance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer sites in `[-c, c]²` with integer weights in `[1, wmax]`, in
/// general position. Sites are rejected one at a time.
pub fn instance(rng: &mut ChaCha8Rng, n: usize, c: i64, wmax: i64, sep: f64) -> Instance {
    assert!(n as i64 <= 2 * c + 1, "not enough distinct coordinates");
    loop {
        let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
        while pts.len() < n {
            let p = (rng.gen_range(-c..=c), rng.gen_range(-c..=c));
            if pts.iter().any(|q| q.0 == p.0 || q.1 == p.1) {
                continue;
            }
            let collinear = (0..pts.len()).any(|i| {
                (i + 1..pts.len()).any(|j| {
                    let (a, b) = (pts[i], pts[j]);
                    (b.0 - a.0) * (p.1 - a.1) == (b.1 - a.1) * (p.0 - a.0)
                })
            });
            if !collinear {
                pts.push(p);
            }
        }
        let customers = pts
            .iter()
            .map(|&(x, y)| Customer::new(x as f64, y as f64, rng.gen_range(1..=wmax) as f64))
            .collect();
        if let Ok(inst) = Instance::new(customers, sep) {
            return inst;
        }
    }
}

/// The grid used throughout the acceptance runs.
pub fn acceptance_instance(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(3..=10);
    let sep = [2.0, 4.0, 6.0][rng.gen_range(0..3)];
    instance(rng, n, 50, 10, sep)
}

pub fn random_point(rng: &mut ChaCha8Rng, c: f64) -> Point {
    Point::new(rng.gen_range(-c..c), rng.gen_range(-c..c))
}
