use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::{CustomerRecord, InstanceFile};

#[derive(Debug, Clone, Copy)]
pub struct GenParams {
    pub n: usize,
    pub coord_range: i64,
    pub weight_range: i64,
    pub separation: f64,
}

/// Attempts at a full instance before giving up.
pub const RETRY_BUDGET: usize = 10_000;

fn collinear(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> bool {
    (b.0 - a.0) * (c.1 - a.1) == (b.1 - a.1) * (c.0 - a.0)
}

/// Integer sites in `[-c, c]²` with distinct x and y coordinates and no
/// three on a line; integer weights in `[1, weight_range]`.
pub fn generate(p: &GenParams, seed: u64) -> Option<InstanceFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = p.coord_range;
    for _ in 0..RETRY_BUDGET {
        let mut pts: Vec<(i64, i64)> = Vec::with_capacity(p.n);
        let mut ok = true;
        while ok && pts.len() < p.n {
            let mut placed = false;
            for _ in 0..100 {
                let q = (rng.gen_range(-c..=c), rng.gen_range(-c..=c));
                if pts.iter().any(|s| s.0 == q.0 || s.1 == q.1) {
                    continue;
                }
                if (0..pts.len()).any(|i| (i + 1..pts.len()).any(|j| collinear(pts[i], pts[j], q))) {
                    continue;
                }
                pts.push(q);
                placed = true;
                break;
            }
            ok = placed;
        }
        if !ok {
            continue;
        }
        let customers = pts
            .into_iter()
            .map(|(x, y)| CustomerRecord {
                x: x as f64,
                y: y as f64,
                w: rng.gen_range(1..=p.weight_range) as f64,
            })
            .collect();
        return Some(InstanceFile {
            r: p.separation,
            customers,
        });
    }
    None
}
