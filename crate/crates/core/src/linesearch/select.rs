use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use super::partition;

/// An element `m` with at most half the total weight strictly below it and
/// at most half strictly above. Linear time.
pub fn weighted_median(items: &[(f64, f64)]) -> Result<f64> {
    if items.is_empty() {
        return Err(Error::EmptySelection);
    }
    let total: f64 = items.iter().map(|p| p.1).sum();
    let half = 0.5 * total;
    let mut cur: Vec<(f64, f64)> = items.to_vec();
    let (mut below, mut above) = (0.0, 0.0);
    loop {
        let mid = cur.len() / 2;
        let (_, &mut (pivot, _), _) = cur.select_nth_unstable_by(mid, |a, b| a.0.total_cmp(&b.0));
        let (mut wl, mut we, mut wg) = (0.0, 0.0, 0.0);
        for &(v, w) in &cur {
            if v < pivot {
                wl += w;
            } else if v > pivot {
                wg += w;
            } else {
                we += w;
            }
        }
        if below + wl <= half && above + wg <= half {
            return Ok(pivot);
        }
        if below + wl > half {
            above += we + wg;
            cur.retain(|p| p.0 < pivot);
        } else {
            below += wl + we;
            cur.retain(|p| p.0 > pivot);
        }
        if cur.is_empty() {
            // only reachable through rounding in the half-sums
            return Ok(pivot);
        }
    }
}

/// What to discard after probing a value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Cut {
    /// Drop every key `≤` the value.
    AtMost(f64),
    /// Drop every key `≥` the value.
    AtLeast(f64),
    Stop,
}

/// Bookkeeping of one pruned search over sorted runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PruneStats {
    /// Elements at the start.
    pub initial: usize,
    /// Probes issued.
    pub iterations: usize,
    /// Smallest share of the surviving elements removed by a single probe
    /// that did not stop the search; 1 when there was none.
    pub min_fraction: f64,
}

impl Default for PruneStats {
    fn default() -> Self {
        Self {
            initial: 0,
            iterations: 0,
            min_fraction: 1.0,
        }
    }
}

/// Parallel binary search over runs sorted by ascending key.
///
/// Every round probes the weighted median of the runs' middle keys (weight =
/// surviving run length). Whichever side the probe discards, the runs whose
/// middle falls on that side hold at least half the mass and lose at least
/// half of it, so each round removes at least a quarter of what is left.
pub(crate) fn parallel_binary_search<K, P>(lens: &[usize], key: K, mut probe: P) -> Result<PruneStats>
where
    K: Fn(usize, usize) -> f64,
    P: FnMut(f64) -> Result<Cut>,
{
    let mut lo = vec![0usize; lens.len()];
    let mut hi = lens.to_vec();
    let mut live: Vec<usize> = (0..lens.len()).filter(|&i| lens[i] > 0).collect();
    let mut mass: usize = lens.iter().sum();
    let mut stats = PruneStats {
        initial: mass,
        ..PruneStats::default()
    };
    let mut items = Vec::with_capacity(live.len());
    while !live.is_empty() {
        items.clear();
        for &i in &live {
            let mid = lo[i] + (hi[i] - lo[i]) / 2;
            items.push((key(i, mid), (hi[i] - lo[i]) as f64));
        }
        let m = weighted_median(&items)?;
        stats.iterations += 1;
        let before = mass;
        match probe(m)? {
            Cut::Stop => break,
            Cut::AtMost(c) => {
                for &i in &live {
                    let (l, h) = (lo[i], hi[i]);
                    let j = l + partition(h - l, |j| key(i, l + j) <= c);
                    mass -= j - l;
                    lo[i] = j;
                }
            }
            Cut::AtLeast(c) => {
                for &i in &live {
                    let (l, h) = (lo[i], hi[i]);
                    let j = l + partition(h - l, |j| key(i, l + j) < c);
                    mass -= h - j;
                    hi[i] = j;
                }
            }
        }
        let frac = (before - mass) as f64 / before as f64;
        stats.min_fraction = stats.min_fraction.min(frac);
        live.retain(|&i| lo[i] < hi[i]);
    }
    Ok(stats)
}
