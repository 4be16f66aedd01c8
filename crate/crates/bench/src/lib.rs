//! Instance generation shared by the benchmarks.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rivalloc::{Customer, Instance};

/// `n` customers with distinct integer x and y coordinates in `[-c, c]`,
/// weights in `[1, 10]`. `c` grows with `n` so that sampling stays cheap.
pub fn random_customers(n: usize, rng: &mut ChaCha8Rng) -> Vec<Customer> {
    let c = (4 * n as i64).max(50);
    let (mut xs, mut ys) = (HashSet::new(), HashSet::new());
    let mut customers = Vec::with_capacity(n);
    while customers.len() < n {
        let (x, y) = (rng.gen_range(-c..=c), rng.gen_range(-c..=c));
        if xs.contains(&x) || ys.contains(&y) {
            continue;
        }
        xs.insert(x);
        ys.insert(y);
        customers.push(Customer::new(x as f64, y as f64, rng.gen_range(1..=10) as f64));
    }
    customers
}

/// A random instance in general position.
pub fn random_instance(n: usize, separation: f64, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Ok(inst) = Instance::new(random_customers(n, &mut rng), separation) {
            return inst;
        }
    }
}

/// A random instance without the general-position check, for evaluators
/// that do not need it.
pub fn random_instance_unchecked(n: usize, separation: f64, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Instance::new_unvalidated(random_customers(n, &mut rng), separation).expect("valid weights and coordinates")
}
