#![allow(dead_code)]

use ordcone::oracle::{random_space, InstanceSpec};
use ordcone::OrderedSpace;

/// Reproducible random spaces cycling through dimensions 2–5.
pub fn random_spaces(count: usize, seed_base: u64) -> Vec<OrderedSpace> {
    (0..count)
        .map(|i| {
            let dim = 2 + i % 4;
            let spec = InstanceSpec {
                dim,
                generator_count: dim + (i / 4) % 3,
                coefficient_bound: 2 + (i % 2) as u32,
                seed: seed_base + i as u64,
            };
            random_space(spec).expect("random cone")
        })
        .collect()
}
