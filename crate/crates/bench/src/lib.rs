//! Fixtures shared by the benchmarks.

use setmax_core::construct::{random_instance, Instance, RandomConstraint};

/// A fixed random instance per `(n, d)` so that timings are comparable
/// across runs.
pub fn fixture(n: usize, d: usize, constraint: RandomConstraint) -> Instance {
    random_instance(n, d, constraint, (n * 31 + d) as u64).expect("fixture parameters are valid")
}

/// Sizes swept by the solver benchmarks.
pub const SIZES: [usize; 4] = [8, 16, 32, 64];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_stable() {
        let c = RandomConstraint::Uniform { k: 4 };
        assert_eq!(fixture(16, 2, c).fingerprint(), fixture(16, 2, c).fingerprint());
    }
}
