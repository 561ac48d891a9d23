//! Fixed benchmark inputs shared by the criterion targets.

use lightspan::generate::{generate, generate_scg, Family, GeneratorSpec, WeightSpec};
use lightspan::{SpanningCycleGraph, WeightedGraph};

/// A connected gnm graph with `4n` edges and integer weights in `1..=10`.
pub fn gnm_instance(n: usize, seed: u64) -> WeightedGraph {
    let spec = GeneratorSpec {
        family: Family::Gnm { n, m: (4 * n).min(n * (n - 1) / 2) },
        weights: WeightSpec::Uniform { lo: 1, hi: 10 },
        seed,
    };
    generate(&spec).expect("gnm parameters are valid")
}

/// A unit cycle on `n` nodes with `chords` random chords of weight 1 to 8.
pub fn cycle_instance(n: usize, chords: usize, seed: u64) -> SpanningCycleGraph {
    let spec = GeneratorSpec {
        family: Family::CyclePlusChords { n, chords },
        weights: WeightSpec::Uniform { lo: 1, hi: 8 },
        seed,
    };
    generate_scg(&spec).expect("cycle parameters are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_the_requested_shape() {
        let g = gnm_instance(20, 1);
        assert_eq!(g.node_count(), 20);
        assert!(g.is_connected());
        let c = cycle_instance(16, 3, 1);
        assert_eq!((c.node_count(), c.chord_count()), (16, 3));
    }
}
