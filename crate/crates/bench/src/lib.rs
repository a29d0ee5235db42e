//! Seeded inputs shared by the benchmarks.

use jbcone_core::sampling::{random_element, random_interior, trial_rng};
use jbcone_core::{Algebra, Element};

/// Two generic elements and two interior points of one algebra.
pub struct Fixture {
    pub alg: Algebra,
    pub a: Element,
    pub b: Element,
    pub x: Element,
    pub y: Element,
}

impl Fixture {
    pub fn new(alg: Algebra, seed: u64) -> Self {
        let mut rng = trial_rng(seed, 0);
        Fixture {
            a: random_element(&alg, &mut rng),
            b: random_element(&alg, &mut rng),
            x: random_interior(&alg, &mut rng),
            y: random_interior(&alg, &mut rng),
            alg,
        }
    }
}

/// Algebras the benchmarks sweep over.
pub fn bench_algebras() -> Vec<Algebra> {
    vec![
        Algebra::Orthant(16),
        Algebra::Sym(3),
        Algebra::Sym(8),
        Algebra::Spin(16),
        Algebra::sum_inf(vec![Algebra::Sym(2), Algebra::Spin(3)]).expect("valid sum"),
    ]
}
