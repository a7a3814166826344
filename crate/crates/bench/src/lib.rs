//! Shared inputs for the benchmarks.

use reprzeta::engine::EngineConfig;
use reprzeta::exact::rat_int;
use reprzeta::laurent::LaurentPoly;
use reprzeta::lie::{parse_expression, NilpotentLieAlgebra};
use reprzeta::topo_eval::MElement;

pub fn algebra(expr: &str) -> NilpotentLieAlgebra {
    parse_expression(expr).expect("catalog expression")
}

/// Single-threaded, no oracle.
pub fn serial() -> EngineConfig {
    EngineConfig { jobs: 1, ..Default::default() }
}

/// `(X²Y⁶ + X²Y³ − 4XY³ + Y³ + 1)(1 − Y)² / ((1 − X⁴Y⁴)(1 − X²Y²)(1 − XY)²)`.
pub fn sample_element() -> MElement {
    let lp = |t: &[([i64; 2], i64)]| LaurentPoly::from_terms(2, t.iter().map(|(e, c)| (e.to_vec(), rat_int(*c))));
    let p = lp(&[([2, 6], 1), ([2, 3], 1), ([1, 3], -4), ([0, 3], 1), ([0, 0], 1)]);
    let q = lp(&[([0, 0], 1), ([0, 1], -1)]);
    MElement::new(&p * &q.pow(2), vec![(4, vec![4], 1), (2, vec![2], 1), (1, vec![1], 2)])
}
