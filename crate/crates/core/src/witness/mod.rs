//! Linear witnesses from partial-transpose eigenvectors and positive maps,
//! plus their quadratic nonlinear extension.

mod linear;
mod map;
mod nonlinear;

pub use linear::{
    eval_linear, map_witness_for, negative_eigenvector, ppt_witness_for, witness_from_map, witness_from_ppt,
    LinearWitness, Provenance,
};
pub use map::{apply_extended, apply_extended_matrix, choi_map, map_adjoint, PositiveMap};
pub use nonlinear::{
    eval_nonlinear, nonlinear_extend, nonlinear_extend_with, NonlinearWitness, Readout, SConvention, WitnessConstants,
};

use crate::states::StateSampler;

/// Smallest value of `eval` over `samples` seeded random product states.
pub fn separable_minimum(
    dims: (usize, usize),
    samples: usize,
    seed: u64,
    mut eval: impl FnMut(&crate::states::Ket) -> f64,
) -> f64 {
    let mut sampler = StateSampler::new(dims, seed);
    (0..samples)
        .map(|_| eval(&sampler.product_ket()))
        .fold(f64::INFINITY, f64::min)
}
