//! Seeded inputs shared by the benchmarks.

use std::collections::BTreeMap;

use num::Complex;
use odolab_core::harmonic::LevelFunction;
use odolab_core::ktheory::{K0Class, KHomomorphism};
use odolab_core::sample::{self, SeedableRng};
use rand::Rng;
use odolab_core::scalar::ExactComplex;
use odolab_core::{LengthSpec, Scale};

pub const SEED: u64 = 7;

/// Dyadic scale of depth `depth` with `l = s`.
pub fn dyadic(depth: usize) -> LengthSpec {
    LengthSpec::scale_valued(Scale::dyadic(depth))
}

pub fn float_input(scale: &Scale, level: usize) -> LevelFunction<Complex<f64>> {
    let mut rng = sample::rng(SEED);
    sample::float_function(&mut rng, scale, level)
}

pub fn exact_mean_zero(scale: &Scale, level: usize) -> LevelFunction<ExactComplex> {
    let mut rng = sample::rng(SEED);
    sample::mean_zero(&sample::exact_function(&mut rng, scale, level, true))
}

pub fn projection(scale: &Scale, level: usize) -> K0Class {
    let mut rng = sample::rng(SEED);
    sample::projection(&mut rng, scale, level)
}

/// `phi` supported on `0..support` with entries in `-3..=3`.
pub fn homomorphism(support: u64) -> KHomomorphism {
    let mut rng = sample::ChaCha8Rng::seed_from_u64(SEED);
    let coeffs: BTreeMap<u64, i64> = (0..support).map(|y| (y, rng.gen_range(-3..=3))).collect();
    KHomomorphism::new(coeffs)
}
