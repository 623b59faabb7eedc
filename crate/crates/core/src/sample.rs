//! Seeded random inputs and the two built-in specs, shared by the test
//! suites, the `selftest` command and the benchmarks.

use std::collections::BTreeMap;

use num::{BigInt, Complex};
use rand::Rng;
pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::harmonic::{haar_integral, sub, LevelFunction};
use crate::ktheory::K0Class;
use crate::length::LengthSpec;
use crate::scalar::{exact, rational, Complex64, ExactComplex, Rational, Scalar};
use crate::supernatural::Scale;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Scale `(2, 4, 8, 16)` with `l_m = 2^m`.
pub fn dyadic_spec() -> LengthSpec {
    LengthSpec::geometric(Scale::dyadic(4), 2).expect("valid spec")
}

/// Scale `(3, 6, 12)` with `l = (3, 6, 12)`.
pub fn mixed_spec() -> LengthSpec {
    LengthSpec::scale_valued(Scale::new(vec![3, 6, 12]).expect("valid scale"))
}

pub fn builtin_specs() -> Vec<(&'static str, LengthSpec)> {
    vec![("dyadic", dyadic_spec()), ("3-6-12", mixed_spec())]
}

/// `p/q` with `|p| <= bound` and `1 <= q <= max_den`.
pub fn rational_in<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    rational(rng.gen_range(-bound..=bound), rng.gen_range(1..=max_den))
}

pub fn exact_function<R: Rng>(
    rng: &mut R,
    scale: &Scale,
    level: usize,
    real: bool,
) -> LevelFunction<ExactComplex> {
    LevelFunction::from_fn(scale, level, |_| {
        let re = rational_in(rng, 9, 7);
        let im = if real { rational(0, 1) } else { rational_in(rng, 9, 7) };
        exact(re, im)
    })
    .expect("level within scale")
}

/// Subtract the Haar integral.
pub fn mean_zero<T: Scalar>(f: &LevelFunction<T>) -> LevelFunction<T> {
    let mean = haar_integral(f);
    let c = f.map(|_| mean.clone());
    sub(f, &c).expect("same level")
}

/// Values with real and imaginary parts uniform in `[-1, 1]`.
pub fn float_function<R: Rng>(rng: &mut R, scale: &Scale, level: usize) -> LevelFunction<Complex64> {
    LevelFunction::from_fn(scale, level, |_| {
        Complex::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
    })
    .expect("level within scale")
}

pub fn integer_class<R: Rng>(rng: &mut R, scale: &Scale, level: usize, bound: i64) -> K0Class {
    K0Class::from_function(
        LevelFunction::from_fn(scale, level, |_| rng.gen_range(-bound..=bound)).expect("level within scale"),
    )
}

pub fn projection<R: Rng>(rng: &mut R, scale: &Scale, level: usize) -> K0Class {
    K0Class::from_function(
        LevelFunction::from_fn(scale, level, |_| i64::from(rng.gen_bool(0.5))).expect("level within scale"),
    )
}

/// A sparse map on `[0, support)` with nonzero values in `[-bound, bound]`.
pub fn coefficients<R: Rng>(rng: &mut R, support: u64, bound: i64) -> BTreeMap<u64, i64> {
    let count = rng.gen_range(0..=support.min(6));
    let mut map = BTreeMap::new();
    for _ in 0..count {
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-bound..=bound);
        }
        map.insert(rng.gen_range(0..support), c);
    }
    map
}

/// A random scale of depth `1..=max_depth` with `s_M <= max_top`.
pub fn scale<R: Rng>(rng: &mut R, max_depth: usize, max_top: u64) -> Scale {
    let depth = rng.gen_range(1..=max_depth);
    let mut entries = Vec::new();
    let mut top = 1u64;
    while entries.len() < depth && top * 2 <= max_top {
        let ratio = rng.gen_range(2..=(max_top / top).min(5));
        top *= ratio;
        entries.push(top);
    }
    Scale::new(entries).expect("valid by construction")
}

/// A random scale with strictly increasing rational `l` above 1.
pub fn length_spec<R: Rng>(rng: &mut R, max_depth: usize, max_top: u64) -> LengthSpec {
    let s = scale(rng, max_depth, max_top);
    let mut current = Rational::from_integer(BigInt::from(1));
    let l = (0..s.depth())
        .map(|_| {
            current = &current + rational(rng.gen_range(1..=9), rng.gen_range(1..=4));
            current.clone()
        })
        .collect();
    LengthSpec::new(s, l).expect("valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let a = exact_function(&mut rng(7), &Scale::dyadic(3), 3, false);
        let b = exact_function(&mut rng(7), &Scale::dyadic(3), 3, false);
        assert_eq!(a, b);
        let mut r = rng(1);
        for _ in 0..50 {
            let spec = length_spec(&mut r, 5, 64);
            assert!(spec.depth() <= 5 && spec.scale().top() <= 64);
        }
        let f = mean_zero(&exact_function(&mut r, &Scale::dyadic(2), 2, true));
        assert!(haar_integral(&f).is_zero_within(0.0));
    }
}
