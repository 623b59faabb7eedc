//! Locally constant functions and their Fourier analysis at a finite level.
//!
//! A function at level `m` is stored by its `s_m` values on `Z / s_m Z`; its
//! Fourier coefficients live on `G_m`, the `s_m`-th roots of unity. The Haar
//! integral is the normalized counting measure. Transforms are the direct
//! `O(s_m^2)` sums in canonical enumeration order, so results are
//! bit-for-bit reproducible.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num::Complex;

use crate::dual::{eval_char, level_of, roots_of_unity, unit_root, DualElement};
use crate::error::{Error, Result};
use crate::length::LengthSpec;
use crate::scalar::{Complex64, Scalar};
use crate::supernatural::Scale;

/// Default tolerance for derived floating-point comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Tolerance for primitive character identities.
pub const CHARACTER_TOLERANCE: f64 = 1e-12;

/// A function on the odometer that only depends on `x mod s_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelFunction<T> {
    level: usize,
    values: Vec<T>,
}

impl<T> LevelFunction<T> {
    pub fn new(scale: &Scale, level: usize, values: Vec<T>) -> Result<Self> {
        if level > scale.depth() {
            return Err(Error::ScaleTooShallow {
                level,
                depth: scale.depth(),
            });
        }
        let expected = scale.s(level);
        if values.len() as u64 != expected {
            return Err(Error::LevelSizeMismatch {
                level,
                expected,
                actual: values.len(),
            });
        }
        Ok(LevelFunction { level, values })
    }

    pub fn from_fn(scale: &Scale, level: usize, f: impl FnMut(u64) -> T) -> Result<Self> {
        if level > scale.depth() {
            return Err(Error::ScaleTooShallow {
                level,
                depth: scale.depth(),
            });
        }
        let values = (0..scale.s(level)).map(f).collect();
        Ok(LevelFunction { level, values })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    /// `s_m`, the number of stored values.
    pub fn size(&self) -> u64 {
        self.values.len() as u64
    }

    /// `f(x)` for any integer `x`.
    pub fn eval(&self, x: i64) -> &T {
        &self.values[x.rem_euclid(self.values.len() as i64) as usize]
    }

    pub fn at(&self, x: u64) -> &T {
        &self.values[(x % self.size()) as usize]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> LevelFunction<U> {
        LevelFunction {
            level: self.level,
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn map_indexed<U>(&self, mut f: impl FnMut(usize, &T) -> U) -> LevelFunction<U> {
        LevelFunction {
            level: self.level,
            values: self.values.iter().enumerate().map(|(x, v)| f(x, v)).collect(),
        }
    }

    fn with_values<U>(&self, values: Vec<U>) -> LevelFunction<U> {
        LevelFunction {
            level: self.level,
            values,
        }
    }
}

impl<T: Clone> LevelFunction<T> {
    pub fn constant(scale: &Scale, level: usize, c: T) -> Result<Self> {
        Self::from_fn(scale, level, |_| c.clone())
    }

    /// The same function written at a finer level, by replication.
    pub fn promote(&self, scale: &Scale, level: usize) -> Result<Self> {
        if level < self.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: level,
            });
        }
        LevelFunction::from_fn(scale, level, |x| self.at(x).clone())
    }

    /// Replicate to `size` values; `size` must be a multiple of the current size.
    fn promote_to_size(&self, level: usize, size: u64) -> Result<Self> {
        if !size.is_multiple_of(self.size()) {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: level,
            });
        }
        Ok(LevelFunction {
            level,
            values: (0..size).map(|x| self.at(x).clone()).collect(),
        })
    }
}

/// Bring two functions to the finer of their two levels.
fn common_level<T: Clone>(
    f: &LevelFunction<T>,
    g: &LevelFunction<T>,
) -> Result<(LevelFunction<T>, LevelFunction<T>)> {
    let (level, size) = if f.size() >= g.size() {
        (f.level, f.size())
    } else {
        (g.level, g.size())
    };
    Ok((f.promote_to_size(level, size)?, g.promote_to_size(level, size)?))
}

pub fn add<T: Scalar>(f: &LevelFunction<T>, g: &LevelFunction<T>) -> Result<LevelFunction<T>> {
    let (f, g) = common_level(f, g)?;
    let values = f.values.iter().zip(&g.values).map(|(a, b)| a.clone() + b.clone()).collect();
    Ok(f.with_values(values))
}

pub fn sub<T: Scalar>(f: &LevelFunction<T>, g: &LevelFunction<T>) -> Result<LevelFunction<T>> {
    let (f, g) = common_level(f, g)?;
    let values = f.values.iter().zip(&g.values).map(|(a, b)| a.clone() - b.clone()).collect();
    Ok(f.with_values(values))
}

pub fn mul<T: Scalar>(f: &LevelFunction<T>, g: &LevelFunction<T>) -> Result<LevelFunction<T>> {
    let (f, g) = common_level(f, g)?;
    let values = f.values.iter().zip(&g.values).map(|(a, b)| a.clone() * b.clone()).collect();
    Ok(f.with_values(values))
}

pub fn conj<T: Scalar>(f: &LevelFunction<T>) -> LevelFunction<T> {
    f.map(Scalar::conj)
}

pub fn scale_by<T: Scalar>(f: &LevelFunction<T>, c: &T) -> LevelFunction<T> {
    f.map(|v| c.clone() * v.clone())
}

/// `chi_z` written at the given level.
pub fn character(scale: &Scale, level: usize, z: &DualElement) -> Result<LevelFunction<Complex64>> {
    if level_of(z, scale)? > level {
        return Err(Error::LevelMismatch {
            left: level_of(z, scale)?,
            right: level,
        });
    }
    LevelFunction::from_fn(scale, level, |x| eval_char(z, x as i64))
}

/// Fourier coefficients of a level-`m` function, indexed by `G_m` in
/// canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoeffs {
    level: usize,
    size: u64,
    coeffs: Vec<(DualElement, Complex64)>,
}

impl FourierCoeffs {
    /// Coefficients given on the full group of `size`-th roots of unity;
    /// missing entries are zero.
    pub fn from_map(level: usize, size: u64, map: &BTreeMap<DualElement, Complex64>) -> Result<Self> {
        if let Some(z) = map.keys().find(|z| !size.is_multiple_of(z.order())) {
            return Err(Error::NotInGroup {
                k: z.numerator(),
                s: z.order(),
            });
        }
        let coeffs = roots_of_unity(size)
            .into_iter()
            .map(|z| (z, map.get(&z).copied().unwrap_or_default()))
            .collect();
        Ok(FourierCoeffs { level, size, coeffs })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn iter(&self) -> impl Iterator<Item = &(DualElement, Complex64)> {
        self.coeffs.iter()
    }

    pub fn get(&self, z: &DualElement) -> Option<Complex64> {
        self.coeffs
            .binary_search_by(|(w, _)| w.cmp(z))
            .ok()
            .map(|i| self.coeffs[i].1)
    }

    /// `sum_z |c_z| lambda(z)^N`.
    pub fn weighted_norm(&self, n: u32, spec: &LengthSpec) -> Result<f64> {
        let mut total = 0.0;
        for (z, c) in &self.coeffs {
            let lam = spec.l_f64(level_of(z, spec.scale())?);
            total += c.norm() * lam.powi(n as i32);
        }
        Ok(total)
    }
}

fn root_table(n: u64) -> Vec<Complex64> {
    (0..n).map(|t| unit_root(t, n)).collect()
}

/// `hat f_z = (1/s_m) sum_x f(x) conj(z^x)` for every `z` in `G_m`.
pub fn fourier<T: Scalar>(f: &LevelFunction<T>) -> FourierCoeffs {
    let n = f.size();
    let table = root_table(n);
    let values: Vec<Complex64> = f.values.iter().map(Scalar::to_complex).collect();
    let coeffs = roots_of_unity(n)
        .into_iter()
        .map(|z| {
            let j = z.index_in(n).expect("z lies in G_m");
            let mut acc = Complex::new(0.0, 0.0);
            for (x, v) in values.iter().enumerate() {
                let t = (j as u128 * x as u128 % n as u128) as u64;
                acc += v * table[((n - t) % n) as usize];
            }
            (z, acc / n as f64)
        })
        .collect();
    FourierCoeffs {
        level: f.level,
        size: n,
        coeffs,
    }
}

/// `f(x) = sum_z c_z z^x`.
pub fn inverse_fourier(c: &FourierCoeffs) -> LevelFunction<Complex64> {
    let n = c.size;
    let table = root_table(n);
    let values = (0..n)
        .map(|x| {
            let mut acc = Complex::new(0.0, 0.0);
            for (z, cz) in &c.coeffs {
                let j = z.index_in(n).expect("z lies in G_m");
                acc += cz * table[(j as u128 * x as u128 % n as u128) as usize];
            }
            acc
        })
        .collect();
    LevelFunction {
        level: c.level,
        values,
    }
}

fn check_spec_level<T>(f: &LevelFunction<T>, spec: &LengthSpec) -> Result<()> {
    if f.level > spec.depth() {
        return Err(Error::ScaleTooShallow {
            level: f.level,
            depth: spec.depth(),
        });
    }
    let expected = spec.scale().s(f.level);
    if f.size() != expected {
        return Err(Error::LevelSizeMismatch {
            level: f.level,
            expected,
            actual: f.values.len(),
        });
    }
    Ok(())
}

/// The rapid-decay norm `||f||_N = sum_z |hat f_z| lambda(z)^N`.
pub fn rd_norm<T: Scalar>(f: &LevelFunction<T>, n: u32, spec: &LengthSpec) -> Result<f64> {
    check_spec_level(f, spec)?;
    fourier(f).weighted_norm(n, spec)
}

pub fn sup_norm<T: Scalar>(f: &LevelFunction<T>) -> f64 {
    f.values.iter().map(|v| v.to_complex().norm()).fold(0.0, f64::max)
}

/// Arithmetic mean of the values.
pub fn haar_integral<T: Scalar>(f: &LevelFunction<T>) -> T {
    let sum = f.values.iter().cloned().fold(T::zero(), |a, b| a + b);
    sum.div_u64(f.size())
}

/// Split `f = f_low + f_high` with `f_low` carrying the Fourier support in
/// `G_m = {lambda <= l_m}`.
///
/// `f_low` is computed as the average of `f` over the cosets of `s_m`, which is
/// exact for exact values.
pub fn split_at<T: Scalar>(
    f: &LevelFunction<T>,
    spec: &LengthSpec,
    m: usize,
) -> Result<(LevelFunction<T>, LevelFunction<T>)> {
    check_spec_level(f, spec)?;
    if m >= f.level {
        let zero = f.map(|_| T::zero());
        return Ok((f.clone(), zero));
    }
    let sm = spec.scale().s(m);
    let copies = f.size() / sm;
    let averages: Vec<T> = (0..sm)
        .map(|x| {
            (0..copies)
                .map(|t| f.at(x + t * sm).clone())
                .fold(T::zero(), |a, b| a + b)
                .div_u64(copies)
        })
        .collect();
    let low = f.with_values((0..f.size()).map(|x| averages[(x % sm) as usize].clone()).collect());
    let high = sub(f, &low)?;
    Ok((low, high))
}

fn real_values<T: Scalar>(f: &LevelFunction<T>) -> Result<Vec<f64>> {
    f.values
        .iter()
        .enumerate()
        .map(|(x, v)| v.real_value(CHARACTER_TOLERANCE).ok_or(Error::NotRealValued(x as u64)))
        .collect()
}

/// `exp(i n f)` computed pointwise.
pub fn exp_i<T: Scalar>(f: &LevelFunction<T>, n: i64) -> Result<LevelFunction<Complex64>> {
    let re = real_values(f)?;
    Ok(f.with_values(
        re.into_iter()
            .map(|v| Complex::from_polar(1.0, n as f64 * v))
            .collect(),
    ))
}

/// `sum_{|n| <= n_max} f_n exp(2 pi i n a / L)` pointwise, for real `a`.
pub fn functional_calculus<T: Scalar>(
    a: &LevelFunction<T>,
    series: &BTreeMap<i64, Complex64>,
    period: f64,
    n_max: u64,
) -> Result<LevelFunction<Complex64>> {
    let re = real_values(a)?;
    let values = re
        .into_iter()
        .map(|v| {
            series
                .range(-(n_max as i64)..=n_max as i64)
                .map(|(&n, c)| c * Complex::from_polar(1.0, TAU * n as f64 * v / period))
                .sum()
        })
        .collect();
    Ok(a.with_values(values))
}
