//! Integer-valued locally constant functions as `K_0` classes, their expansion
//! in the free generators `1_(x)`, and the dual homomorphisms `e_(y)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::LevelFunction;
use crate::odometer::{gamma, gamma_orbit, n_of};
use crate::scalar::{exact_real, exact_to_integer, rational_int, ExactComplex};
use crate::supernatural::Scale;

/// An integer-valued function at a finite level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Class(LevelFunction<i64>);

impl K0Class {
    pub fn new(scale: &Scale, level: usize, values: Vec<i64>) -> Result<Self> {
        LevelFunction::new(scale, level, values).map(K0Class)
    }

    pub fn from_function(f: LevelFunction<i64>) -> Self {
        K0Class(f)
    }

    pub fn from_exact(f: &LevelFunction<ExactComplex>) -> Result<Self> {
        let mut values = Vec::with_capacity(f.values().len());
        for (x, v) in f.values().iter().enumerate() {
            values.push(exact_to_integer(v).ok_or(Error::NonIntegerValues(x as u64))?);
        }
        Ok(K0Class(f.map_indexed(|x, _| values[x])))
    }

    pub fn function(&self) -> &LevelFunction<i64> {
        &self.0
    }

    pub fn to_exact(&self) -> LevelFunction<ExactComplex> {
        self.0.map(|&v| exact_real(rational_int(v)))
    }

    pub fn level(&self) -> usize {
        self.0.level()
    }

    pub fn values(&self) -> &[i64] {
        self.0.values()
    }

    pub fn at(&self, x: u64) -> i64 {
        *self.0.at(x)
    }

    /// The first point where the value is not 0 or 1.
    pub fn projection_defect(&self) -> Option<u64> {
        self.values()
            .iter()
            .position(|&v| v != 0 && v != 1)
            .map(|x| x as u64)
    }

    pub fn is_projection(&self) -> bool {
        self.projection_defect().is_none()
    }
}

/// Coefficients `f_(x)` of `f = sum_x f_(x) 1_(x)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Coeffs {
    pub coeffs: BTreeMap<u64, i64>,
}

/// A finitely supported homomorphism `Phi = sum_y phi_(y) e_(y)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KHomomorphism {
    pub coeffs: BTreeMap<u64, i64>,
}

fn drop_zeros(map: BTreeMap<u64, i64>) -> BTreeMap<u64, i64> {
    map.into_iter().filter(|&(_, c)| c != 0).collect()
}

impl K0Coeffs {
    pub fn new(map: BTreeMap<u64, i64>) -> Self {
        K0Coeffs { coeffs: drop_zeros(map) }
    }

    pub fn get(&self, x: u64) -> i64 {
        self.coeffs.get(&x).copied().unwrap_or(0)
    }
}

impl KHomomorphism {
    pub fn new(map: BTreeMap<u64, i64>) -> Self {
        KHomomorphism { coeffs: drop_zeros(map) }
    }

    /// The dual generator `e_(y)`.
    pub fn generator(y: u64) -> Self {
        KHomomorphism::new(BTreeMap::from([(y, 1)]))
    }

    pub fn get(&self, y: u64) -> i64 {
        self.coeffs.get(&y).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coeffs.iter().map(|(&y, &c)| (y, c)).filter(|&(_, c)| c != 0)
    }
}

fn check_target(scale: &Scale, target: usize) -> Result<()> {
    if target > scale.depth() {
        Err(Error::ScaleTooShallow {
            level: target,
            depth: scale.depth(),
        })
    } else {
        Ok(())
    }
}

/// `1_(n, x)`, the indicator of `{z = x mod s_n}`, written at `target`.
pub fn indicator(scale: &Scale, n: usize, x: u64, target: usize) -> Result<K0Class> {
    check_target(scale, target)?;
    if n > target {
        return Err(Error::LevelMismatch {
            left: n,
            right: target,
        });
    }
    let sn = scale.s(n);
    if x >= sn {
        return Err(Error::OutOfRange { value: x, bound: sn });
    }
    LevelFunction::from_fn(scale, target, |z| i64::from(z % sn == x)).map(K0Class)
}

/// `1_(x) = 1_(n(x), x)`.
pub fn basis_indicator(scale: &Scale, x: u64, target: usize) -> Result<K0Class> {
    indicator(scale, n_of(x, scale)?, x, target)
}

/// Greedy peel in increasing `x`; the result has support below `s_n`.
pub fn decompose(f: &K0Class, scale: &Scale) -> Result<K0Coeffs> {
    let mut residual = f.values().to_vec();
    let size = residual.len() as u64;
    let mut coeffs = BTreeMap::new();
    for x in 0..size {
        let c = residual[x as usize];
        if c == 0 {
            continue;
        }
        let step = scale.s(n_of(x, scale)?);
        let mut z = x;
        while z < size {
            residual[z as usize] -= c;
            z += step;
        }
        coeffs.insert(x, c);
    }
    debug_assert!(residual.iter().all(|&v| v == 0));
    Ok(K0Coeffs { coeffs })
}

/// `sum_x c_x 1_(x)` at `target`.
pub fn recompose(c: &K0Coeffs, scale: &Scale, target: usize) -> Result<K0Class> {
    check_target(scale, target)?;
    let size = scale.s(target);
    let mut values = vec![0i64; size as usize];
    for (&x, &cx) in &c.coeffs {
        if x >= size {
            return Err(Error::OutOfRange { value: x, bound: size });
        }
        let step = scale.s(n_of(x, scale)?);
        let mut z = x;
        while z < size {
            values[z as usize] += cx;
            z += step;
        }
    }
    K0Class::new(scale, target, values)
}

/// `delta_z = e_(z) + e_(gamma(z)) + ... + e_(0)`.
pub fn delta_to_e(z: u64, scale: &Scale) -> Result<KHomomorphism> {
    let orbit = gamma_orbit(z, scale)?;
    Ok(KHomomorphism::new(orbit.into_iter().map(|y| (y, 1)).collect()))
}

/// `e_(z) = delta_z - delta_gamma(z)`, returned as `(z, gamma(z))`; the second
/// entry is absent for `z = 0`.
pub fn e_to_delta(z: u64, scale: &Scale) -> Result<(u64, Option<u64>)> {
    if z == 0 {
        n_of(z, scale)?;
        return Ok((0, None));
    }
    Ok((z, Some(gamma(z, scale)?)))
}

/// `Phi(f) = sum_y phi_(y) f_(y)`.
pub fn pair(phi: &KHomomorphism, f: &K0Class, scale: &Scale) -> Result<i64> {
    let c = decompose(f, scale)?;
    Ok(phi.iter().map(|(y, p)| p * c.get(y)).sum())
}
