//! Points of the odometer at finite levels, mixed-radix digits, the shift
//! `x -> x + 1` and the reduction map `gamma`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::supernatural::Scale;

/// A residue class `x mod s_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OdometerPoint {
    pub level: usize,
    pub residue: u64,
}

impl OdometerPoint {
    pub fn new(scale: &Scale, level: usize, residue: u64) -> Result<Self> {
        check_level(scale, level)?;
        let bound = scale.s(level);
        if residue >= bound {
            return Err(Error::OutOfRange {
                value: residue,
                bound,
            });
        }
        Ok(OdometerPoint { level, residue })
    }

    /// Image of an integer at the given level.
    pub fn from_integer(scale: &Scale, level: usize, x: i64) -> Result<Self> {
        check_level(scale, level)?;
        let residue = x.rem_euclid(scale.s(level) as i64) as u64;
        Ok(OdometerPoint { level, residue })
    }

    /// Reduce to a coarser level.
    pub fn project(&self, scale: &Scale, level: usize) -> Result<Self> {
        if level > self.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: level,
            });
        }
        Ok(OdometerPoint {
            level,
            residue: self.residue % scale.s(level),
        })
    }

    pub fn add(&self, other: &Self, scale: &Scale) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        let s = scale.s(self.level) as u128;
        let residue = ((self.residue as u128 + other.residue as u128) % s) as u64;
        Ok(OdometerPoint {
            level: self.level,
            residue,
        })
    }

    /// The odometer shift `x + 1`.
    pub fn phi(&self, scale: &Scale) -> Self {
        let s = scale.s(self.level);
        OdometerPoint {
            level: self.level,
            residue: if self.residue + 1 == s {
                0
            } else {
                self.residue + 1
            },
        }
    }
}

fn check_level(scale: &Scale, level: usize) -> Result<()> {
    if level > scale.depth() {
        Err(Error::ScaleTooShallow {
            level,
            depth: scale.depth(),
        })
    } else {
        Ok(())
    }
}

fn check_range(x: u64, scale: &Scale) -> Result<()> {
    if x >= scale.top() {
        Err(Error::OutOfRange {
            value: x,
            bound: scale.top(),
        })
    } else {
        Ok(())
    }
}

/// Mixed-radix digits `(x_1, ..., x_M)` with `0 <= x_j < s_j / s_{j-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DigitVector {
    pub digits: Vec<u64>,
}

/// Expand `x = sum_j x_j s_{j-1}`.
pub fn to_digits(x: u64, scale: &Scale) -> Result<DigitVector> {
    check_range(x, scale)?;
    let digits = (1..=scale.depth())
        .map(|j| (x / scale.s(j - 1)) % scale.ratio(j))
        .collect();
    Ok(DigitVector { digits })
}

pub fn from_digits(digits: &DigitVector, scale: &Scale) -> Result<u64> {
    if digits.digits.len() != scale.depth() {
        return Err(Error::LevelMismatch {
            left: digits.digits.len(),
            right: scale.depth(),
        });
    }
    let mut x = 0u64;
    for (j, &d) in digits.digits.iter().enumerate() {
        let radix = scale.ratio(j + 1);
        if d >= radix {
            return Err(Error::OutOfRange {
                value: d,
                bound: radix,
            });
        }
        x += d * scale.s(j);
    }
    Ok(x)
}

/// The index `n` with `s_{n-1} <= x < s_n`; `n_of(0) = 0`.
pub fn n_of(x: u64, scale: &Scale) -> Result<usize> {
    check_range(x, scale)?;
    if x == 0 {
        return Ok(0);
    }
    Ok((1..=scale.depth())
        .find(|&n| x < scale.s(n))
        .expect("x < s_M"))
}

/// `gamma(x) = x mod s_{n(x)-1}` for `x >= 1`.
pub fn gamma(x: u64, scale: &Scale) -> Result<u64> {
    if x == 0 {
        return Err(Error::GammaOfZero);
    }
    let n = n_of(x, scale)?;
    Ok(x % scale.s(n - 1))
}

/// `[x, gamma(x), gamma^2(x), ..., 0]`; the orbit of 0 is `[0]`.
pub fn gamma_orbit(x: u64, scale: &Scale) -> Result<Vec<u64>> {
    check_range(x, scale)?;
    let mut orbit = vec![x];
    let mut y = x;
    while y != 0 {
        y = gamma(y, scale)?;
        orbit.push(y);
    }
    Ok(orbit)
}
