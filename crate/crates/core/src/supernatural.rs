//! Supernatural numbers and scales.
//!
//! A supernatural number is a formal product of primes whose exponents may be
//! infinite. A scale is a finite prefix `s_1 | s_2 | ... | s_M` of a strictly
//! increasing divisibility chain; the odometer it truncates is classified by
//! the least common multiple of the whole chain.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent of a prime in a supernatural number.
///
/// The derived order puts every finite exponent below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    fn add(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Infinite,
        }
    }
}

/// How [`SupernaturalNumber::combine`] merges exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Lcm,
    Gcd,
    Mul,
}

/// A formal product `prod p^e_p` with `e_p` in `{0, 1, ..., inf}`, kept fully
/// factored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SupernaturalNumber {
    finite_exponents: BTreeMap<u64, u32>,
    infinite_primes: BTreeSet<u64>,
}

impl SupernaturalNumber {
    /// The supernatural number 1.
    pub fn one() -> Self {
        Self::default()
    }

    /// Factor an ordinary positive integer.
    ///
    /// # Panics
    ///
    /// Panics if `n == 0`.
    pub fn from_u64(n: u64) -> Self {
        assert!(n > 0, "0 is not a supernatural number");
        let finite_exponents = factorize(n).into_iter().collect();
        SupernaturalNumber {
            finite_exponents,
            infinite_primes: BTreeSet::new(),
        }
    }

    /// `p^inf`.
    ///
    /// # Panics
    ///
    /// Panics if `p` is not prime.
    pub fn prime_power_infinite(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        let mut out = Self::one();
        out.infinite_primes.insert(p);
        out
    }

    /// Build from explicit `(prime, exponent)` pairs. Zero exponents are dropped.
    ///
    /// # Panics
    ///
    /// Panics if some base is not prime.
    pub fn from_exponents<I: IntoIterator<Item = (u64, Exponent)>>(pairs: I) -> Self {
        let mut out = Self::one();
        for (p, e) in pairs {
            assert!(is_prime(p), "{p} is not prime");
            out.set_exponent(p, out.exponent(p).add(e));
        }
        out
    }

    pub fn exponent(&self, p: u64) -> Exponent {
        if self.infinite_primes.contains(&p) {
            Exponent::Infinite
        } else {
            Exponent::Finite(self.finite_exponents.get(&p).copied().unwrap_or(0))
        }
    }

    fn set_exponent(&mut self, p: u64, e: Exponent) {
        self.finite_exponents.remove(&p);
        self.infinite_primes.remove(&p);
        match e {
            Exponent::Finite(0) => {}
            Exponent::Finite(k) => {
                self.finite_exponents.insert(p, k);
            }
            Exponent::Infinite => {
                self.infinite_primes.insert(p);
            }
        }
    }

    /// Primes with a nonzero exponent, ascending.
    pub fn primes(&self) -> BTreeSet<u64> {
        self.finite_exponents
            .keys()
            .chain(self.infinite_primes.iter())
            .copied()
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.infinite_primes.is_empty()
    }

    /// The ordinary integer value, if finite and representable.
    pub fn to_u64(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.finite_exponents
            .iter()
            .try_fold(1u64, |acc, (&p, &e)| acc.checked_mul(p.checked_pow(e)?))
    }

    /// Exponent-wise max, min or sum.
    pub fn combine(&self, other: &Self, mode: Combine) -> Self {
        let mut out = Self::one();
        for p in self.primes().union(&other.primes()) {
            let (a, b) = (self.exponent(*p), other.exponent(*p));
            let e = match mode {
                Combine::Lcm => a.max(b),
                Combine::Gcd => a.min(b),
                Combine::Mul => a.add(b),
            };
            out.set_exponent(*p, e);
        }
        out
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.combine(other, Combine::Lcm)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.combine(other, Combine::Gcd)
    }

    /// True iff every exponent of `self` is at most the matching one of `other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.primes()
            .into_iter()
            .all(|p| self.exponent(p) <= other.exponent(p))
    }
}

impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let primes = self.primes();
        if primes.is_empty() {
            return write!(f, "1");
        }
        for (i, p) in primes.into_iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match self.exponent(p) {
                Exponent::Infinite => write!(f, "{p}^inf")?,
                Exponent::Finite(1) => write!(f, "{p}")?,
                Exponent::Finite(e) => write!(f, "{p}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Parses literals such as `2^inf*3*5^2`. Composite bases are factored.
impl FromStr for SupernaturalNumber {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ParseSupernatural {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if input.trim().is_empty() {
            return Err(fail("empty literal"));
        }
        let mut out = Self::one();
        for factor in input.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b.trim(), Some(e.trim())),
                None => (factor, None),
            };
            let base: u64 = base.parse().map_err(|_| fail("base is not an integer"))?;
            if base == 0 {
                return Err(fail("zero factor"));
            }
            let exp = match exp {
                None => Exponent::Finite(1),
                Some("inf") | Some("∞") => Exponent::Infinite,
                Some(e) => Exponent::Finite(e.parse().map_err(|_| fail("bad exponent"))?),
            };
            if base == 1 {
                continue;
            }
            for (p, a) in factorize(base) {
                let e = match exp {
                    Exponent::Finite(k) => Exponent::Finite(a * k),
                    Exponent::Infinite => Exponent::Infinite,
                };
                out.set_exponent(p, out.exponent(p).add(e));
            }
        }
        Ok(out)
    }
}

/// Trial-division factorization, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// A validated finite scale `(s_1, ..., s_M)` with implicit `s_0 = 1`.
///
/// Serializes as a bare JSON array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Scale {
    entries: Vec<u64>,
}

impl Scale {
    /// Validate a divisibility chain.
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        let first = *entries.first().ok_or(Error::EmptyScale)?;
        if first < 2 {
            return Err(Error::BadFirstEntry(first));
        }
        for (i, w) in entries.windows(2).enumerate() {
            let (prev, next) = (w[0], w[1]);
            if next <= prev {
                return Err(Error::NotIncreasing {
                    index: i + 1,
                    prev,
                    next,
                });
            }
            if next % prev != 0 {
                return Err(Error::DivisibilityViolation {
                    index: i + 1,
                    prev,
                    next,
                });
            }
        }
        Ok(Scale { entries })
    }

    /// `(2, 4, ..., 2^depth)`.
    pub fn dyadic(depth: usize) -> Self {
        Scale {
            entries: (1..=depth as u32).map(|m| 1u64 << m).collect(),
        }
    }

    /// Number of entries `M`.
    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// `s_m`, with `s_0 = 1`.
    ///
    /// # Panics
    ///
    /// Panics if `m > depth()`.
    pub fn s(&self, m: usize) -> u64 {
        if m == 0 {
            1
        } else {
            self.entries[m - 1]
        }
    }

    /// `s_M`, the size of the deepest level.
    pub fn top(&self) -> u64 {
        *self.entries.last().expect("scales are nonempty")
    }

    /// `s_m / s_{m-1}` for `m >= 1`.
    pub fn ratio(&self, m: usize) -> u64 {
        self.s(m) / self.s(m - 1)
    }

    /// The level whose size is exactly `size`, if any.
    pub fn level_of_size(&self, size: u64) -> Option<usize> {
        (0..=self.depth()).find(|&m| self.s(m) == size)
    }

    /// Least common multiple of the prefix entries.
    ///
    /// The prefix is a chain, so this is `s_M`; callers treat it as a lower
    /// bound for the supernatural number of the full scale.
    pub fn lcm(&self) -> SupernaturalNumber {
        self.entries
            .iter()
            .fold(SupernaturalNumber::one(), |acc, &s| {
                acc.lcm(&SupernaturalNumber::from_u64(s))
            })
    }
}

impl TryFrom<Vec<u64>> for Scale {
    type Error = Error;

    fn try_from(entries: Vec<u64>) -> Result<Self> {
        Scale::new(entries)
    }
}

impl From<Scale> for Vec<u64> {
    fn from(scale: Scale) -> Self {
        scale.entries
    }
}

/// Validate a raw sequence as a scale.
pub fn validate_scale(seq: &[u64]) -> Result<Scale> {
    Scale::new(seq.to_vec())
}
