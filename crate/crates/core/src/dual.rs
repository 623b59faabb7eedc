//! The dual group: roots of unity of order dividing the supernatural number,
//! stored as reduced fractions `k/s` standing for `exp(2 pi i k / s)`.

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;

use num::integer::gcd;
use num::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::supernatural::{divisors, Scale};

/// A root of unity `exp(2 pi i k / s)` with `0 <= k < s` and `gcd(k, s) = 1`;
/// the identity is `0/1`. The denominator is the order.
///
/// Ordered by `(order, numerator)`, which is the canonical enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDual")]
pub struct DualElement {
    k: u64,
    s: u64,
}

#[derive(Deserialize)]
struct RawDual {
    k: i64,
    s: u64,
}

impl TryFrom<RawDual> for DualElement {
    type Error = String;

    fn try_from(raw: RawDual) -> std::result::Result<Self, String> {
        if raw.s == 0 {
            return Err("root of unity with s = 0".into());
        }
        Ok(make_root(raw.k, raw.s))
    }
}

impl Ord for DualElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.s, self.k).cmp(&(other.s, other.k))
    }
}

impl PartialOrd for DualElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.k, self.s)
    }
}

/// Reduce `k/s` modulo 1.
///
/// # Panics
///
/// Panics if `s == 0`.
pub fn make_root(k: i64, s: u64) -> DualElement {
    assert!(s >= 1, "root of unity needs a positive denominator");
    let k = (k as i128).rem_euclid(s as i128) as u64;
    let g = gcd(k, s);
    DualElement { k: k / g, s: s / g }
}

impl DualElement {
    pub const IDENTITY: DualElement = DualElement { k: 0, s: 1 };

    pub fn numerator(&self) -> u64 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.s
    }

    pub fn is_identity(&self) -> bool {
        self.s == 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.s / gcd(self.s, other.s) * other.s;
        let k = self.k as u128 * (l / self.s) as u128 + other.k as u128 * (l / other.s) as u128;
        make_root((k % l as u128) as i64, l)
    }

    pub fn inv(&self) -> Self {
        make_root(-(self.k as i64), self.s)
    }

    pub fn pow(&self, n: i64) -> Self {
        let k = (self.k as i128 * n as i128).rem_euclid(self.s as i128);
        make_root(k as i64, self.s)
    }

    /// The numerator `j` with `self = exp(2 pi i j / n)`, when the order divides `n`.
    pub fn index_in(&self, n: u64) -> Option<u64> {
        n.is_multiple_of(self.s).then(|| self.k * (n / self.s))
    }

    /// Conjugate, the same as the inverse.
    pub fn conj(&self) -> Self {
        self.inv()
    }
}

/// `exp(2 pi i t / n)` in binary64, exact at the quarter turns.
pub fn unit_root(t: u64, n: u64) -> Complex<f64> {
    let z = make_root((t % n) as i64, n);
    match (z.k, z.s) {
        (0, 1) => Complex::new(1.0, 0.0),
        (1, 2) => Complex::new(-1.0, 0.0),
        (1, 4) => Complex::new(0.0, 1.0),
        (3, 4) => Complex::new(0.0, -1.0),
        (k, s) => {
            let theta = TAU * k as f64 / s as f64;
            Complex::new(theta.cos(), theta.sin())
        }
    }
}

/// `z^x = chi_z(x)`.
pub fn eval_char(z: &DualElement, x: i64) -> Complex<f64> {
    let t = (z.k as i128 * x as i128).rem_euclid(z.s as i128) as u64;
    unit_root(t, z.s)
}

/// The subgroup of `n`-th roots of unity in canonical order.
pub fn roots_of_unity(n: u64) -> Vec<DualElement> {
    let mut out = Vec::with_capacity(n as usize);
    for d in divisors(n) {
        if d == 1 {
            out.push(DualElement::IDENTITY);
            continue;
        }
        out.extend((1..d).filter(|&k| gcd(k, d) == 1).map(|k| DualElement { k, s: d }));
    }
    out
}

/// `G_m`, the unique subgroup of order `s_m`, in canonical order.
///
/// # Panics
///
/// Panics if `m` exceeds the scale depth.
pub fn enumerate_subgroup(scale: &Scale, m: usize) -> Vec<DualElement> {
    roots_of_unity(scale.s(m))
}

/// Smallest `m` with `z^{s_m} = 1`.
pub fn level_of(z: &DualElement, scale: &Scale) -> Result<usize> {
    (0..=scale.depth())
        .find(|&m| scale.s(m).is_multiple_of(z.s))
        .ok_or(Error::NotInGroup { k: z.k, s: z.s })
}

/// The unique `(m, j)` with `z = exp(2 pi i j / s_m)`, `0 < j < s_m` and
/// `s_m / s_{m-1}` not dividing `j`; the identity maps to `(0, 0)`.
pub fn scale_form(z: &DualElement, scale: &Scale) -> Result<(usize, u64)> {
    let m = level_of(z, scale)?;
    Ok((m, z.k * (scale.s(m) / z.s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn make_root_examples() {
        assert_eq!(make_root(2, 8), make_root(1, 4));
        assert_eq!(make_root(0, 5), DualElement::IDENTITY);
        let z = make_root(5, 8);
        assert_eq!((z.numerator(), z.order()), (5, 8));
        assert_eq!(make_root(-1, 4), make_root(3, 4));
    }

    #[test]
    fn group_operations() {
        assert_eq!(make_root(1, 2).mul(&make_root(1, 4)), make_root(3, 4));
        assert_eq!(make_root(3, 8).inv(), make_root(5, 8));
        assert_eq!(make_root(3, 8).order(), 8);
        assert_eq!(make_root(1, 6).pow(3), make_root(1, 2));
        assert_eq!(make_root(1, 6).pow(-1), make_root(5, 6));
        assert_eq!(make_root(1, 3).mul(&make_root(1, 2)), make_root(5, 6));
    }

    #[test]
    fn scale_form_examples() {
        let dy = Scale::dyadic(4);
        assert_eq!(scale_form(&make_root(1, 4), &dy).unwrap(), (2, 1));
        assert_eq!(scale_form(&make_root(1, 2), &dy).unwrap(), (1, 1));
        assert_eq!(scale_form(&DualElement::IDENTITY, &dy).unwrap(), (0, 0));
        let s = Scale::new(vec![3, 6, 12]).unwrap();
        assert_eq!(scale_form(&make_root(1, 2), &s).unwrap(), (2, 3));
        assert!(matches!(
            scale_form(&make_root(1, 5), &s),
            Err(Error::NotInGroup { .. })
        ));
    }

    #[test]
    fn subgroup_enumeration() {
        let dy = Scale::dyadic(4);
        assert_eq!(
            enumerate_subgroup(&dy, 1),
            vec![DualElement::IDENTITY, make_root(1, 2)]
        );
        assert_eq!(
            enumerate_subgroup(&dy, 2),
            vec![
                DualElement::IDENTITY,
                make_root(1, 2),
                make_root(1, 4),
                make_root(3, 4)
            ]
        );
        assert_eq!(enumerate_subgroup(&dy, 0), vec![DualElement::IDENTITY]);
        let g = roots_of_unity(12);
        assert_eq!(g.len(), 12);
        let mut sorted = g.clone();
        sorted.sort();
        assert_eq!(g, sorted);
    }

    #[test]
    fn level_and_characters() {
        let dy = Scale::dyadic(4);
        assert_eq!(level_of(&make_root(1, 4), &dy).unwrap(), 2);
        assert_eq!(eval_char(&make_root(1, 2), 3), Complex::new(-1.0, 0.0));
        assert_eq!(eval_char(&make_root(1, 4), 2), Complex::new(-1.0, 0.0));
        assert_eq!(eval_char(&make_root(1, 4), -1), Complex::new(0.0, -1.0));
        let w = eval_char(&make_root(1, 3), 1);
        assert!((w - Complex::new(-0.5, 3f64.sqrt() / 2.0)).norm() < TOL);
    }

    #[test]
    fn serde_reduces() {
        let z: DualElement = serde_json::from_str(r#"{"k":6,"s":8}"#).unwrap();
        assert_eq!(z, make_root(3, 4));
        assert_eq!(serde_json::to_string(&z).unwrap(), r#"{"k":3,"s":4}"#);
        assert!(serde_json::from_str::<DualElement>(r#"{"k":1,"s":0}"#).is_err());
    }
}
