//! A finite model of the even Fredholm module built from a homomorphism
//! `Phi = sum_y phi_(y) e_(y)`, its index pairing with projections, and the
//! commutator estimates for the associated Dirac operator.
//!
//! Each generator contributes `|phi_(y)|` label pairs. A positive pair has its
//! odd vector evaluated at `y` and its even vector at `gamma(y)`; a negative
//! pair swaps the two. `G` maps each odd vector to its even partner.
//!
//! The generator `e_(0) = delta_0` has no `gamma(0)`. Its pairs are
//! zero-blocks: for `phi_(0) > 0` the odd vector evaluates at 0 and the even
//! vector carries the zero representation, for `phi_(0) < 0` the roles swap,
//! and `G` vanishes on the block. `I - F^2` stays finite rank and the block
//! contributes `phi_(0) P(0)` to the index.

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harmonic::LevelFunction;
use crate::ktheory::{K0Class, KHomomorphism};
use crate::length::{lambda_of_index, LengthSpec};
use crate::linalg::rank;
use crate::odometer::gamma;
use crate::scalar::{Rational, Scalar};
use crate::supernatural::Scale;

/// One basis pair `(E^odd_(y,j), E^ev_(y,j))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Label {
    pub y: u64,
    pub j: u64,
    /// `+1` or `-1`, the sign of `phi_(y)`.
    pub sign: i8,
    /// Where `rho_odd` evaluates on this label; `None` is the zero representation.
    pub odd_point: Option<u64>,
    pub ev_point: Option<u64>,
    pub zero_block: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FredholmModel {
    labels: Vec<Label>,
}

impl FredholmModel {
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Labels in the odd (domain) space; the same list indexes the even space.
    pub fn dimension(&self) -> usize {
        self.labels.len()
    }
}

pub fn build_module(phi: &KHomomorphism, scale: &Scale) -> Result<FredholmModel> {
    let mut labels = Vec::new();
    for (y, c) in phi.iter() {
        let sign: i8 = if c > 0 { 1 } else { -1 };
        let (odd_point, ev_point) = if y == 0 {
            if sign > 0 {
                (Some(0), None)
            } else {
                (None, Some(0))
            }
        } else {
            let g = gamma(y, scale)?;
            if sign > 0 {
                (Some(y), Some(g))
            } else {
                (Some(g), Some(y))
            }
        };
        for j in 1..=c.unsigned_abs() {
            labels.push(Label {
                y,
                j,
                sign,
                odd_point,
                ev_point,
                zero_block: y == 0,
            });
        }
    }
    Ok(FredholmModel { labels })
}

/// The operator placed between the odd and even spaces.
#[derive(Debug, Clone, Copy)]
pub enum PairingOperator<'a> {
    /// The partial isometry `G`.
    Bounded,
    /// The Dirac operator `D`, acting as `Lambda(y)` on each pair.
    Dirac(&'a LengthSpec),
}

fn check_projection(p: &K0Class) -> Result<()> {
    match p.projection_defect() {
        Some(x) => Err(Error::NotAProjection(x)),
        None => Ok(()),
    }
}

fn rho(p: &K0Class, point: Option<u64>) -> bool {
    point.is_some_and(|x| p.at(x) == 1)
}

/// `dim ker B - dim coker B` for `B = rho_ev(P) G rho_odd(P)`, by exact rank.
pub fn index_pairing(
    phi: &KHomomorphism,
    p: &K0Class,
    scale: &Scale,
    op: PairingOperator<'_>,
) -> Result<i64> {
    check_projection(p)?;
    let model = build_module(phi, scale)?;
    let domain: Vec<usize> = (0..model.dimension())
        .filter(|&i| rho(p, model.labels[i].odd_point))
        .collect();
    let codomain: Vec<usize> = (0..model.dimension())
        .filter(|&i| rho(p, model.labels[i].ev_point))
        .collect();
    let mut matrix = Vec::with_capacity(codomain.len());
    for &row in &codomain {
        let mut r = Vec::with_capacity(domain.len());
        for &col in &domain {
            let label = &model.labels[col];
            let entry = if row == col && !label.zero_block {
                match op {
                    PairingOperator::Bounded => Rational::one(),
                    PairingOperator::Dirac(spec) => lambda_of_index(spec, label.y)?,
                }
            } else {
                Rational::zero()
            };
            r.push(entry);
        }
        matrix.push(r);
    }
    let rk = rank(matrix) as i64;
    let kernel = domain.len() as i64 - rk;
    let cokernel = codomain.len() as i64 - rk;
    Ok(kernel - cokernel)
}

/// `sum_y phi_(y) (P(y) - P(gamma(y)))`, with the `y = 0` term `phi_(0) P(0)`.
pub fn closed_form_index(phi: &KHomomorphism, p: &K0Class, scale: &Scale) -> Result<i64> {
    check_projection(p)?;
    let mut total = 0;
    for (y, c) in phi.iter() {
        let term = if y == 0 {
            p.at(0)
        } else {
            p.at(y) - p.at(gamma(y, scale)?)
        };
        total += c * term;
    }
    Ok(total)
}

fn deep_difference<T: Scalar>(f: &LevelFunction<T>, y: u64, scale: &Scale) -> Result<Option<(usize, f64)>> {
    if y >= scale.top() {
        return Ok(None);
    }
    let n = crate::odometer::n_of(y, scale)?;
    let g = gamma(y, scale)?;
    Ok(Some((n, (f.at(y).clone() - f.at(g).clone()).to_complex().norm())))
}

/// `sup |f(y) - f(gamma(y))|` over `1 <= y <= Y` with `n(y) > threshold`.
///
/// Points `y >= s_M` reduce to `gamma(y) = y mod s_M` and contribute nothing
/// once the level of `f` is at most `M`.
pub fn commutator_tail_norm<T: Scalar>(
    f: &LevelFunction<T>,
    scale: &Scale,
    sweep: u64,
    threshold: usize,
) -> Result<f64> {
    check_depth(f, scale)?;
    if threshold >= f.level() {
        return Ok(0.0);
    }
    let mut best = 0.0f64;
    for y in 1..=sweep.min(scale.top() - 1) {
        if let Some((n, d)) = deep_difference(f, y, scale)? {
            if n > threshold {
                best = best.max(d);
            }
        }
    }
    Ok(best)
}

fn check_depth<T>(f: &LevelFunction<T>, scale: &Scale) -> Result<()> {
    if f.level() > scale.depth() {
        Err(Error::ScaleTooShallow {
            level: f.level(),
            depth: scale.depth(),
        })
    } else {
        Ok(())
    }
}

/// `sup_y Lambda(y) |f(y) - f(gamma(y))|` over `0 <= y <= Y`, with
/// `Lambda(y) = l_(n(y))`. Bounded by `2 ||f||_1`.
pub fn spectral_commutator_bound<T: Scalar>(
    f: &LevelFunction<T>,
    spec: &LengthSpec,
    sweep: u64,
) -> Result<f64> {
    let scale = spec.scale();
    check_depth(f, scale)?;
    let mut best = 0.0f64;
    for y in 1..=sweep.min(scale.top() - 1) {
        if let Some((n, d)) = deep_difference(f, y, scale)? {
            best = best.max(spec.l_f64(n) * d);
        }
    }
    Ok(best)
}

/// `Lambda(y)` on every label, in label order.
pub fn dirac_spectrum(phi: &KHomomorphism, spec: &LengthSpec) -> Result<Vec<(Label, Rational)>> {
    let model = build_module(phi, spec.scale())?;
    model
        .labels
        .into_iter()
        .map(|l| Ok((l, lambda_of_index(spec, l.y)?)))
        .collect()
}
