//! The cohomological equation `g(x + 1) - g(x) = f(x)` for the odometer
//! shift, cocycles generated by a locally constant function, and the class
//! map to `C`.

use num::Complex;

use crate::dual::DualElement;
use crate::error::{Error, Result};
use crate::harmonic::{fourier, haar_integral, inverse_fourier, FourierCoeffs, LevelFunction};
use crate::odometer::OdometerPoint;
use crate::scalar::{Complex64, Scalar};
use crate::supernatural::Scale;

/// Largest level size accepted by [`solve_by_fourier`], which runs two
/// dense transforms.
pub const FOURIER_SIZE_LIMIT: u64 = 4096;

fn check_mean<T: Scalar>(f: &LevelFunction<T>, tol: f64) -> Result<()> {
    let mean = haar_integral(f);
    if mean.is_zero_within(tol) {
        Ok(())
    } else {
        Err(Error::NonzeroMean(format!("{}", mean.to_complex())))
    }
}

/// Mean-zero solution by prefix sums, exact for exact values.
pub fn solve_by_prefix_sum<T: Scalar>(f: &LevelFunction<T>, tol: f64) -> Result<LevelFunction<T>> {
    check_mean(f, tol)?;
    let mut acc = T::zero();
    let prefix: Vec<T> = f
        .values()
        .iter()
        .map(|v| {
            let out = acc.clone();
            acc = acc.clone() + v.clone();
            out
        })
        .collect();
    let sum = prefix.iter().cloned().fold(T::zero(), |a, b| a + b);
    let mean = sum.div_u64(f.size());
    Ok(f.map_indexed(|x, _| prefix[x].clone() - mean.clone()))
}

/// Mean-zero solution through `hat g_z = hat f_z / (z - 1)`.
pub fn solve_by_fourier<T: Scalar>(f: &LevelFunction<T>, tol: f64) -> Result<LevelFunction<Complex64>> {
    if f.size() > FOURIER_SIZE_LIMIT {
        return Err(Error::LevelOverflow {
            size: f.size(),
            limit: FOURIER_SIZE_LIMIT,
        });
    }
    check_mean(f, tol)?;
    let fc = fourier(f);
    let g: std::collections::BTreeMap<DualElement, Complex64> = fc
        .iter()
        .filter(|(z, _)| !z.is_identity())
        .map(|(z, c)| {
            let w = crate::dual::eval_char(z, 1);
            (*z, c / (w - Complex::new(1.0, 0.0)))
        })
        .collect();
    let gc = FourierCoeffs::from_map(f.level(), f.size(), &g)?;
    Ok(inverse_fourier(&gc))
}

/// `g o phi - g`.
pub fn apply_coboundary<T: Scalar>(g: &LevelFunction<T>) -> LevelFunction<T> {
    g.map_indexed(|x, v| g.eval(x as i64 + 1).clone() - v.clone())
}

/// The image of `f` in `H^1 = C`, its Haar integral.
pub fn cohomology_class<T: Scalar>(f: &LevelFunction<T>) -> T {
    haar_integral(f)
}

/// The cocycle `rho(k, x) = r(x) + r(x + 1) + ... + r(x + k - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle<T> {
    generator: LevelFunction<T>,
}

impl<T: Scalar> Cocycle<T> {
    pub fn new(generator: LevelFunction<T>) -> Self {
        Cocycle { generator }
    }

    pub fn generator(&self) -> &LevelFunction<T> {
        &self.generator
    }

    /// `rho(k, x)`; the point must be at least as fine as the generator.
    pub fn eval(&self, k: u64, x: &OdometerPoint, scale: &Scale) -> Result<T> {
        let p = x.project(scale, self.generator.level())?;
        let n = self.generator.size();
        let start = p.residue;
        // full periods contribute k / n copies of the total
        let total = self
            .generator
            .values()
            .iter()
            .cloned()
            .fold(T::zero(), |a, b| a + b);
        let mut acc = T::zero();
        for _ in 0..k / n {
            acc = acc + total.clone();
        }
        for t in 0..k % n {
            acc = acc + self.generator.at(start + t).clone();
        }
        Ok(acc)
    }
}

/// One step of the skew product `(x, v) -> (x + 1, v + r(x))`.
pub fn skew_step<T: Scalar>(
    c: &Cocycle<T>,
    x: &OdometerPoint,
    v: &T,
    scale: &Scale,
) -> Result<(OdometerPoint, T)> {
    let r = c.eval(1, x, scale)?;
    Ok((x.phi(scale), v.clone() + r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::make_root;
    use crate::harmonic::{character, sup_norm, sub};
    use crate::scalar::{exact_real, rational, rational_int, ExactComplex};

    fn dy() -> Scale {
        Scale::dyadic(4)
    }

    fn ex(values: &[i64]) -> Vec<ExactComplex> {
        values.iter().map(|&v| exact_real(rational_int(v))).collect()
    }

    #[test]
    fn prefix_sum_example() {
        let f = LevelFunction::new(&dy(), 2, ex(&[3, -1, -1, -1])).unwrap();
        let g = solve_by_prefix_sum(&f, 0.0).unwrap();
        let expected: Vec<ExactComplex> = [(-3, 2), (3, 2), (1, 2), (-1, 2)]
            .iter()
            .map(|&(p, q)| exact_real(rational(p, q)))
            .collect();
        assert_eq!(g.values(), &expected[..]);
        assert_eq!(apply_coboundary(&g), f);
    }

    #[test]
    fn character_minus_one() {
        let chi = character(&dy(), 1, &make_root(1, 2)).unwrap();
        let g = solve_by_fourier(&chi, 1e-9).unwrap();
        for x in 0..2u64 {
            assert!((g.at(x) - chi.at(x) / -2.0).norm() < 1e-12);
        }
        let back = apply_coboundary(&g);
        assert!(sup_norm(&sub(&back, &chi).unwrap()) < 1e-12);
    }

    #[test]
    fn zero_and_obstruction() {
        let z = LevelFunction::new(&dy(), 3, ex(&[0; 8])).unwrap();
        assert_eq!(solve_by_prefix_sum(&z, 0.0).unwrap(), z);
        let one = LevelFunction::new(&dy(), 1, ex(&[1, 1])).unwrap();
        assert!(matches!(solve_by_prefix_sum(&one, 0.0), Err(Error::NonzeroMean(_))));
        assert!(matches!(solve_by_fourier(&one, 1e-9), Err(Error::NonzeroMean(_))));
    }

    #[test]
    fn overflow_guard() {
        let s = Scale::dyadic(13);
        let f = LevelFunction::constant(&s, 13, Complex::new(0.0, 0.0)).unwrap();
        assert!(matches!(solve_by_fourier(&f, 1e-9), Err(Error::LevelOverflow { .. })));
    }

    #[test]
    fn coboundary_of_character() {
        let z = make_root(1, 4);
        let chi = character(&dy(), 2, &z).unwrap();
        let d = apply_coboundary(&chi);
        let w = crate::dual::eval_char(&z, 1) - Complex::new(1.0, 0.0);
        for x in 0..4u64 {
            assert!((d.at(x) - w * chi.at(x)).norm() < 1e-12);
        }
        let c = LevelFunction::new(&dy(), 2, ex(&[5; 4])).unwrap();
        assert_eq!(apply_coboundary(&c), LevelFunction::new(&dy(), 2, ex(&[0; 4])).unwrap());
    }

    #[test]
    fn class_examples() {
        let f = LevelFunction::new(&dy(), 1, ex(&[2, 0])).unwrap();
        assert_eq!(cohomology_class(&f), exact_real(rational_int(1)));
        let g = LevelFunction::new(&dy(), 3, ex(&[1, 4, -2, 7, 0, 0, 3, 1])).unwrap();
        assert_eq!(cohomology_class(&apply_coboundary(&g)), exact_real(rational_int(0)));
    }

    #[test]
    fn cocycle_examples() {
        let s = dy();
        let r = LevelFunction::new(&s, 1, ex(&[1, -1])).unwrap();
        let c = Cocycle::new(r);
        let x0 = OdometerPoint::new(&s, 1, 0).unwrap();
        assert_eq!(c.eval(0, &x0, &s).unwrap(), exact_real(rational_int(0)));
        assert_eq!(c.eval(2, &x0, &s).unwrap(), exact_real(rational_int(0)));
        let k = LevelFunction::new(&s, 2, ex(&[3; 4])).unwrap();
        let kc = Cocycle::new(k);
        let x = OdometerPoint::new(&s, 3, 5).unwrap();
        assert_eq!(kc.eval(4, &x, &s).unwrap(), exact_real(rational_int(12)));
        let coarse = OdometerPoint::new(&s, 1, 1).unwrap();
        assert!(kc.eval(1, &coarse, &s).is_err());
    }

    #[test]
    fn cocycle_identity_and_skew() {
        let s = dy();
        let r = LevelFunction::new(&s, 3, ex(&[1, 4, -2, 7, 0, 0, 3, 1])).unwrap();
        let c = Cocycle::new(r);
        for x in 0..8 {
            let p = OdometerPoint::new(&s, 3, x).unwrap();
            for k in 0..12u64 {
                for l in 0..12u64 {
                    let pk = OdometerPoint::from_integer(&s, 3, (x + k) as i64).unwrap();
                    let lhs = c.eval(k + l, &p, &s).unwrap();
                    let rhs = c.eval(k, &p, &s).unwrap() + c.eval(l, &pk, &s).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            let mut state = (p, <ExactComplex as Scalar>::zero());
            for k in 1..=10 {
                state = skew_step(&c, &state.0, &state.1, &s).unwrap();
                assert_eq!(state.1, c.eval(k, &p, &s).unwrap());
            }
        }
    }
}
