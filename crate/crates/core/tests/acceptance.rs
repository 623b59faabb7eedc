//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num::{BigInt, Complex};
use odolab_core::cohomology::{apply_coboundary, solve_by_fourier, solve_by_prefix_sum};
use odolab_core::dual::{make_root, roots_of_unity};
use odolab_core::fredholm::{
    closed_form_index, commutator_tail_norm, index_pairing, spectral_commutator_bound, PairingOperator,
};
use odolab_core::harmonic::{
    character, exp_i, fourier, inverse_fourier, mul, rd_norm, sub, sup_norm, LevelFunction,
};
use odolab_core::ktheory::{decompose, delta_to_e, pair, recompose, K0Class, K0Coeffs, KHomomorphism};
use odolab_core::length::{
    classify, d_bound_constant, d_of_r, growth_certificate, lambda_table, totient_bound, verify_axioms,
    GrowthParams,
};
use odolab_core::sample::{self, ChaCha8Rng};
use odolab_core::scalar::{rational, rational_int, Rational, Scalar};
use odolab_core::{LengthSpec, Scale};
use rand::Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(e: impl std::fmt::Debug) -> String {
    format!("{e:?}")
}

/// Levels `1..=min(4, depth)` cycled over a corpus.
fn level_for(i: usize, spec: &LengthSpec) -> usize {
    1 + i % spec.depth().min(4)
}

fn coboundary_exactness(rng: &mut ChaCha8Rng) -> Check {
    let mut n = 0;
    for (name, spec) in sample::builtin_specs() {
        for i in 0..100 {
            let level = level_for(i, &spec);
            let f = sample::mean_zero(&sample::exact_function(rng, spec.scale(), level, i % 2 == 0));
            let g = solve_by_prefix_sum(&f, 0.0).map_err(r)?;
            ensure(apply_coboundary(&g) == f, || format!("{name}: prefix-sum g misses f at level {level}"))?;
            let gf = solve_by_fourier(&f, 1e-9).map_err(r)?;
            let diff = sup_norm(&sub(&gf, &g.map(Scalar::to_complex)).map_err(r)?);
            ensure(diff <= 1e-9, || format!("{name}: fourier solution off by {diff:e}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} functions, exact prefix sums, fourier within 1e-9"))
}

fn coboundary_norm_estimate(rng: &mut ChaCha8Rng) -> Check {
    let mut worst = f64::NEG_INFINITY;
    for (name, spec) in sample::builtin_specs() {
        for i in 0..100 {
            let level = level_for(i, &spec);
            let f = sample::mean_zero(&sample::exact_function(rng, spec.scale(), level, i % 2 == 0));
            let g = solve_by_prefix_sum(&f, 0.0).map_err(r)?;
            for big_n in 0..=2u32 {
                let lhs = rd_norm(&g, big_n, &spec).map_err(r)?;
                let rhs = 0.25 * rd_norm(&f, big_n + 1, &spec).map_err(r)?;
                worst = worst.max(lhs - rhs);
                ensure(lhs <= rhs + 1e-9, || format!("{name}: N={big_n}: {lhs} > {rhs}"))?;
            }
        }
    }
    Ok(format!("200 functions, N in 0..=2, max lhs - rhs {worst:.3e}"))
}

fn submultiplicativity(rng: &mut ChaCha8Rng) -> Check {
    for (name, spec) in sample::builtin_specs() {
        for i in 0..100 {
            let f = sample::float_function(rng, spec.scale(), level_for(i, &spec));
            let shift = rng.gen_range(0..4);
            let g = sample::float_function(rng, spec.scale(), level_for(i + shift, &spec));
            let fg = mul(&f, &g).map_err(r)?;
            for big_n in 0..=3u32 {
                let lhs = rd_norm(&fg, big_n, &spec).map_err(r)?;
                let rhs = rd_norm(&f, big_n, &spec).map_err(r)? * rd_norm(&g, big_n, &spec).map_err(r)?;
                ensure(lhs <= rhs + 1e-9, || format!("{name}: N={big_n}: {lhs} > {rhs}"))?;
            }
        }
    }
    Ok("200 pairs, N in 0..=3".into())
}

fn exponential_bound(rng: &mut ChaCha8Rng) -> Check {
    let spec = sample::dyadic_spec();
    let c = d_bound_constant(&spec, 2.0);
    ensure(c <= 1.0, || format!("certified constant {c} exceeds 1"))?;
    for i in 0..50 {
        let level = 1 + i % 3;
        let f = sample::exact_function(rng, spec.scale(), level, true).map(|v| {
            // keep exponents moderate: values in [-1, 1]
            v.div_u64(9)
        });
        for big_n in 0..=2u32 {
            let growth = rd_norm(&f, big_n + 1, &spec).map_err(r)?.exp();
            for n in (-64i64..=64).filter(|&n| n != 0) {
                let e = exp_i(&f, n).map_err(r)?;
                let lhs = rd_norm(&e, big_n, &spec).map_err(r)?;
                let rhs = c * growth * (n.unsigned_abs() as f64).powi(big_n as i32 + 2);
                ensure(lhs <= rhs + 1e-6, || format!("n={n}, N={big_n}: {lhs} > {rhs}"))?;
                if big_n == 0 {
                    let top = fourier(&e).iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
                    ensure(top <= 1.0 + 1e-9, || format!("coefficient modulus {top} above 1"))?;
                }
            }
        }
    }
    Ok(format!("50 functions, 1 <= |n| <= 64, N in 0..=2, C = {c}"))
}

fn k0_round_trips(rng: &mut ChaCha8Rng) -> Check {
    for (name, spec) in sample::builtin_specs() {
        let s = spec.scale();
        let top = s.depth();
        for _ in 0..100 {
            let c = K0Coeffs::new(sample::coefficients(rng, 16.min(s.top()), 5));
            let back = decompose(&recompose(&c, s, top).map_err(r)?, s).map_err(r)?;
            ensure(back == c, || format!("{name}: decompose(recompose({c:?})) = {back:?}"))?;
        }
        for i in 0..100 {
            let f = sample::integer_class(rng, s, i % (top + 1), 4);
            let back = recompose(&decompose(&f, s).map_err(r)?, s, f.level()).map_err(r)?;
            ensure(back == f, || format!("{name}: recompose(decompose(f)) != f"))?;
        }
        let zero = K0Class::new(s, top, vec![0; s.top() as usize]).map_err(r)?;
        ensure(decompose(&zero, s).map_err(r)?.coeffs.is_empty(), || format!("{name}: zero has coefficients"))?;
    }
    Ok("200 coefficient maps, 200 classes, zero -> {}".into())
}

fn index_theorem(rng: &mut ChaCha8Rng) -> Check {
    let mut with_zero = 0;
    for i in 0..100 {
        let (name, spec) = &sample::builtin_specs()[i % 2];
        let s = spec.scale();
        let mut coeffs = sample::coefficients(rng, 16.min(s.top()), 3);
        if i % 4 == 0 {
            coeffs.insert(0, [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)]);
        }
        let phi = KHomomorphism::new(coeffs);
        with_zero += usize::from(phi.get(0) != 0);
        let level = rng.gen_range(0..=s.depth());
        let p = sample::projection(rng, s, level);
        let index = index_pairing(&phi, &p, s, PairingOperator::Bounded).map_err(r)?;
        let dirac = index_pairing(&phi, &p, s, PairingOperator::Dirac(spec)).map_err(r)?;
        let pairing = pair(&phi, &p, s).map_err(r)?;
        let closed = closed_form_index(&phi, &p, s).map_err(r)?;
        ensure(index == pairing && pairing == closed && dirac == index, || {
            format!("{name}: Phi={:?}: index {index}, dirac {dirac}, pairing {pairing}, closed form {closed}", phi.coeffs)
        })?;
    }
    Ok(format!("100 pairs ({with_zero} with phi_0 != 0)"))
}

fn delta_e_duality(rng: &mut ChaCha8Rng) -> Check {
    let scales = [
        Scale::dyadic(6),
        Scale::new(vec![3, 6, 12, 24, 48, 96]).map_err(r)?,
    ];
    for s in &scales {
        let deltas: Vec<KHomomorphism> = (0..64).map(|z| delta_to_e(z, s)).collect::<Result<_, _>>().map_err(r)?;
        for i in 0..25 {
            let f = sample::integer_class(rng, s, 1 + i % s.depth(), 6);
            for (z, d) in deltas.iter().enumerate() {
                let v = pair(d, &f, s).map_err(r)?;
                ensure(v == f.at(z as u64), || format!("scale {:?}: z={z}: pairing {v} != f(z) {}", s.entries(), f.at(z as u64)))?;
            }
        }
    }
    Ok("z < 64, 50 classes".into())
}

fn classification_round_trip(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..50 {
        let spec = sample::length_spec(rng, 5, 64);
        let t = lambda_table(&spec);
        ensure(verify_axioms(&t).map_err(r)?.all_pass(), || format!("axioms fail for {:?}", spec.scale().entries()))?;
        let back = classify(&t).map_err(r)?;
        ensure(back.as_ref() == Some(&spec), || format!("classify gave {back:?} for {spec:?}"))?;
    }
    for (name, spec) in sample::builtin_specs() {
        let report = verify_axioms(&lambda_table(&spec)).map_err(r)?;
        ensure(report.all_pass(), || format!("{name}: {report:?}"))?;
    }
    Ok("50 random specs rebuilt exactly; built-in tables pass all axioms".into())
}

fn d_and_totient(rng: &mut ChaCha8Rng) -> Check {
    let params = GrowthParams::new(rational_int(1), rational_int(1)).map_err(r)?;
    for (name, spec) in sample::builtin_specs() {
        let cert = growth_certificate(&spec, &params, spec.depth()).map_err(r)?;
        ensure(cert.holds, || format!("{name}: growth fails at {:?}", cert.witness))?;
        for _ in 0..20 {
            let rr: Rational = rational(rng.gen_range(1..=400), rng.gen_range(1..=4));
            let d = d_of_r(&spec, &rr);
            let bound = totient_bound(&rr, &params);
            ensure(d <= bound, || format!("{name}: d({rr}) = {d} > {bound}"))?;
        }
    }
    let dy = sample::dyadic_spec();
    for m in 0..=4u32 {
        let rr = Rational::from_integer(BigInt::from(2u64.pow(m)));
        ensure(d_of_r(&dy, &rr) == 2u64.pow(m), || format!("d(2^{m}) = {}", d_of_r(&dy, &rr)))?;
    }
    Ok("20 radii per spec; dyadic d(2^m) = 2^m".into())
}

fn spectral_bound(rng: &mut ChaCha8Rng) -> Check {
    for i in 0..100 {
        let (name, spec) = &sample::builtin_specs()[i % 2];
        let f = sample::float_function(rng, spec.scale(), i % 4);
        let b = spectral_commutator_bound(&f, spec, 256).map_err(r)?;
        let bound = 2.0 * rd_norm(&f, 1, spec).map_err(r)?;
        ensure(b <= bound + 1e-9, || format!("{name}: {b} > {bound}"))?;
    }
    let dy = sample::dyadic_spec();
    let chi = character(dy.scale(), 2, &make_root(1, 4)).map_err(r)?;
    let w = spectral_commutator_bound(&chi, &dy, 256).map_err(r)?;
    ensure((w - 8.0).abs() <= 1e-12, || format!("chi_(1/4) gives {w}, expected 8"))?;
    let norm = 2.0 * rd_norm(&chi, 1, &dy).map_err(r)?;
    ensure((norm - 8.0).abs() <= 1e-9, || format!("2||chi||_1 = {norm}"))?;
    Ok("100 functions, y <= 256; chi_(1/4) attains 8".into())
}

fn fourier_analytics(rng: &mut ChaCha8Rng) -> Check {
    for (name, spec) in sample::builtin_specs() {
        let s = spec.scale();
        for i in 0..50 {
            let f = sample::float_function(rng, s, i % (s.depth() + 1));
            let c = fourier(&f);
            let back = inverse_fourier(&c);
            let err = sup_norm(&sub(&back, &f).map_err(r)?);
            ensure(err <= 1e-9, || format!("{name}: inversion error {err:e}"))?;
            let energy: f64 = f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / f.size() as f64;
            let spectral: f64 = c.iter().map(|(_, v)| v.norm_sqr()).sum();
            ensure((energy - spectral).abs() <= 1e-9, || format!("{name}: Parseval {energy} vs {spectral}"))?;
            for threshold in f.level()..=s.depth() {
                let t = commutator_tail_norm(&f, s, 256, threshold).map_err(r)?;
                ensure(t == 0.0, || format!("{name}: tail norm {t} beyond level"))?;
            }
        }
        for level in 0..=s.depth() {
            let n = s.s(level);
            let chars: Vec<LevelFunction<Complex<f64>>> = roots_of_unity(n)
                .iter()
                .map(|z| character(s, level, z))
                .collect::<Result<_, _>>()
                .map_err(r)?;
            for (a, ca) in chars.iter().enumerate() {
                for (b, cb) in chars.iter().enumerate() {
                    let inner: Complex<f64> = ca
                        .values()
                        .iter()
                        .zip(cb.values())
                        .map(|(x, y)| x * y.conj())
                        .sum::<Complex<f64>>()
                        / n as f64;
                    let expected = if a == b { 1.0 } else { 0.0 };
                    ensure((inner - Complex::new(expected, 0.0)).norm() <= 1e-12, || {
                        format!("{name}: <chi_{a}, chi_{b}> = {inner} at level {level}")
                    })?;
                }
            }
        }
    }
    Ok("inversion, Parseval, orthogonality, tail norms".into())
}

type CheckFn = fn(&mut ChaCha8Rng) -> Check;

fn main() -> ExitCode {
    let checks: [(&str, CheckFn); 11] = [
        ("coboundary-exactness", coboundary_exactness),
        ("coboundary-norm-estimate", coboundary_norm_estimate),
        ("submultiplicativity", submultiplicativity),
        ("exponential-bound", exponential_bound),
        ("k0-round-trips", k0_round_trips),
        ("index-theorem", index_theorem),
        ("delta-e-duality", delta_e_duality),
        ("length-classification", classification_round_trip),
        ("d-and-totient-bound", d_and_totient),
        ("spectral-commutator-bound", spectral_bound),
        ("fourier-analytics", fourier_analytics),
    ];
    let mut failures = 0;
    for (seed, (name, check)) in checks.iter().enumerate() {
        let mut rng = sample::rng(0x0d0_1ab + seed as u64);
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut rng)))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failures} failed", checks.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
