//! Seeded invariant suites on the built-in dyadic and (3, 6, 12) specs.

use odolab_core::cohomology::{apply_coboundary, solve_by_prefix_sum};
use odolab_core::dual::make_root;
use odolab_core::fredholm::{index_pairing, PairingOperator};
use odolab_core::harmonic::{mul, rd_norm};
use odolab_core::ktheory::{pair, KHomomorphism};
use odolab_core::length::{classify, lambda_table, verify_axioms};
use odolab_core::sample::{self, ChaCha8Rng};
use odolab_core::scalar::rational_int;
use odolab_core::{LengthSpec, LengthTable, DEFAULT_TOLERANCE};
use rand::Rng;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    /// Random cases per suite and spec.
    pub cases: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 2024, cases: 50 }
    }
}

pub struct SuiteResult {
    name: &'static str,
    passed: usize,
    failed: usize,
    detail: Option<String>,
}

pub struct Report {
    suites: Vec<SuiteResult>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.suites.iter().map(|s| s.failed).sum()
    }

    pub fn to_json(&self) -> Value {
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|s| {
                let mut v = json!({"name": s.name, "passed": s.passed, "failed": s.failed});
                if let Some(d) = &s.detail {
                    v["detail"] = Value::String(d.clone());
                }
                v
            })
            .collect();
        json!({
            "suites": suites,
            "passed": self.suites.iter().map(|s| s.passed).sum::<usize>(),
            "failed": self.failed(),
        })
    }
}

struct Tally {
    name: &'static str,
    passed: usize,
    failed: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, passed: 0, failed: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.first_failure.get_or_insert_with(what);
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            passed: self.passed,
            failed: self.failed,
            detail: self.first_failure,
        }
    }
}

fn level(rng: &mut ChaCha8Rng, spec: &LengthSpec) -> usize {
    rng.gen_range(0..=spec.depth().min(4))
}

fn submultiplicativity(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut t = Tally::new("submultiplicativity");
    for (name, spec) in sample::builtin_specs() {
        for _ in 0..cases {
            let (lf, lg) = (level(rng, &spec), level(rng, &spec));
            let f = sample::float_function(rng, spec.scale(), lf);
            let g = sample::float_function(rng, spec.scale(), lg);
            let fg = mul(&f, &g).expect("common level");
            let ok = (0..=3).all(|n| {
                let lhs = rd_norm(&fg, n, &spec).expect("level within spec");
                let rhs = rd_norm(&f, n, &spec).expect("level within spec")
                    * rd_norm(&g, n, &spec).expect("level within spec");
                lhs <= rhs + DEFAULT_TOLERANCE
            });
            t.record(ok, || format!("{name}: levels {lf}, {lg}"));
        }
    }
    t.finish()
}

fn coboundary_round_trip(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut t = Tally::new("coboundary round trip");
    for (name, spec) in sample::builtin_specs() {
        for _ in 0..cases {
            let m = level(rng, &spec);
            let f = sample::mean_zero(&sample::exact_function(rng, spec.scale(), m, false));
            let ok = solve_by_prefix_sum(&f, 0.0).is_ok_and(|g| apply_coboundary(&g) == f);
            t.record(ok, || format!("{name}: level {m}"));
        }
    }
    t.finish()
}

fn index_vs_pairing(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut t = Tally::new("index vs pairing");
    for (name, spec) in sample::builtin_specs() {
        let s = spec.scale();
        for _ in 0..cases {
            let phi = KHomomorphism::new(sample::coefficients(rng, 16.min(s.top()), 3));
            let m = rng.gen_range(0..=s.depth());
            let p = sample::projection(rng, s, m);
            let index = index_pairing(&phi, &p, s, PairingOperator::Bounded);
            let pairing = pair(&phi, &p, s);
            let ok = matches!((&index, &pairing), (Ok(a), Ok(b)) if a == b);
            t.record(ok, || format!("{name}: Phi = {:?}: {index:?} vs {pairing:?}", phi.coeffs));
        }
    }
    t.finish()
}

fn classification_round_trip(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut t = Tally::new("classification round trip");
    let mut specs: Vec<LengthSpec> = sample::builtin_specs().into_iter().map(|(_, s)| s).collect();
    specs.extend((0..cases).map(|_| sample::length_spec(rng, 5, 64)));
    for spec in specs {
        let table = lambda_table(&spec);
        let axioms = verify_axioms(&table).is_ok_and(|r| r.all_pass());
        let back = classify(&table);
        let ok = axioms && matches!(&back, Ok(Some(s)) if *s == spec);
        t.record(ok, || format!("scale {:?}", spec.scale().entries()));
    }
    t.finish()
}

/// The dyadic table with `lambda(-1)` raised above `lambda(i)`, so that
/// `lambda(i * i) > max(lambda(i), lambda(i))`.
pub fn corrupted_table() -> LengthTable {
    let spec = sample::dyadic_spec();
    lambda_table(&spec)
        .iter()
        .map(|(z, v)| {
            let v = if *z == make_root(1, 2) { rational_int(8) } else { v.clone() };
            (*z, v)
        })
        .collect()
}

fn corrupted_fixture() -> SuiteResult {
    let mut t = Tally::new("corrupted table detected");
    let report = verify_axioms(&corrupted_table());
    let detail = match &report {
        Ok(r) => match r.witnesses.non_archimedean {
            Some((a, b)) => format!("non-archimedean axiom fails at ({a}, {b})"),
            None => "no non-archimedean witness".into(),
        },
        Err(e) => e.to_string(),
    };
    t.record(
        matches!(&report, Ok(r) if !r.non_archimedean && r.witnesses.non_archimedean.is_some()),
        || "corruption not detected".into(),
    );
    let mut out = t.finish();
    out.detail = Some(detail);
    out
}

pub fn run(cfg: &Config) -> Report {
    let mut rng = sample::rng(cfg.seed);
    Report {
        suites: vec![
            submultiplicativity(&mut rng, cfg.cases),
            coboundary_round_trip(&mut rng, cfg.cases),
            index_vs_pairing(&mut rng, cfg.cases),
            classification_round_trip(&mut rng, cfg.cases),
            corrupted_fixture(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_pass() {
        let report = run(&Config { seed: 1, cases: 10 });
        assert_eq!(report.failed(), 0, "{}", report.to_json());
    }

    #[test]
    fn fixture_violates_only_non_archimedean() {
        let r = verify_axioms(&corrupted_table()).unwrap();
        assert!(r.normalization && r.order_class_constancy && !r.non_archimedean);
    }
}
