//! Non-archimedean length functions on the dual group.
//!
//! Every such function is `lambda_{s,l}` for some scale `s` and increasing
//! values `l`: it takes the value `l_m` on `G_m \ G_{m-1}`. This module
//! evaluates them, checks the axioms on finite tables, recovers `(s, l)` from a
//! table, and certifies growth conditions and the counting function `d(r)`.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::dual::{enumerate_subgroup, level_of, DualElement};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, rational_to_f64, Rational};
use crate::supernatural::{divisors, Scale};

/// A scale together with values `1 < l_1 < ... < l_M` (and `l_0 = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LengthSpecFile", into = "LengthSpecFile")]
pub struct LengthSpec {
    scale: Scale,
    l: Vec<Rational>,
}

impl LengthSpec {
    pub fn new(scale: Scale, l: Vec<Rational>) -> Result<Self> {
        if l.len() != scale.depth() {
            return Err(Error::InvalidLengthSpec(format!(
                "{} values for a scale of depth {}",
                l.len(),
                scale.depth()
            )));
        }
        let mut prev = Rational::one();
        for (i, v) in l.iter().enumerate() {
            if *v <= prev {
                return Err(Error::InvalidLengthSpec(format!(
                    "l_{} = {} is not above {}",
                    i + 1,
                    v,
                    prev
                )));
            }
            prev = v.clone();
        }
        Ok(LengthSpec { scale, l })
    }

    /// `l_m = base^m` on the given scale.
    pub fn geometric(scale: Scale, base: u64) -> Result<Self> {
        let l = (1..=scale.depth() as u32)
            .map(|m| Rational::from_integer(BigInt::from(base).pow(m)))
            .collect();
        LengthSpec::new(scale, l)
    }

    /// `l_m = s_m`.
    pub fn scale_valued(scale: Scale) -> Self {
        let l = scale
            .entries()
            .iter()
            .map(|&s| Rational::from_integer(BigInt::from(s)))
            .collect();
        LengthSpec::new(scale, l).expect("scale entries increase and start at 2")
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn depth(&self) -> usize {
        self.scale.depth()
    }

    pub fn values(&self) -> &[Rational] {
        &self.l
    }

    /// `l_m`, with `l_0 = 1`.
    pub fn l(&self, m: usize) -> Rational {
        if m == 0 {
            Rational::one()
        } else {
            self.l[m - 1].clone()
        }
    }

    pub fn l_f64(&self, m: usize) -> f64 {
        rational_to_f64(&self.l(m))
    }
}

/// The on-disk shape `{"scale": [...], "l": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LengthSpecFile {
    pub scale: Vec<u64>,
    pub l: Vec<RationalRepr>,
}

impl LengthSpecFile {
    /// Validate into a spec, keeping the typed error.
    pub fn into_spec(self) -> Result<LengthSpec> {
        let scale = Scale::new(self.scale)?;
        let l = self
            .l
            .iter()
            .map(|r| r.to_rational().map_err(Error::InvalidLengthSpec))
            .collect::<Result<Vec<_>>>()?;
        LengthSpec::new(scale, l)
    }
}

/// A rational in JSON: a `"p/q"` string or an integer.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Str(String),
    Int(i64),
}

impl RationalRepr {
    pub fn to_rational(&self) -> std::result::Result<Rational, String> {
        match self {
            RationalRepr::Str(s) => parse_rational(s).ok_or_else(|| format!("bad rational {s:?}")),
            RationalRepr::Int(n) => Ok(Rational::from_integer(BigInt::from(*n))),
        }
    }
}

impl From<&Rational> for RationalRepr {
    fn from(r: &Rational) -> Self {
        RationalRepr::Str(format_rational(r))
    }
}

impl TryFrom<LengthSpecFile> for LengthSpec {
    type Error = String;

    fn try_from(file: LengthSpecFile) -> std::result::Result<Self, String> {
        file.into_spec().map_err(|e| e.to_string())
    }
}

impl From<LengthSpec> for LengthSpecFile {
    fn from(spec: LengthSpec) -> Self {
        LengthSpecFile {
            scale: spec.scale.entries().to_vec(),
            l: spec.l.iter().map(RationalRepr::from).collect(),
        }
    }
}

/// `lambda_{s,l}(z) = l_m` where `m` is the level of `z`.
pub fn lambda_eval(spec: &LengthSpec, z: &DualElement) -> Result<Rational> {
    Ok(spec.l(level_of(z, &spec.scale)?))
}

/// `Lambda(y) = l_{n(y)}` for a label `y`, with `Lambda(0) = 1`.
pub fn lambda_of_index(spec: &LengthSpec, y: u64) -> Result<Rational> {
    Ok(spec.l(crate::odometer::n_of(y, &spec.scale)?))
}

/// Values of a candidate length function on a finite set of roots of unity.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<TableEntry>", into = "Vec<TableEntry>")]
pub struct LengthTable {
    table: BTreeMap<DualElement, Rational>,
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    k: i64,
    s: u64,
    value: RationalRepr,
}

impl TryFrom<Vec<TableEntry>> for LengthTable {
    type Error = String;

    fn try_from(entries: Vec<TableEntry>) -> std::result::Result<Self, String> {
        let mut table = BTreeMap::new();
        for e in entries {
            if e.s == 0 {
                return Err("root of unity with s = 0".into());
            }
            let z = crate::dual::make_root(e.k, e.s);
            if table.insert(z, e.value.to_rational()?).is_some() {
                return Err(format!("duplicate entry for {z}"));
            }
        }
        Ok(LengthTable { table })
    }
}

impl From<LengthTable> for Vec<TableEntry> {
    fn from(t: LengthTable) -> Self {
        t.table
            .iter()
            .map(|(z, v)| TableEntry {
                k: z.numerator() as i64,
                s: z.order(),
                value: RationalRepr::from(v),
            })
            .collect()
    }
}

impl FromIterator<(DualElement, Rational)> for LengthTable {
    fn from_iter<I: IntoIterator<Item = (DualElement, Rational)>>(iter: I) -> Self {
        LengthTable {
            table: iter.into_iter().collect(),
        }
    }
}

impl LengthTable {
    pub fn get(&self, z: &DualElement) -> Option<&Rational> {
        self.table.get(z)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DualElement, &Rational)> {
        self.table.iter()
    }

    fn check_subgroup(&self) -> Result<()> {
        if !self.table.contains_key(&DualElement::IDENTITY) {
            return Err(Error::DomainNotSubgroup("identity missing".into()));
        }
        for z in self.table.keys() {
            if !self.table.contains_key(&z.inv()) {
                return Err(Error::DomainNotSubgroup(format!("inverse of {z} missing")));
            }
            for w in self.table.keys() {
                let zw = z.mul(w);
                if !self.table.contains_key(&zw) {
                    return Err(Error::DomainNotSubgroup(format!(
                        "product {z} * {w} = {zw} missing"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `lambda_{s,l}` tabulated on `G_M`.
pub fn lambda_table(spec: &LengthSpec) -> LengthTable {
    enumerate_subgroup(&spec.scale, spec.depth())
        .into_iter()
        .map(|z| {
            let v = lambda_eval(spec, &z).expect("z lies in G_M");
            (z, v)
        })
        .collect()
}

/// First violating witnesses, one slot per axiom.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct AxiomWitnesses {
    pub normalization: Option<DualElement>,
    pub non_archimedean: Option<(DualElement, DualElement)>,
    pub order_class_constancy: Option<(DualElement, DualElement)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub normalization: bool,
    pub non_archimedean: bool,
    pub order_class_constancy: bool,
    pub witnesses: AxiomWitnesses,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.normalization && self.non_archimedean && self.order_class_constancy
    }

    fn first_failure(&self) -> Option<&'static str> {
        if !self.normalization {
            Some("normalization")
        } else if !self.non_archimedean {
            Some("non-archimedean")
        } else if !self.order_class_constancy {
            Some("order-class constancy")
        } else {
            None
        }
    }
}

/// Exhaustively check the length-function axioms on a table whose domain is a
/// finite subgroup. Normalization means `lambda(z) = 1` exactly at the identity
/// and `lambda(z) > 1` elsewhere.
pub fn verify_axioms(t: &LengthTable) -> Result<AxiomReport> {
    t.check_subgroup()?;
    let one = Rational::one();
    let normalization = t
        .table
        .iter()
        .find(|(z, v)| {
            if z.is_identity() {
                **v != one
            } else {
                **v <= one
            }
        })
        .map(|(z, _)| *z);
    let mut w = AxiomWitnesses { normalization, ..Default::default() };

    'outer: for (z1, v1) in &t.table {
        for (z2, v2) in &t.table {
            if t.table[&z1.mul(z2)] > *v1.max(v2) {
                w.non_archimedean = Some((*z1, *z2));
                break 'outer;
            }
        }
    }

    let mut first_of_order: BTreeMap<u64, (DualElement, &Rational)> = BTreeMap::new();
    for (z, v) in &t.table {
        let (rep, rv) = *first_of_order.entry(z.order()).or_insert((*z, v));
        if rv != v {
            w.order_class_constancy = Some((rep, *z));
            break;
        }
    }

    Ok(AxiomReport {
        normalization: w.normalization.is_none(),
        non_archimedean: w.non_archimedean.is_none(),
        order_class_constancy: w.order_class_constancy.is_none(),
        witnesses: w,
    })
}

/// Recover `(s, l)` from a complete table: `l` lists the distinct values above
/// 1 and `s_m = |G_m|` with `G_m` the sublevel set at `l_m`.
///
/// Returns `None` for the trivial group, whose prefix is empty.
pub fn classify(t: &LengthTable) -> Result<Option<LengthSpec>> {
    let report = verify_axioms(t)?;
    if let Some(axiom) = report.first_failure() {
        return Err(Error::AxiomViolation(axiom.into()));
    }
    let levels: BTreeSet<&Rational> = t.table.values().filter(|v| !v.is_one()).collect();
    if levels.is_empty() {
        return Ok(None);
    }
    let mut sizes = Vec::with_capacity(levels.len());
    for &lm in &levels {
        let sub: Vec<&DualElement> = t.table.iter().filter(|(_, v)| *v <= lm).map(|(z, _)| z).collect();
        let size = sub.len() as u64;
        // |G_m| elements whose orders all divide |G_m| are exactly the |G_m|-th roots.
        if let Some(z) = sub.iter().find(|z| !size.is_multiple_of(z.order())) {
            return Err(Error::SublevelNotSubgroup(format!(
                "{lm}: element {z} has order not dividing {size}"
            )));
        }
        sizes.push(size);
    }
    let scale = Scale::new(sizes).map_err(|e| Error::SublevelNotSubgroup(e.to_string()))?;
    let spec = LengthSpec::new(scale, levels.into_iter().cloned().collect())?;
    for (z, v) in &t.table {
        if lambda_eval(&spec, z)? != *v {
            return Err(Error::SublevelNotSubgroup(format!(
                "rebuilt length disagrees at {z}"
            )));
        }
    }
    Ok(Some(spec))
}

/// Constants `(c, alpha)` of the fast-growth condition `lambda(z) >= c ord(z)^alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthParams {
    c: Rational,
    alpha: Rational,
}

impl GrowthParams {
    pub fn new(c: Rational, alpha: Rational) -> Result<Self> {
        if !c.is_positive() || !alpha.is_positive() {
            return Err(Error::InvalidLengthSpec(
                "growth constants must be positive".into(),
            ));
        }
        Ok(GrowthParams { c, alpha })
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    /// `beta = 2 / alpha`.
    pub fn beta(&self) -> Rational {
        Rational::from_integer(BigInt::from(2)) / &self.alpha
    }

    /// `c * n^alpha <= r`, decided exactly.
    fn scaled_power_at_most(&self, n: u64, r: &Rational) -> bool {
        let p = self.alpha.numer().to_usize().expect("alpha numerator fits usize");
        let q = self.alpha.denom().to_usize().expect("alpha denominator fits usize");
        // c n^(p/q) <= r  <=>  n^p <= (r/c)^q for positive r/c.
        let ratio = r / &self.c;
        if !ratio.is_positive() {
            return false;
        }
        let lhs = Rational::from_integer(num::pow(BigInt::from(n), p));
        lhs <= num::pow(ratio, q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthCertificate {
    pub holds: bool,
    /// A root of unity with `lambda(z) < c ord(z)^alpha`, when the check fails.
    pub witness: Option<DualElement>,
}

/// Check `lambda(z) >= c ord(z)^alpha` on `G_depth`.
///
/// The length is constant on elements of equal order, so one representative
/// `1/d` per divisor `d` of `s_depth` is tested, largest order first; the
/// witness is the deepest violation.
pub fn growth_certificate(
    spec: &LengthSpec,
    params: &GrowthParams,
    depth: usize,
) -> Result<GrowthCertificate> {
    if depth > spec.depth() {
        return Err(Error::ScaleTooShallow {
            level: depth,
            depth: spec.depth(),
        });
    }
    for d in divisors(spec.scale.s(depth)).into_iter().rev() {
        let z = crate::dual::make_root(1, d);
        let lam = lambda_eval(spec, &z)?;
        // lambda >= c d^alpha fails iff c d^alpha > lambda.
        if !params.scaled_power_at_most(d, &lam) {
            return Ok(GrowthCertificate {
                holds: false,
                witness: Some(z),
            });
        }
    }
    Ok(GrowthCertificate {
        holds: true,
        witness: None,
    })
}

/// `d(r) = |{z in G_M : lambda(z) <= r}|`.
pub fn d_of_r(spec: &LengthSpec, r: &Rational) -> u64 {
    if *r < Rational::one() {
        return 0;
    }
    let m = (0..=spec.depth())
        .rev()
        .find(|&m| spec.l(m) <= *r)
        .expect("l_0 = 1 <= r");
    spec.scale.s(m)
}

/// The smallest `C` with `d(r) <= C r^beta` for all `r >= 1` on the truncation.
///
/// `d` is a step function jumping at each `l_m`, so the supremum of
/// `d(r) / r^beta` is attained at one of the `l_m`.
pub fn d_bound_constant(spec: &LengthSpec, beta: f64) -> f64 {
    (0..=spec.depth())
        .map(|m| spec.scale.s(m) as f64 / spec.l_f64(m).powf(beta))
        .fold(0.0, f64::max)
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    crate::supernatural::factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `Phi(n) = sum_{k <= n} phi(k)`, the number of roots of unity of order at most `n`.
pub fn totient_summatory(n: u64) -> u64 {
    let n = n as usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for k in (p..=n).step_by(p) {
                phi[k] -= phi[k] / p as u64;
            }
        }
    }
    phi.iter().skip(1).sum()
}

/// Largest `K` with `c K^alpha <= r`; elements of `{lambda <= r}` have order at
/// most `K` whenever the growth certificate holds.
pub fn order_bound(r: &Rational, params: &GrowthParams) -> u64 {
    if !params.scaled_power_at_most(1, r) {
        return 0;
    }
    let mut hi = 2u64;
    while params.scaled_power_at_most(hi, r) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    // invariant: lo passes, hi fails
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if params.scaled_power_at_most(mid, r) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `sum_{k <= (r/c)^(1/alpha)} phi(k)`.
pub fn totient_bound(r: &Rational, params: &GrowthParams) -> u64 {
    totient_summatory(order_bound(r, params))
}
