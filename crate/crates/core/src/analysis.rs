//! Base classification, the triviality test for finite expansions, exhaustive
//! scans for the fractional-length constants over integer expansions, and the
//! conjugate bounds `H`, `K`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::admissibility::Admissibility;
use crate::base::{Base, BaseKind};
use crate::error::{Error, Result};
use crate::expansion::{eval_word, expand, Expansion, Status};
use crate::quad::{QuadElem, QuadField};
use crate::transform::DEFAULT_MAX_ITER;
use crate::word::{Digit, DigitWord};

/// Whether `beta` lies below the golden ratio, in which case no nonzero
/// number has a finite expansion.
pub fn fin_trivial(base: &Base) -> Result<bool> {
    Ok(base.cmp_golden()? == Ordering::Less)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjugateSign {
    Positive,
    Negative,
    /// Integer and generic bases.
    NotApplicable,
}

impl fmt::Display for ConjugateSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjugateSign::Positive => "positive",
            ConjugateSign::Negative => "negative",
            ConjugateSign::NotApplicable => "none",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `int`, `quad-`, `quad+` or `real`.
    pub kind: &'static str,
    /// `None` when it cannot be decided (generic bases).
    pub pisot: Option<bool>,
    pub conjugate_sign: ConjugateSign,
    /// Pisot with no negative conjugate: finite expansions form a ring.
    pub ring_candidate: bool,
    /// Integer expansions form a ring (integer bases only).
    pub z_ring: bool,
}

pub fn classify(base: &Base) -> Classification {
    match base.kind() {
        BaseKind::Integer { .. } => Classification {
            kind: "int",
            pisot: Some(true),
            conjugate_sign: ConjugateSign::NotApplicable,
            ring_candidate: true,
            z_ring: true,
        },
        BaseKind::GenericReal { .. } => Classification {
            kind: "real",
            pisot: None,
            conjugate_sign: ConjugateSign::NotApplicable,
            ring_candidate: false,
            z_ring: false,
        },
        BaseKind::QuadA { .. } | BaseKind::QuadB { .. } => {
            let f = base.field().expect("quadratic");
            let c = base.conjugate_beta().expect("quadratic");
            let pisot = f.cmp(&f.abs(&c), &QuadElem::one()) == Ordering::Less;
            let conjugate_sign = if f.sign(&c) == Ordering::Greater {
                ConjugateSign::Positive
            } else {
                ConjugateSign::Negative
            };
            let class_a = matches!(base.kind(), BaseKind::QuadA { .. });
            Classification {
                kind: if class_a { "quad-" } else { "quad+" },
                pisot: Some(pisot),
                conjugate_sign,
                ring_candidate: pisot && conjugate_sign == ConjugateSign::Positive,
                z_ring: false,
            }
        }
    }
}

/// Whether appending `x` to `ds` completes a forbidden factor.
fn closes_forbidden(kind: &BaseKind, ds: &[Digit], x: Digit) -> bool {
    match *kind {
        BaseKind::QuadA { m, n } => ds.last() == Some(&(m - 1)) && x < n,
        BaseKind::QuadB { m, n } => {
            let c = m - n;
            if x == c {
                return false;
            }
            let run = ds.iter().rev().take_while(|&&d| d == c).count();
            if run == ds.len() || ds[ds.len() - run - 1] != m {
                return false;
            }
            (run % 2 == 0 && x < c) || (run % 2 == 1 && x > c)
        }
        _ => false,
    }
}

/// All admissible integer words `x_k ... x_0 .` with at most `max_digits`
/// digits, ordered by length and then lexicographically, `0.` first.
pub fn enumerate_z(base: &Base, max_digits: usize) -> Result<Vec<DigitWord>> {
    if !base.is_exact() {
        return Err(Error::NotQuadratic);
    }
    let adm = Admissibility::new(base, DEFAULT_MAX_ITER)?;
    // finite admissible words never use digit b in base b
    let top = match base.kind() {
        BaseKind::Integer { b } => b - 1,
        _ => base.digit_max(),
    };
    let kind = base.kind();
    let mut out = vec![DigitWord::zero()];
    let mut prefix = Vec::with_capacity(max_digits);
    fn dfs(
        len: usize,
        top: Digit,
        kind: &BaseKind,
        adm: &Admissibility,
        prefix: &mut Vec<Digit>,
        out: &mut Vec<DigitWord>,
    ) {
        if prefix.len() == len {
            let w = DigitWord::integer(prefix.clone());
            if adm.check(&w) {
                out.push(w);
            }
            return;
        }
        let first = if prefix.is_empty() { 1 } else { 0 };
        for x in first..=top {
            if closes_forbidden(kind, prefix, x) {
                continue;
            }
            prefix.push(x);
            dfs(len, top, kind, adm, prefix, out);
            prefix.pop();
        }
    }
    for len in 1..=max_digits {
        dfs(len, top, kind, &adm, &mut prefix, &mut out);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScanOp {
    Add,
    Mul,
}

impl fmt::Display for ScanOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanOp::Add => "add",
            ScanOp::Mul => "mul",
        })
    }
}

impl FromStr for ScanOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "add" => Ok(ScanOp::Add),
            "mul" => Ok(ScanOp::Mul),
            _ => Err(Error::MalformedSpec(format!("unknown operation '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub op: ScanOp,
    pub max_digits: usize,
    /// Largest number of fractional digits among finite results.
    pub observed_l: usize,
    /// First pair (in enumeration order) reaching `observed_l`.
    pub witness: (DigitWord, DigitWord, Expansion),
    /// Pairs whose result has an infinite expansion.
    pub infinite_count: usize,
    pub pairs_tested: usize,
}

/// Applies `op` to every unordered pair of integer expansions with at most
/// `max_digits` digits and records the longest fractional part. `max_frac`
/// bounds the digits computed per result; a truncated result fails the scan.
pub fn scan_l(base: &Base, op: ScanOp, max_digits: usize, max_frac: usize) -> Result<ScanReport> {
    let field = base.field()?;
    let words = enumerate_z(base, max_digits)?;
    let values = words.iter().map(|w| eval_word(w, base)).collect::<Result<Vec<_>>>()?;
    let mut best: Option<(usize, usize, usize, Expansion)> = None;
    let mut infinite_count = 0;
    let mut pairs_tested = 0;
    for i in 0..words.len() {
        for j in i..words.len() {
            let x = apply(field, op, &values[i], &values[j]);
            let e = expand(&x, base, max_frac)?;
            pairs_tested += 1;
            match e.status {
                Status::Truncated => {
                    return Err(Error::BudgetExceeded(format!("{} {op} {}", words[i], words[j])))
                }
                Status::InfinitePeriodic => infinite_count += 1,
                Status::Finite => {
                    let l = e.fractional.preperiod().len();
                    if best.as_ref().map_or(true, |b| l > b.0) {
                        best = Some((l, i, j, e));
                    }
                }
            }
        }
    }
    let (observed_l, witness) = match best {
        Some((l, i, j, e)) => (l, (words[i].clone(), words[j].clone(), e)),
        // only possible when every result is infinite, which 0 + 0 rules out
        None => unreachable!("0 op 0 is finite"),
    };
    Ok(ScanReport {
        op,
        max_digits,
        observed_l,
        witness,
        infinite_count,
        pairs_tested,
    })
}

fn apply(field: &QuadField, op: ScanOp, x: &QuadElem, y: &QuadElem) -> QuadElem {
    match op {
        ScanOp::Add => x + y,
        ScanOp::Mul => field.mul(x, y),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HkSource {
    /// Exact suprema/infima for unit bases.
    ClosedForm,
    /// Extremes of `|z'|` over enumerated integer expansions.
    Empirical { max_digits: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkBounds {
    pub h: QuadElem,
    pub k: QuadElem,
    /// Largest `l` with `|beta'|^-l <= 2H/K` (`<` when `strict`).
    pub bound_add: u32,
    /// Largest `l` with `|beta'|^-l <= H^2/K` (`<` when `strict`).
    pub bound_mul: u32,
    /// The supremum or infimum is not attained, so the inequalities are strict.
    pub strict: bool,
    pub source: HkSource,
}

/// Largest `l` with `q^l < r` (`<=` unless strict), `q > 1`.
fn largest_power_below(field: &QuadField, q: &QuadElem, r: &QuadElem, strict: bool) -> u32 {
    let mut l = 0;
    let mut p = q.clone();
    loop {
        let c = field.cmp(&p, r);
        if c == Ordering::Greater || (strict && c == Ordering::Equal) {
            return l;
        }
        l += 1;
        p = field.mul(&p, q);
    }
}

fn closed_form_hk(base: &Base, field: &QuadField, beta_c: &QuadElem) -> Option<(QuadElem, QuadElem)> {
    let one = QuadElem::one();
    match *base.kind() {
        BaseKind::QuadA { n: 1, .. } => {
            let b = beta_c;
            let one_minus = &one - b;
            let one_plus = &one + b;
            let h = field.div(&one_minus, &field.mul(b, &one_plus)).ok()?;
            let k = field.div(&field.mul(b, &one_minus), &one_plus).ok()?;
            Some((h, k))
        }
        BaseKind::QuadB { m: 1, n: 1 } => {
            let beta = field.beta();
            Some((field.mul(&beta, &beta), one))
        }
        BaseKind::QuadB { n: 1, .. } => Some((field.beta(), one)),
        _ => None,
    }
}

/// Bounds on the fractional-length constants from `H = sup |z'|` over
/// integer expansions `z` and `K = inf |z'|` over those not divisible by
/// `-beta`.
///
/// Unit bases use closed forms; other quadratic bases use the extremes over
/// the integer expansions with at most `empirical_digits` digits, which only
/// approximate `H` from below and `K` from above.
pub fn hk_bounds(base: &Base, empirical_digits: usize) -> Result<HkBounds> {
    if !base.is_quadratic() {
        return Err(Error::NotQuadratic);
    }
    let field = base.field()?;
    let beta_c = base.conjugate_beta()?;
    let inv_abs = field.inv(&field.abs(&beta_c))?;
    let (h, k, strict, source) = match closed_form_hk(base, field, &beta_c) {
        Some((h, k)) => (h, k, true, HkSource::ClosedForm),
        None => {
            let (h, k) = empirical_hk(base, empirical_digits)?;
            (h, k, false, HkSource::Empirical { max_digits: empirical_digits })
        }
    };
    let two_h = h.scale(&BigInt::from(2).into());
    let bound_add = largest_power_below(field, &inv_abs, &field.div(&two_h, &k)?, strict);
    let bound_mul = largest_power_below(field, &inv_abs, &field.div(&field.mul(&h, &h), &k)?, strict);
    Ok(HkBounds {
        h,
        k,
        bound_add,
        bound_mul,
        strict,
        source,
    })
}

/// `max |z'|` over integer expansions and `min |z'|` over those with a
/// nonzero last digit, restricted to at most `max_digits` digits.
pub fn empirical_hk(base: &Base, max_digits: usize) -> Result<(QuadElem, QuadElem)> {
    let field = base.field()?;
    let mut h: Option<QuadElem> = None;
    let mut k: Option<QuadElem> = None;
    for w in enumerate_z(base, max_digits)?.iter().filter(|w| !w.is_zero()) {
        let z = field.abs(&field.conjugate(&eval_word(w, base)?)?);
        if h.as_ref().map_or(true, |h| field.cmp(&z, h) == Ordering::Greater) {
            h = Some(z.clone());
        }
        // K ranges over integers not divisible by -beta, i.e. x_0 != 0
        if w.digit_at(0) != 0 && k.as_ref().map_or(true, |k| field.cmp(&z, k) == Ordering::Less) {
            k = Some(z);
        }
    }
    match (h, k) {
        (Some(h), Some(k)) if !k.is_zero() => Ok((h, k)),
        _ => Err(Error::KZero),
    }
}
