//! The handful of operations the transform and the expansion algorithm need,
//! implemented once exactly and once with intervals.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::base::Base;
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalField};
use crate::quad::{QuadElem, QuadField};
use crate::word::Digit;

pub(crate) trait Ops {
    type V: Clone + Eq + Hash + Debug;

    /// Whether equal values are proven equal (enables cycle detection).
    fn exact(&self) -> bool;
    fn lift(&self, x: &QuadElem) -> Result<Self::V>;
    fn sub(&self, x: &Self::V, y: &Self::V) -> Self::V;
    fn sub_digit(&self, x: &Self::V, d: Digit) -> Self::V;
    fn mul_neg_beta(&self, x: &Self::V) -> Self::V;
    fn div_neg_beta(&self, x: &Self::V) -> Self::V;
    fn sign(&self, x: &Self::V) -> Result<Ordering>;
    fn floor(&self, x: &Self::V) -> Result<Digit>;
    fn is_zero(&self, x: &Self::V) -> bool;
    /// `-beta/(beta+1)`.
    fn left(&self) -> &Self::V;
    /// `1/(beta+1)`.
    fn right(&self) -> &Self::V;
    /// Rough `log2(beta)` and `log2|x|` upper estimate, for loop guards only.
    fn log2_beta(&self) -> f64;
    fn log2_abs_upper(&self, x: &Self::V) -> f64;
    /// Rough `log2|x|`, only used to pick a starting point for searches.
    fn log2_abs_approx(&self, x: &Self::V) -> f64 {
        self.log2_abs_upper(x) - 2.0
    }
    /// `x (-beta)^-k`.
    fn div_neg_beta_pow(&self, x: &Self::V, k: usize) -> Self::V {
        (0..k).fold(x.clone(), |y, _| self.div_neg_beta(&y))
    }
    /// Cheap answer to "is `x` strictly inside the domain", when certain.
    fn open_domain_hint(&self, _x: &Self::V) -> Option<bool> {
        None
    }
    /// `x` and the left end rewritten over one denominator where the
    /// representation allows it, so that orbit steps subtract cheaply.
    fn with_left(&self, x: Self::V) -> (Self::V, Self::V) {
        (x, self.left().clone())
    }
    /// Fails if `x` can no longer be trusted (fixed-width overflow).
    fn check(&self, _x: &Self::V) -> Result<()> {
        Ok(())
    }
}

pub(crate) struct ExactOps<'a> {
    field: &'a QuadField,
    left: QuadElem,
    right: QuadElem,
    inv_neg_beta: QuadElem,
    log2_beta: f64,
}

impl<'a> ExactOps<'a> {
    pub(crate) fn new(base: &'a Base) -> Result<Self> {
        let field = base.field()?;
        let beta = field.beta();
        let inv_neg_beta = -field.inv(&beta)?;
        let log2_beta = match base.kind() {
            crate::base::BaseKind::Integer { b } => (*b as f64).log2(),
            _ => {
                let (m, n) = base.quad_params().expect("quadratic");
                let c = if matches!(base.kind(), crate::base::BaseKind::QuadA { .. }) { -n } else { n };
                (((m as f64) + ((m * m + 4 * c) as f64).sqrt()) / 2.0).log2()
            }
        };
        Ok(ExactOps {
            left: base.left_end()?,
            right: base.right_end()?,
            field,
            inv_neg_beta,
            log2_beta,
        })
    }
}

fn log2_upper(num: &BigInt, den: &BigInt) -> f64 {
    num.bits() as f64 - den.bits() as f64 + 1.0
}

impl Ops for ExactOps<'_> {
    type V = QuadElem;

    fn exact(&self) -> bool {
        true
    }

    fn lift(&self, x: &QuadElem) -> Result<QuadElem> {
        if !self.field.is_quadratic() && !x.is_rational() {
            return Err(Error::NotQuadratic);
        }
        Ok(x.clone())
    }

    fn sub(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        x - y
    }

    fn sub_digit(&self, x: &QuadElem, d: Digit) -> QuadElem {
        x.add_int(&BigInt::from(-d))
    }

    fn mul_neg_beta(&self, x: &QuadElem) -> QuadElem {
        self.field.mul_neg_beta(x)
    }

    fn div_neg_beta(&self, x: &QuadElem) -> QuadElem {
        self.field.mul(x, &self.inv_neg_beta)
    }

    fn sign(&self, x: &QuadElem) -> Result<Ordering> {
        Ok(self.field.sign(x))
    }

    fn floor(&self, x: &QuadElem) -> Result<Digit> {
        Ok(self.field.floor_i64(x))
    }

    fn is_zero(&self, x: &QuadElem) -> bool {
        x.is_zero()
    }

    fn left(&self) -> &QuadElem {
        &self.left
    }

    fn right(&self) -> &QuadElem {
        &self.right
    }

    fn log2_beta(&self) -> f64 {
        self.log2_beta
    }

    fn log2_abs_upper(&self, x: &QuadElem) -> f64 {
        let (a, b, den) = x.raw();
        // |a + b beta| <= |a| + |b| beta
        let la = log2_upper(a, den);
        let lb = log2_upper(b, den) + self.log2_beta;
        la.max(lb) + 1.0
    }
}

pub(crate) struct IntervalOps<'a> {
    field: &'a IntervalField,
    left: Interval,
    right: Interval,
    neg_beta: Interval,
}

impl<'a> IntervalOps<'a> {
    pub(crate) fn new(field: &'a IntervalField) -> Result<Self> {
        let one = field.int(1);
        let beta_plus_one = field.add(&field.beta, &one);
        Ok(IntervalOps {
            left: field.neg(&field.div(&field.beta, &beta_plus_one)?),
            right: field.inv(&beta_plus_one)?,
            neg_beta: field.neg(&field.beta),
            field,
        })
    }
}

impl Ops for IntervalOps<'_> {
    type V = Interval;

    fn exact(&self) -> bool {
        false
    }

    fn lift(&self, x: &QuadElem) -> Result<Interval> {
        let a = self.field.from_rational(&x.a());
        let b = self.field.from_rational(&x.b());
        Ok(self.field.add(&a, &self.field.mul(&b, &self.field.beta)))
    }

    fn sub(&self, x: &Interval, y: &Interval) -> Interval {
        self.field.sub(x, y)
    }

    fn sub_digit(&self, x: &Interval, d: Digit) -> Interval {
        self.field.sub(x, &self.field.int(d))
    }

    fn mul_neg_beta(&self, x: &Interval) -> Interval {
        self.field.mul(x, &self.neg_beta)
    }

    fn div_neg_beta(&self, x: &Interval) -> Interval {
        self.field.div(x, &self.neg_beta).expect("beta > 1")
    }

    fn sign(&self, x: &Interval) -> Result<Ordering> {
        self.field.sign(x)
    }

    fn floor(&self, x: &Interval) -> Result<Digit> {
        self.field
            .floor(x)?
            .to_i64()
            .ok_or(Error::UndecidableDigit { bits: self.field.bits })
    }

    fn is_zero(&self, x: &Interval) -> bool {
        x.is_exact_zero()
    }

    fn left(&self) -> &Interval {
        &self.left
    }

    fn right(&self) -> &Interval {
        &self.right
    }

    fn log2_beta(&self) -> f64 {
        let lo = self.field.beta.lo.to_rational();
        lo.numer().to_f64().unwrap_or(f64::MAX).log2() - lo.denom().to_f64().unwrap_or(f64::MAX).log2()
    }

    fn log2_abs_upper(&self, x: &Interval) -> f64 {
        x.lo.log2_upper().max(x.hi.log2_upper())
    }
}

/// Evaluates `$body` with `$o` bound to the operation set matching the
/// base's arithmetic. Exact bases try the fixed-width fast path first and
/// fall back to big integers on overflow.
macro_rules! with_ops {
    ($base:expr, |$o:ident| $body:expr) => {{
        let base: &$crate::base::Base = $base;
        match base.arith() {
            $crate::base::Arith::Exact(_) => {
                let fast = base.fast_path().map(|s| {
                    let $o = s;
                    $body
                });
                match fast {
                    Some(Err(e)) if $crate::small::is_overflow(&e) => {
                        let $o = &$crate::ops::ExactOps::new(base)?;
                        $body
                    }
                    Some(r) => r,
                    None => {
                        let $o = &$crate::ops::ExactOps::new(base)?;
                        $body
                    }
                }
            }
            $crate::base::Arith::Interval(f) => {
                let $o = &$crate::ops::IntervalOps::new(f)?;
                $body
            }
        }
    }};
}
pub(crate) use with_ops;

/// `ops.left() <= x < ops.right()`.
pub(crate) fn in_domain<O: Ops>(ops: &O, x: &O::V) -> Result<bool> {
    Ok(ops.sign(&ops.sub(x, ops.left()))? != Ordering::Less
        && ops.sign(&ops.sub(ops.right(), x))? == Ordering::Greater)
}

/// `ops.left() < x < ops.right()`.
pub(crate) fn in_open_domain<O: Ops>(ops: &O, x: &O::V) -> Result<bool> {
    if let Some(inside) = ops.open_domain_hint(x) {
        return Ok(inside);
    }
    Ok(ops.sign(&ops.sub(x, ops.left()))? == Ordering::Greater
        && ops.sign(&ops.sub(ops.right(), x))? == Ordering::Greater)
}
