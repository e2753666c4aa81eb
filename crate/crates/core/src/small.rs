//! Fixed-width fast path for exact bases.
//!
//! Same arithmetic as `QuadField` on `(a + b beta)/den` with `i128`
//! components. Any overflow poisons the value (`den = 0`); the first sign or
//! floor taken on a poisoned value fails with an overflow error, and the
//! caller reruns the computation with big integers.

use std::cmp::Ordering;

use num_integer::{Integer, Roots};

use crate::base::{Base, BaseKind};
use crate::error::{Error, Result};
use crate::ops::{ExactOps, Ops};
use crate::quad::QuadElem;
use crate::word::Digit;

const OVERFLOW: &str = "fixed-width overflow";

pub(crate) fn overflow() -> Error {
    Error::BudgetExceeded(OVERFLOW.to_string())
}

pub(crate) fn is_overflow(e: &Error) -> bool {
    matches!(e, Error::BudgetExceeded(s) if s == OVERFLOW)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Small {
    a: i128,
    b: i128,
    den: i128,
}

const POISON: Small = Small { a: 0, b: 0, den: 0 };

impl Small {
    fn poisoned(&self) -> bool {
        self.den == 0
    }

    fn reduced(a: Option<i128>, b: Option<i128>, den: Option<i128>) -> Small {
        let (Some(a), Some(b), Some(den)) = (a, b, den) else {
            return POISON;
        };
        if den == 0 {
            return POISON;
        }
        let g = a.gcd(&b).gcd(&den);
        let g = if den < 0 { -g } else { g };
        Small {
            a: a / g,
            b: b / g,
            den: den / g,
        }
    }

    /// Same value, no gcd pass. States of one orbit keep a common
    /// denominator, so equality stays meaningful without reduction.
    fn raw(a: Option<i128>, b: Option<i128>, den: Option<i128>) -> Small {
        match (a, b, den) {
            (Some(a), Some(b), Some(den)) if den > 0 => Small { a, b, den },
            _ => POISON,
        }
    }

    fn from_elem(x: &QuadElem) -> Option<Small> {
        let (a, b, den) = x.raw();
        Some(Small {
            a: i128::try_from(a).ok()?,
            b: i128::try_from(b).ok()?,
            den: i128::try_from(den).ok()?,
        })
    }
}

/// `v as f64`, skipping the slow 128-bit conversion when `v` fits 64 bits.
fn to_f64(v: i128) -> f64 {
    let (hi, lo) = ((v >> 64) as i64, v as u64);
    if (hi == 0 && lo >> 63 == 0) || (hi == -1 && lo >> 63 == 1) {
        lo as i64 as f64
    } else {
        hi as f64 * 2f64.powi(64) + lo as f64
    }
}

fn bits(v: i128) -> f64 {
    (128 - v.unsigned_abs().leading_zeros()) as f64
}

pub(crate) struct SmallOps {
    /// Quadratic: `beta^2 = t beta + c`, `d = t^2 + 4c`. Integer: `beta = t`.
    t: i128,
    c: i128,
    d: i128,
    quadratic: bool,
    left: Small,
    right: Small,
    inv_neg_beta: Small,
    /// `(-beta)^-k` for small `k`, as far as it fits.
    inv_pows: Vec<Small>,
    beta_f64: f64,
    /// Domain ends in floating point.
    left_f64: f64,
    right_f64: f64,
    log2_beta: f64,
}

impl SmallOps {
    pub(crate) fn new(base: &Base) -> Option<SmallOps> {
        let exact = ExactOps::new(base).ok()?;
        let (t, c, quadratic) = match *base.kind() {
            BaseKind::Integer { b } => (b as i128, 0, false),
            BaseKind::QuadA { m, n } => (m as i128, -(n as i128), true),
            BaseKind::QuadB { m, n } => (m as i128, n as i128, true),
            BaseKind::GenericReal { .. } => return None,
        };
        let field = base.field().ok()?;
        let inv = -field.inv(&field.beta()).ok()?;
        let mut ops = SmallOps {
            t,
            c,
            d: t * t + 4 * c,
            quadratic,
            left: Small::from_elem(exact.left())?,
            right: Small::from_elem(exact.right())?,
            inv_neg_beta: Small::from_elem(&inv)?,
            inv_pows: vec![Small { a: 1, b: 0, den: 1 }],
            beta_f64: if quadratic {
                (t as f64 + ((t * t + 4 * c) as f64).sqrt()) / 2.0
            } else {
                t as f64
            },
            log2_beta: exact.log2_beta(),
            left_f64: 0.0,
            right_f64: 0.0,
        };
        ops.left_f64 = -ops.beta_f64 / (ops.beta_f64 + 1.0);
        ops.right_f64 = 1.0 / (ops.beta_f64 + 1.0);
        while ops.inv_pows.len() < 64 {
            let next = ops.mul(ops.inv_pows.last().unwrap(), &ops.inv_neg_beta);
            if next.poisoned() {
                break;
            }
            ops.inv_pows.push(next);
        }
        Some(ops)
    }

    fn mul(&self, x: &Small, y: &Small) -> Small {
        self.mul_with(x, y, Small::reduced)
    }

    fn mul_with(&self, x: &Small, y: &Small, make: fn(Option<i128>, Option<i128>, Option<i128>) -> Small) -> Small {
        if x.poisoned() || y.poisoned() {
            return POISON;
        }
        let den = x.den.checked_mul(y.den);
        if !self.quadratic {
            return make(x.a.checked_mul(y.a), Some(0), den);
        }
        let bd = x.b.checked_mul(y.b);
        let a = x.a.checked_mul(y.a).zip(bd.and_then(|bd| bd.checked_mul(self.c)));
        let a = a.and_then(|(p, q)| p.checked_add(q));
        let b = x
            .a
            .checked_mul(y.b)
            .zip(x.b.checked_mul(y.a))
            .and_then(|(p, q)| p.checked_add(q))
            .zip(bd.and_then(|bd| bd.checked_mul(self.t)))
            .and_then(|(p, q)| p.checked_add(q));
        make(a, b, den)
    }

    /// `sum d (-beta)^e` over a digit string whose last digit sits at
    /// exponent `low_exp`; `None` on overflow.
    pub(crate) fn eval_digits(&self, digits: &[Digit], low_exp: i64) -> Option<QuadElem> {
        let mut acc = Small { a: 0, b: 0, den: 1 };
        for &d in digits {
            acc = self.sub_digit(&self.mul_neg_beta(&acc), -d);
        }
        if low_exp >= 0 {
            for _ in 0..low_exp {
                acc = self.mul_neg_beta(&acc);
            }
        } else {
            acc = self.div_neg_beta_pow(&acc, (-low_exp) as usize);
        }
        if acc.poisoned() {
            return None;
        }
        QuadElem::from_parts(acc.a.into(), acc.b.into(), acc.den.into()).ok()
    }

    /// `(a + b beta)/den` in floating point and a bound on its error, or
    /// `None` when the value is too large for the bound to be useful.
    /// Each of the few roundings involved is at most 2^-52 relative, so
    /// 2^-46 of the magnitude sum leaves a wide margin.
    fn approx(&self, x: &Small) -> Option<(f64, f64)> {
        let (a, b, den) = (to_f64(x.a), to_f64(x.b), to_f64(x.den));
        let v = (a + b * self.beta_f64) / den;
        let err = (a.abs() + b.abs() * self.beta_f64) / den * 2f64.powi(-46);
        (v.abs() < 2f64.powi(50)).then_some((v, err))
    }

    /// `2(a + b beta) = p + b sqrt(d)`; returns `p`.
    fn twice_rational_part(&self, x: &Small) -> Option<i128> {
        x.a.checked_mul(2)?.checked_add(x.b.checked_mul(self.t)?)
    }
}

impl Ops for SmallOps {
    type V = Small;

    fn exact(&self) -> bool {
        true
    }

    fn lift(&self, x: &QuadElem) -> Result<Small> {
        if !self.quadratic && !x.is_rational() {
            return Err(Error::NotQuadratic);
        }
        Small::from_elem(x).ok_or_else(overflow)
    }

    fn sub(&self, x: &Small, y: &Small) -> Small {
        if x.poisoned() || y.poisoned() {
            return POISON;
        }
        if x.den == y.den {
            return Small::raw(x.a.checked_sub(y.a), x.b.checked_sub(y.b), Some(x.den));
        }
        let cross = |p: i128, q: i128| p.checked_mul(y.den)?.checked_sub(q.checked_mul(x.den)?);
        // differences only feed sign and floor, so skip the gcd pass
        Small::raw(cross(x.a, y.a), cross(x.b, y.b), x.den.checked_mul(y.den))
    }

    fn sub_digit(&self, x: &Small, d: Digit) -> Small {
        if x.poisoned() {
            return POISON;
        }
        let a = (d as i128).checked_mul(x.den).and_then(|v| x.a.checked_sub(v));
        Small::raw(a, Some(x.b), Some(x.den))
    }

    fn mul_neg_beta(&self, x: &Small) -> Small {
        if x.poisoned() {
            return POISON;
        }
        if !self.quadratic {
            return Small::raw(x.a.checked_mul(-self.t), Some(0), Some(x.den));
        }
        let a = x.b.checked_mul(-self.c);
        let b = x.b.checked_mul(self.t).and_then(|v| v.checked_add(x.a)).map(|v| -v);
        Small::raw(a, b, Some(x.den))
    }

    fn div_neg_beta(&self, x: &Small) -> Small {
        self.mul(x, &self.inv_neg_beta)
    }

    fn sign(&self, x: &Small) -> Result<Ordering> {
        if x.poisoned() {
            return Err(overflow());
        }
        if !self.quadratic || x.b == 0 {
            return Ok(x.a.cmp(&0));
        }
        if let Some((v, err)) = self.approx(x) {
            if v.abs() > err {
                return Ok(if v > 0.0 { Ordering::Greater } else { Ordering::Less });
            }
        }
        let p = self.twice_rational_part(x).ok_or_else(overflow)?;
        let (sp, sq) = (p.cmp(&0), x.b.cmp(&0));
        if sp == Ordering::Equal || sp == sq {
            return Ok(sq);
        }
        let lhs = p.checked_mul(p).ok_or_else(overflow)?;
        let rhs = x.b.checked_mul(x.b).and_then(|v| v.checked_mul(self.d)).ok_or_else(overflow)?;
        Ok(match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        })
    }

    fn floor(&self, x: &Small) -> Result<Digit> {
        if x.poisoned() {
            return Err(overflow());
        }
        let f = if !self.quadratic {
            Integer::div_floor(&x.a, &x.den)
        } else if let Some(f) = self.approx(x).and_then(|(v, err)| {
            let f = v.floor();
            (v - f > err && f + 1.0 - v > err).then_some(f as i128)
        }) {
            f
        } else {
            let p = self.twice_rational_part(x).ok_or_else(overflow)?;
            let s = if x.b == 0 {
                0
            } else {
                let r = x.b.checked_mul(x.b).and_then(|v| v.checked_mul(self.d)).ok_or_else(overflow)?.sqrt();
                if x.b > 0 {
                    r
                } else {
                    -r - 1
                }
            };
            let num = p.checked_add(s).ok_or_else(overflow)?;
            Integer::div_floor(&num, &x.den.checked_mul(2).ok_or_else(overflow)?)
        };
        Digit::try_from(f).map_err(|_| overflow())
    }

    fn is_zero(&self, x: &Small) -> bool {
        !x.poisoned() && x.a == 0 && x.b == 0
    }

    fn left(&self) -> &Small {
        &self.left
    }

    fn right(&self) -> &Small {
        &self.right
    }

    fn log2_beta(&self) -> f64 {
        self.log2_beta
    }

    fn log2_abs_upper(&self, x: &Small) -> f64 {
        bits(x.a).max(bits(x.b) + self.log2_beta) + 1.0 - bits(x.den) + 1.0
    }

    fn log2_abs_approx(&self, x: &Small) -> f64 {
        let v = (x.a as f64 + x.b as f64 * self.beta_f64) / x.den as f64;
        v.abs().log2()
    }

    fn div_neg_beta_pow(&self, x: &Small, k: usize) -> Small {
        match self.inv_pows.get(k) {
            // no gcd pass: a larger denominator only risks an earlier fallback
            Some(p) => self.mul_with(x, p, Small::raw),
            None => (0..k).fold(*x, |y, _| self.div_neg_beta(&y)),
        }
    }

    fn open_domain_hint(&self, x: &Small) -> Option<bool> {
        let (v, err) = self.approx(x)?;
        // the domain ends carry a few roundings of their own
        let err = err + 1e-12;
        if v - err > self.left_f64 && v + err < self.right_f64 {
            Some(true)
        } else if v + err < self.left_f64 || v - err > self.right_f64 {
            Some(false)
        } else {
            None
        }
    }

    fn with_left(&self, x: Small) -> (Small, Small) {
        let aligned = || {
            if x.poisoned() {
                return None;
            }
            let l = if x.den == 1 {
                self.left.den
            } else {
                x.den.checked_mul(self.left.den / x.den.gcd(&self.left.den))?
            };
            let (kx, kl) = (l / x.den, l / self.left.den);
            let scale = |v: &Small, k: i128| Some(Small { a: v.a.checked_mul(k)?, b: v.b.checked_mul(k)?, den: l });
            Some((scale(&x, kx)?, scale(&self.left, kl)?))
        };
        aligned().unwrap_or((x, self.left))
    }

    fn check(&self, x: &Small) -> Result<()> {
        if x.poisoned() {
            Err(overflow())
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
fn to_elem(x: &Small) -> QuadElem {
    QuadElem::from_parts(num_bigint::BigInt::from(x.a), num_bigint::BigInt::from(x.b), num_bigint::BigInt::from(x.den)).expect("nonzero den")
}
