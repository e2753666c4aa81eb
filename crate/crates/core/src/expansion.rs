//! The `(-beta)`-expansion `<x>` of an arbitrary exact real.
//!
//! `x` is scaled by `(-beta)^(-j)` for the least `j >= 0` that lands strictly
//! inside `(-beta/(beta+1), 1/(beta+1))`; the transform's digits of the
//! scaled point are then read with the radix point after `j` of them. Using
//! the open interval makes the expansion commute with multiplication by
//! `-beta` (a shift of the radix point).

use std::fmt;

use num_bigint::BigInt;

use crate::base::Base;
use crate::error::{Error, Result};
use crate::ops::{in_open_domain, with_ops, Ops};
use crate::quad::QuadElem;
use crate::transform::{orbit, Orbit};
use crate::word::{DigitWord, PeriodicWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Finite,
    InfinitePeriodic,
    Truncated,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Finite => "finite",
            Status::InfinitePeriodic => "periodic",
            Status::Truncated => "truncated",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `<x> = integer_part . fractional`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expansion {
    /// Digits at exponents `j-1, ..., 0`; the zero word when `j = 0`.
    pub integer_part: DigitWord,
    /// Digits at exponents `-1, -2, ...`. For truncated expansions, the
    /// digits computed before the budget ran out.
    pub fractional: PeriodicWord,
    pub status: Status,
}

impl Expansion {
    pub fn zero() -> Self {
        Expansion {
            integer_part: DigitWord::zero(),
            fractional: PeriodicWord::zero(),
            status: Status::Finite,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.status == Status::Finite
    }

    /// Number of fractional digits of a finite expansion.
    pub fn frac_len(&self) -> Option<usize> {
        self.is_finite().then(|| self.fractional.preperiod().len())
    }

    /// The finite expansion as one word.
    pub fn to_digit_word(&self) -> Option<DigitWord> {
        if !self.is_finite() {
            return None;
        }
        let lead = self.integer_part.lead_exp();
        let mut digits = self.integer_part.digits().to_vec();
        digits.extend_from_slice(self.fractional.preperiod());
        Some(DigitWord::new(digits, lead))
    }

    /// The full digit sequence from the leading digit (radix ignored).
    pub fn sequence(&self) -> PeriodicWord {
        let int = if self.integer_part.is_zero() {
            &[][..]
        } else {
            self.integer_part.digits()
        };
        self.fractional.prepend(int)
    }

    /// Exact value; unavailable for truncated expansions.
    pub fn value(&self, base: &Base) -> Result<QuadElem> {
        if self.status == Status::Truncated {
            return Err(Error::BudgetExceeded(self.to_string()));
        }
        let int = eval_word(&self.integer_part, base)?;
        let frac = eval_periodic_fraction(&self.fractional, base)?;
        Ok(&int + &frac)
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.integer_part, self.fractional.tail_text())?;
        if self.status == Status::Truncated {
            f.write_str("...")?;
        }
        Ok(())
    }
}

/// `sum d (-beta)^e` over the digits of `w`, exactly. Digits may be signed.
pub fn eval_word(w: &DigitWord, base: &Base) -> Result<QuadElem> {
    let f = base.field()?;
    if let Some(v) = base.fast_path().and_then(|s| s.eval_digits(w.digits(), w.low_exp())) {
        return Ok(v);
    }
    let mut acc = QuadElem::zero();
    for &d in w.digits() {
        acc = f.mul_neg_beta(&acc).add_int(&BigInt::from(d));
    }
    Ok(f.mul(&acc, &f.neg_beta_pow(w.low_exp())))
}

/// Value of `0 . w_1 w_2 ...` for an eventually periodic `w`.
pub fn eval_periodic_fraction(w: &PeriodicWord, base: &Base) -> Result<QuadElem> {
    let f = base.field()?;
    let pre = DigitWord::new(w.preperiod().to_vec(), -1);
    let mut value = eval_word(&pre, base)?;
    if !w.is_finite() {
        let p = w.period().len() as i64;
        let start = -1 - w.preperiod().len() as i64;
        let block = eval_word(&DigitWord::new(w.period().to_vec(), start), base)?;
        // block * (1 + (-beta)^-p + (-beta)^-2p + ...)
        let ratio = f.neg_beta_pow(-p);
        let denom = &QuadElem::one() - &ratio;
        value = &value + &f.div(&block, &denom)?;
    }
    Ok(value)
}

fn expand_with<O: Ops>(ops: &O, x: &QuadElem, max_iter: usize) -> Result<Expansion> {
    let mut y = ops.lift(x)?;
    if ops.is_zero(&y) {
        return Ok(Expansion::zero());
    }
    // |x (-beta)^-j| < 1/(beta+1) once beta^j > |x| (beta+1); two spare steps.
    let lb = ops.log2_beta();
    let jmax = ((ops.log2_abs_upper(&y) + lb + 1.0) / lb).ceil().max(0.0) as usize + 2;
    // Valid exponents j form a ray [j_min, inf): start near the estimate and
    // walk down while still valid, or up until valid.
    let est = (ops.log2_abs_approx(&y) / lb).floor();
    let mut j = if est.is_finite() { (est.max(0.0) as usize).min(jmax) } else { 0 };
    let start = y.clone();
    y = ops.div_neg_beta_pow(&start, j);
    if in_open_domain(ops, &y)? {
        while j > 0 {
            let up = ops.mul_neg_beta(&y);
            if !in_open_domain(ops, &up)? {
                break;
            }
            y = up;
            j -= 1;
        }
    } else {
        while !in_open_domain(ops, &y)? {
            if j >= jmax {
                return Err(Error::OutOfDomain(format!("no scaling of {x} found in {jmax} steps")));
            }
            y = ops.div_neg_beta(&y);
            j += 1;
        }
    }
    let (digits, status_hint) = match orbit(ops, y, max_iter + j)? {
        Orbit::Periodic(w) => (w, None),
        Orbit::Truncated(d) => (PeriodicWord::finite(d.clone()), Some(d)),
    };
    if let Some(raw) = status_hint {
        let split = j.min(raw.len());
        return Ok(Expansion {
            integer_part: DigitWord::integer(raw[..split].to_vec()),
            fractional: PeriodicWord::finite(raw[split..].to_vec()),
            status: Status::Truncated,
        });
    }
    let fractional = digits.drop_front(j);
    let status = if fractional.is_finite() {
        Status::Finite
    } else {
        Status::InfinitePeriodic
    };
    Ok(Expansion {
        integer_part: DigitWord::integer(digits.prefix(j)),
        fractional,
        status,
    })
}

/// The `(-beta)`-expansion of `x`. `max_iter` bounds the number of digits
/// computed past the radix point.
pub fn expand(x: &QuadElem, base: &Base, max_iter: usize) -> Result<Expansion> {
    with_ops!(base, |o| expand_with(o, x, max_iter))
}

/// Re-expands an arbitrary (possibly signed or non-admissible) digit word.
pub fn canonicalize(raw: &DigitWord, base: &Base, max_iter: usize) -> Result<Expansion> {
    expand(&eval_word(raw, base)?, base, max_iter)
}

/// Interval containing every number whose expansion starts with a nonzero
/// digit at exponent `k - 1`: `[beta^(k-1), beta^(k+1)]/(beta+1)` for odd `k`,
/// its negative `[-beta^(k+1), -beta^(k-1)]/(beta+1)` for even `k`.
pub fn range_bracket(k: i64, base: &Base) -> Result<(QuadElem, QuadElem)> {
    let f = base.field()?;
    let beta = f.beta();
    let denom = beta.add_int(&BigInt::from(1));
    let small = f.div(&f.pow(&beta, k - 1)?, &denom)?;
    let large = f.div(&f.pow(&beta, k + 1)?, &denom)?;
    if k.rem_euclid(2) == 1 {
        Ok((small, large))
    } else {
        Ok((-large, -small))
    }
}
