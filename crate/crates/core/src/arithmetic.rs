//! Arithmetic on finite expansions.
//!
//! `add`, `sub` and `mul` work on values and re-expand the result.
//! `add_one_rewrite` instead adds one to an expansion over a base
//! `x^2 = mx - n` by pure digit rewriting, adding words that evaluate to zero.

use std::collections::BTreeMap;

use crate::admissibility::Admissibility;
use crate::base::{Base, BaseKind};
use crate::error::{Error, Result};
use crate::expansion::{eval_word, expand, Expansion};
use crate::transform::d_lb_closed_form;
use crate::word::{Digit, DigitWord};

pub fn add(w1: &DigitWord, w2: &DigitWord, base: &Base, max_iter: usize) -> Result<Expansion> {
    let x = &eval_word(w1, base)? + &eval_word(w2, base)?;
    expand(&x, base, max_iter)
}

pub fn sub(w1: &DigitWord, w2: &DigitWord, base: &Base, max_iter: usize) -> Result<Expansion> {
    let x = &eval_word(w1, base)? - &eval_word(w2, base)?;
    expand(&x, base, max_iter)
}

pub fn mul(w1: &DigitWord, w2: &DigitWord, base: &Base, max_iter: usize) -> Result<Expansion> {
    let x = base.field()?.mul(&eval_word(w1, base)?, &eval_word(w2, base)?);
    expand(&x, base, max_iter)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroVariant {
    /// `1 m n .`
    Short,
    /// `1 (m-1) [-a a]^k -(m-n) -n .` with `a = m-n-1`.
    LongPlus(usize),
    /// `1 (m-1) -a [a -a]^k (m-n) n .`
    LongMinus(usize),
}

/// A signed digit word with value zero, last digit at exponent 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroIdentity {
    pub word: DigitWord,
    pub variant: ZeroVariant,
}

fn class_a(base: &Base) -> Result<(Digit, Digit)> {
    match *base.kind() {
        BaseKind::QuadA { m, n } => Ok((m, n)),
        _ => Err(Error::NotClassA),
    }
}

fn zero_digits(variant: ZeroVariant, m: Digit, n: Digit) -> Vec<Digit> {
    let a = m - n - 1;
    match variant {
        ZeroVariant::Short => vec![1, m, n],
        ZeroVariant::LongPlus(k) => {
            let mut v = vec![1, m - 1];
            for _ in 0..k {
                v.extend([-a, a]);
            }
            v.extend([-(m - n), -n]);
            v
        }
        ZeroVariant::LongMinus(k) => {
            let mut v = vec![1, m - 1, -a];
            for _ in 0..k {
                v.extend([a, -a]);
            }
            v.extend([m - n, n]);
            v
        }
    }
}

pub fn zero_word(variant: ZeroVariant, base: &Base) -> Result<ZeroIdentity> {
    let (m, n) = class_a(base)?;
    let word = DigitWord::integer(zero_digits(variant, m, n));
    assert!(eval_word(&word, base)?.is_zero(), "{variant:?} does not vanish");
    Ok(ZeroIdentity { word, variant })
}

/// Adds `digits` into `acc`, the last one at exponent `low`.
fn add_at(acc: &mut BTreeMap<i64, Digit>, digits: &[Digit], low: i64, sign: Digit) {
    let top = low + digits.len() as i64 - 1;
    for (i, &d) in digits.iter().enumerate() {
        *acc.entry(top - i as i64).or_insert(0) += sign * d;
    }
}

/// `[a -a]^l` followed by `tail`.
fn alternating(a: Digit, l: usize, tail: &[Digit]) -> Vec<Digit> {
    let mut v = Vec::with_capacity(2 * l + tail.len());
    for _ in 0..l {
        v.extend([a, -a]);
    }
    v.extend_from_slice(tail);
    v
}

/// The expansion of `w + 1` obtained by digit rewriting.
///
/// The digit at exponent 0 is incremented. If that breaks admissibility, the
/// pattern around the radix point selects words of value zero to add (both
/// an integer correction and, when the new digit is `m-1`, a fractional
/// one). Fails with `PatternNotMatched` when no pattern applies or the
/// result is still not admissible.
pub fn add_one_rewrite(w: &DigitWord, base: &Base) -> Result<DigitWord> {
    let (m, n) = class_a(base)?;
    let adm = Admissibility::from_reference(m - 1, d_lb_closed_form(base).expect("class A"));
    if !adm.check(w) {
        return Err(Error::PatternNotMatched(format!("{w} is not admissible")));
    }
    let a = m - n - 1;
    let digit = |e: i64| w.digit_at(e);
    let mut acc = w.to_map();
    *acc.entry(0).or_insert(0) += 1;
    let bumped = DigitWord::from_map(&acc);
    if adm.check(&bumped) {
        return Ok(bumped);
    }

    let x0 = digit(0);
    // [(m-1) n]^k directly above exponent 0, then B
    let mut k = 0usize;
    while digit(2 * k as i64 + 2) == m - 1 && digit(2 * k as i64 + 1) == n {
        k += 1;
    }
    let b = digit(2 * k as i64 + 1);

    if x0 == m - 1 {
        match (b, k) {
            (0, _) => add_at(&mut acc, &zero_digits(ZeroVariant::LongPlus(k), m, n), -1, 1),
            (_, 0) => add_at(&mut acc, &zero_digits(ZeroVariant::Short, m, n), -1, -1),
            _ => add_at(&mut acc, &zero_digits(ZeroVariant::LongMinus(k - 1), m, n), -1, -1),
        }
    } else if x0 == m - 2 && digit(-1) <= n - 1 {
        // pairs XY below exponent -1 with X in [m-n-1, m-1] and Y in [0, n-1]
        let mut l = 0usize;
        loop {
            let e = -2 * (l as i64 + 1);
            let (x, y) = (digit(e), digit(e - 1));
            if (a..m).contains(&x) && (0..n).contains(&y) {
                l += 1;
            } else {
                break;
            }
        }
        let d = digit(-2 * (l as i64 + 1));
        let frac = if d <= a {
            alternating(a, l, &[m - n, n])
        } else {
            alternating(a, l, &[a, -(m - n), -n])
        };
        add_at(&mut acc, &frac, -(frac.len() as i64), 1);
        let int = if b == 0 {
            let mut p = vec![1, m - 1, -a];
            p.extend(alternating(a, k, &[]));
            p
        } else {
            let mut p = vec![-1, -(m - 1)];
            p.extend(alternating(a, k, &[]));
            p
        };
        add_at(&mut acc, &int, 0, 1);
    } else {
        return Err(Error::PatternNotMatched(format!("{w} + 1")));
    }

    let out = DigitWord::from_map(&acc);
    if out.is_signed() || !adm.check(&out) {
        return Err(Error::PatternNotMatched(format!("{w} + 1 rewrote to {:?}", out.to_map())));
    }
    Ok(out)
}
