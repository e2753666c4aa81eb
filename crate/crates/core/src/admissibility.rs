//! Alternate order, the reference strings of the admissibility criterion and
//! two independent admissibility tests: the general suffix criterion and a
//! direct scanner for the forbidden factors of the quadratic classes.

use std::cmp::Ordering;

use num_integer::Integer;

use crate::base::{Base, BaseKind};
use crate::error::{Error, Result};
use crate::transform::d_lb;
use crate::word::{Digit, DigitWord, PeriodicWord, Word};

/// Outcome of an alternate-order comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AltOrdering {
    pub outcome: Ordering,
    /// 1-based index of the first differing digit; `None` when equal.
    pub decided_at: Option<usize>,
}

/// Outcome when the words first differ at 1-based index `j` with digits
/// `a` (left) and `b` (right).
fn alt_outcome(j: usize, a: Digit, b: Digit) -> Ordering {
    if j % 2 == 1 {
        b.cmp(&a)
    } else {
        a.cmp(&b)
    }
}

/// Compares two sequences given by digit functions, where all digits past
/// `horizon` repeat with a common period (so equality up to it is equality).
fn alt_cmp_by(
    horizon: usize,
    u: impl Fn(usize) -> Digit,
    v: impl Fn(usize) -> Digit,
) -> AltOrdering {
    for i in 0..horizon {
        let (a, b) = (u(i), v(i));
        if a != b {
            return AltOrdering {
                outcome: alt_outcome(i + 1, a, b),
                decided_at: Some(i + 1),
            };
        }
    }
    AltOrdering {
        outcome: Ordering::Equal,
        decided_at: None,
    }
}

/// `u` against `v` in the alternate order: at the first difference `j`,
/// `u < v` iff `u_j > v_j` for odd `j`, `u_j < v_j` for even `j`.
pub fn alt_compare(u: &PeriodicWord, v: &PeriodicWord) -> AltOrdering {
    let horizon = u.preperiod().len().max(v.preperiod().len()) + u.cycle_len().lcm(&v.cycle_len());
    alt_cmp_by(horizon, |i| u.digit(i), |i| v.digit(i))
}

/// The upper reference string built from a given `d_lb`.
pub fn d_star_from(d_lb: &PeriodicWord) -> PeriodicWord {
    let p = d_lb.period();
    if d_lb.is_purely_periodic() && p.len() % 2 == 1 {
        let mut period = Vec::with_capacity(p.len() + 1);
        period.push(0);
        period.extend_from_slice(p);
        *period.last_mut().unwrap() -= 1;
        PeriodicWord::new(Vec::new(), period)
    } else {
        d_lb.prepend(&[0])
    }
}

/// The upper reference string `d*` of the admissibility criterion.
pub fn d_star_r(base: &Base, max_iter: usize) -> Result<PeriodicWord> {
    Ok(d_star_from(&d_lb(base, max_iter)?))
}

/// Reusable admissibility test with the reference strings computed once.
#[derive(Clone, Debug)]
pub struct Admissibility {
    digit_max: Digit,
    lower: PeriodicWord,
    upper: PeriodicWord,
}

impl Admissibility {
    pub fn new(base: &Base, max_iter: usize) -> Result<Self> {
        let lower = d_lb(base, max_iter)?;
        Ok(Self::from_reference(base.digit_max(), lower))
    }

    pub fn from_reference(digit_max: Digit, d_lb: PeriodicWord) -> Self {
        Admissibility {
            digit_max,
            upper: d_star_from(&d_lb),
            lower: d_lb,
        }
    }

    pub fn lower(&self) -> &PeriodicWord {
        &self.lower
    }

    pub fn upper(&self) -> &PeriodicWord {
        &self.upper
    }

    /// Whether the infinite word `x_1 x_2 ...` is admissible.
    pub fn check_sequence(&self, w: &PeriodicWord) -> bool {
        let in_range = |ds: &[Digit]| ds.iter().all(|&d| (0..=self.digit_max).contains(&d));
        if !in_range(w.preperiod()) || !in_range(w.period()) {
            return false;
        }
        // suffixes of 0w: position 0 is the prepended zero
        let digit = |k: usize| if k == 0 { 0 } else { w.digit(k - 1) };
        let pre = w.preperiod().len() + 1;
        let cyc = w.cycle_len();
        let (lo, hi) = (&self.lower, &self.upper);
        let lo_h = lo.preperiod().len() + cyc.lcm(&lo.cycle_len());
        let hi_h = hi.preperiod().len() + cyc.lcm(&hi.cycle_len());
        (0..pre + cyc).all(|k| {
            let rest = pre.saturating_sub(k);
            let below = alt_cmp_by(rest + lo_h, |i| lo.digit(i), |i| digit(k + i)).outcome;
            let above = alt_cmp_by(rest + hi_h, |i| digit(k + i), |i| hi.digit(i)).outcome;
            below != Ordering::Greater && above == Ordering::Less
        })
    }

    /// Whether a finite word (padded with `0^w`) is admissible.
    pub fn check(&self, w: &DigitWord) -> bool {
        self.check_sequence(&PeriodicWord::finite(w.digits().to_vec()))
    }
}

/// Digit sequences accepted by [`is_admissible`].
pub trait AsSequence {
    fn as_sequence(&self) -> PeriodicWord;
}

impl AsSequence for DigitWord {
    fn as_sequence(&self) -> PeriodicWord {
        PeriodicWord::finite(self.digits().to_vec())
    }
}

impl AsSequence for PeriodicWord {
    fn as_sequence(&self) -> PeriodicWord {
        self.clone()
    }
}

impl AsSequence for Word {
    fn as_sequence(&self) -> PeriodicWord {
        self.sequence()
    }
}

/// Whether every suffix `u` of `0w` satisfies `d_lb <= u < d*` in the
/// alternate order. Finite words are padded with `0^w`; the radix point
/// plays no role.
pub fn is_admissible<W: AsSequence + ?Sized>(w: &W, base: &Base, max_iter: usize) -> Result<bool> {
    Ok(Admissibility::new(base, max_iter)?.check_sequence(&w.as_sequence()))
}

/// Scans `w` (padded with `0^w`) for the forbidden factors of its quadratic
/// class.
///
/// `x^2 = mx - n`: digits lie in `0..=m-1` and every `m-1` is followed by a
/// digit `>= n`.
///
/// `x^2 = mx + n`, `c = m - n`: after a digit `m`, a run of `r` copies of `c`
/// ended by a digit `x` is forbidden when `r` is even and `x < c`, or `r` is
/// odd and `x > c`. For `c = 0` the run may be the zero tail, which is
/// forbidden only when the `m` follows a zero (or starts the word).
pub fn forbidden_factor_check(w: &DigitWord, base: &Base) -> Result<bool> {
    let ds = w.digits();
    let at = |i: usize| ds.get(i).copied().unwrap_or(0);
    match *base.kind() {
        BaseKind::QuadA { m, n } => Ok(ds.iter().enumerate().all(|(i, &d)| {
            (0..m).contains(&d) && (d != m - 1 || at(i + 1) >= n)
        })),
        BaseKind::QuadB { m, n } => {
            if ds.iter().any(|&d| !(0..=m).contains(&d)) {
                return Ok(false);
            }
            let c = m - n;
            for (i, &d) in ds.iter().enumerate() {
                if d != m {
                    continue;
                }
                let mut j = i + 1;
                while j < ds.len() && ds[j] == c {
                    j += 1;
                }
                let r = j - i - 1;
                if j >= ds.len() && c == 0 {
                    if i == 0 || ds[i - 1] == 0 {
                        return Ok(false);
                    }
                    continue;
                }
                let x = at(j);
                if (r % 2 == 0 && x < c) || (r % 2 == 1 && x > c) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Err(Error::NotQuadratic),
    }
}
