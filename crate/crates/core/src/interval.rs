//! Outward-rounded interval arithmetic for bases known only numerically.
//!
//! Endpoints are dyadic numbers `man * 2^exp`, so no operation ever needs
//! a gcd; rounding keeps mantissas at `bits` bits.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `man * 2^exp`.
#[derive(Clone, Debug, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Dyadic { man: v.into(), exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Upper estimate of `log2 |self|` (`-inf` for zero).
    pub fn log2_upper(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            (self.man.bits() as i64 + self.exp) as f64
        }
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            // arithmetic shift rounds toward -inf
            &self.man >> (-self.exp) as u64
        }
    }

    fn neg(&self) -> Dyadic {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    fn add(&self, o: &Dyadic) -> Dyadic {
        let e = self.exp.min(o.exp);
        Dyadic {
            man: (&self.man << (self.exp - e) as u64) + (&o.man << (o.exp - e) as u64),
            exp: e,
        }
    }

    fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic { man: &self.man * &o.man, exp: self.exp + o.exp }
    }

    /// Rounds to at most `bits` significant bits, down or up.
    fn round(self, bits: u32, up: bool) -> Dyadic {
        let excess = self.man.bits() as i64 - bits as i64;
        if excess <= 0 {
            return self;
        }
        let (q, r) = self.man.div_mod_floor(&(BigInt::one() << excess as u64));
        let man = if up && !r.is_zero() { q + 1 } else { q };
        Dyadic { man, exp: self.exp + excess }
    }

    /// `floor` or `ceil` of `r * 2^-exp`, as a dyadic with that exponent.
    fn from_rational(r: &BigRational, bits: u32, up: bool) -> Dyadic {
        if r.is_zero() {
            return Dyadic::zero();
        }
        let (n, d) = (r.numer(), r.denom());
        let exp = n.bits() as i64 - d.bits() as i64 - bits as i64 - 1;
        let (num, den) = if exp >= 0 {
            (n.clone(), d << exp as u64)
        } else {
            (n << (-exp) as u64, d.clone())
        };
        let man = if up { -(-num).div_floor(&den) } else { num.div_floor(&den) };
        Dyadic { man, exp }.round(bits, up)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let e = self.exp.min(o.exp);
        (&self.man << (self.exp - e) as u64).cmp(&(&o.man << (o.exp - e) as u64))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

/// A closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn point(v: Dyadic) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn width(&self) -> BigRational {
        self.hi.to_rational() - self.lo.to_rational()
    }
}

/// Interval context: the enclosure of `beta` and the working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalField {
    pub bits: u32,
    pub beta: Interval,
}

impl IntervalField {
    pub fn new(beta: &BigRational, bits: u32) -> Self {
        let mut f = IntervalField {
            bits,
            beta: Interval::point(Dyadic::zero()),
        };
        f.beta = f.from_rational(beta);
        f
    }

    fn enclose(&self, lo: Dyadic, hi: Dyadic) -> Interval {
        Interval {
            lo: lo.round(self.bits, false),
            hi: hi.round(self.bits, true),
        }
    }

    pub fn from_rational(&self, v: &BigRational) -> Interval {
        Interval {
            lo: Dyadic::from_rational(v, self.bits, false),
            hi: Dyadic::from_rational(v, self.bits, true),
        }
    }

    pub fn int(&self, v: i64) -> Interval {
        self.enclose(Dyadic::from_int(v), Dyadic::from_int(v))
    }

    pub fn add(&self, x: &Interval, y: &Interval) -> Interval {
        self.enclose(x.lo.add(&y.lo), x.hi.add(&y.hi))
    }

    pub fn neg(&self, x: &Interval) -> Interval {
        Interval {
            lo: x.hi.neg(),
            hi: x.lo.neg(),
        }
    }

    pub fn sub(&self, x: &Interval, y: &Interval) -> Interval {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Interval, y: &Interval) -> Interval {
        let c = [x.lo.mul(&y.lo), x.lo.mul(&y.hi), x.hi.mul(&y.lo), x.hi.mul(&y.hi)];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        self.enclose(lo, hi)
    }

    pub fn inv(&self, x: &Interval) -> Result<Interval> {
        if !x.lo.is_positive() && !x.hi.is_negative() {
            return Err(Error::UndecidableDigit { bits: self.bits });
        }
        Ok(Interval {
            lo: Dyadic::from_rational(&x.hi.to_rational().recip(), self.bits, false),
            hi: Dyadic::from_rational(&x.lo.to_rational().recip(), self.bits, true),
        })
    }

    pub fn div(&self, x: &Interval, y: &Interval) -> Result<Interval> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn sign(&self, x: &Interval) -> Result<Ordering> {
        if x.lo.is_positive() {
            Ok(Ordering::Greater)
        } else if x.hi.is_negative() {
            Ok(Ordering::Less)
        } else if x.is_exact_zero() {
            Ok(Ordering::Equal)
        } else {
            Err(Error::UndecidableDigit { bits: self.bits })
        }
    }

    pub fn floor(&self, x: &Interval) -> Result<BigInt> {
        let lo = x.lo.floor();
        if lo == x.hi.floor() {
            Ok(lo)
        } else {
            Err(Error::UndecidableDigit { bits: self.bits })
        }
    }
}
