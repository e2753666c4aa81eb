//! Exact elements of `Q(beta)` and the field operations over them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact element `a + b*beta` of `Q(beta)`.
///
/// Stored as `(a_num + b_num*beta) / den` with `den > 0` and
/// `gcd(a_num, b_num, den) = 1`, which makes the derived equality and hash
/// agree with componentwise equality of the reduced rationals `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a: BigInt,
    b: BigInt,
    den: BigInt,
}

impl QuadElem {
    /// Builds `(a + b*beta) / den` and reduces it.
    pub fn from_parts(a: BigInt, b: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(a, b, den))
    }

    fn normalized(mut a: BigInt, mut b: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            a = -a;
            b = -b;
            den = -den;
        }
        if den.is_one() {
            return QuadElem { a, b, den };
        }
        let g = a.gcd(&b).gcd(&den);
        if !g.is_one() && !g.is_zero() {
            a /= &g;
            b /= &g;
            den /= &g;
        }
        QuadElem { a, b, den }
    }

    pub fn new(a: BigRational, b: BigRational) -> Self {
        let den = a.denom().lcm(b.denom());
        let an = a.numer() * (&den / a.denom());
        let bn = b.numer() * (&den / b.denom());
        Self::normalized(an, bn, den)
    }

    pub fn zero() -> Self {
        QuadElem {
            a: BigInt::zero(),
            b: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(v: impl Into<BigInt>) -> Self {
        QuadElem {
            a: v.into(),
            b: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        Self::from_parts(p.into(), BigInt::zero(), q.into())
    }

    /// The formal generator `beta` (only meaningful over a quadratic base).
    pub fn beta() -> Self {
        QuadElem {
            a: BigInt::zero(),
            b: BigInt::one(),
            den: BigInt::one(),
        }
    }

    pub fn a(&self) -> BigRational {
        BigRational::new(self.a.clone(), self.den.clone())
    }

    pub fn b(&self) -> BigRational {
        BigRational::new(self.b.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub(crate) fn raw(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.den)
    }

    pub fn add_int(&self, k: &BigInt) -> Self {
        Self::normalized(&self.a + k * &self.den, self.b.clone(), self.den.clone())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::normalized(
            &self.a * k.numer(),
            &self.b * k.numer(),
            &self.den * k.denom(),
        )
    }
}

impl std::ops::Add for &QuadElem {
    type Output = QuadElem;

    fn add(self, rhs: &QuadElem) -> QuadElem {
        if self.den == rhs.den {
            return QuadElem::normalized(&self.a + &rhs.a, &self.b + &rhs.b, self.den.clone());
        }
        QuadElem::normalized(
            &self.a * &rhs.den + &rhs.a * &self.den,
            &self.b * &rhs.den + &rhs.b * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl std::ops::Sub for &QuadElem {
    type Output = QuadElem;

    fn sub(self, rhs: &QuadElem) -> QuadElem {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &QuadElem {
    type Output = QuadElem;

    fn neg(self) -> QuadElem {
        QuadElem {
            a: -&self.a,
            b: -&self.b,
            den: self.den.clone(),
        }
    }
}

impl std::ops::Neg for QuadElem {
    type Output = QuadElem;

    fn neg(self) -> QuadElem {
        -&self
    }
}

fn fmt_ratio(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    write!(f, "{}/{}", r.numer(), r.denom())
}

/// Text form `p/q` or `p/q+r/s*beta`; the denominator is always written.
impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_ratio(f, &self.a())?;
        if !self.b.is_zero() {
            f.write_str("+")?;
            fmt_ratio(f, &self.b())?;
            f.write_str("*beta")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadElem({self})")
    }
}

fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::MalformedSpec(format!("bad rational '{s}'"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
    let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(p, q))
}

impl FromStr for QuadElem {
    type Err = Error;

    /// Accepts `p/q`, `p/q+r/s*beta` and the shorthand of a bare integer for
    /// either rational.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_suffix("*beta") {
            // The split point is the last '+' that is not a sign of `r`.
            let idx = body
                .char_indices()
                .filter(|&(i, c)| c == '+' && i > 0)
                .map(|(i, _)| i)
                .last()
                .ok_or_else(|| Error::MalformedSpec(format!("bad value '{s}'")))?;
            let a = parse_ratio(&body[..idx])?;
            let b = parse_ratio(&body[idx + 1..])?;
            return Ok(QuadElem::new(a, b));
        }
        Ok(QuadElem::new(parse_ratio(s)?, BigRational::zero()))
    }
}

/// Exact arithmetic for an integer or quadratic base.
///
/// For quadratic bases `beta^2 = trace*beta + constant`, with
/// `beta = (trace + sqrt(disc)) / 2`. Integer bases carry no `beta`
/// component: every element they produce has `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadField {
    Integer { base: BigInt },
    Quadratic { trace: BigInt, constant: BigInt, disc: BigInt },
}

impl QuadField {
    pub fn integer(base: i64) -> Self {
        QuadField::Integer { base: base.into() }
    }

    /// Field for `beta^2 = trace*beta + constant`. The discriminant must not
    /// be a perfect square; both Pisot classes satisfy this.
    pub fn quadratic(trace: i64, constant: i64) -> Self {
        let trace = BigInt::from(trace);
        let constant = BigInt::from(constant);
        let disc = &trace * &trace + BigInt::from(4) * &constant;
        QuadField::Quadratic { trace, constant, disc }
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self, QuadField::Quadratic { .. })
    }

    pub fn beta(&self) -> QuadElem {
        match self {
            QuadField::Integer { base } => QuadElem::int(base.clone()),
            QuadField::Quadratic { .. } => QuadElem::beta(),
        }
    }

    /// `(A + B beta)(C + D beta)` on numerators.
    fn mul_raw(&self, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
        match self {
            QuadField::Integer { .. } => (a * c, BigInt::zero()),
            QuadField::Quadratic { trace, constant, .. } => {
                let bd = b * d;
                (a * c + constant * &bd, a * d + b * c + trace * bd)
            }
        }
    }

    pub fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        let (a, b) = self.mul_raw(&x.a, &x.b, &y.a, &y.b);
        QuadElem::normalized(a, b, &x.den * &y.den)
    }

    /// `-beta * x`, without renormalizing the denominator beyond a gcd pass.
    pub fn mul_neg_beta(&self, x: &QuadElem) -> QuadElem {
        match self {
            QuadField::Integer { base } => QuadElem::normalized(-(&x.a * base), BigInt::zero(), x.den.clone()),
            QuadField::Quadratic { trace, constant, .. } => QuadElem::normalized(
                -(constant * &x.b),
                -(&x.a + trace * &x.b),
                x.den.clone(),
            ),
        }
    }

    /// Image under `beta -> beta'` written back over the `beta` basis,
    /// using `beta + beta' = trace`.
    pub fn conjugate(&self, x: &QuadElem) -> Result<QuadElem> {
        match self {
            QuadField::Integer { .. } => Err(Error::NotQuadratic),
            QuadField::Quadratic { trace, .. } => Ok(QuadElem::normalized(
                &x.a + &x.b * trace,
                -&x.b,
                x.den.clone(),
            )),
        }
    }

    /// Norm of the numerator `A + B beta`.
    fn norm_raw(&self, a: &BigInt, b: &BigInt) -> BigInt {
        match self {
            QuadField::Integer { .. } => a.clone(),
            QuadField::Quadratic { trace, constant, .. } => a * a + a * b * trace - constant * b * b,
        }
    }

    pub fn inv(&self, x: &QuadElem) -> Result<QuadElem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            QuadField::Integer { .. } => Ok(QuadElem::normalized(x.den.clone(), BigInt::zero(), x.a.clone())),
            QuadField::Quadratic { trace, .. } => {
                let norm = self.norm_raw(&x.a, &x.b);
                Ok(QuadElem::normalized(
                    &x.den * (&x.a + &x.b * trace),
                    -(&x.den * &x.b),
                    norm,
                ))
            }
        }
    }

    pub fn div(&self, x: &QuadElem, y: &QuadElem) -> Result<QuadElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &QuadElem, k: i64) -> Result<QuadElem> {
        let mut base = if k < 0 { self.inv(x)? } else { x.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = QuadElem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// `(-beta)^k` for any integer `k`.
    pub fn neg_beta_pow(&self, k: i64) -> QuadElem {
        let nb = -self.beta();
        // beta > 1, so the inverse always exists.
        self.pow(&nb, k).expect("beta is invertible")
    }

    /// Sign of `x`, decided with integer arithmetic only.
    pub fn sign(&self, x: &QuadElem) -> Ordering {
        match self {
            QuadField::Integer { .. } => x.a.sign_cmp(),
            QuadField::Quadratic { trace, disc, .. } => {
                // 2(A + B beta) = (2A + B trace) + B sqrt(disc)
                let p = BigInt::from(2) * &x.a + &x.b * trace;
                sign_sqrt_sum(&p, &x.b, disc)
            }
        }
    }

    pub fn cmp(&self, x: &QuadElem, y: &QuadElem) -> Ordering {
        self.sign(&(x - y))
    }

    pub fn abs(&self, x: &QuadElem) -> QuadElem {
        if self.sign(x) == Ordering::Less {
            -x
        } else {
            x.clone()
        }
    }

    /// `floor(x)`, exact.
    pub fn floor(&self, x: &QuadElem) -> BigInt {
        match self {
            QuadField::Integer { .. } => x.a.div_floor(&x.den),
            QuadField::Quadratic { trace, disc, .. } => {
                // x = (P + B sqrt(disc)) / E with E = 2 den > 0. Replacing
                // B sqrt(disc) by its floor s keeps floor((P + s + f)/E) =
                // floor((P + s)/E) because 0 <= f < 1 and E is an integer.
                let p = BigInt::from(2) * &x.a + &x.b * trace;
                let e = BigInt::from(2) * &x.den;
                let s = floor_mul_sqrt(&x.b, disc);
                (p + s).div_floor(&e)
            }
        }
    }

    /// `floor(x)` as an `i64`; panics only when the floor overflows.
    pub(crate) fn floor_i64(&self, x: &QuadElem) -> i64 {
        i64::try_from(self.floor(x)).expect("digit fits in i64")
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Sign of `p + q*sqrt(d)` for non-square `d > 0`.
pub(crate) fn sign_sqrt_sum(p: &BigInt, q: &BigInt, d: &BigInt) -> Ordering {
    let sp = p.sign_cmp();
    let sq = q.sign_cmp();
    if sq == Ordering::Equal {
        return sp;
    }
    if sp == Ordering::Equal || sp == sq {
        return sq;
    }
    // Opposite signs: the term of larger magnitude wins.
    let lhs = p * p;
    let rhs = q * q * d;
    match lhs.cmp(&rhs) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

/// `floor(q * sqrt(d))` for non-square `d > 0`.
pub(crate) fn floor_mul_sqrt(q: &BigInt, d: &BigInt) -> BigInt {
    if q.is_zero() {
        return BigInt::zero();
    }
    let r = (q * q * d).sqrt();
    if q.is_positive() {
        r
    } else {
        -r - 1
    }
}
