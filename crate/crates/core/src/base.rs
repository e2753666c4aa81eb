//! Base descriptions and the `int:` / `quad-:` / `quad+:` / `real:` grammar.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::interval::IntervalField;
use crate::quad::{QuadElem, QuadField};
use crate::small::SmallOps;
use crate::word::Digit;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseKind {
    /// `beta = b`, an integer `>= 2`.
    Integer { b: i64 },
    /// Larger root of `x^2 = m x - n`, `m - 2 >= n >= 1`; conjugate in `(0, 1)`.
    QuadA { m: i64, n: i64 },
    /// Larger root of `x^2 = m x + n`, `m >= n >= 1`; conjugate in `(-1, 0)`.
    QuadB { m: i64, n: i64 },
    /// A real `beta > 1` given as a decimal, handled with interval arithmetic.
    GenericReal { value: BigRational, text: String, precision_bits: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Arith {
    Exact(QuadField),
    Interval(IntervalField),
}

/// Cached fixed-width operations; derived from the other fields, so it
/// takes no part in equality.
#[derive(Clone)]
pub(crate) struct FastPath(Option<Arc<SmallOps>>);

impl PartialEq for FastPath {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for FastPath {}

impl fmt::Debug for FastPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("FastPath")
    }
}

/// A validated numeration base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Base {
    kind: BaseKind,
    digit_max: Digit,
    arith: Arith,
    fast: FastPath,
}

impl Base {
    fn with_fast_path(mut self) -> Self {
        self.fast = FastPath(SmallOps::new(&self).map(Arc::new));
        self
    }

    pub(crate) fn fast_path(&self) -> Option<&SmallOps> {
        self.fast.0.as_deref()
    }

    pub fn integer(b: i64) -> Result<Self> {
        if b < 2 {
            return Err(Error::ConstraintViolation(format!("integer base {b} < 2")));
        }
        Ok(Base {
            kind: BaseKind::Integer { b },
            digit_max: b,
            arith: Arith::Exact(QuadField::integer(b)),
            fast: FastPath(None),
        }
        .with_fast_path())
    }

    pub fn quad_a(m: i64, n: i64) -> Result<Self> {
        if n < 1 || m - 2 < n {
            return Err(Error::ConstraintViolation(format!(
                "quad-:{m},{n} needs m - 2 >= n >= 1"
            )));
        }
        let field = QuadField::quadratic(m, -n);
        let digit_max = field.floor_i64(&QuadElem::beta());
        Ok(Base {
            kind: BaseKind::QuadA { m, n },
            digit_max,
            arith: Arith::Exact(field),
            fast: FastPath(None),
        }
        .with_fast_path())
    }

    pub fn quad_b(m: i64, n: i64) -> Result<Self> {
        if n < 1 || m < n {
            return Err(Error::ConstraintViolation(format!(
                "quad+:{m},{n} needs m >= n >= 1"
            )));
        }
        let field = QuadField::quadratic(m, n);
        let digit_max = field.floor_i64(&QuadElem::beta());
        Ok(Base {
            kind: BaseKind::QuadB { m, n },
            digit_max,
            arith: Arith::Exact(field),
            fast: FastPath(None),
        }
        .with_fast_path())
    }

    /// The golden ratio, `x^2 = x + 1`.
    pub fn golden() -> Self {
        Self::quad_b(1, 1).expect("1 >= 1 >= 1")
    }

    pub fn generic(decimal: &str, precision_bits: u32) -> Result<Self> {
        let value = parse_decimal(decimal)?;
        if value <= BigRational::one() {
            return Err(Error::ConstraintViolation(format!("beta = {decimal} must exceed 1")));
        }
        if precision_bits < 2 {
            return Err(Error::ConstraintViolation("precision must be at least 2 bits".into()));
        }
        let field = IntervalField::new(&value, precision_bits);
        let digit_max = field
            .floor(&field.beta)?
            .to_i64()
            .ok_or_else(|| Error::ConstraintViolation(format!("beta = {decimal} too large")))?;
        Ok(Base {
            kind: BaseKind::GenericReal {
                value,
                text: decimal.to_string(),
                precision_bits,
            },
            digit_max,
            arith: Arith::Interval(field),
            fast: FastPath(None),
        })
    }

    pub fn kind(&self) -> &BaseKind {
        &self.kind
    }

    /// Largest digit, `floor(beta)`.
    pub fn digit_max(&self) -> Digit {
        self.digit_max
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self.kind, BaseKind::QuadA { .. } | BaseKind::QuadB { .. })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.arith, Arith::Exact(_))
    }

    /// `(m, n)` for quadratic bases.
    pub fn quad_params(&self) -> Option<(i64, i64)> {
        match self.kind {
            BaseKind::QuadA { m, n } | BaseKind::QuadB { m, n } => Some((m, n)),
            _ => None,
        }
    }

    /// Exact field arithmetic; fails for generic real bases.
    pub fn field(&self) -> Result<&QuadField> {
        match &self.arith {
            Arith::Exact(f) => Ok(f),
            Arith::Interval(_) => Err(Error::InexactBase),
        }
    }

    pub(crate) fn arith(&self) -> &Arith {
        &self.arith
    }

    /// Left end `-beta/(beta+1)` of the transform's domain.
    pub fn left_end(&self) -> Result<QuadElem> {
        let f = self.field()?;
        let beta = f.beta();
        f.div(&-&beta, &beta.add_int(&BigInt::one()))
    }

    /// Right end `1/(beta+1)` of the transform's domain.
    pub fn right_end(&self) -> Result<QuadElem> {
        let f = self.field()?;
        f.inv(&f.beta().add_int(&BigInt::one()))
    }

    /// Compares `beta` with the golden ratio `(1 + sqrt 5)/2` exactly, or by
    /// intervals for generic bases.
    pub fn cmp_golden(&self) -> Result<Ordering> {
        match (&self.kind, &self.arith) {
            (BaseKind::Integer { .. }, _) => Ok(Ordering::Greater),
            (BaseKind::QuadA { m, .. } | BaseKind::QuadB { m, .. }, Arith::Exact(QuadField::Quadratic { disc, .. })) => {
                // 2 beta - 1 = (m - 1) + sqrt(D) >= 0 against sqrt(5):
                // square both sides, compare (m-1)^2 + D - 5 + 2(m-1) sqrt(D) with 0.
                let m1 = BigInt::from(m - 1);
                let p = &m1 * &m1 + disc - BigInt::from(5);
                let q = BigInt::from(2) * m1;
                Ok(crate::quad::sign_sqrt_sum(&p, &q, disc))
            }
            (_, Arith::Interval(f)) => {
                // beta > 1 so 2 beta - 1 > 0 and squaring keeps the order.
                let t = f.sub(&f.mul(&f.int(2), &f.beta), &f.int(1));
                let s = f.sub(&f.mul(&t, &t), &f.int(5));
                f.sign(&s)
            }
            _ => unreachable!("quadratic kinds always carry a quadratic field"),
        }
    }
}

fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::MalformedSpec(format!("bad decimal '{s}'"));
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() || !int.bytes().all(|c| c.is_ascii_digit()) || !frac.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(numer, denom))
}

fn parse_pair(s: &str, spec: &str) -> Result<(i64, i64)> {
    let bad = || Error::MalformedSpec(format!("bad base spec '{spec}'"));
    let (m, n) = s.split_once(',').ok_or_else(bad)?;
    let m = m.trim().parse::<i64>().map_err(|_| bad())?;
    let n = n.trim().parse::<i64>().map_err(|_| bad())?;
    Ok((m, n))
}

/// Parses `int:<b>`, `quad-:<m>,<n>`, `quad+:<m>,<n>` or `real:<decimal>@<bits>`.
pub fn parse_base(spec: &str) -> Result<Base> {
    let spec = spec.trim();
    let bad = || Error::MalformedSpec(format!("bad base spec '{spec}'"));
    let (tag, rest) = spec.split_once(':').ok_or_else(bad)?;
    match tag {
        "int" => Base::integer(rest.trim().parse().map_err(|_| bad())?),
        "quad-" => {
            let (m, n) = parse_pair(rest, spec)?;
            Base::quad_a(m, n)
        }
        "quad+" => {
            let (m, n) = parse_pair(rest, spec)?;
            Base::quad_b(m, n)
        }
        "real" => {
            let (value, bits) = rest.split_once('@').ok_or_else(bad)?;
            Base::generic(value.trim(), bits.trim().parse().map_err(|_| bad())?)
        }
        _ => Err(bad()),
    }
}

impl FromStr for Base {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_base(s)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            BaseKind::Integer { b } => write!(f, "int:{b}"),
            BaseKind::QuadA { m, n } => write!(f, "quad-:{m},{n}"),
            BaseKind::QuadB { m, n } => write!(f, "quad+:{m},{n}"),
            BaseKind::GenericReal { text, precision_bits, .. } => write!(f, "real:{text}@{precision_bits}"),
        }
    }
}

/// `floor(x)` for an exact base.
pub fn qfloor(x: &QuadElem, base: &Base) -> Result<BigInt> {
    Ok(base.field()?.floor(x))
}

/// Field conjugate `a + b beta'`, expressed over the `beta` basis.
pub fn conjugate(x: &QuadElem, base: &Base) -> Result<QuadElem> {
    if !base.is_quadratic() {
        return Err(Error::NotQuadratic);
    }
    base.field()?.conjugate(x)
}

impl Base {
    /// `beta'` as an element of `Q(beta)`.
    pub fn conjugate_beta(&self) -> Result<QuadElem> {
        conjugate(&QuadElem::beta(), self)
    }
}
