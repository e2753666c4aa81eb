//! Finite and eventually periodic digit strings, and their text format.
//!
//! Text format: digits are unsigned decimal integers separated by `,`; a
//! finite word carries exactly one radix point `.` (`1,2.1`, `1,1,0.`,
//! `0.`); a periodic tail is written `(d,...)^w`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Digit = i64;

/// A finite digit string; `digits[i]` multiplies `(-beta)^(lead_exp - i)`.
///
/// Always canonical: no leading zeros, digits reach down to exponent 0,
/// no zeros below the radix point at the end. Zero is `[0]` at exponent 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DigitWord {
    digits: Vec<Digit>,
    lead_exp: i64,
}

impl DigitWord {
    pub fn new(mut digits: Vec<Digit>, lead_exp: i64) -> Self {
        let (Some(first), Some(last)) = (digits.iter().position(|&d| d != 0), digits.iter().rposition(|&d| d != 0))
        else {
            return Self::zero();
        };
        let low = lead_exp - last as i64;
        digits.truncate(last + 1);
        digits.drain(..first);
        if low > 0 {
            digits.resize(digits.len() + low as usize, 0);
        }
        DigitWord {
            digits,
            lead_exp: lead_exp - first as i64,
        }
    }

    pub fn zero() -> Self {
        DigitWord {
            digits: vec![0],
            lead_exp: 0,
        }
    }

    /// Integer-part-only word from most significant digit down to exponent 0.
    pub fn integer(digits: Vec<Digit>) -> Self {
        let lead = digits.len() as i64 - 1;
        Self::new(digits, lead.max(0))
    }

    /// Builds a word from a sparse exponent -> digit map (zero entries allowed).
    pub fn from_map(map: &BTreeMap<i64, Digit>) -> Self {
        let nonzero: Vec<(i64, Digit)> = map.iter().filter(|(_, &d)| d != 0).map(|(&e, &d)| (e, d)).collect();
        let (Some(&(low, _)), Some(&(high, _))) = (nonzero.first(), nonzero.last()) else {
            return Self::zero();
        };
        let low = low.min(0);
        let digits = (low..=high).rev().map(|e| map.get(&e).copied().unwrap_or(0)).collect();
        DigitWord { digits, lead_exp: high }
    }

    pub fn to_map(&self) -> BTreeMap<i64, Digit> {
        self.iter().filter(|&(_, d)| d != 0).collect()
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn lead_exp(&self) -> i64 {
        self.lead_exp
    }

    /// Exponent of the last stored digit.
    pub fn low_exp(&self) -> i64 {
        self.lead_exp - self.digits.len() as i64 + 1
    }

    /// Number of digits below the radix point.
    pub fn frac_len(&self) -> usize {
        (-self.low_exp()).max(0) as usize
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn digit_at(&self, exp: i64) -> Digit {
        if exp > self.lead_exp || exp < self.low_exp() {
            return 0;
        }
        self.digits[(self.lead_exp - exp) as usize]
    }

    /// `(exponent, digit)` pairs from the most significant digit down.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Digit)> + '_ {
        self.digits
            .iter()
            .enumerate()
            .map(move |(i, &d)| (self.lead_exp - i as i64, d))
    }

    /// Digitwise sum, aligned by exponent. Signed digits may result.
    pub fn add_digitwise(&self, other: &DigitWord) -> DigitWord {
        let mut map = self.to_map();
        for (e, d) in other.iter() {
            *map.entry(e).or_insert(0) += d;
        }
        Self::from_map(&map)
    }

    pub fn negated(&self) -> DigitWord {
        DigitWord {
            digits: self.digits.iter().map(|d| -d).collect(),
            lead_exp: self.lead_exp,
        }
    }

    /// Multiplies by `(-beta)^k`, i.e. moves the radix point.
    pub fn shifted(&self, k: i64) -> DigitWord {
        if self.is_zero() {
            return self.clone();
        }
        Self::new(self.digits.clone(), self.lead_exp + k)
    }

    /// The digits from the leading one down to exponent `min(0, low)`,
    /// as a sequence for admissibility checks.
    pub fn as_periodic(&self) -> PeriodicWord {
        if self.is_zero() {
            return PeriodicWord::zero();
        }
        PeriodicWord::finite(self.digits.clone())
    }

    pub fn is_signed(&self) -> bool {
        self.digits.iter().any(|&d| d < 0)
    }
}

fn join(digits: &[Digit]) -> String {
    digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lead_exp < 0 {
            let mut frac = vec![0; (-self.lead_exp - 1) as usize];
            frac.extend_from_slice(&self.digits);
            return write!(f, "0.{}", join(&frac));
        }
        let split = (self.lead_exp + 1) as usize;
        write!(f, "{}.{}", join(&self.digits[..split]), join(&self.digits[split..]))
    }
}

fn parse_digits(s: &str) -> Result<Vec<Digit>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            if t.is_empty() || !t.bytes().all(|c| c.is_ascii_digit()) {
                return Err(Error::MalformedSpec(format!("bad digit '{t}'")));
            }
            t.parse::<Digit>()
                .map_err(|_| Error::MalformedSpec(format!("digit out of range '{t}'")))
        })
        .collect()
}

impl FromStr for DigitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (int, frac) = s
            .split_once('.')
            .ok_or_else(|| Error::MalformedSpec(format!("word '{s}' has no radix point")))?;
        if frac.contains('.') || s.contains('(') {
            return Err(Error::MalformedSpec(format!("not a finite word '{s}'")));
        }
        let int = parse_digits(int)?;
        if int.is_empty() {
            return Err(Error::MalformedSpec(format!("word '{s}' has no integer part")));
        }
        let frac = parse_digits(frac)?;
        let lead = int.len() as i64 - 1;
        let mut digits = int;
        digits.extend(frac);
        Ok(DigitWord::new(digits, lead))
    }
}

/// A right-infinite word `preperiod period period ...`.
///
/// Canonical: the period is primitive, the preperiod is as short as
/// possible, and a zero period is stored as an empty period (a finite word,
/// followed by `0^w`, with no trailing zeros in the preperiod).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PeriodicWord {
    preperiod: Vec<Digit>,
    period: Vec<Digit>,
}

fn primitive_root(w: &[Digit]) -> &[Digit] {
    let n = w.len();
    for p in 1..=n {
        if n % p == 0 && (p..n).all(|i| w[i] == w[i - p]) {
            return &w[..p];
        }
    }
    w
}

impl PeriodicWord {
    pub fn new(preperiod: Vec<Digit>, period: Vec<Digit>) -> Self {
        let mut preperiod = preperiod;
        let mut period = primitive_root(&period).to_vec();
        if period.iter().all(|&d| d == 0) {
            period.clear();
        }
        if period.is_empty() {
            while preperiod.last() == Some(&0) {
                preperiod.pop();
            }
        } else {
            while !preperiod.is_empty() && preperiod.last() == period.last() {
                preperiod.pop();
                period.rotate_right(1);
            }
        }
        PeriodicWord { preperiod, period }
    }

    pub fn finite(digits: Vec<Digit>) -> Self {
        Self::new(digits, Vec::new())
    }

    pub fn zero() -> Self {
        PeriodicWord {
            preperiod: Vec::new(),
            period: Vec::new(),
        }
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty() && !self.period.is_empty()
    }

    /// Digit at 0-based position `i`.
    pub fn digit(&self, i: usize) -> Digit {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<Digit> {
        (0..n).map(|i| self.digit(i)).collect()
    }

    /// Length of the period viewed as an infinite word (`0^w` has period 1).
    pub fn cycle_len(&self) -> usize {
        self.period.len().max(1)
    }

    /// The suffix starting at position `k`.
    pub fn drop_front(&self, k: usize) -> PeriodicWord {
        if k <= self.preperiod.len() {
            return PeriodicWord::new(self.preperiod[k..].to_vec(), self.period.clone());
        }
        if self.period.is_empty() {
            return PeriodicWord::zero();
        }
        let mut period = self.period.clone();
        let shift = (k - self.preperiod.len()) % period.len();
        period.rotate_left(shift);
        PeriodicWord::new(Vec::new(), period)
    }

    /// `digits` followed by this word.
    pub fn prepend(&self, digits: &[Digit]) -> PeriodicWord {
        let mut pre = digits.to_vec();
        pre.extend_from_slice(&self.preperiod);
        PeriodicWord::new(pre, self.period.clone())
    }

    /// Text of the digits after the radix point, as used inside an expansion.
    pub(crate) fn tail_text(&self) -> String {
        let mut s = join(&self.preperiod);
        if !self.period.is_empty() {
            if !s.is_empty() {
                s.push(',');
            }
            s.push('(');
            s.push_str(&join(&self.period));
            s.push_str(")^w");
        }
        s
    }

    pub(crate) fn parse_tail(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.find('(') {
            None => Ok(PeriodicWord::finite(parse_digits(s)?)),
            Some(open) => {
                let body = s[open + 1..]
                    .strip_suffix(")^w")
                    .ok_or_else(|| Error::MalformedSpec(format!("bad periodic tail '{s}'")))?;
                let pre = s[..open].strip_suffix(',').unwrap_or(&s[..open]);
                if !s[..open].is_empty() && !s[..open].ends_with(',') {
                    return Err(Error::MalformedSpec(format!("bad periodic tail '{s}'")));
                }
                let period = parse_digits(body)?;
                if period.is_empty() {
                    return Err(Error::MalformedSpec(format!("empty period in '{s}'")));
                }
                Ok(PeriodicWord::new(parse_digits(pre)?, period))
            }
        }
    }
}

/// Finite words print with an explicit `(0)^w` tail: `1,(0)^w`, `(0)^w`.
impl fmt::Display for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.period.is_empty() {
            if self.preperiod.is_empty() {
                return f.write_str("(0)^w");
            }
            return write!(f, "{},(0)^w", join(&self.preperiod));
        }
        f.write_str(&self.tail_text())
    }
}

impl FromStr for PeriodicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains('.') {
            return Err(Error::MalformedSpec(format!("periodic word '{s}' has a radix point")));
        }
        PeriodicWord::parse_tail(s)
    }
}

/// Either kind of word, as accepted by admissibility checks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Word {
    Finite(DigitWord),
    Periodic(PeriodicWord),
}

impl Word {
    /// The digit sequence from the most significant digit, radix ignored.
    pub fn sequence(&self) -> PeriodicWord {
        match self {
            Word::Finite(w) => w.as_periodic(),
            Word::Periodic(p) => p.clone(),
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// `1,2.1` is finite; `2,(1)^w` is periodic; `1,2.(2)^w` is read as the
    /// digit sequence of an infinite expansion; a bare `3,0` is a finite
    /// digit sequence followed by `0^w`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.contains('(') {
            if !s.contains('.') {
                return Ok(Word::Periodic(PeriodicWord::finite(parse_digits(s)?)));
            }
            return s.parse().map(Word::Finite);
        }
        match s.split_once('.') {
            None => s.parse().map(Word::Periodic),
            Some((int, tail)) => {
                let int = parse_digits(int)?;
                let tail = PeriodicWord::parse_tail(tail)?;
                let lead = int.iter().position(|&d| d != 0).unwrap_or(int.len());
                Ok(Word::Periodic(tail.prepend(&int[lead..])))
            }
        }
    }
}
