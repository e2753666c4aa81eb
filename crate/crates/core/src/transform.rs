//! The negative-base transform `T(x) = -beta x - floor(-beta x + beta/(beta+1))`
//! on `[-beta/(beta+1), 1/(beta+1))` and the digit strings it generates.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::base::{Base, BaseKind};
use crate::error::{Error, Result};
use crate::ops::{in_domain, with_ops, ExactOps, Ops};
use crate::quad::QuadElem;
use crate::word::{Digit, PeriodicWord};

/// Default orbit budget.
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// A point of the transform's domain together with its step count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitState {
    pub value: QuadElem,
    pub step_index: usize,
}

impl OrbitState {
    pub fn start(value: QuadElem) -> Self {
        OrbitState { value, step_index: 0 }
    }
}

/// Result of iterating the transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orbit {
    /// Eventually periodic digits; an empty period means the orbit hit 0.
    Periodic(PeriodicWord),
    /// Budget exhausted; the digits produced so far.
    Truncated(Vec<Digit>),
}

impl Orbit {
    pub fn word(&self) -> Option<&PeriodicWord> {
        match self {
            Orbit::Periodic(w) => Some(w),
            Orbit::Truncated(_) => None,
        }
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orbit::Periodic(w) => write!(f, "{w}"),
            Orbit::Truncated(d) => write!(f, "{}...", PeriodicWord::finite(d.clone()).tail_text()),
        }
    }
}

/// One step on an already validated point: the digit and the image.
pub(crate) fn step<O: Ops>(ops: &O, x: &O::V) -> Result<(Digit, O::V)> {
    step_with(ops, x, ops.left())
}

/// [`step`] with the left end supplied by the caller.
fn step_with<O: Ops>(ops: &O, x: &O::V, left: &O::V) -> Result<(Digit, O::V)> {
    let scaled = ops.mul_neg_beta(x);
    // -beta x + beta/(beta+1) = -beta x - left
    let digit = ops.floor(&ops.sub(&scaled, left))?;
    Ok((digit, ops.sub_digit(&scaled, digit)))
}

/// Applies the transform once, checking that the state lies in the domain.
pub fn t_step(state: &OrbitState, base: &Base) -> Result<(Digit, OrbitState)> {
    let ops = ExactOps::new(base)?;
    if !in_domain(&ops, &state.value)? {
        return Err(Error::OutOfDomain(state.value.to_string()));
    }
    let (digit, next) = step(&ops, &state.value)?;
    Ok((
        digit,
        OrbitState {
            value: next,
            step_index: state.step_index + 1,
        },
    ))
}

/// States visited so far; a linear scan while short, hashed afterwards.
struct Seen<V> {
    states: Vec<V>,
    index: HashMap<V, usize>,
}

impl<V: Clone + Eq + Hash> Seen<V> {
    const LINEAR: usize = 64;

    fn new() -> Self {
        Seen { states: Vec::with_capacity(16), index: HashMap::new() }
    }

    fn position(&self, v: &V) -> Option<usize> {
        if self.states.len() <= Self::LINEAR {
            self.states.iter().position(|s| s == v)
        } else {
            self.index.get(v).copied()
        }
    }

    fn push(&mut self, v: V) {
        self.states.push(v);
        if self.states.len() == Self::LINEAR + 1 {
            self.index = self.states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        } else if self.states.len() > Self::LINEAR + 1 {
            let i = self.states.len() - 1;
            self.index.insert(self.states[i].clone(), i);
        }
    }
}

/// Iterates from `x` (already in the domain) for at most `max_iter` steps.
pub(crate) fn orbit<O: Ops>(ops: &O, x: O::V, max_iter: usize) -> Result<Orbit> {
    let mut digits = Vec::with_capacity(16);
    let mut seen = Seen::new();
    let (mut cur, left) = ops.with_left(x);
    for i in 0..=max_iter {
        ops.check(&cur)?;
        if ops.is_zero(&cur) {
            return Ok(Orbit::Periodic(PeriodicWord::finite(digits)));
        }
        if ops.exact() {
            if let Some(j) = seen.position(&cur) {
                let period = digits.split_off(j);
                return Ok(Orbit::Periodic(PeriodicWord::new(digits, period)));
            }
            seen.push(cur.clone());
        }
        if i == max_iter {
            break;
        }
        let (d, next) = step_with(ops, &cur, &left)?;
        digits.push(d);
        cur = next;
    }
    Ok(Orbit::Truncated(digits))
}

/// The digit string `d(x) = x_1 x_2 ...` of a point of the domain.
///
/// Exact bases detect periodicity on exact states; generic bases only stop
/// when the orbit reaches an exact zero.
pub fn d_expansion(x: &QuadElem, base: &Base, max_iter: usize) -> Result<Orbit> {
    fn run<O: Ops>(ops: &O, x: &QuadElem, max_iter: usize) -> Result<Orbit> {
        let v = ops.lift(x)?;
        if !in_domain(ops, &v)? {
            return Err(Error::OutOfDomain(x.to_string()));
        }
        orbit(ops, v, max_iter)
    }
    with_ops!(base, |o| run(o, x, max_iter))
}

/// Closed form of `d(left end)` for the quadratic Pisot classes.
pub fn d_lb_closed_form(base: &Base) -> Option<PeriodicWord> {
    match *base.kind() {
        BaseKind::QuadA { m, n } => Some(PeriodicWord::new(vec![], vec![m - 1, n])),
        BaseKind::QuadB { m, n } => Some(PeriodicWord::new(vec![m], vec![m - n])),
        _ => None,
    }
}

fn d_lb_orbit(base: &Base, max_iter: usize) -> Result<PeriodicWord> {
    fn run<O: Ops>(ops: &O, max_iter: usize) -> Result<PeriodicWord> {
        match orbit(ops, ops.left().clone(), max_iter)? {
            Orbit::Periodic(w) => Ok(w),
            Orbit::Truncated(_) => Err(Error::NotEventuallyPeriodicWithinBudget { budget: max_iter }),
        }
    }
    with_ops!(base, |o| run(o, max_iter))
}

/// `d(-beta/(beta+1))`, the lower reference string of admissibility.
///
/// For quadratic bases the closed form is returned after checking it
/// against the orbit.
pub fn d_lb(base: &Base, max_iter: usize) -> Result<PeriodicWord> {
    let from_orbit = d_lb_orbit(base, max_iter)?;
    if let Some(closed) = d_lb_closed_form(base) {
        if closed != from_orbit {
            return Err(Error::ClosedFormMismatch {
                closed: closed.to_string(),
                orbit: from_orbit.to_string(),
            });
        }
        return Ok(closed);
    }
    Ok(from_orbit)
}
