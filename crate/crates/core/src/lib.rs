//! Exact arithmetic in negative-base numeration systems.
//!
//! Numbers are written as `x = sum x_i (-beta)^i` with digits in
//! `{0, ..., floor(beta)}`. The crate computes expansions exactly for integer
//! and quadratic Pisot bases (elements of `Q(beta)` are kept as exact
//! `a + b beta`), and with outward-rounded intervals for other real bases.

pub mod admissibility;
pub mod analysis;
pub mod arithmetic;
pub mod base;
pub mod error;
pub mod expansion;
pub mod interval;
mod ops;
pub mod quad;
mod small;
pub mod transform;
pub mod word;

pub use admissibility::{
    alt_compare, d_star_from, d_star_r, forbidden_factor_check, is_admissible, Admissibility, AltOrdering, AsSequence,
};
pub use analysis::{
    classify, empirical_hk, enumerate_z, fin_trivial, hk_bounds, scan_l, Classification, ConjugateSign, HkBounds, HkSource,
    ScanOp, ScanReport,
};
pub use arithmetic::{add, add_one_rewrite, mul, sub, zero_word, ZeroIdentity, ZeroVariant};
pub use base::{conjugate, parse_base, qfloor, Base, BaseKind};
pub use error::{Error, Result};
pub use expansion::{canonicalize, eval_periodic_fraction, eval_word, expand, range_bracket, Expansion, Status};
pub use quad::{QuadElem, QuadField};
pub use transform::{d_expansion, d_lb, d_lb_closed_form, t_step, Orbit, OrbitState, DEFAULT_MAX_ITER};
pub use word::{Digit, DigitWord, PeriodicWord, Word};
