//! Worked examples for every public operation, each checked against an
//! independent oracle where the expected value is not simply read off.

use std::cmp::Ordering;

use negbeta::*;
use num_bigint::BigInt;

fn b(s: &str) -> Base {
    parse_base(s).unwrap()
}

fn w(s: &str) -> DigitWord {
    s.parse().unwrap()
}

fn pw(s: &str) -> PeriodicWord {
    s.parse().unwrap()
}

fn q(s: &str) -> QuadElem {
    s.parse().unwrap()
}

/// `a + b beta` in floating point, good enough to sanity-check small values.
fn approx(x: &QuadElem, beta: f64) -> f64 {
    let f = |r: num_rational::BigRational| r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap();
    f(x.a()) + f(x.b()) * beta
}

fn beta_f64(m: f64, n: f64, plus: bool) -> f64 {
    if plus {
        (m + (m * m + 4.0 * n).sqrt()) / 2.0
    } else {
        (m + (m * m - 4.0 * n).sqrt()) / 2.0
    }
}

#[test]
fn base_parsing() {
    let base = b("quad-:3,1");
    assert_eq!(base.kind(), &BaseKind::QuadA { m: 3, n: 1 });
    assert_eq!(base.digit_max(), 2);
    assert_eq!(b("quad+:2,1").digit_max(), 2);
    assert_eq!(parse_base("quad-:3,2").unwrap_err().name(), "ConstraintViolation");
    assert_eq!(parse_base("quad*:3,1").unwrap_err().name(), "MalformedSpec");
    assert_eq!(b("quad+:1,1"), Base::golden());
    assert_eq!(b("int:5").digit_max(), 5);
}

#[test]
fn qfloor_examples_against_floating_point() {
    let base = b("quad-:3,1");
    let beta = beta_f64(3.0, 1.0, false);
    for (x, want) in [("0/1+1/1*beta", 2), ("7/2", 3), ("-3/1+1/1*beta", -1)] {
        let x = q(x);
        assert_eq!(qfloor(&x, &base).unwrap(), BigInt::from(want), "{x}");
        assert_eq!(approx(&x, beta).floor() as i64, want);
    }
    // -1/beta really is beta - 3
    let f = base.field().unwrap();
    assert_eq!(-f.inv(&f.beta()).unwrap(), q("-3/1+1/1*beta"));
}

#[test]
fn conjugate_examples() {
    let base = b("quad-:3,1");
    assert_eq!(conjugate(&QuadElem::beta(), &base).unwrap(), q("3/1+-1/1*beta"));
    assert_eq!(conjugate(&q("5/7"), &base).unwrap(), q("5/7"));
    let base = b("quad+:2,1");
    let f = base.field().unwrap();
    let sq = f.mul(&QuadElem::beta(), &QuadElem::beta());
    assert_eq!(conjugate(&sq, &base).unwrap(), q("5/1+-2/1*beta"));
    // numerically: beta' = 1 - sqrt 2, beta'^2 = 3 - 2 sqrt 2
    let beta = beta_f64(2.0, 1.0, true);
    assert!((approx(&q("5/1+-2/1*beta"), beta) - (1.0 - 2f64.sqrt()).powi(2)).abs() < 1e-12);
    assert_eq!(conjugate(&QuadElem::beta(), &b("int:3")).unwrap_err(), Error::NotQuadratic);
}

#[test]
fn eval_examples() {
    assert_eq!(eval_word(&w("1,2.1"), &b("quad-:3,1")).unwrap(), QuadElem::int(-1));
    assert_eq!(eval_word(&w("0."), &b("quad-:3,1")).unwrap(), QuadElem::zero());
    assert_eq!(eval_word(&w("1,1,0."), &Base::golden()).unwrap(), QuadElem::one());
}

#[test]
fn t_step_examples() {
    for base in [Base::golden(), b("quad-:3,1"), b("quad+:2,1"), b("int:3")] {
        let f = base.field().unwrap();
        let x = -f.inv(&f.beta()).unwrap();
        let (d, next) = t_step(&OrbitState::start(x), &base).unwrap();
        assert_eq!((d, next.value.is_zero(), next.step_index), (1, true, 1), "{base}");
        let (d, next) = t_step(&OrbitState::start(QuadElem::zero()), &base).unwrap();
        assert_eq!((d, next.value), (0, QuadElem::zero()));
    }
    let base = b("quad-:4,1");
    let (d, _) = t_step(&OrbitState::start(base.left_end().unwrap()), &base).unwrap();
    assert_eq!(d, 3);
    let err = t_step(&OrbitState::start(base.right_end().unwrap()), &base).unwrap_err();
    assert_eq!(err.name(), "OutOfDomain");
}

#[test]
fn d_expansion_examples() {
    let base = b("quad-:4,1");
    let got = d_expansion(&base.left_end().unwrap(), &base, 100).unwrap();
    assert_eq!(got, Orbit::Periodic(PeriodicWord::new(vec![], vec![3, 1])));
    let base = b("quad+:2,1");
    let got = d_expansion(&base.left_end().unwrap(), &base, 100).unwrap();
    assert_eq!(got, Orbit::Periodic(PeriodicWord::new(vec![2], vec![1])));
    assert_eq!(d_expansion(&QuadElem::zero(), &base, 10).unwrap(), Orbit::Periodic(PeriodicWord::zero()));
}

#[test]
fn d_lb_examples() {
    assert_eq!(d_lb(&b("quad-:4,1"), 100).unwrap().to_string(), "(3,1)^w");
    assert_eq!(d_lb(&Base::golden(), 100).unwrap(), PeriodicWord::finite(vec![1]));
    for k in 2..=7 {
        let base = Base::integer(k).unwrap();
        // one step from the left end gives digit k and the same point back
        let left = base.left_end().unwrap();
        let (d, next) = t_step(&OrbitState::start(left.clone()), &base).unwrap();
        assert_eq!((d, &next.value), (k, &left));
        assert_eq!(d_lb(&base, 100).unwrap(), PeriodicWord::new(vec![], vec![k]));
    }
}

/// Alternate order by the definition, on long truncations.
fn brute_alt(u: &PeriodicWord, v: &PeriodicWord) -> Ordering {
    for j in 1..=200 {
        let (a, b) = (u.digit(j - 1), v.digit(j - 1));
        if a != b {
            let u_smaller = if j % 2 == 1 { a > b } else { a < b };
            return if u_smaller { Ordering::Less } else { Ordering::Greater };
        }
    }
    Ordering::Equal
}

#[test]
fn alt_compare_examples() {
    let cases = [
        ("2,(0)^w", "1,(0)^w", Ordering::Less),
        ("(3,1)^w", "(3,1)^w", Ordering::Equal),
        ("0,3,(1)^w", "0,3,(2)^w", Ordering::Greater),
    ];
    for (u, v, want) in cases {
        let (u, v) = (pw(u), pw(v));
        assert_eq!(alt_compare(&u, &v).outcome, want, "{u} vs {v}");
        assert_eq!(brute_alt(&u, &v), want);
    }
    assert_eq!(alt_compare(&pw("0,3,(1)^w"), &pw("0,3,(2)^w")).decided_at, Some(3));
}

#[test]
fn d_star_examples() {
    assert_eq!(d_star_r(&b("quad-:4,1"), 100).unwrap().to_string(), "0,(3,1)^w");
    assert_eq!(d_star_r(&b("quad+:2,1"), 100).unwrap().to_string(), "0,2,(1)^w");
    assert_eq!(d_star_r(&Base::golden(), 100).unwrap().to_string(), "0,1,(0)^w");
    // odd primitive period
    assert_eq!(d_star_from(&pw("(3,2,1)^w")).to_string(), "(0,3,2,0)^w");
}

#[test]
fn admissibility_examples() {
    let word = |s: &str| -> Word { s.parse().unwrap() };
    assert!(!is_admissible(&word("3,0."), &b("quad-:4,2"), 100).unwrap());
    assert!(is_admissible(&word("1,2.1"), &b("quad-:3,1"), 100).unwrap());
    assert!(!is_admissible(&word("2,0."), &b("quad+:2,1"), 100).unwrap());
    assert!(!is_admissible(&word("9."), &b("quad+:2,1"), 100).unwrap());

    assert!(!forbidden_factor_check(&w("2,1,2."), &b("quad+:2,1")).unwrap());
    assert!(forbidden_factor_check(&w("1,1,1."), &b("quad+:2,1")).unwrap());
    assert!(is_admissible(&w("1,1,1."), &b("quad+:2,1"), 100).unwrap());
    assert_eq!(forbidden_factor_check(&w("1."), &b("int:3")).unwrap_err(), Error::NotQuadratic);
    // digits up to m-2 are always fine in class A
    let base = b("quad-:6,3");
    for s in ["4,4,4,4.", "0,1,2,3,4.", "4,0,4,0.4"] {
        assert!(forbidden_factor_check(&w(s), &base).unwrap());
        assert!(is_admissible(&w(s), &base, 100).unwrap());
    }
}

#[test]
fn expand_examples() {
    let cases = [
        ("quad-:3,1", "-1", "1,2.1", Status::Finite),
        ("quad+:1,1", "1", "1,1,0.", Status::Finite),
        ("quad+:2,1", "-1", "1,2.(2)^w", Status::InfinitePeriodic),
        ("quad-:3,1", "0", "0.", Status::Finite),
        ("quad-:3,1", "1", "1.", Status::Finite),
    ];
    for (base, x, text, status) in cases {
        let e = expand(&q(x), &b(base), 1000).unwrap();
        assert_eq!((e.to_string().as_str(), e.status), (text, status), "{x} over {base}");
        assert_eq!(e.value(&b(base)).unwrap(), q(x));
    }
    let base = b("quad-:4,1");
    let e = expand(&base.left_end().unwrap(), &base, 1000).unwrap();
    assert_eq!((e.to_string().as_str(), e.status), ("1,3.(1,3)^w", Status::InfinitePeriodic));
}

#[test]
fn range_bracket_examples() {
    let base = b("quad-:3,1");
    let f = base.field().unwrap();
    let beta = f.beta();
    let bp1 = &beta + &QuadElem::one();
    let (lo, hi) = range_bracket(1, &base).unwrap();
    assert_eq!(lo, f.inv(&bp1).unwrap());
    assert_eq!(hi, f.div(&f.mul(&beta, &beta), &bp1).unwrap());
    let (lo0, hi0) = range_bracket(0, &base).unwrap();
    assert_eq!(lo0, -f.div(&beta, &bp1).unwrap());
    assert_eq!(hi0, -f.div(&f.inv(&beta).unwrap(), &bp1).unwrap());
    for k in 0..6 {
        let (_, hi) = range_bracket(k, &base).unwrap();
        let (lo_next, _) = range_bracket(k + 1, &base).unwrap();
        if k % 2 == 1 {
            assert_eq!(lo_next, -f.mul(&beta, &hi));
        }
    }
}

#[test]
fn canonicalize_examples() {
    let base = b("quad-:3,1");
    assert_eq!(canonicalize(&w("1,3,1."), &base, 100).unwrap().to_string(), "0.");
    assert_eq!(canonicalize(&w("1,2.1"), &base, 100).unwrap().to_string(), "1,2.1");
    let base = b("quad-:4,1");
    let five = canonicalize(&w("0,5."), &base, 100).unwrap();
    assert_eq!(five, expand(&QuadElem::int(5), &base, 100).unwrap());
}

#[test]
fn enumerate_examples() {
    let texts = |base: &str, n| enumerate_z(&b(base), n).unwrap().iter().map(|w| w.to_string()).collect::<Vec<_>>();
    assert_eq!(texts("quad-:4,1", 1), ["0.", "1.", "2."]);
    // 3 = m-1 must be followed by a digit >= n, and the padding is 0
    assert!(!is_admissible(&w("3."), &b("quad-:4,1"), 100).unwrap());
    assert_eq!(texts("int:2", 1), ["0.", "1."]);
    assert!(!is_admissible(&w("2."), &b("int:2"), 100).unwrap());
    assert_eq!(texts("quad+:2,1", 0), ["0."]);
    assert_eq!(enumerate_z(&b("real:1.7@64"), 2).unwrap_err(), Error::NotQuadratic);
}

#[test]
fn arithmetic_examples() {
    let a = b("quad-:3,1");
    let p = b("quad+:2,1");
    let run = |r: Result<Expansion>| {
        let e = r.unwrap();
        (e.to_string(), e.status)
    };
    assert_eq!(run(add(&w("1."), &w("1."), &a, 100)), ("1,2,1.2,1".into(), Status::Finite));
    assert_eq!(run(add(&w("2,1."), &w("2,1."), &p, 100)), ("1,1,0,1.1".into(), Status::Finite));
    assert_eq!(run(add(&w("1,2.1"), &w("0."), &a, 100)).0, "1,2.1");
    assert_eq!(run(sub(&w("1,2.1"), &w("1,2.1"), &a, 100)).0, "0.");
    assert_eq!(run(sub(&w("0."), &w("1."), &a, 100)), ("1,2.1".into(), Status::Finite));
    assert_eq!(run(sub(&w("0."), &w("1."), &p, 100)), ("1,2.(2)^w".into(), Status::InfinitePeriodic));
    assert_eq!(run(mul(&w("1,0,1."), &w("1,0,1."), &a, 100)).0, "2,2,1,1,0.2,1");
    assert_eq!(run(mul(&w("2,1."), &w("1,2,1."), &p, 100)).0, "1,1,0,1.1");
    assert_eq!(run(mul(&w("1,2.1"), &w("1."), &a, 100)).0, "1,2.1");
    // the values behind the worked examples
    let f = p.field().unwrap();
    assert_eq!(eval_word(&w("2,1."), &p).unwrap(), q("1/1+-2/1*beta"));
    assert_eq!(eval_word(&w("1,2,1."), &p).unwrap(), QuadElem::int(2));
    assert_eq!(f.mul(&q("1/1+-2/1*beta"), &QuadElem::int(2)), eval_word(&w("1,1,0,1.1"), &p).unwrap());
}

#[test]
fn zero_word_examples() {
    let z = zero_word(ZeroVariant::Short, &b("quad-:3,1")).unwrap();
    assert_eq!(z.word.digits(), [1, 3, 1]);
    let z = zero_word(ZeroVariant::LongPlus(1), &b("quad-:4,1")).unwrap();
    assert_eq!(z.word.digits(), [1, 3, -2, 2, -3, -1]);
    assert!(eval_word(&z.word.negated(), &b("quad-:4,1")).unwrap().is_zero());
    assert_eq!(zero_word(ZeroVariant::Short, &b("quad+:2,1")).unwrap_err(), Error::NotClassA);
}

#[test]
fn add_one_examples() {
    assert_eq!(add_one_rewrite(&w("1."), &b("quad-:3,1")).unwrap().to_string(), "1,2,1.2,1");
    assert_eq!(add_one_rewrite(&w("0."), &b("quad-:4,1")).unwrap().to_string(), "1.");
    assert_eq!(add_one_rewrite(&w("1."), &b("quad+:2,1")).unwrap_err(), Error::NotClassA);
}

#[test]
fn fin_trivial_examples() {
    assert!(fin_trivial(&b("real:1.5@64")).unwrap());
    assert!(!fin_trivial(&b("quad-:3,1")).unwrap());
    assert!(!fin_trivial(&Base::golden()).unwrap());
    assert!(!fin_trivial(&b("real:1.62@64")).unwrap());
}

#[test]
fn classify_examples() {
    let c = classify(&b("quad-:3,1"));
    assert_eq!(
        (c.kind, c.pisot, c.conjugate_sign, c.ring_candidate, c.z_ring),
        ("quad-", Some(true), ConjugateSign::Positive, true, false)
    );
    let c = classify(&b("quad+:2,1"));
    assert_eq!((c.conjugate_sign, c.ring_candidate), (ConjugateSign::Negative, false));
    let c = classify(&b("int:3"));
    assert_eq!((c.ring_candidate, c.z_ring), (true, true));
}

#[test]
fn scan_examples() {
    let r = scan_l(&b("quad-:3,1"), ScanOp::Add, 4, 1000).unwrap();
    assert_eq!(r.observed_l, 2);
    let (w1, w2, e) = &r.witness;
    assert_eq!(add(w1, w2, &b("quad-:3,1"), 1000).unwrap(), *e);
    assert_eq!(e.frac_len(), Some(2));
    let r = scan_l(&b("quad+:2,1"), ScanOp::Add, 3, 1000).unwrap();
    assert_eq!(r.observed_l, 1);
    let n = enumerate_z(&b("quad+:2,1"), 3).unwrap().len();
    assert_eq!(r.pairs_tested, n * (n + 1) / 2);
}

#[test]
fn hk_examples() {
    let hk = hk_bounds(&b("quad-:3,1"), 8).unwrap();
    assert_eq!((hk.bound_add, hk.bound_mul, hk.strict), (2, 2, true));
    let hk = hk_bounds(&b("quad+:2,1"), 8).unwrap();
    assert_eq!((hk.h.clone(), hk.k.clone()), (QuadElem::beta(), QuadElem::one()));
    assert_eq!((hk.bound_add, hk.bound_mul), (1, 1));
    let hk = hk_bounds(&Base::golden(), 8).unwrap();
    assert_eq!((hk.bound_add, hk.bound_mul), (3, 3));
    assert_eq!(hk_bounds(&b("int:3"), 8).unwrap_err(), Error::NotQuadratic);
}

/// The closed-form suprema and infima bracket what enumeration sees.
#[test]
fn closed_form_hk_brackets_empirical() {
    for s in ["quad-:3,1", "quad-:4,1", "quad-:5,1", "quad+:1,1", "quad+:2,1", "quad+:3,1"] {
        let base = b(s);
        let f = base.field().unwrap();
        let closed = hk_bounds(&base, 1).unwrap();
        assert_eq!(closed.source, HkSource::ClosedForm);
        let mut prev_h = QuadElem::zero();
        for digits in 3..=9 {
            let (h, k) = empirical_hk(&base, digits).unwrap();
            assert_ne!(f.cmp(&h, &closed.h), Ordering::Greater, "{s}: H");
            assert_ne!(f.cmp(&k, &closed.k), Ordering::Less, "{s}: K");
            assert_ne!(f.cmp(&h, &prev_h), Ordering::Less, "{s}: H at {digits} digits");
            prev_h = h;
        }
    }
}
