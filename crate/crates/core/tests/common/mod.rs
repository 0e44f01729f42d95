//! Strategies and property bodies shared by the property and acceptance suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use qcongruence::expr::{eval, parse, Arg, QExpr};
use qcongruence::qproducts::{euler_fm, pentagonal_series};
use qcongruence::{Ring, Series};

pub const WIDTHS: [u32; 4] = [2, 3, 6, 64];

pub fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 1..=max_len)
}

pub fn exact(values: &[i64]) -> Series {
    Series::from_i64s(Ring::Exact, values).unwrap()
}

/// A series with constant term ±1.
pub fn unit_coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    (prop::bool::ANY, coeffs(max_len)).prop_map(|(neg, mut v)| {
        v[0] = if neg { -1 } else { 1 };
        v
    })
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(format!("{e:?}")))
}

pub fn ring_axioms(a: &[i64], b: &[i64], c: &[i64]) -> Result<(), TestCaseError> {
    let (a, b, c) = (exact(a), exact(b), exact(c));
    let n = a.order().min(b.order()).min(c.order());
    prop_assert_eq!(ok(a.add(&b))?, ok(b.add(&a))?);
    prop_assert_eq!(ok(a.mul(&b))?, ok(b.mul(&a))?);
    prop_assert_eq!(ok(ok(a.add(&b))?.add(&c))?, ok(a.add(&ok(b.add(&c))?))?);
    prop_assert_eq!(ok(ok(a.mul(&b))?.mul(&c))?, ok(a.mul(&ok(b.mul(&c))?))?);
    let lhs = ok(a.mul(&ok(b.add(&c))?))?;
    let rhs = ok(ok(a.mul(&b))?.add(&ok(a.mul(&c))?))?;
    prop_assert_eq!(&lhs, &rhs);
    prop_assert_eq!(lhs.order(), n);
    Ok(())
}

pub fn inverse_is_inverse(a: &[i64]) -> Result<(), TestCaseError> {
    let a = exact(a);
    let product = ok(a.mul(&ok(a.invert())?))?;
    prop_assert_eq!(product, ok(Series::one(Ring::Exact, a.order()))?);
    Ok(())
}

/// `Σ_r q^r · D_r(q^m)` rebuilds the series on every index it still knows.
pub fn dissection_rebuilds(a: &[i64], m: usize) -> Result<(), TestCaseError> {
    let s = exact(a);
    let n = s.order();
    let mut rebuilt = ok(Series::zero(Ring::Exact, n))?;
    for r in 0..m.min(n) {
        let part = ok(ok(s.dissect(m, r))?.substitute_power(m, 1))?;
        ok(rebuilt.add_shifted_assign(&part, r, 1))?;
    }
    prop_assert!(
        rebuilt.order() + m > n,
        "order collapsed to {}",
        rebuilt.order()
    );
    prop_assert!(ok(rebuilt.equal_to_order(&s, rebuilt.order()))?);
    Ok(())
}

pub fn reduction_is_homomorphism(a: &[i64], b: &[i64], e: i64) -> Result<(), TestCaseError> {
    let (a, b) = (exact(a), exact(b));
    for w in WIDTHS {
        let ring = Ring::Mod2Pow(w);
        let r = |s: &Series| ok(s.reduce_to(ring));
        let (ra, rb) = (r(&a)?, r(&b)?);
        prop_assert_eq!(r(&ok(a.add(&b))?)?, ok(ra.add(&rb))?);
        prop_assert_eq!(r(&ok(a.mul(&b))?)?, ok(ra.mul(&rb))?);
        prop_assert_eq!(r(&ok(a.invert())?)?, ok(ra.invert())?);
        prop_assert_eq!(r(&ok(a.pow(e))?)?, ok(ra.pow(e))?);
    }
    Ok(())
}

pub fn substitution_composes(a: &[i64], m: usize, m2: usize) -> Result<(), TestCaseError> {
    let s = exact(a);
    let twice = ok(ok(s.substitute_power(m, 1))?.substitute_power(m2, 1))?;
    prop_assert_eq!(twice, ok(s.substitute_power(m * m2, 1))?);
    Ok(())
}

pub fn pentagonal_matches_product(m: usize, order: usize) -> bool {
    [Ring::Exact, Ring::MOD64]
        .into_iter()
        .all(|ring| pentagonal_series(ring, m, order).unwrap() == euler_fm(ring, m, order).unwrap())
}

fn arg() -> impl Strategy<Value = Arg> {
    (prop::bool::ANY, 1usize..=4).prop_map(|(negative, power)| Arg { negative, power })
}

fn leaf(heavy: bool) -> BoxedStrategy<QExpr> {
    let mut options: Vec<BoxedStrategy<QExpr>> = vec![
        (0u32..1000)
            .prop_map(|n| QExpr::Num(BigInt::from(n)))
            .boxed(),
        Just(QExpr::Q).boxed(),
        (1usize..=6).prop_map(QExpr::EtaF).boxed(),
        (arg(), 1usize..=3)
            .prop_map(|(a, step)| QExpr::PochInf { a, step })
            .boxed(),
        (arg(), 1usize..=3, 0usize..=4)
            .prop_map(|(a, step, n)| QExpr::PochFin { a, step, n })
            .boxed(),
        arg().prop_map(QExpr::Omega).boxed(),
        arg().prop_map(QExpr::BFun).boxed(),
        arg().prop_map(QExpr::F3).boxed(),
        Just(QExpr::CSeries).boxed(),
        (1usize..=4).prop_map(QExpr::CkSeries).boxed(),
    ];
    if heavy {
        options.push(
            (0u64..u64::MAX)
                .prop_map(|n| QExpr::Num(BigInt::from(n) * 1000u32))
                .boxed(),
        );
    }
    proptest::strategy::Union::new(options).boxed()
}

fn node(a: QExpr, b: QExpr, op: u8) -> QExpr {
    let (a, b) = (Box::new(a), Box::new(b));
    match op {
        0 => QExpr::Add(a, b),
        1 => QExpr::Sub(a, b),
        2 => QExpr::Mul(a, b),
        // an integer over an integer is a rational literal, which the grammar excludes
        _ if matches!((&*a, &*b), (QExpr::Num(_), QExpr::Num(_))) => QExpr::Mul(a, b),
        _ => QExpr::Div(a, b),
    }
}

/// Random syntax trees. `heavy` widens literals and exponents for printing
/// tests; the light variant stays cheap to evaluate.
pub fn qexpr(heavy: bool) -> impl Strategy<Value = QExpr> {
    let exponent = if heavy {
        (i64::MIN..=i64::MAX).boxed()
    } else {
        (-3i64..=3).boxed()
    };
    leaf(heavy).prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), 0u8..4).prop_map(|(a, b, op)| node(a, b, op)),
            inner.clone().prop_map(|e| QExpr::Neg(Box::new(e))),
            (inner.clone(), exponent.clone()).prop_map(|(e, k)| QExpr::Pow(Box::new(e), k)),
            (1usize..=3, 0usize..3, inner).prop_map(|(m, r, e)| QExpr::Dissect {
                m,
                r: r % m,
                inner: Box::new(e),
            }),
        ]
    })
}

/// Print with a parenthesis around every subexpression and spaces between all tokens.
pub fn spaced_fully_parenthesized(e: &QExpr) -> String {
    let arg = |a: &Arg| format!("{}q ^ {}", if a.negative { "- " } else { "" }, a.power);
    let p = |e: &QExpr| format!("( {} )", spaced_fully_parenthesized(e));
    match e {
        QExpr::Num(n) => format!("({n})"),
        QExpr::Q => "(q)".into(),
        QExpr::EtaF(m) => format!("f [ {m} ]"),
        QExpr::PochInf { a, step } => format!("poch ( {} ; q ^ {step} )", arg(a)),
        QExpr::PochFin { a, step, n } => format!("poch ( {} ; q ^ {step} ; {n} )", arg(a)),
        QExpr::Omega(a) => format!("omega ( {} )", arg(a)),
        QExpr::BFun(a) => format!("B ( {} )", arg(a)),
        QExpr::F3(a) => format!("f3 ( {} )", arg(a)),
        QExpr::CSeries => "( C )".into(),
        QExpr::CkSeries(k) => format!("C [ {k} ]"),
        QExpr::Neg(x) => format!("- {}", p(x)),
        QExpr::Add(a, b) => format!("{} + {}", p(a), p(b)),
        QExpr::Sub(a, b) => format!("{} \u{2212} {}", p(a), p(b)),
        QExpr::Mul(a, b) => format!("{} * {}", p(a), p(b)),
        QExpr::Div(a, b) => format!("{} / {}", p(a), p(b)),
        QExpr::Pow(x, k) => format!("{} ^ {k}", p(x)),
        QExpr::Dissect { m, r, inner } => format!("D [ {m} , {r} ] ( {} )", p(inner)),
    }
}

pub fn round_trips(e: &QExpr) -> Result<(), TestCaseError> {
    let printed = e.to_string();
    let back = parse(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
    prop_assert_eq!(&back, e, "printed as {}", printed);
    Ok(())
}

pub fn layout_does_not_matter(e: &QExpr) -> Result<(), TestCaseError> {
    let canonical = e.to_string();
    let noisy = spaced_fully_parenthesized(e);
    let a = parse(&canonical).map_err(|err| TestCaseError::fail(err.to_string()))?;
    let b = parse(&noisy).map_err(|err| TestCaseError::fail(format!("{noisy}: {err}")))?;
    prop_assert_eq!(&a, &b);
    prop_assert_eq!(eval(&a, 6, Ring::Exact), eval(&b, 6, Ring::Exact));
    Ok(())
}
