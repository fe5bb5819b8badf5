//! Randomised property suites. Each runs `cases` generated inputs from the
//! shared fixed seed and reports the first counterexample.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use orbit_equiv::families::FamilySpec;
use orbit_equiv::polyring::{discriminant, resultant};
use orbit_equiv::quotient::{compose_mod, minimal_polynomial, qinverse, qmul, reduce};
use orbit_equiv::{IntPoly, Modulus, QuotElem, RatPoly};

use super::oracle::{naive_mul, sylvester_resultant};
use super::runner;

pub const V: &str = "x^5-x^4-4x^3+3x^2+3x-1";
pub const G: &str = "x^5+2x^4-5x^3-2x^2+4x-1";

/// Polynomials of degree at most `deg` with coefficients in `[-c, c]`.
pub fn poly(deg: usize, c: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-c..=c, 1..=deg + 1).prop_map(|v| IntPoly::from_i64s(&v))
}

/// Exact degree between `lo` and `hi`: the leading coefficient is nonzero.
pub fn poly_deg(lo: usize, hi: usize, c: i64) -> impl Strategy<Value = IntPoly> {
    (prop::collection::vec(-c..=c, lo..=hi), (1..=c), any::<bool>()).prop_map(|(mut v, lead, neg)| {
        v.push(if neg { -lead } else { lead });
        IntPoly::from_i64s(&v)
    })
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

pub fn rat_poly(deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(rational(), 1..=deg + 1).prop_map(RatPoly::new)
}

fn moduli() -> [Modulus; 2] {
    [V, G].map(|s| Modulus::new(&s.parse().unwrap()).unwrap())
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn ring_laws(cases: u32) -> Result<(), String> {
    run(cases, (poly(8, 50), poly(8, 50), poly(8, 50)), |(a, b, c)| {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, naive_mul(&a, &b));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) - &b, a);
        Ok(())
    })
}

pub fn resultant_symmetry(cases: u32) -> Result<(), String> {
    run(cases, (poly_deg(0, 8, 50), poly_deg(0, 8, 50)), |(a, b)| {
        let sign = if a.degree().unwrap() * b.degree().unwrap() % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(resultant(&a, &b).unwrap(), resultant(&b, &a).unwrap() * sign);
        Ok(())
    })
}

pub fn resultant_multiplicativity(cases: u32) -> Result<(), String> {
    run(cases, (poly_deg(0, 6, 20), poly_deg(0, 5, 20), poly_deg(0, 5, 20)), |(a, b, c)| {
        let lhs = resultant(&a, &(&b * &c)).unwrap();
        prop_assert_eq!(lhs, resultant(&a, &b).unwrap() * resultant(&a, &c).unwrap());
        Ok(())
    })
}

pub fn resultant_matches_sylvester(cases: u32) -> Result<(), String> {
    run(cases, (poly_deg(0, 5, 30), poly_deg(0, 5, 30)), |(a, b)| {
        prop_assert_eq!(resultant(&a, &b).unwrap(), sylvester_resultant(&a, &b));
        Ok(())
    })
}

pub fn disc_shift_invariance(cases: u32) -> Result<(), String> {
    run(cases, (poly_deg(1, 7, 50), -100i64..=100), |(p, n)| {
        let shifted = p.shift(&BigInt::from(n));
        prop_assert_eq!(discriminant(&shifted).unwrap(), discriminant(&p).unwrap());
        Ok(())
    })
}

pub fn pseudo_division(cases: u32) -> Result<(), String> {
    run(cases, (poly(10, 50), poly_deg(0, 6, 50)), |(a, b)| {
        let (q, r, s) = a.pseudo_divrem(&b).unwrap();
        prop_assert_eq!(a.scale(&s), &(&q * &b) + &r);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        Ok(())
    })
}

pub fn compose_degree(cases: u32) -> Result<(), String> {
    run(cases, (poly_deg(1, 5, 20), poly_deg(1, 5, 20)), |(f, g)| {
        let h = f.compose(&g);
        prop_assert_eq!(h.degree(), Some(f.degree().unwrap() * g.degree().unwrap()));
        let x = BigInt::from(3);
        prop_assert_eq!(h.eval_int(&x), f.eval_int(&g.eval_int(&x)));
        Ok(())
    })
}

pub fn quotient_round_trips(cases: u32) -> Result<(), String> {
    run(cases, (0..2usize, rat_poly(4), rat_poly(7), rat_poly(6)), |(which, a, p, q)| {
        let f = &moduli()[which];
        let e = reduce(&a, f);
        if !e.is_zero() {
            let inv = qinverse(&e).unwrap();
            prop_assert!(qmul(&e, &inv).unwrap().is_one());
        }
        prop_assert_eq!(reduce(&p.compose(&q), f), compose_mod(&p, &reduce(&q, f)));
        let pq = qmul(&reduce(&p, f), &reduce(&q, f)).unwrap();
        prop_assert_eq!(pq, reduce(&(&p * &q), f));
        Ok(())
    })
}

pub fn minimal_polynomials_vanish(cases: u32) -> Result<(), String> {
    run(cases, (0..2usize, rat_poly(4)), |(which, a)| {
        let f = &moduli()[which];
        let e: QuotElem = reduce(&a, f);
        let m = minimal_polynomial(&e);
        prop_assert!(compose_mod(&m.to_rat(), &e).is_zero());
        prop_assert!(matches!(m.degree(), Some(1) | Some(5)), "degree {:?}", m.degree());
        prop_assert!(m.lc().unwrap() > &BigInt::zero());
        prop_assert!(m.content().is_one());
        Ok(())
    })
}

pub fn family_shift_action(cases: u32) -> Result<(), String> {
    let spec = FamilySpec::new("G", G.parse().unwrap(), BigInt::from(14641));
    run(cases, (-50i64..=50, -50i64..=50), |(a, b)| {
        let lhs = spec.member_i64(a + b);
        prop_assert_eq!(lhs, spec.member_i64(a).shift(&BigInt::from(b)));
        Ok(())
    })
}

pub type Suite = fn(u32) -> Result<(), String>;

/// Every suite, by name.
pub fn all() -> Vec<(&'static str, Suite)> {
    vec![
        ("ring laws", ring_laws),
        ("resultant symmetry", resultant_symmetry),
        ("resultant multiplicativity", resultant_multiplicativity),
        ("resultant agrees with Sylvester/Bareiss", resultant_matches_sylvester),
        ("discriminant shift invariance", disc_shift_invariance),
        ("pseudo-division reconstruction", pseudo_division),
        ("composition degree law", compose_degree),
        ("quotient ring round trips", quotient_round_trips),
        ("minimal polynomials vanish", minimal_polynomials_vanish),
        ("family shift action", family_shift_action),
    ]
}

pub const CASES: u32 = 1000;
