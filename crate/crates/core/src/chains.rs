//! The recursive quadratic transformation chain.
//!
//! `t_0(u) = u^2 - a_0`, `t_i(u) = t_(i-1)(u)^2 - a_i`, and `T_i(u) = t_i(u) - u`.
//! Applied to a base polynomial, the chain is followed on reduced states
//! `r_i = t_i(theta)` in `Q[x]/(base)`, so `t_i` of degree `2^(i+1)` is never
//! expanded. Cycles are detected on the exact states.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::polyring::{discriminant, IntPoly, RatPoly};
use crate::quotient::{minimal_polynomial, qmul, Modulus, QuotElem};
use crate::report::Report;
use crate::{Error, Result};

/// Largest index for which `t_i` is expanded explicitly.
pub const CHAIN_GUARD: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaRule {
    /// `a_i = a` for every `i`.
    Constant(BigRational),
    /// `a_0, a_1, ...` up to the given length.
    Sequence(Vec<BigRational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub alphas: AlphaRule,
}

impl ChainSpec {
    pub fn constant(alpha: BigRational) -> Self {
        ChainSpec {
            alphas: AlphaRule::Constant(alpha),
        }
    }

    pub fn constant_int(alpha: i64) -> Self {
        Self::constant(BigRational::from_integer(alpha.into()))
    }

    pub fn sequence(alphas: Vec<BigRational>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::UndefinedAlpha(0));
        }
        Ok(ChainSpec {
            alphas: AlphaRule::Sequence(alphas),
        })
    }

    pub fn alpha(&self, i: usize) -> Result<BigRational> {
        match &self.alphas {
            AlphaRule::Constant(a) => Ok(a.clone()),
            AlphaRule::Sequence(v) => v.get(i).cloned().ok_or(Error::UndefinedAlpha(i)),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.alphas, AlphaRule::Constant(_))
    }
}

/// The expanded polynomial `t_i(u)`, of degree `2^(i+1)`.
pub fn chain_t(spec: &ChainSpec, i: usize) -> Result<RatPoly> {
    if i > CHAIN_GUARD {
        return Err(Error::ChainGuard {
            index: i,
            guard: CHAIN_GUARD,
        });
    }
    let mut t = RatPoly::x();
    for k in 0..=i {
        t = &(&t * &t) - &RatPoly::constant(spec.alpha(k)?);
    }
    Ok(t)
}

/// `T_i(u) = t_i(u) - u`.
pub fn chain_big_t(spec: &ChainSpec, i: usize) -> Result<RatPoly> {
    Ok(&chain_t(spec, i)? - &RatPoly::x())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainState {
    pub index: usize,
    /// `t_i(theta)` reduced modulo the base.
    pub r: QuotElem,
    /// Minimal polynomial of `T_i(theta) = r_i - theta`.
    pub minpoly: IntPoly,
    pub disc: BigInt,
}

#[derive(Clone, Debug)]
pub struct ChainOrbit {
    pub base: IntPoly,
    pub states: Vec<ChainState>,
    /// First index of the cycle on exact states, when one was seen.
    pub preperiod: Option<usize>,
    pub period: Option<usize>,
    /// `(start, period)` of the earliest witnessed periodicity of the
    /// minimal-polynomial sequence, which may differ from the state period.
    pub minpoly_period: Option<(usize, usize)>,
}

impl ChainOrbit {
    pub fn minpolys(&self) -> Vec<&IntPoly> {
        self.states.iter().map(|s| &s.minpoly).collect()
    }
}

/// Runs the chain over `base` for `max_iter` steps.
///
/// State repeats are only meaningful as cycles for a constant rule, where
/// `r_i` determines every later state; for explicit sequences no period is
/// reported.
pub fn orbit(base: &IntPoly, spec: &ChainSpec, max_iter: usize) -> Result<ChainOrbit> {
    let f = Modulus::new(base)?;
    let theta = f.generator();
    let mut rs: Vec<QuotElem> = Vec::with_capacity(max_iter);
    let mut seen: HashMap<QuotElem, usize> = HashMap::new();
    let mut cycle = None;
    let mut r = theta.clone();
    for i in 0..max_iter {
        r = qmul(&r, &r)?.add_scalar(&-spec.alpha(i)?);
        if spec.is_constant() && cycle.is_none() {
            if let Some(&j) = seen.get(&r) {
                cycle = Some((j, i - j));
            } else {
                seen.insert(r.clone(), i);
            }
        }
        rs.push(r.clone());
    }
    let states: Vec<ChainState> = rs
        .into_par_iter()
        .enumerate()
        .map(|(index, r)| {
            let minpoly = minimal_polynomial(&r.sub(&theta)?);
            let disc = if minpoly.degree() == Some(0) {
                BigInt::from(1)
            } else {
                discriminant(&minpoly)?
            };
            Ok(ChainState { index, r, minpoly, disc })
        })
        .collect::<Result<_>>()?;
    let minpoly_period = sequence_period(&states.iter().map(|s| &s.minpoly).collect::<Vec<_>>());
    Ok(ChainOrbit {
        base: base.clone(),
        states,
        preperiod: cycle.map(|c| c.0),
        period: cycle.map(|c| c.1),
        minpoly_period,
    })
}

/// Earliest `(start, p)` such that the tail from `start` repeats with
/// period `p` and at least one full repetition is witnessed.
fn sequence_period<T: PartialEq>(xs: &[T]) -> Option<(usize, usize)> {
    let n = xs.len();
    for start in 0..n {
        for p in 1..=(n - start) / 2 {
            if (start..n - p).all(|k| xs[k] == xs[k + p]) {
                return Some((start, p));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub base_present: bool,
    /// Distinct minimal polynomials over one period (or the whole orbit when
    /// no period was found), in order of first occurrence, with counts.
    pub census: Vec<(String, usize)>,
}

pub fn classify_membership(base: &IntPoly, orbit: &ChainOrbit) -> Membership {
    let window = match (orbit.preperiod, orbit.period) {
        (Some(s), Some(p)) => &orbit.states[s..(s + p).min(orbit.states.len())],
        _ => &orbit.states[..],
    };
    let mut census: Vec<(IntPoly, usize)> = Vec::new();
    for s in window {
        match census.iter_mut().find(|(q, _)| *q == s.minpoly) {
            Some((_, c)) => *c += 1,
            None => census.push((s.minpoly.clone(), 1)),
        }
    }
    Membership {
        base_present: orbit.states.iter().any(|s| s.minpoly == *base),
        census: census.into_iter().map(|(q, c)| (q.to_string(), c)).collect(),
    }
}

/// Checks the stated chain cycle against a fresh orbit of twice its length.
pub fn cycle_report(cat: &Catalog) -> Report {
    let mut report = Report::new();
    for key in cat.keys_of_kind("chain_cycle") {
        let run = (|| {
            let cycle = cat.chain_cycle(key)?;
            let base = cat.poly(&cycle.base)?;
            let expected: Vec<&IntPoly> = cycle
                .sequence
                .iter()
                .map(|k| cat.poly(k))
                .collect::<Result<_>>()?;
            let o = orbit(base, &ChainSpec::constant(cycle.alpha.clone()), 2 * expected.len())?;
            Ok::<_, Error>((cycle, base.clone(), expected, o))
        })();
        let (cycle, base, expected, o) = match run {
            Ok(v) => v,
            Err(e) => {
                report.check_result(format!("{key} orbit"), Err(e));
                continue;
            }
        };
        let names: Vec<String> = o
            .states
            .iter()
            .map(|s| cat.name_of(&s.minpoly).map_or_else(|| s.minpoly.to_string(), str::to_string))
            .collect();
        let matches = o
            .states
            .iter()
            .enumerate()
            .all(|(i, s)| s.minpoly == *expected[i % expected.len()]);
        report.check(format!("{key} minimal polynomials"), matches, names.join(","));
        report.check(
            format!("{key} exact-state period {}", expected.len()),
            o.period == Some(expected.len()),
            format!("preperiod {:?}, period {:?}", o.preperiod, o.period),
        );
        report.check(
            format!("{key} base {} outside the cycle", cycle.base),
            !classify_membership(&base, &o).base_present,
            "",
        );
    }
    report
}
