//! One-parameter isodiscriminant families.
//!
//! A family is stored as its `n = 0` member plus the shift action,
//! `member(n) = base(x - n)` (or `base(x + n)` for reversed orientation).
//! Translation does not change the discriminant, so every member shares it.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::catalog::Catalog;
use crate::morphisms::{catalog_morphism, Morphism};
use crate::polyring::{discriminant, IntPoly};
use crate::quotient::minimal_polynomial;
use crate::report::{Report, Status};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub label: String,
    pub base: IntPoly,
    pub expected_disc: BigInt,
    pub orientation: i32,
}

impl FamilySpec {
    pub fn new(label: impl Into<String>, base: IntPoly, expected_disc: BigInt) -> Self {
        FamilySpec {
            label: label.into(),
            base,
            expected_disc,
            orientation: 1,
        }
    }

    pub fn member(&self, n: &BigInt) -> IntPoly {
        self.base.shift(&(n * self.orientation))
    }

    pub fn member_i64(&self, n: i64) -> IntPoly {
        self.member(&BigInt::from(n))
    }
}

/// The family generated by a morphism. Its base is the minimal polynomial
/// of `map - map(0)`, so member `n` is the minimal polynomial of
/// `map - map(0) + n`, and member `-map(0)` is the target itself.
pub fn family_from_morphism(label: impl Into<String>, m: &Morphism) -> Result<FamilySpec> {
    let rep = m.map().rep();
    if rep.degree().unwrap_or(0) == 0 {
        return Err(Error::RationalMap);
    }
    let c0 = rep.coeff(0);
    let base = minimal_polynomial(&m.map().add_scalar(&-c0));
    if base.degree() == Some(1) {
        return Err(Error::RationalMap);
    }
    let expected_disc = discriminant(&base)?;
    Ok(FamilySpec::new(label, base, expected_disc))
}

pub fn verify_shift_identity(a: &FamilySpec, b: &FamilySpec, offset: &BigInt, range: RangeInclusive<i64>) -> bool {
    range.into_par_iter().all(|n| {
        let n = BigInt::from(n);
        a.member(&n) == b.member(&(&n + offset))
    })
}

pub fn verify_disc_constancy(spec: &FamilySpec, range: RangeInclusive<i64>) -> Result<bool> {
    let discs: Vec<BigInt> = range
        .into_par_iter()
        .map(|n| discriminant(&spec.member_i64(n)))
        .collect::<Result<_>>()?;
    Ok(discs.iter().all(|d| *d == spec.expected_disc))
}

/// Sampled `(n, power)` pairs where a printed coefficient formula disagrees
/// with the member.
pub fn display_mismatches(spec: &FamilySpec, printed: &[IntPoly], range: RangeInclusive<i64>) -> Result<Vec<(i64, usize)>> {
    let expected = spec.base.degree().map_or(1, |d| d + 1);
    if printed.len() != expected {
        return Err(Error::Arity {
            expected,
            got: printed.len(),
        });
    }
    let mut out = Vec::new();
    for n in range {
        let member = spec.member_i64(n);
        let nb = BigInt::from(n);
        for (k, formula) in printed.iter().enumerate() {
            if formula.eval_int(&nb) != member.coeff(k) {
                out.push((n, k));
            }
        }
    }
    Ok(out)
}

/// True when every printed formula matches at every sampled `n`. Seven or
/// more samples prove the identity for formulas of degree at most 5.
pub fn verify_symbolic_display(spec: &FamilySpec, printed: &[IntPoly], range: RangeInclusive<i64>) -> Result<bool> {
    Ok(display_mismatches(spec, printed, range)?.is_empty())
}

/// How a printed display compares with the computed family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DisplayVerdict {
    Match,
    /// Exactly one coefficient formula is the negative of the true one.
    SignFlip(usize),
    Mismatch(Vec<(i64, usize)>),
}

pub fn compare_display(spec: &FamilySpec, printed: &[IntPoly], range: RangeInclusive<i64>) -> Result<DisplayVerdict> {
    let bad = display_mismatches(spec, printed, range.clone())?;
    if bad.is_empty() {
        return Ok(DisplayVerdict::Match);
    }
    let mut powers: Vec<usize> = bad.iter().map(|&(_, k)| k).collect();
    powers.sort_unstable();
    powers.dedup();
    if let [k] = powers[..] {
        let flipped = range.clone().all(|n| {
            let v = printed[k].eval_int(&BigInt::from(n));
            v == -spec.member_i64(n).coeff(k)
        });
        if flipped {
            return Ok(DisplayVerdict::SignFlip(k));
        }
    }
    Ok(DisplayVerdict::Mismatch(bad))
}

/// The family for a catalog key: generated from its morphism when one is
/// recorded, otherwise from its printed display at `n = 0`.
pub fn catalog_family(cat: &Catalog, key: &str) -> Result<FamilySpec> {
    let entry = cat.family(key)?;
    let mut spec = match &entry.morphism {
        Some((map, _, _)) => family_from_morphism(key, &catalog_morphism(cat, map)?)?,
        None => {
            let zero = BigInt::zero();
            let base = IntPoly::new(entry.display.iter().map(|c| c.eval_int(&zero)).collect());
            FamilySpec::new(key, base, entry.expected_disc.clone())
        }
    };
    spec.orientation = entry.orientation;
    spec.expected_disc = entry.expected_disc.clone();
    Ok(spec)
}

/// Re-checks every family claim in the catalog: special members, display
/// formulas, discriminant constancy, shift identities and the closure of
/// the two offset cycles.
pub fn family_report(cat: &Catalog, p_range: RangeInclusive<i64>, fam_range: RangeInclusive<i64>) -> Report {
    let mut report = Report::new();
    let keys: Vec<&str> = cat.keys_of_kind("family").collect();
    for key in &keys {
        let spec = match catalog_family(cat, key) {
            Ok(s) => s,
            Err(e) => {
                report.push(format!("family {key}"), Status::Fail, e.to_string());
                continue;
            }
        };
        let entry = cat.family(key).expect("listed as family");
        for (n, target) in &entry.special {
            report.check_result(
                format!("{key} at n = {n} is {target}"),
                (|| Ok((spec.member(n) == *cat.poly(target)?, format!("member {}", spec.member(n)))))(),
            );
        }
        let range = if entry.morphism.is_some() { p_range.clone() } else { fam_range.clone() };
        report.check_result(
            format!("{key} discriminant constant on {}..={}", range.start(), range.end()),
            verify_disc_constancy(&spec, range).map(|ok| (ok, format!("expected {}", spec.expected_disc))),
        );
        let name = format!("{key} printed display");
        match compare_display(&spec, &entry.display, -3..=3) {
            Ok(DisplayVerdict::Match) => report.push(name, Status::Pass, ""),
            Ok(DisplayVerdict::SignFlip(k)) => report.push(
                name,
                Status::Flagged,
                format!("printed x^{k} coefficient has the opposite sign of the computed one"),
            ),
            Ok(DisplayVerdict::Mismatch(bad)) => report.push(name, Status::Fail, format!("mismatch at (n, power) {bad:?}")),
            Err(e) => report.push(name, Status::Fail, e.to_string()),
        }
    }

    let identities = match cat.shift_identities("ShiftIdentities") {
        Ok(ids) => ids,
        Err(e) => {
            report.push("shift identities", Status::Fail, e.to_string());
            return report;
        }
    };
    for id in identities {
        report.check_result(
            format!("{}(n) = {}(n{:+})", id.lhs, id.rhs, id.offset),
            (|| {
                let a = catalog_family(cat, &id.lhs)?;
                let b = catalog_family(cat, &id.rhs)?;
                Ok((verify_shift_identity(&a, &b, &id.offset, -10..=10), String::new()))
            })(),
        );
    }
    for start in ["P1", "P6"] {
        report.check_result(format!("offset cycle from {start} closes"), offset_cycle(identities, start));
    }
    report
}

/// Follows identities from `start` until it returns, summing offsets.
fn offset_cycle(ids: &[crate::catalog::ShiftIdentity], start: &str) -> Result<(bool, String)> {
    let mut at = start;
    let mut total = BigInt::zero();
    let mut path = vec![start.to_string()];
    for _ in 0..ids.len() {
        let step = ids
            .iter()
            .find(|i| i.lhs == at && (i.rhs == start || !path.contains(&i.rhs)))
            .ok_or_else(|| Error::UnknownKey(format!("no identity leaving {at}")))?;
        total += &step.offset;
        at = &step.rhs;
        path.push(at.to_string());
        if at == start {
            return Ok((total.is_zero(), format!("{} net offset {total}", path.join(" -> "))));
        }
    }
    Ok((false, format!("{} does not return", path.join(" -> "))))
}
