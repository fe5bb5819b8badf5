//! Polynomial text grammar.
//!
//! Two forms are accepted: a human form in one variable with `^` exponents
//! (`x^5-x^4-4x^3+3x^2+3x-1`, `1/2*x^2+3`) and a bracketed ascending
//! coefficient list (`[-1,3,3,-4,-1,1]`). Any single ASCII letter may be used
//! as the variable as long as it is used consistently.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

fn err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_rational(input: &str, tok: &str) -> Result<BigRational> {
    let tok = tok.trim();
    let tok = tok.strip_prefix('+').unwrap_or(tok);
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (tok, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| err(input, format!("bad number {tok:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| err(input, format!("bad number {tok:?}")))?;
    if den.is_zero() {
        return Err(err(input, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

pub(crate) fn parse_coeffs(input: &str) -> Result<Vec<BigRational>> {
    let s = input.trim();
    if let Some(body) = s.strip_prefix('[') {
        let body = body
            .strip_suffix(']')
            .ok_or_else(|| err(input, "unterminated coefficient list"))?;
        if body.trim().is_empty() {
            return Ok(Vec::new());
        }
        return body.split(',').map(|t| parse_rational(input, t)).collect();
    }
    parse_human(input)
}

fn parse_human(input: &str) -> Result<Vec<BigRational>> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err(input, "empty input"));
    }
    let mut var: Option<char> = None;
    let mut terms: BTreeMap<usize, BigRational> = BTreeMap::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let mut negative = false;
        match chars[i] {
            '+' => i += 1,
            '-' => {
                negative = true;
                i += 1;
            }
            _ if i > 0 => return Err(err(input, format!("expected sign at offset {i}"))),
            _ => {}
        }
        let num = digits(&mut i);
        let mut coeff = if num.is_empty() {
            None
        } else {
            let mut c = BigRational::from_integer(num.parse().unwrap());
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                let den = digits(&mut i);
                if den.is_empty() {
                    return Err(err(input, "missing denominator"));
                }
                let den: BigInt = den.parse().unwrap();
                if den.is_zero() {
                    return Err(err(input, "zero denominator"));
                }
                c /= BigRational::from_integer(den);
            }
            Some(c)
        };
        if coeff.is_some() && i < chars.len() && chars[i] == '*' {
            i += 1;
        }
        let mut degree = 0usize;
        if i < chars.len() && chars[i].is_ascii_alphabetic() {
            let v = chars[i];
            match var {
                Some(w) if w != v => {
                    return Err(err(input, format!("mixed variables {w} and {v}")))
                }
                _ => var = Some(v),
            }
            i += 1;
            degree = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let e = digits(&mut i);
                degree = e
                    .parse()
                    .map_err(|_| err(input, "missing exponent after ^"))?;
            }
            coeff.get_or_insert_with(BigRational::one);
        }
        let Some(mut c) = coeff else {
            return Err(err(input, format!("expected a term at offset {i}")));
        };
        if negative {
            c = -c;
        }
        *terms.entry(degree).or_insert_with(BigRational::zero) += c;
    }
    let top = terms.keys().next_back().copied().unwrap_or(0);
    let mut out = vec![BigRational::zero(); top + 1];
    for (k, c) in terms {
        out[k] = c;
    }
    Ok(out)
}

pub(crate) fn format_terms(coeffs: impl DoubleEndedIterator<Item = BigRational> + ExactSizeIterator, var: char) -> String {
    let n = coeffs.len();
    let mut out = String::new();
    for (k, c) in (0..n).rev().zip(coeffs.rev()) {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if k == 0 {
            out.push_str(&a.to_string());
            continue;
        }
        if !a.is_one() {
            out.push_str(&a.to_string());
            if !a.is_integer() {
                out.push('*');
            }
        }
        out.push(var);
        if k > 1 {
            out.push('^');
            out.push_str(&k.to_string());
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
