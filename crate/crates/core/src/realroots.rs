//! Exact real-root counting, isolation and refinement.
//!
//! Everything here is rational interval arithmetic; there is no floating
//! point, so a computed root permutation is a proof rather than an estimate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::polyring::{is_squarefree, sign_of, IntPoly, RatPoly};
use crate::{Error, Result};

/// Hard cap on bisections per root when separating images.
pub const SEPARATION_CAP: usize = 256;

/// A closed rational interval `[lo, hi]`, possibly a single point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    fn add_scalar(&self, c: &BigRational) -> Interval {
        Interval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    /// Decimal rendering of the midpoint with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        to_decimal(&self.midpoint(), digits)
    }
}

/// Rounds a rational to `digits` decimal places (half away from zero).
pub fn to_decimal(v: &BigRational, digits: usize) -> String {
    format_scaled(&scaled(v, digits).round().to_integer(), digits)
}

/// Truncates a rational toward zero after `digits` decimal places.
pub fn to_decimal_truncated(v: &BigRational, digits: usize) -> String {
    format_scaled(&scaled(v, digits).trunc().to_integer(), digits)
}

fn scaled(v: &BigRational, digits: usize) -> BigRational {
    v * BigRational::from_integer(num_traits::pow(BigInt::from(10), digits))
}

fn format_scaled(rounded: &BigInt, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let neg = rounded.is_negative();
    let mag = rounded.abs();
    let int_part = &mag / &scale;
    let frac = &mag % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...` ending in a nonzero constant.
/// Remainders are taken by pseudo-division with a positive multiplier and
/// then made primitive, which preserves every sign.
pub fn sturm_chain(p: &IntPoly) -> Result<Vec<IntPoly>> {
    let n = p.degree_nonzero()?;
    if n == 0 {
        return Ok(vec![p.clone()]);
    }
    if !is_squarefree(p)? {
        return Err(Error::NotSquarefree);
    }
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let len = chain.len();
        let (a, b) = (&chain[len - 2], &chain[len - 1]);
        if b.degree() == Some(0) {
            break;
        }
        let (_, r, scale) = a.pseudo_divrem(b)?;
        debug_assert!(!r.is_zero(), "squarefree input ends in a constant");
        let r = if scale.is_negative() { r } else { -r };
        let c = r.content();
        chain.push(r.div_exact(&c));
    }
    Ok(chain)
}

fn count_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(chain: &[IntPoly], v: &BigRational) -> usize {
    count_variations(chain.iter().map(|q| {
        let e = q.eval(v);
        sign_of(e.numer())
    }))
}

fn variations_at_infinity(chain: &[IntPoly], positive: bool) -> usize {
    count_variations(chain.iter().map(|q| {
        let s = sign_of(q.lc().unwrap());
        let odd = q.degree().unwrap() % 2 == 1;
        if !positive && odd {
            -s
        } else {
            s
        }
    }))
}

/// Number of sign variations of the chain over the whole real line.
pub fn real_root_count(p: &IntPoly) -> Result<usize> {
    let chain = sturm_chain(p)?;
    Ok(variations_at_infinity(&chain, false) - variations_at_infinity(&chain, true))
}

/// Number of real roots `n` and conjugate complex pairs `l`, with
/// `n + 2l = deg p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub real: usize,
    pub complex_pairs: usize,
}

pub fn signature(p: &IntPoly) -> Result<Signature> {
    let real = real_root_count(p)?;
    let degree = p.degree_nonzero()?;
    Ok(Signature {
        real,
        complex_pairs: (degree - real) / 2,
    })
}

/// Half-open isolating interval `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn closed(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }
}

/// The real roots of a squarefree polynomial, each in its own interval,
/// sorted ascending.
#[derive(Clone, Debug)]
pub struct Isolator {
    poly: IntPoly,
    chain: Vec<IntPoly>,
    intervals: Vec<RootInterval>,
}

impl Isolator {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn intervals(&self) -> &[RootInterval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Roots of the chain's polynomial in `(lo, hi]`.
    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        variations_at(&self.chain, lo) - variations_at(&self.chain, hi)
    }

    /// Refines root `index` until its interval has width at most `width`.
    pub fn refine(&self, index: usize, width: &BigRational) -> Result<Interval> {
        let iv = self.intervals.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.intervals.len(),
        })?;
        Ok(refine_until(&self.poly, iv.closed(), width))
    }

    /// Roots truncated toward zero after `digits` places. Each root is
    /// refined until both ends of its interval truncate alike.
    pub fn truncated_decimals(&self, digits: usize) -> Result<Vec<String>> {
        (0..self.len())
            .map(|i| {
                let mut width = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits + 2));
                let mut iv = self.refine(i, &width)?;
                for _ in 0..SEPARATION_CAP {
                    let (a, b) = (to_decimal_truncated(&iv.lo, digits), to_decimal_truncated(&iv.hi, digits));
                    if a == b {
                        return Ok(a);
                    }
                    width /= BigInt::from(16);
                    iv = self.refine_further(iv, &width);
                }
                Err(Error::NonSeparation(SEPARATION_CAP))
            })
            .collect()
    }

    /// Continues refining an interval previously returned by [`Self::refine`].
    pub(crate) fn refine_further(&self, iv: Interval, width: &BigRational) -> Interval {
        refine_until(&self.poly, iv, width)
    }

    /// Decimal approximations of all roots, refined below `10^-digits / 2`.
    pub fn decimals(&self, digits: usize) -> Result<Vec<String>> {
        let width = BigRational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(10), digits + 2),
        );
        (0..self.len())
            .map(|i| Ok(self.refine(i, &width)?.to_decimal(digits)))
            .collect()
    }
}

/// Cauchy bound `1 + max|c_i| / |lc|`, rounded up to an integer.
pub fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lc = p.lc().unwrap().abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    let b = BigRational::one() + BigRational::new(max, lc);
    BigRational::from_integer(b.ceil().to_integer())
}

pub fn isolate(p: &IntPoly) -> Result<Isolator> {
    let chain = sturm_chain(p)?;
    let bound = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    let two = BigRational::from_integer(2.into());
    while let Some((lo, hi)) = stack.pop() {
        let count = variations_at(&chain, &lo) - variations_at(&chain, &hi);
        match count {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(Isolator {
        poly: p.clone(),
        chain,
        intervals: out,
    })
}

fn sign_at(p: &IntPoly, v: &BigRational) -> i32 {
    // denominators are positive, so the homogeneous value has the same sign
    sign_of(&p.eval_homogeneous(v.numer(), v.denom()))
}

/// One bisection step on a closed interval holding exactly one simple root,
/// looking only at the sign at the right endpoint and the midpoint.
fn bisect_once(p: &IntPoly, iv: &Interval) -> Interval {
    if iv.lo == iv.hi {
        return iv.clone();
    }
    let s_hi = sign_at(p, &iv.hi);
    if s_hi == 0 {
        return Interval::point(iv.hi.clone());
    }
    let mid = iv.midpoint();
    match sign_at(p, &mid) {
        0 => Interval::point(mid),
        s if s == s_hi => Interval::new(iv.lo.clone(), mid),
        _ => Interval::new(mid, iv.hi.clone()),
    }
}

fn refine_until(p: &IntPoly, mut iv: Interval, width: &BigRational) -> Interval {
    while &iv.width() > width {
        iv = bisect_once(p, &iv);
    }
    iv
}

/// Shrinks an isolating interval until its root is strictly inside (nonzero
/// sign at both ends) or the interval collapses onto a rational root.
fn strict_enclosure(p: &IntPoly, mut iv: Interval) -> Result<Interval> {
    for _ in 0..=SEPARATION_CAP {
        if iv.lo == iv.hi || (sign_at(p, &iv.lo) != 0 && sign_at(p, &iv.hi) != 0) {
            return Ok(iv);
        }
        iv = bisect_once(p, &iv);
    }
    Err(Error::NonSeparation(SEPARATION_CAP))
}

/// Interval Horner enclosure of `p` over `x`.
fn horner_enclosure(p: &RatPoly, x: &Interval) -> Interval {
    let mut acc = Interval::point(BigRational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add_scalar(c);
    }
    acc
}

/// Sound enclosure of `{ t(v) : v in x }`. When an enclosure of `t'` over
/// `x` excludes zero, `t` is monotone there and the endpoint values are
/// exact bounds; otherwise the interval Horner enclosure is used.
pub fn image_enclosure(t: &RatPoly, x: &Interval) -> Interval {
    let dt = horner_enclosure(&t.derivative(), x);
    let zero = BigRational::zero();
    if dt.lo > zero || dt.hi < zero {
        let (a, b) = (t.eval(&x.lo), t.eval(&x.hi));
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    } else {
        horner_enclosure(t, x)
    }
}

/// Permutation `pi` with `t(x_i) = y_pi(i)`, found by refining until every
/// image enclosure lies in exactly one target root interval.
///
/// The caller must already know that `t` maps roots of `src` onto roots of
/// `dst` (e.g. by an exact morphism check); this routine only identifies
/// which root goes where.
pub fn image_permutation(t: &RatPoly, src: &Isolator, dst: &Isolator) -> Result<Vec<usize>> {
    if src.len() != dst.len() {
        return Err(Error::NotABijection);
    }
    let targets: Vec<Interval> = dst
        .intervals
        .iter()
        .map(|iv| strict_enclosure(dst.poly(), iv.closed()))
        .collect::<Result<_>>()?;
    let mut perm = Vec::with_capacity(src.len());
    for iv in &src.intervals {
        let mut x = iv.closed();
        let mut found = None;
        for _ in 0..=SEPARATION_CAP {
            let image = image_enclosure(t, &x);
            let mut hits = targets
                .iter()
                .enumerate()
                .filter(|(_, y)| y.intersects(&image));
            if let (Some((j, y)), None) = (hits.next(), hits.next()) {
                if y.contains_interval(&image) {
                    found = Some(j);
                    break;
                }
            }
            x = bisect_once(src.poly(), &x);
        }
        perm.push(found.ok_or(Error::NonSeparation(SEPARATION_CAP))?);
    }
    let mut seen = vec![false; perm.len()];
    for &j in &perm {
        if std::mem::replace(&mut seen[j], true) {
            return Err(Error::NotABijection);
        }
    }
    Ok(perm)
}

pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    inv
}
