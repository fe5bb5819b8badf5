//! Root-mapping transformations between fields `Q[x]/(f)`.
//!
//! A morphism `f -> g` is a polynomial `T` with `g(T(x)) = 0 mod f(x)`. It is
//! always stored reduced modulo `f`, so two morphisms are equal exactly when
//! their canonical representatives are.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::linalg::{self, Matrix};
use crate::polyring::{verify_factorization, IntPoly, RatPoly};
use crate::quotient::{compose_mod, compose_mod_int, qmul, reduce, Modulus, QuotElem};
use crate::realroots::{image_permutation, invert_permutation, isolate, signature, Interval, Isolator};
use crate::report::Report;
use crate::{Error, Result};

/// Outcome of one candidate permutation at one precision level.
type Verdict = std::result::Result<Morphism, Rejection>;

/// Largest degree for which the `n!` permutation search is attempted.
pub const MAX_SEARCH_DEGREE: usize = 7;

#[derive(Clone, Debug)]
pub struct Morphism {
    target: Modulus,
    map: QuotElem,
    permutation: Option<Vec<usize>>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target && self.map == other.map
    }
}

impl Eq for Morphism {}

/// `target(t(x)) = 0 mod source(x)`, checked exactly.
pub fn verify(t: &RatPoly, source: &IntPoly, target: &IntPoly) -> Result<bool> {
    let f = Modulus::new(source)?;
    Ok(compose_mod_int(target, &reduce(t, &f)).is_zero())
}

impl Morphism {
    /// Builds a verified morphism from a polynomial map.
    pub fn new(map: &RatPoly, source: &IntPoly, target: &IntPoly) -> Result<Self> {
        let f = Modulus::new(source)?;
        let g = Modulus::new(target)?;
        if f.degree() != g.degree() {
            return Err(Error::DegreeMismatch(f.degree(), g.degree()));
        }
        let map = reduce(map, &f);
        Self::from_parts(map, g)
    }

    fn from_parts(map: QuotElem, target: Modulus) -> Result<Self> {
        if !compose_mod_int(target.poly(), &map).is_zero() {
            return Err(Error::NotAMorphism {
                map: map.rep().to_string(),
                from: map.modulus().poly().to_string(),
                to: target.poly().to_string(),
            });
        }
        Ok(Morphism {
            target,
            map,
            permutation: None,
        })
    }

    pub fn from_int(map: &IntPoly, source: &IntPoly, target: &IntPoly) -> Result<Self> {
        Self::new(&map.to_rat(), source, target)
    }

    pub fn identity(f: &IntPoly) -> Result<Self> {
        let m = Modulus::new(f)?;
        Ok(Morphism {
            map: m.generator(),
            target: m,
            permutation: None,
        })
    }

    pub fn source(&self) -> &IntPoly {
        self.map.modulus().poly()
    }

    pub fn target(&self) -> &IntPoly {
        self.target.poly()
    }

    pub fn map(&self) -> &QuotElem {
        &self.map
    }

    /// 0-indexed root permutation, if it has been computed.
    pub fn permutation(&self) -> Option<&[usize]> {
        self.permutation.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        self.source() == self.target() && self.map.is_generator()
    }

    /// Attaches the permutation of real roots induced by the map.
    pub fn with_permutation(mut self) -> Result<Self> {
        let src = isolate(self.source())?;
        let dst = isolate(self.target())?;
        self.permutation = Some(image_permutation(self.map.rep(), &src, &dst)?);
        Ok(self)
    }

    fn with_isolators(mut self, src: &Isolator, dst: &Isolator) -> Result<Self> {
        self.permutation = Some(image_permutation(self.map.rep(), src, dst)?);
        Ok(self)
    }

    pub fn to_record(&self) -> MorphismRecord {
        MorphismRecord {
            source: self.source().to_string(),
            target: self.target().to_string(),
            map: self.map.rep().coeffs().iter().map(|c| c.to_string()).collect(),
            map_text: self.map.rep().to_string(),
            permutation: self
                .permutation
                .as_ref()
                .map(|p| p.iter().map(|i| i + 1).collect()),
            verified: true,
        }
    }
}

/// JSON form of a morphism. The permutation is 1-indexed.
#[derive(Clone, Debug, Serialize)]
pub struct MorphismRecord {
    pub source: String,
    pub target: String,
    pub map: Vec<String>,
    pub map_text: String,
    pub permutation: Option<Vec<usize>>,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub denom_bound: u64,
    pub start_bits: usize,
    pub max_bits: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            denom_bound: 12,
            start_bits: 64,
            max_bits: 256,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    /// No rational with bounded denominator fits some coefficient.
    Reconstruction,
    /// Reconstructions disagreed between every pair of precision levels.
    Unstable,
    /// A stable candidate failed the exact check.
    Verification,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub morphisms: Vec<Morphism>,
    /// Candidate permutations (0-indexed) that produced no morphism.
    pub rejected: Vec<(Vec<usize>, Rejection)>,
}

/// Closest continued-fraction convergent of `v` with denominator at most
/// `bound`, accepted only if it lies within `tol` of `v`.
pub fn rational_reconstruction(v: &BigRational, bound: &BigInt, tol: &BigRational) -> Option<BigRational> {
    // convergents h/k of the continued fraction of v
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = v.clone();
    loop {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > bound {
            return None;
        }
        let c = BigRational::new(h2.clone(), k2.clone());
        if (&c - v).abs() <= *tol {
            return Some(c);
        }
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip();
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
}

/// Narrows every root interval to `width` in place and returns midpoints.
fn midpoints(iso: &Isolator, ivs: &mut [Interval], width: &BigRational) -> Vec<BigRational> {
    ivs.par_iter_mut().for_each(|iv| {
        *iv = iso.refine_further(iv.clone(), width);
    });
    ivs.iter().map(Interval::midpoint).collect()
}

fn vandermonde(xs: &[BigRational]) -> Matrix {
    xs.iter()
        .map(|x| {
            std::iter::successors(Some(BigRational::one()), |p| Some(p * x))
                .take(xs.len())
                .collect()
        })
        .collect()
}

/// All morphisms `source -> target` with map degree below `n`.
///
/// Both fields must be totally real for the general search: the roots of
/// both are isolated, and for each of the `n!` candidate permutations the
/// Vandermonde system `sum_k c_k x_i^k = y_pi(i)` is solved at increasing
/// precision. Coefficients are rebuilt as rationals with bounded
/// denominators, and a candidate is accepted only after it is stable across
/// two consecutive precision levels and passes the exact check.
pub fn find_isomorphisms(source: &IntPoly, target: &IntPoly, opts: &SearchOptions) -> Result<SearchOutcome> {
    let f = Modulus::new(source)?;
    let g = Modulus::new(target)?;
    let n = f.degree();
    if n != g.degree() {
        return Err(Error::DegreeMismatch(n, g.degree()));
    }
    if n > MAX_SEARCH_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            bound: MAX_SEARCH_DEGREE,
        });
    }
    let (sf, sg) = (signature(source)?, signature(target)?);
    if sf != sg {
        return Ok(SearchOutcome::default());
    }
    if sf.real != n {
        return search_mixed_signature(&f, &g, sf.real);
    }

    let src = isolate(source)?;
    let dst = isolate(target)?;
    let bound = BigInt::from(opts.denom_bound);
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut previous: Vec<Option<Vec<BigRational>>> = vec![None; perms.len()];
    let mut settled: Vec<Option<std::result::Result<Morphism, Rejection>>> = vec![None; perms.len()];
    let mut ever_reconstructed = vec![false; perms.len()];

    let mut src_ivs: Vec<Interval> = src.intervals().iter().map(|r| r.closed()).collect();
    let mut dst_ivs: Vec<Interval> = dst.intervals().iter().map(|r| r.closed()).collect();
    let mut bits = opts.start_bits.max(8);
    loop {
        let width = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits / 2));
        let xs = midpoints(&src, &mut src_ivs, &width);
        let ys = midpoints(&dst, &mut dst_ivs, &width);
        let inv = linalg::inverse(&vandermonde(&xs))?;

        let results: Vec<(Option<Vec<BigRational>>, Option<Verdict>)> = perms
            .par_iter()
            .enumerate()
            .map(|(idx, perm)| {
                if let Some(done) = &settled[idx] {
                    return (None, Some(done.clone()));
                }
                let rhs: Vec<BigRational> = perm.iter().map(|&j| ys[j].clone()).collect();
                let coeffs = linalg::mat_vec(&inv, &rhs);
                let rebuilt: Option<Vec<BigRational>> = coeffs
                    .iter()
                    .map(|c| rational_reconstruction(c, &bound, &tol))
                    .collect();
                let verdict = match (&rebuilt, &previous[idx]) {
                    (Some(now), Some(before)) if now == before => {
                        let map = reduce(&RatPoly::new(now.clone()), &f);
                        Some(Morphism::from_parts(map, g.clone()).map_err(|_| Rejection::Verification))
                    }
                    _ => None,
                };
                (rebuilt, verdict)
            })
            .collect();

        for (idx, (rebuilt, verdict)) in results.into_iter().enumerate() {
            if settled[idx].is_none() {
                ever_reconstructed[idx] |= rebuilt.is_some();
                previous[idx] = rebuilt;
                settled[idx] = verdict;
            }
        }
        if settled.iter().all(Option::is_some) || bits >= opts.max_bits {
            break;
        }
        bits = (bits * 2).min(opts.max_bits);
    }

    let mut outcome = SearchOutcome::default();
    for (idx, perm) in perms.into_iter().enumerate() {
        match settled[idx].take() {
            Some(Ok(m)) => {
                let m = m.with_isolators(&src, &dst)?;
                debug_assert_eq!(m.permutation(), Some(&perm[..]));
                outcome.morphisms.push(m);
            }
            Some(Err(r)) => outcome.rejected.push((perm, r)),
            None if ever_reconstructed[idx] => outcome.rejected.push((perm, Rejection::Unstable)),
            None => outcome.rejected.push((perm, Rejection::Reconstruction)),
        }
    }
    outcome.morphisms.sort_by(|a, b| a.map.rep().cmp(b.map.rep()));
    outcome.morphisms.dedup();
    Ok(outcome)
}

/// Fields with complex embeddings. A morphism sends the real root of `f` to
/// a real root of `g` and is determined by that choice, so with a single real
/// root there is at most one; between identical polynomials it is the
/// identity. Everything else would need complex isolation.
fn search_mixed_signature(f: &Modulus, g: &Modulus, real: usize) -> Result<SearchOutcome> {
    if real == 1 && f == g {
        return Ok(SearchOutcome {
            morphisms: vec![Morphism::identity(f.poly())?],
            rejected: Vec::new(),
        });
    }
    Err(Error::UnsupportedSignature(format!(
        "{real} real roots out of {}; only totally real fields, or one real root with source = target, are searched",
        f.degree()
    )))
}

/// Number of automorphisms of `Q[x]/(f)` found by the search.
pub fn automorphism_group_order(f: &IntPoly) -> Result<usize> {
    Ok(find_isomorphisms(f, f, &SearchOptions::default())?.morphisms.len())
}

/// Columns are the coefficient vectors of `a^0, ..., a^(n-1)`.
fn power_matrix(a: &QuotElem, count: usize) -> Matrix {
    let n = a.modulus().degree();
    let mut cols = Vec::with_capacity(count);
    let mut p = a.modulus().one();
    for _ in 0..count {
        cols.push(p.clone());
        p = qmul(&p, a).expect("same modulus");
    }
    (0..n)
        .map(|j| cols.iter().map(|c| c.rep().coeff(j)).collect())
        .collect()
}

/// The inverse morphism `target -> source`: the `I` with `I(map) = x` mod
/// source, from the linear system over the powers of the map.
pub fn invert(m: &Morphism) -> Result<Morphism> {
    let n = m.map.modulus().degree();
    let a = power_matrix(&m.map, n);
    let x = m.map.modulus().generator();
    let rhs: Vec<BigRational> = (0..n).map(|j| x.rep().coeff(j)).collect();
    let c = linalg::solve(&a, &rhs)?;
    let inv = reduce(&RatPoly::new(c), &m.target);
    if !compose_mod(inv.rep(), &m.map).is_generator() {
        return Err(Error::Singular);
    }
    let mut out = Morphism::from_parts(inv, m.map.modulus().clone())?;
    out.permutation = m.permutation.as_deref().map(invert_permutation);
    Ok(out)
}

/// `b . a`: first `a: f -> g`, then `b: g -> h`.
pub fn compose_morphisms(a: &Morphism, b: &Morphism) -> Result<Morphism> {
    if a.target != *b.map.modulus() {
        return Err(Error::ChainMismatch);
    }
    let map = compose_mod(b.map.rep(), &a.map);
    let mut out = Morphism::from_parts(map, b.target.clone())?;
    if let (Some(pa), Some(pb)) = (&a.permutation, &b.permutation) {
        out.permutation = Some(pa.iter().map(|&j| pb[j]).collect());
    }
    Ok(out)
}

/// Minimal polynomial by linear algebra on the power basis: the first
/// power of `a` that depends linearly on the lower ones. Cross-check for
/// the resultant route in [`crate::quotient::minimal_polynomial`].
pub fn minimal_polynomial_power_basis(a: &QuotElem) -> Result<IntPoly> {
    let n = a.modulus().degree();
    let all = power_matrix(a, n + 1);
    for d in 1..=n {
        let cols: Matrix = all.iter().map(|row| row[..d].to_vec()).collect();
        let rhs: Vec<BigRational> = all.iter().map(|row| row[d].clone()).collect();
        if let Some(c) = linalg::solve_overdetermined(&cols, &rhs)? {
            let mut coeffs: Vec<BigRational> = c.into_iter().map(|v| -v).collect();
            coeffs.push(BigRational::one());
            let (p, _) = RatPoly::new(coeffs).clear_denominators();
            return Ok(p.primitive_part());
        }
    }
    unreachable!("n + 1 vectors in an n-dimensional space are dependent")
}

/// Endpoint fields of a catalog transformation key.
fn catalog_endpoints(key: &str) -> Option<(&'static str, &'static str)> {
    match key.chars().next()? {
        'D' | 'T' => Some(("V", "G")),
        'I' => Some(("G", "V")),
        _ => None,
    }
}

/// Morphism for a catalog key such as `D4` or `I2`.
pub fn catalog_morphism(cat: &Catalog, key: &str) -> Result<Morphism> {
    let (s, t) = catalog_endpoints(key).ok_or_else(|| Error::UnknownKey(key.to_string()))?;
    Morphism::from_int(cat.poly(key)?, cat.poly(s)?, cat.poly(t)?)
}

/// Re-checks every stored transformation, its inverse, the printed
/// factorisations and both permutation tables.
pub fn catalog_check(cat: &Catalog) -> Report {
    let mut report = Report::new();
    let labels: Vec<(String, String)> = (1..=5).map(|l| (format!("D{l}"), format!("I{l}"))).collect();

    for key in labels.iter().flat_map(|(d, i)| [d, i]).chain(std::iter::once(&"T".to_string())) {
        let (s, t) = catalog_endpoints(key).unwrap();
        report.check_result(
            format!("morphism {key}: {s} -> {t}"),
            (|| {
                let ok = verify(&cat.poly(key)?.to_rat(), cat.poly(s)?, cat.poly(t)?)?;
                Ok((ok, format!("{t}({key}(x)) mod {s}")))
            })(),
        );
    }
    report.check_result(
        "T coincides with D4",
        (|| Ok((cat.poly("T")? == cat.poly("D4")?, String::new())))(),
    );

    for (d, i) in &labels {
        report.check_result(
            format!("invert({d}) = {i}"),
            (|| {
                let inv = invert(&catalog_morphism(cat, d)?)?;
                let expected = cat.poly(i)?.to_rat();
                Ok((inv.map.rep() == &expected, format!("got {}", inv.map.rep())))
            })(),
        );
    }

    for key in cat.keys().filter(|k| k.ends_with("_factored")) {
        let base = key.trim_end_matches("_factored");
        report.check_result(
            format!("factored form of {base}"),
            (|| {
                let claim = cat.factorization(key)?;
                let p = catalog_composite(cat, base)?;
                Ok((verify_factorization(&p, claim), format!("product {}", claim.product())))
            })(),
        );
    }

    for (table, prefix) in [("Table1", 'D'), ("Table2", 'I')] {
        let rows = match cat.permutation_table(table) {
            Ok(rows) => rows,
            Err(e) => {
                report.check_result(table, Err(e));
                continue;
            }
        };
        let isolators = (|| {
            let (s, t) = catalog_endpoints(&prefix.to_string()).unwrap();
            Ok::<_, Error>((isolate(cat.poly(s)?)?, isolate(cat.poly(t)?)?))
        })();
        for (row, expected) in rows {
            report.check_result(
                format!("{table} row {row}"),
                isolators.clone().and_then(|(src, dst)| {
                    let perm = image_permutation(&cat.poly(row)?.to_rat(), &src, &dst)?;
                    Ok((&perm == expected, format!("computed {}", one_indexed(&perm))))
                }),
            );
        }
    }
    report
}

/// A composition written `D4I4` for `D4(I4(x))`, or else a catalog
/// polynomial. Compositions are always recomputed, never read back.
pub(crate) fn catalog_composite(cat: &Catalog, key: &str) -> Result<IntPoly> {
    let split = key[1..].find(|c: char| c.is_ascii_alphabetic()).map(|i| i + 1);
    if let Some((outer, inner)) = split.map(|s| key.split_at(s)) {
        if let (Ok(o), Ok(i)) = (cat.poly(outer), cat.poly(inner)) {
            return Ok(o.compose(i));
        }
    }
    Ok(cat.poly(key)?.clone())
}

pub fn one_indexed(perm: &[usize]) -> String {
    format!("({})", perm.iter().map(|i| (i + 1).to_string()).join(","))
}

/// Groups morphisms by map degree, in the shape used by reports.
pub fn degree_census(ms: &[Morphism]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for m in ms {
        *out.entry(m.map.rep().degree().unwrap_or(0)).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    const V: &str = "x^5-x^4-4x^3+3x^2+3x-1";
    const G: &str = "x^5+2x^4-5x^3-2x^2+4x-1";

    #[test]
    fn verification_is_directional() {
        let d4 = p("x^4-4x^2-x+2").to_rat();
        assert!(verify(&d4, &p(V), &p(G)).unwrap());
        assert!(!verify(&d4, &p(G), &p(V)).unwrap());
        assert!(verify(&RatPoly::x(), &p(V), &p(V)).unwrap());
        assert!(Morphism::new(&d4, &p(G), &p(V)).is_err());
    }

    #[test]
    fn reconstruction_by_convergents() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let tol = r(1, 1 << 20);
        let approx = r(7, 3) + r(1, 1 << 30);
        assert_eq!(rational_reconstruction(&approx, &BigInt::from(12), &tol), Some(r(7, 3)));
        assert_eq!(rational_reconstruction(&r(-5, 1), &BigInt::from(12), &tol), Some(r(-5, 1)));
        assert_eq!(rational_reconstruction(&r(355, 113), &BigInt::from(12), &tol), None);
        assert_eq!(rational_reconstruction(&(r(-1, 2) - r(1, 1 << 30)), &BigInt::from(12), &tol), Some(r(-1, 2)));
    }

    #[test]
    fn inverse_of_d4_is_i4() {
        let m = Morphism::from_int(&p("x^4-4x^2-x+2"), &p(V), &p(G)).unwrap();
        let inv = invert(&m).unwrap();
        assert_eq!(inv.map().rep(), &p("-x^4-2x^3+5x^2+2x-3").to_rat());
        assert!(compose_morphisms(&m, &inv).unwrap().is_identity());
        assert!(compose_morphisms(&inv, &m).unwrap().is_identity());
        let id = Morphism::identity(&p(V)).unwrap();
        assert_eq!(invert(&id).unwrap(), id);
        assert_eq!(compose_morphisms(&id, &m).unwrap(), m);
        assert_eq!(compose_morphisms(&m, &m), Err(Error::ChainMismatch));
    }

    #[test]
    fn permutations_compose() {
        let m = Morphism::from_int(&p("x^4-4x^2-x+2"), &p(V), &p(G))
            .unwrap()
            .with_permutation()
            .unwrap();
        assert_eq!(m.permutation(), Some(&[2, 3, 4, 0, 1][..]));
        let inv = invert(&m).unwrap();
        assert_eq!(inv.permutation(), Some(&[3, 4, 0, 1, 2][..]));
        let back = compose_morphisms(&m, &inv).unwrap();
        assert_eq!(back.permutation(), Some(&[0, 1, 2, 3, 4][..]));
    }

    #[test]
    fn small_searches() {
        let opts = SearchOptions::default();
        assert!(find_isomorphisms(&p("x^2-2"), &p("x^2-3"), &opts).unwrap().morphisms.is_empty());
        let auts = find_isomorphisms(&p("x^2-2"), &p("x^2-2"), &opts).unwrap();
        assert_eq!(auts.morphisms.len(), 2);
        assert!(auts.morphisms.iter().any(Morphism::is_identity));
        // x -> x + 1 between x^2-2 and (x-1)^2-2
        let shifted = find_isomorphisms(&p("x^2-2"), &p("x^2-2x-1"), &opts).unwrap();
        assert_eq!(shifted.morphisms.len(), 2);
        // different signatures
        assert!(find_isomorphisms(&p("x^2-2"), &p("x^2+1"), &opts).unwrap().morphisms.is_empty());
        assert_eq!(automorphism_group_order(&p("x^5-2")).unwrap(), 1);
        assert!(matches!(
            find_isomorphisms(&p("x^8-2"), &p("x^8-2"), &opts),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn rational_coefficients_are_found() {
        // x^2 - 1/4 is not monic over Z, so use 4x^2-1 scaled: y = 2x maps
        // roots of x^2-2 to roots of x^2-8, and y = x/2 maps back
        let opts = SearchOptions::default();
        let back = find_isomorphisms(&p("x^2-8"), &p("x^2-2"), &opts).unwrap();
        let maps: Vec<String> = back.morphisms.iter().map(|m| m.map().rep().to_string()).collect();
        assert_eq!(maps, vec!["-1/2*x", "1/2*x"]);
    }

    #[test]
    fn power_basis_agrees_with_resultant_route() {
        let f = Modulus::new(&p(V)).unwrap();
        for s in ["x^4-4x^2-x+2", "x^2-2", "3", "1/2*x^3-x+1/3"] {
            let a = reduce(&s.parse::<RatPoly>().unwrap(), &f);
            assert_eq!(
                minimal_polynomial_power_basis(&a).unwrap(),
                crate::quotient::minimal_polynomial(&a),
                "{s}"
            );
        }
    }
}
