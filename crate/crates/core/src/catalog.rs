//! The checked-in store of reference polynomials, tables and stated
//! constants.
//!
//! Entries live in `data/catalog.json` as `{key: {kind, value, provenance}}`
//! with polynomials in the shared text grammar, so transcriptions can be
//! diffed by eye. Every payload is parsed and checked when the catalog loads.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::polyring::{discriminant, FactorizationClaim, IntPoly, IntegerFactorization};
use crate::report::{Report, Status};
use crate::{Error, Result};

const BUILTIN: &str = include_str!("../data/catalog.json");

/// A family as printed: one coefficient formula in `n` per power of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyEntry {
    pub display: Vec<IntPoly>,
    /// `+1` when member `n` is `base(x - n)`, `-1` for `base(x + n)`.
    pub orientation: i32,
    pub expected_disc: BigInt,
    /// Catalog keys `(map, source, target)` of the generating morphism.
    pub morphism: Option<(String, String, String)>,
    /// Stated parameter values at which the family hits a catalog polynomial.
    pub special: Vec<(BigInt, String)>,
}

/// `member(lhs, n) = member(rhs, n + offset)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftIdentity {
    pub lhs: String,
    pub rhs: String,
    pub offset: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCycle {
    pub base: String,
    pub alpha: BigRational,
    pub sequence: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Poly(IntPoly),
    /// Rows of 0-indexed permutations.
    PermutationTable(BTreeMap<String, Vec<usize>>),
    Factorization(FactorizationClaim),
    Integer(BigInt),
    IntegerFactorization(IntegerFactorization),
    Roots(Vec<String>),
    Family(FamilyEntry),
    ShiftIdentities(Vec<ShiftIdentity>),
    ChainCycle(ChainCycle),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Poly(_) => "poly",
            Payload::PermutationTable(_) => "permutation_table",
            Payload::Factorization(_) => "factorization",
            Payload::Integer(_) => "integer",
            Payload::IntegerFactorization(_) => "integer_factorization",
            Payload::Roots(_) => "roots",
            Payload::Family(_) => "family",
            Payload::ShiftIdentities(_) => "shift_identities",
            Payload::ChainCycle(_) => "chain_cycle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub key: String,
    pub payload: Payload,
    pub provenance: String,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
}

fn bad(key: &str, reason: impl Into<String>) -> Error {
    Error::Catalog {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn as_str<'a>(key: &str, v: &'a Value) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(key, format!("expected a string, found {v}")))
}

fn field<'a>(key: &str, v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| bad(key, format!("missing field {name:?}")))
}

fn parse_int(key: &str, v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
        _ => as_str(key, v)?
            .parse()
            .map_err(|_| bad(key, format!("not an integer: {v}"))),
    }
}

fn parse_poly(key: &str, v: &Value) -> Result<IntPoly> {
    as_str(key, v)?
        .parse()
        .map_err(|e: Error| bad(key, e.to_string()))
}

fn parse_usize(key: &str, v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| bad(key, format!("expected a non-negative integer, found {v}")))
}

fn array<'a>(key: &str, v: &'a Value) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(key, format!("expected an array, found {v}")))
}

fn parse_permutation(key: &str, v: &Value) -> Result<Vec<usize>> {
    let one_based: Vec<usize> = array(key, v)?
        .iter()
        .map(|x| parse_usize(key, x))
        .collect::<Result<_>>()?;
    let n = one_based.len();
    let mut seen = vec![false; n];
    for &j in &one_based {
        if j == 0 || j > n || std::mem::replace(&mut seen[j - 1], true) {
            return Err(bad(key, format!("{one_based:?} is not a permutation of 1..{n}")));
        }
    }
    Ok(one_based.into_iter().map(|j| j - 1).collect())
}

fn parse_payload(key: &str, kind: &str, v: &Value) -> Result<Payload> {
    Ok(match kind {
        "poly" => Payload::Poly(parse_poly(key, v)?),
        "permutation_table" => {
            let obj = v.as_object().ok_or_else(|| bad(key, "table must be an object"))?;
            let rows = obj
                .iter()
                .map(|(row, perm)| Ok((row.clone(), parse_permutation(key, perm)?)))
                .collect::<Result<_>>()?;
            Payload::PermutationTable(rows)
        }
        "factorization" => {
            let factors = array(key, field(key, v, "factors")?)?
                .iter()
                .map(|pair| {
                    let pair = array(key, pair)?;
                    if pair.len() != 2 {
                        return Err(bad(key, "factor must be [poly, multiplicity]"));
                    }
                    Ok((parse_poly(key, &pair[0])?, parse_usize(key, &pair[1])? as u32))
                })
                .collect::<Result<_>>()?;
            Payload::Factorization(FactorizationClaim {
                unit: parse_int(key, field(key, v, "unit")?)?,
                factors,
            })
        }
        "integer" => Payload::Integer(parse_int(key, v)?),
        "integer_factorization" => {
            let negative = field(key, v, "negative")?
                .as_bool()
                .ok_or_else(|| bad(key, "negative must be a boolean"))?;
            let factors = array(key, field(key, v, "factors")?)?
                .iter()
                .map(|pair| {
                    let pair = array(key, pair)?;
                    if pair.len() != 2 {
                        return Err(bad(key, "factor must be [base, exponent]"));
                    }
                    Ok((parse_int(key, &pair[0])?, parse_usize(key, &pair[1])? as u32))
                })
                .collect::<Result<_>>()?;
            Payload::IntegerFactorization(IntegerFactorization { negative, factors })
        }
        "roots" => Payload::Roots(
            array(key, v)?
                .iter()
                .map(|r| {
                    let s = as_str(key, r)?;
                    s.parse::<f64>().map_err(|_| bad(key, format!("bad decimal {s:?}")))?;
                    Ok(s.to_string())
                })
                .collect::<Result<_>>()?,
        ),
        "family" => {
            let display: Vec<IntPoly> = array(key, field(key, v, "display")?)?
                .iter()
                .map(|c| parse_poly(key, c))
                .collect::<Result<_>>()?;
            let orientation = match v.get("orientation").map(|o| o.as_i64()) {
                None => 1,
                Some(Some(o @ (1 | -1))) => o as i32,
                Some(_) => return Err(bad(key, "orientation must be 1 or -1")),
            };
            let morphism = match v.get("morphism") {
                None => None,
                Some(m) => Some((
                    as_str(key, field(key, m, "map")?)?.to_string(),
                    as_str(key, field(key, m, "source")?)?.to_string(),
                    as_str(key, field(key, m, "target")?)?.to_string(),
                )),
            };
            let special = match v.get("special") {
                None => Vec::new(),
                Some(s) => array(key, s)?
                    .iter()
                    .map(|e| {
                        Ok((
                            parse_int(key, field(key, e, "n")?)?,
                            as_str(key, field(key, e, "equals")?)?.to_string(),
                        ))
                    })
                    .collect::<Result<_>>()?,
            };
            Payload::Family(FamilyEntry {
                display,
                orientation,
                expected_disc: parse_int(key, field(key, v, "expected_disc")?)?,
                morphism,
                special,
            })
        }
        "shift_identities" => Payload::ShiftIdentities(
            array(key, v)?
                .iter()
                .map(|e| {
                    Ok(ShiftIdentity {
                        lhs: as_str(key, field(key, e, "lhs")?)?.to_string(),
                        rhs: as_str(key, field(key, e, "rhs")?)?.to_string(),
                        offset: parse_int(key, field(key, e, "offset")?)?,
                    })
                })
                .collect::<Result<_>>()?,
        ),
        "chain_cycle" => {
            let alpha = as_str(key, field(key, v, "alpha")?)?;
            Payload::ChainCycle(ChainCycle {
                base: as_str(key, field(key, v, "base")?)?.to_string(),
                alpha: alpha
                    .parse()
                    .map_err(|_| bad(key, format!("bad rational {alpha:?}")))?,
                sequence: array(key, field(key, v, "sequence")?)?
                    .iter()
                    .map(|s| Ok(as_str(key, s)?.to_string()))
                    .collect::<Result<_>>()?,
            })
        }
        other => return Err(bad(key, format!("unknown kind {other:?}"))),
    })
}

impl Catalog {
    /// The built-in catalog, parsed once.
    pub fn builtin() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::from_json(BUILTIN).expect("built-in catalog is well formed"))
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        let root: Value = serde_json::from_str(text).map_err(|e| bad("<root>", e.to_string()))?;
        let obj = root
            .as_object()
            .ok_or_else(|| bad("<root>", "catalog must be a JSON object"))?;
        let mut entries = BTreeMap::new();
        for (key, entry) in obj {
            let kind = as_str(key, field(key, entry, "kind")?)?;
            let payload = parse_payload(key, kind, field(key, entry, "value")?)?;
            let provenance = as_str(key, field(key, entry, "provenance")?)?.to_string();
            entries.insert(
                key.clone(),
                CatalogEntry {
                    key: key.clone(),
                    payload,
                    provenance,
                },
            );
        }
        let cat = Catalog { entries };
        cat.check_references()?;
        Ok(cat)
    }

    /// Every key named inside another entry must exist.
    fn check_references(&self) -> Result<()> {
        for e in self.entries.values() {
            let named: Vec<&String> = match &e.payload {
                Payload::Family(f) => f
                    .morphism
                    .iter()
                    .flat_map(|(m, s, t)| [m, s, t])
                    .chain(f.special.iter().map(|(_, k)| k))
                    .collect(),
                Payload::ShiftIdentities(ids) => ids.iter().flat_map(|i| [&i.lhs, &i.rhs]).collect(),
                Payload::ChainCycle(c) => std::iter::once(&c.base).chain(&c.sequence).collect(),
                _ => Vec::new(),
            };
            if let Some(missing) = named.into_iter().find(|k| !self.entries.contains_key(*k)) {
                return Err(bad(&e.key, format!("refers to unknown key {missing:?}")));
            }
        }
        Ok(())
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn get(&self, key: &str) -> Result<&CatalogEntry> {
        self.entries.get(key).ok_or_else(|| Error::UnknownKey(key.to_string()))
    }

    fn wrong_kind(&self, key: &str, want: &str) -> Error {
        let got = self.entries.get(key).map_or("?", |e| e.payload.kind());
        bad(key, format!("expected kind {want}, found {got}"))
    }

    pub fn poly(&self, key: &str) -> Result<&IntPoly> {
        match &self.get(key)?.payload {
            Payload::Poly(p) => Ok(p),
            _ => Err(self.wrong_kind(key, "poly")),
        }
    }

    pub fn permutation_table(&self, key: &str) -> Result<&BTreeMap<String, Vec<usize>>> {
        match &self.get(key)?.payload {
            Payload::PermutationTable(t) => Ok(t),
            _ => Err(self.wrong_kind(key, "permutation_table")),
        }
    }

    pub fn factorization(&self, key: &str) -> Result<&FactorizationClaim> {
        match &self.get(key)?.payload {
            Payload::Factorization(f) => Ok(f),
            _ => Err(self.wrong_kind(key, "factorization")),
        }
    }

    /// An `integer` entry, or the value of an `integer_factorization`.
    pub fn integer(&self, key: &str) -> Result<BigInt> {
        match &self.get(key)?.payload {
            Payload::Integer(n) => Ok(n.clone()),
            Payload::IntegerFactorization(f) => Ok(f.value()),
            _ => Err(self.wrong_kind(key, "integer")),
        }
    }

    pub fn integer_factorization(&self, key: &str) -> Result<&IntegerFactorization> {
        match &self.get(key)?.payload {
            Payload::IntegerFactorization(f) => Ok(f),
            _ => Err(self.wrong_kind(key, "integer_factorization")),
        }
    }

    pub fn roots(&self, key: &str) -> Result<&[String]> {
        match &self.get(key)?.payload {
            Payload::Roots(r) => Ok(r),
            _ => Err(self.wrong_kind(key, "roots")),
        }
    }

    pub fn family(&self, key: &str) -> Result<&FamilyEntry> {
        match &self.get(key)?.payload {
            Payload::Family(f) => Ok(f),
            _ => Err(self.wrong_kind(key, "family")),
        }
    }

    pub fn shift_identities(&self, key: &str) -> Result<&[ShiftIdentity]> {
        match &self.get(key)?.payload {
            Payload::ShiftIdentities(s) => Ok(s),
            _ => Err(self.wrong_kind(key, "shift_identities")),
        }
    }

    pub fn chain_cycle(&self, key: &str) -> Result<&ChainCycle> {
        match &self.get(key)?.payload {
            Payload::ChainCycle(c) => Ok(c),
            _ => Err(self.wrong_kind(key, "chain_cycle")),
        }
    }

    /// Keys of a given kind, in key order.
    pub fn keys_of_kind<'a>(&'a self, kind: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.entries
            .values()
            .filter(move |e| e.payload.kind() == kind)
            .map(|e| e.key.as_str())
    }

    /// Name of the catalog polynomial equal to `p`, if any.
    pub fn name_of(&self, p: &IntPoly) -> Option<&str> {
        self.entries.values().find_map(|e| match &e.payload {
            Payload::Poly(q) if q == p => Some(e.key.as_str()),
            _ => None,
        })
    }

    /// Re-derives every stated claim with the other modules.
    pub fn self_check(&self) -> Report {
        let mut report = Report::new();
        report.extend(self.discriminant_checks());
        report.extend(crate::morphisms::catalog_check(self));
        report.extend(self.composition_checks());
        report.extend(self.root_checks());
        report.extend(crate::families::family_report(self, -20..=20, -5..=5));
        report.extend(crate::chains::cycle_report(self));
        report.extend(self.dynamics_check());
        report
    }

    fn discriminant_checks(&self) -> Report {
        let mut report = Report::new();
        let stated = [("V", "Delta_min"), ("G", "Delta_min"), ("A", "Delta_A"), ("B", "Delta_B")];
        for (poly, value) in stated {
            report.check_result(
                format!("disc({poly}) = {value}"),
                (|| {
                    let d = discriminant(self.poly(poly)?)?;
                    Ok((d == self.integer(value)?, format!("computed {d}")))
                })(),
            );
        }
        report
    }

    fn composition_checks(&self) -> Report {
        let mut report = Report::new();
        let printed = (|| {
            let c = self.poly("D5")?.compose(self.poly("I5")?);
            Ok::<_, Error>((c, self.poly("D5I5")?.clone()))
        })();
        match printed {
            Ok((computed, stated)) if computed == stated => report.push("D5(I5(x)) as printed", Status::Pass, ""),
            Ok((computed, stated)) if computed == -&stated => report.push(
                "D5(I5(x)) as printed",
                Status::Flagged,
                "computed composition is the negative of the printed polynomial",
            ),
            Ok((computed, _)) => report.push("D5(I5(x)) as printed", Status::Fail, format!("computed {computed}")),
            Err(e) => report.push("D5(I5(x)) as printed", Status::Fail, e.to_string()),
        }
        for (comp, value) in [("D5I5", "D5I5_disc"), ("D4I4", "D4I4_disc")] {
            report.check_result(
                format!("disc({comp}) = {value}"),
                (|| {
                    let (outer, inner) = comp.split_at(2);
                    let d = discriminant(&self.poly(outer)?.compose(self.poly(inner)?))?;
                    let f = self.integer_factorization(value)?;
                    Ok((f.matches(&d), format!("computed {d}, stated {f}")))
                })(),
            );
        }
        report
    }

    fn root_checks(&self) -> Report {
        let mut report = Report::new();
        for (poly, key) in [("V", "Roots_V"), ("G", "Roots_G")] {
            let name = format!("roots of {poly} to two decimals");
            let run = (|| {
                let iso = crate::realroots::isolate(self.poly(poly)?)?;
                Ok::<_, Error>((iso.decimals(2)?, iso.truncated_decimals(2)?, self.roots(key)?))
            })();
            match run {
                Ok((rounded, _, stated)) if rounded == stated => report.push(name, Status::Pass, "rounded"),
                Ok((rounded, truncated, stated)) if truncated == stated => report.push(
                    name,
                    Status::Flagged,
                    format!("stated values are truncated, not rounded (rounded: {})", rounded.join(", ")),
                ),
                Ok((rounded, _, _)) => report.push(name, Status::Fail, format!("computed {}", rounded.join(", "))),
                Err(e) => report.push(name, Status::Fail, e.to_string()),
            }
        }
        report
    }

    fn dynamics_check(&self) -> Report {
        let mut report = Report::new();
        report.check_result(
            "iterate(2-x^2, 5) - x divisible by V",
            (|| {
                let f5 = &self.poly("OrbitMap")?.iterate_map(5) - &IntPoly::x();
                let (_, r, _) = f5.pseudo_divrem(self.poly("V")?)?;
                Ok((r.is_zero(), format!("remainder {r}")))
            })(),
        );
        report
    }
}
