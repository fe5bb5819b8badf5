//! Cross-module invariants on the reference polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use orbit_equiv::catalog::Catalog;
use orbit_equiv::chains::{orbit, ChainSpec};
use orbit_equiv::morphisms::{catalog_morphism, compose_morphisms, find_isomorphisms, invert, verify, Morphism, SearchOptions};
use orbit_equiv::polyring::discriminant;
use orbit_equiv::quotient::{compose_mod_int, minimal_polynomial};
use orbit_equiv::realroots::{invert_permutation, isolate, real_root_count};
use orbit_equiv::report::Status;
use orbit_equiv::{IntPoly, RatPoly};

fn cat() -> &'static Catalog {
    Catalog::builtin()
}

fn poly(key: &str) -> &'static IntPoly {
    cat().poly(key).unwrap()
}

#[test]
fn automorphisms_of_v_form_a_cyclic_group() {
    let v = poly("V");
    let auts = find_isomorphisms(v, v, &SearchOptions::default()).unwrap().morphisms;
    assert_eq!(auts.len(), 5);
    let quadratic: RatPoly = "2-x^2".parse().unwrap();
    assert!(auts.iter().any(|m| m.map().rep() == &quadratic));
    for a in &auts {
        // each element kills V and has order dividing 5
        assert!(compose_mod_int(v, a.map()).is_zero());
        let mut p = a.clone();
        for _ in 1..5 {
            p = compose_morphisms(&p, a).unwrap();
        }
        assert!(p.is_identity(), "{:?} has order not dividing 5", a.map());
        for b in &auts {
            let ab = compose_morphisms(a, b).unwrap();
            assert!(auts.contains(&ab));
        }
    }
    // a generator: 2 - x^2 has order exactly 5
    let g = auts.iter().find(|m| m.map().rep() == &quadratic).unwrap();
    let mut p = g.clone();
    let mut order = 1;
    while !p.is_identity() {
        p = compose_morphisms(&p, g).unwrap();
        order += 1;
    }
    assert_eq!(order, 5);
}

#[test]
fn inverse_maps_induce_inverse_permutations() {
    for l in 1..=5 {
        let d = catalog_morphism(cat(), &format!("D{l}")).unwrap().with_permutation().unwrap();
        let i = invert(&d).unwrap().with_permutation().unwrap();
        assert_eq!(i.permutation().unwrap(), invert_permutation(d.permutation().unwrap()));
        let stored = catalog_morphism(cat(), &format!("I{l}")).unwrap();
        assert_eq!(i, stored);
    }
}

#[test]
fn direct_images_keep_the_discriminant() {
    for l in 1..=5 {
        let d = catalog_morphism(cat(), &format!("D{l}")).unwrap();
        let m = minimal_polynomial(d.map());
        assert_eq!(&m, poly("G"));
        assert_eq!(discriminant(&m).unwrap(), BigInt::from(14641));
    }
}

#[test]
fn search_rejects_all_other_permutations() {
    let out = find_isomorphisms(poly("V"), poly("G"), &SearchOptions::default()).unwrap();
    assert_eq!(out.morphisms.len() + out.rejected.len(), 120);
}

#[test]
fn chain_discriminants_share_the_field_factor() {
    let o = orbit(poly("V"), &ChainSpec::constant_int(2), 10).unwrap();
    let base = BigInt::from(14641);
    for s in &o.states {
        assert!((&s.disc % &base).is_zero(), "step {}", s.index);
        let q = &s.disc / &base;
        let r = q.sqrt();
        assert_eq!(&r * &r, q, "step {}: cofactor not a square", s.index);
    }
    // the second state is the bridge T: V -> G
    assert_eq!(o.states[1].minpoly, *poly("G"));
    assert!(verify(&poly("T").to_rat(), poly("V"), poly("G")).unwrap());
    // reported period is a true repetition of exact states
    let p = o.period.unwrap();
    for k in o.preperiod.unwrap()..o.states.len() - p {
        assert_eq!(o.states[k].r, o.states[k + p].r);
    }
}

#[test]
fn non_constant_rules_are_followed_exactly() {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let spec = ChainSpec::sequence(vec![half.clone(), BigRational::zero(), half]).unwrap();
    let o = orbit(poly("V"), &spec, 3).unwrap();
    assert_eq!(o.states.len(), 3);
    assert!(orbit(poly("V"), &spec, 4).is_err());
}

#[test]
fn sturm_counts_match_isolation() {
    for key in ["V", "G", "A", "B", "D5I5"] {
        let p = poly(key);
        let iso = isolate(p).unwrap();
        assert_eq!(iso.len(), real_root_count(p).unwrap());
        for (i, iv) in iso.intervals().iter().enumerate() {
            let w = BigRational::new(BigInt::one(), BigInt::from(1u64 << 40));
            let fine = iso.refine(i, &w).unwrap();
            assert!(iv.closed().contains_interval(&fine));
            assert_eq!(iso.count_in(&fine.lo, &fine.hi), 1);
        }
    }
    let mixed: IntPoly = "x^5-2".parse().unwrap();
    assert_eq!(isolate(&mixed).unwrap().len(), 1);
}

#[test]
fn mixed_signature_has_only_the_identity() {
    let f: IntPoly = "x^5-2".parse().unwrap();
    let out = find_isomorphisms(&f, &f, &SearchOptions::default()).unwrap();
    assert_eq!(out.morphisms, vec![Morphism::identity(&f).unwrap()]);
}

#[test]
fn catalog_self_check_has_no_failures() {
    let report = cat().self_check();
    assert_eq!(report.count(Status::Fail), 0, "{report}");
    let flagged: Vec<&str> = report
        .items
        .iter()
        .filter(|i| i.status == Status::Flagged)
        .map(|i| i.name.as_str())
        .collect();
    assert_eq!(flagged.len(), 4, "{flagged:?}");
}

#[test]
fn every_catalog_polynomial_round_trips() {
    for key in cat().keys_of_kind("poly") {
        let p = poly(key);
        assert_eq!(&p.to_string().parse::<IntPoly>().unwrap(), p, "{key}");
        assert_eq!(&p.to_list_string().parse::<IntPoly>().unwrap(), p, "{key}");
    }
}
