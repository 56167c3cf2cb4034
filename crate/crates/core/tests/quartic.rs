use mwq_core::arith::{parse_bipoly, UniPoly};
use mwq_core::quartic::{
    combinatorial_type, conic_from_section, dihedral_feasibility, even_tangency,
    find_splitting_certificate, lift_conic, qr_symbol, singular_configuration, zariski_pair_check,
    Conic, Feasibility, PreparedQuartic, SymbolRoute, Verdict,
};
use mwq_core::report::{ExampleData, EXAMPLE_2A1, EXAMPLE_A3};
use mwq_core::surface::SectionPoint;
use mwq_core::Error;

fn setup(ex: &ExampleData) -> (PreparedQuartic, Conic, Conic) {
    (
        PreparedQuartic::parse(ex.quartic).unwrap(),
        Conic::parse(ex.conic1).unwrap(),
        Conic::parse(ex.conic2).unwrap(),
    )
}

#[test]
fn example_conics_are_even_tangential() {
    for ex in [&EXAMPLE_2A1, &EXAMPLE_A3] {
        let (q, c1, c2) = setup(ex);
        for c in [&c1, &c2] {
            let r = even_tangency(&q, c).unwrap();
            assert!(r.is_even_tangential, "{}", ex.id);
            assert_eq!(r.total_multiplicity(), 8);
            assert_eq!(r.multiset(), vec![2, 2, 2, 2]);
            let h = r.sqrt_witness.unwrap();
            assert_eq!(&h * &h, r.restriction);
        }
    }
}

#[test]
fn perturbed_conic_is_not_even_tangential() {
    let (q, c1, _) = setup(&EXAMPLE_A3);
    let moved = Conic::new(c1.q() + &UniPoly::one()).unwrap();
    let r = even_tangency(&q, &moved).unwrap();
    assert_eq!(r.total_multiplicity(), 8);
    assert!(!r.is_even_tangential);
    assert!(lift_conic(&q, &moved).is_err());
}

#[test]
fn four_fold_contact() {
    let q = PreparedQuartic::parse(EXAMPLE_A3.quartic).unwrap();
    let c = Conic::parse("u = t^2").unwrap();
    let r = even_tangency(&q, &c).unwrap();
    assert!(r.is_even_tangential);
    assert_eq!(r.multiset(), vec![2, 2, 4]);
    assert_eq!(r.point_count(), 3);
}

#[test]
fn lift_and_conic_round_trip() {
    for ex in [&EXAMPLE_2A1, &EXAMPLE_A3] {
        let (q, c1, c2) = setup(ex);
        for c in [c1, c2] {
            let (plus, minus) = lift_conic(&q, &c).unwrap();
            assert_eq!(plus.neg(), minus);
            assert_eq!(conic_from_section(&plus).unwrap(), c);
        }
        let s1 = SectionPoint::parse(ex.s1).unwrap();
        assert_eq!(
            conic_from_section(&s1).unwrap(),
            Conic::parse(ex.conic1).unwrap()
        );
    }
    assert!(conic_from_section(&SectionPoint::Zero).is_err());
}

#[test]
fn certificates_verify_and_detect_corruption() {
    for ex in [&EXAMPLE_2A1, &EXAMPLE_A3] {
        let (q, c1, c2) = setup(ex);
        let sym = qr_symbol(&q, &c1).unwrap();
        assert_eq!(sym.value, 1);
        assert_eq!(sym.route, SymbolRoute::Halving);
        let cert = sym.certificate.unwrap();
        assert!(cert.verify(q.f()));
        let half = cert.half_section();
        let doubled = q.surface().double(&half).unwrap();
        assert_eq!(doubled.x().unwrap().as_poly(), Some(c1.q()));
        let mut bad = cert.clone();
        bad.a3 = &bad.a3 + &UniPoly::one();
        assert!(!bad.verify(q.f()));
        assert!(find_splitting_certificate(&q, &c1).unwrap().is_some());
        assert!(find_splitting_certificate(&q, &c2).unwrap().is_none());
        let other = qr_symbol(&q, &c2).unwrap();
        assert_eq!(
            (other.value, other.route),
            (-1, SymbolRoute::HalvingAbsence)
        );
    }
}

#[test]
fn zariski_verdicts() {
    for ex in [&EXAMPLE_2A1, &EXAMPLE_A3] {
        let (q, c1, c2) = setup(ex);
        let rep = zariski_pair_check((&q, &c1), (&q, &c2)).unwrap();
        assert_eq!(rep.verdict, Verdict::ZariskiPair);
        assert_eq!(rep.types[0], rep.types[1]);
        let same = zariski_pair_check((&q, &c1), (&q, &c1)).unwrap();
        assert_eq!(same.verdict, Verdict::Inconclusive);
    }
    let (q, c1, _) = setup(&EXAMPLE_A3);
    let c4 = Conic::parse("u = t^2").unwrap();
    assert_ne!(
        combinatorial_type(&q, &c1).unwrap(),
        combinatorial_type(&q, &c4).unwrap()
    );
    assert_eq!(
        zariski_pair_check((&q, &c1), (&q, &c4)).unwrap().verdict,
        Verdict::NotComparable
    );
}

#[test]
fn dihedral_feasibility_follows_the_symbol() {
    let (q, c1, c2) = setup(&EXAMPLE_2A1);
    assert_eq!(
        dihedral_feasibility(&q, &c1).unwrap().feasibility,
        Feasibility::AllN
    );
    assert_eq!(
        dihedral_feasibility(&q, &c2).unwrap().feasibility,
        Feasibility::NoOddPrime
    );
}

#[test]
fn configurations_of_examples_and_a_smooth_quartic() {
    for ex in [&EXAMPLE_2A1, &EXAMPLE_A3] {
        let cfg = singular_configuration(&PreparedQuartic::parse(ex.quartic).unwrap()).unwrap();
        assert_eq!(cfg.sing_type.to_string(), ex.sing_type);
        assert!(cfg.rows.contains(&ex.row), "{}", ex.id);
    }
    let smooth = PreparedQuartic::parse("u^3 + u^2 + t^3*u + t^4 + 1").unwrap();
    let cfg = singular_configuration(&smooth).unwrap();
    assert!(cfg.sing_type.is_empty());
    assert_eq!(cfg.rows, vec![59]);
}

#[test]
fn degree_and_shape_errors() {
    assert!(matches!(Conic::parse("u = t^3"), Err(Error::Degree(_))));
    assert!(matches!(Conic::parse("u = t + 1"), Err(Error::Invalid(_))));
    assert!(Conic::new_allow_degenerate(UniPoly::t())
        .unwrap()
        .is_degenerate());
    assert!(Conic::parse("v = t^2").is_err());
    let f = parse_bipoly("u^3 + t^3*u^2 + 1").unwrap();
    assert!(matches!(PreparedQuartic::new(f), Err(Error::Degree(_))));
    assert!(PreparedQuartic::parse("t*u^3 + 1").is_err());
    // u³ − t³ has the root u = t.
    assert!(PreparedQuartic::parse("u^3 - t^3").is_err());
}

#[test]
fn equation_form_is_accepted() {
    let a = PreparedQuartic::parse("u^3 = -(25*t + 9)*u^2 - (144*t^2 + t^3)*u - 16*t^4").unwrap();
    let b = PreparedQuartic::parse(EXAMPLE_A3.quartic).unwrap();
    assert_eq!(a.f(), b.f());
    let scaled =
        PreparedQuartic::parse("2*u^3 + 2*(25*t + 9)*u^2 + 2*(144*t^2 + t^3)*u + 32*t^4").unwrap();
    assert_eq!(scaled.f(), b.f());
}
