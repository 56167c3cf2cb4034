use mwq_core::arith::{
    frac, is_perfect_square, parse_unipoly, rat, rational_roots, RatFn, Rational, UniPoly,
};
use mwq_core::quartic::PreparedQuartic;
use mwq_core::report::{EXAMPLE_2A1, EXAMPLE_A3};
use mwq_core::surface::{
    all_fibers, corr_i_n, halve, kodaira_type_at, section_o_intersection, two_torsion_free,
    two_torsion_roots, ComponentOverride, HeightContext, Kodaira, Place, PlaceData, SectionPoint,
    WeierstrassCurve,
};
use mwq_core::Error;
use proptest::prelude::*;

fn curve(c1: &str, c2: &str, c3: &str) -> WeierstrassCurve {
    let p = |s: &str| parse_unipoly(s).unwrap();
    WeierstrassCurve::new(p(c1), p(c2), p(c3)).unwrap()
}

fn example(q: &str) -> WeierstrassCurve {
    PreparedQuartic::parse(q).unwrap().surface().clone()
}

fn pt(s: &str) -> SectionPoint {
    SectionPoint::parse(s).unwrap()
}

fn fiber_summary(e: &WeierstrassCurve) -> Vec<String> {
    all_fibers(e)
        .unwrap()
        .iter()
        .filter(|p| p.kodaira != Kodaira::I(0))
        .map(|p| format!("{}:{}", p.place, p.kodaira))
        .collect()
}

#[test]
fn discriminant_of_a_constant_curve() {
    let e = curve("0", "0", "1");
    assert_eq!(e.discriminant(), UniPoly::from_ints(&[-27]));
    assert!(WeierstrassCurve::new(UniPoly::zero(), UniPoly::zero(), UniPoly::zero()).is_err());
    assert!(matches!(
        WeierstrassCurve::new(UniPoly::t().pow(3), UniPoly::zero(), UniPoly::one()),
        Err(Error::Degree(_))
    ));
}

#[test]
fn kodaira_from_orders() {
    let cases: [((Option<u32>, Option<u32>, u32), Kodaira); 12] = [
        ((Some(0), Some(0), 1), Kodaira::I(1)),
        ((Some(0), Some(0), 5), Kodaira::I(5)),
        ((Some(1), Some(1), 2), Kodaira::II),
        ((Some(1), Some(2), 3), Kodaira::III),
        ((Some(2), Some(2), 4), Kodaira::IV),
        ((Some(2), Some(3), 6), Kodaira::IStar(0)),
        ((None, Some(3), 6), Kodaira::IStar(0)),
        ((Some(2), Some(3), 9), Kodaira::IStar(3)),
        ((Some(3), Some(4), 8), Kodaira::IVStar),
        ((Some(3), Some(5), 9), Kodaira::IIIStar),
        ((Some(4), Some(5), 10), Kodaira::IIStar),
        ((Some(0), Some(0), 0), Kodaira::I(0)),
    ];
    for ((a, b, d), k) in cases {
        assert_eq!(Kodaira::from_orders(a, b, d).unwrap(), k, "{a:?} {b:?} {d}");
    }
    assert!(Kodaira::from_orders(Some(4), Some(6), 12).is_err());
}

#[test]
fn fiber_configurations() {
    assert_eq!(fiber_summary(&curve("0", "0", "t^4")), ["0:IV*", "inf:IV"]);
    assert_eq!(
        fiber_summary(&curve("0", "t^3", "0")),
        ["0:III*", "inf:III"]
    );
    assert_eq!(fiber_summary(&curve("0", "0", "t^5")), ["0:II*", "inf:II"]);
    assert_eq!(
        fiber_summary(&curve("t", "2*t^2", "3*t^3")),
        ["0:I0*", "inf:I0*"]
    );
    assert_eq!(
        fiber_summary(&curve("t", "t^3", "0")),
        ["0:I2*", "1/4:I1", "inf:III"]
    );
    for e in [curve("0", "0", "t^6 + 1"), curve("t", "t^3", "0")] {
        let sum: u32 = all_fibers(&e)
            .unwrap()
            .iter()
            .map(PlaceData::euler_contribution)
            .sum();
        assert_eq!(sum, 12);
    }
    assert!(matches!(all_fibers(&curve("0", "0", "1")), Err(_)));
}

#[test]
fn example_fibers() {
    let e = example(EXAMPLE_A3.quartic);
    let ctx = HeightContext::new(e.clone()).unwrap();
    let red: Vec<_> = ctx
        .reducible_places()
        .map(|p| format!("{}:{}", p.place, p.kodaira))
        .collect();
    assert_eq!(red, ["0:I4", "inf:III"]);
    assert_eq!(ctx.euler_sum(), 12);
    assert!(kodaira_type_at(&e, &Place::at(rat(5))).is_err());
    let i4 = ctx.place(&Place::at(rat(0))).unwrap();
    assert_eq!(i4.corr(1, 1).unwrap(), frac(3, 4));
    assert_eq!(i4.corr(1, 2).unwrap(), frac(1, 2));
    assert_eq!(i4.corr(2, 2).unwrap(), rat(1));
    assert_eq!(i4.corr(1, 3).unwrap(), frac(1, 4));
    assert!(i4.corr(4, 1).is_err());
}

/// `Corr` read from the inverse Cartan matrix equals the `I_n` closed form.
#[test]
fn corr_closed_form_matches_cartan_inverse() {
    for n in 2..=9u32 {
        let pd = PlaceData::new(Place::at(rat(0)), Kodaira::I(n), n);
        for i in 0..n as usize {
            for j in 0..n as usize {
                assert_eq!(
                    pd.corr(i, j).unwrap(),
                    corr_i_n(n, i as u32, j as u32),
                    "I{n} ({i},{j})"
                );
            }
        }
    }
    assert_eq!(corr_i_n(2, 1, 1), frac(1, 2));
    assert_eq!(corr_i_n(5, 1, 1), frac(4, 5));
}

#[test]
fn corr_on_additive_fibers() {
    let at = |k: Kodaira| PlaceData::new(Place::Infinity, k, k.euler_number());
    assert_eq!(at(Kodaira::III).corr(1, 1).unwrap(), frac(1, 2));
    let iv = at(Kodaira::IV);
    assert_eq!(iv.corr(1, 1).unwrap(), frac(2, 3));
    assert_eq!(iv.corr(1, 2).unwrap(), frac(1, 3));
    for n in 0..4u32 {
        let d = at(Kodaira::IStar(n));
        let m = n as usize + 4;
        let quarter = frac(n as i64, 4);
        assert_eq!(d.corr(1, 1).unwrap(), rat(1));
        assert_eq!(d.corr(m, m).unwrap(), rat(1) + &quarter);
        assert_eq!(d.corr(1, m).unwrap(), frac(1, 2));
        assert_eq!(d.corr(m - 1, m).unwrap(), frac(1, 2) + &quarter);
    }
    let e6 = at(Kodaira::IVStar);
    assert_eq!(e6.corr(1, 1).unwrap(), frac(4, 3));
    assert_eq!(e6.corr(1, 6).unwrap(), frac(2, 3));
    assert_eq!(at(Kodaira::IIIStar).corr(7, 7).unwrap(), frac(3, 2));
    assert!(at(Kodaira::IIIStar).corr(3, 3).is_err());
}

#[test]
fn intersection_with_zero_section() {
    let x = RatFn::new(UniPoly::one(), parse_unipoly("(t - 1)^2").unwrap());
    let y = RatFn::new(UniPoly::one(), parse_unipoly("(t - 1)^3").unwrap());
    assert_eq!(section_o_intersection(&SectionPoint::new(x, y)).unwrap(), 1);
    let quartic_x = pt("(t^4, t^6)");
    assert_eq!(section_o_intersection(&quartic_x).unwrap(), 1);
    assert_eq!(section_o_intersection(&pt("(t^2 + 1, t^3)")).unwrap(), 0);
    assert!(section_o_intersection(&pt("(1/(t - 1), 1)")).is_err());
}

#[test]
fn two_torsion() {
    // The cubic has the root u = t.
    let e = curve("1 - t", "t^3 + 2 - t", "-t^4 - 2*t");
    assert!(!two_torsion_free(&e));
    assert_eq!(two_torsion_roots(&e), vec![UniPoly::t()]);
    assert!(two_torsion_free(&example(EXAMPLE_2A1.quartic)));
    assert!(two_torsion_free(&example(EXAMPLE_A3.quartic)));
}

#[test]
fn heights_on_the_two_node_example() {
    let e = example(EXAMPLE_2A1.quartic);
    let ctx = HeightContext::new(e.clone()).unwrap();
    let so = pt(EXAMPLE_2A1.s_o);
    assert_eq!(ctx.corr_sum(&so, &so, &[]).unwrap(), frac(3, 2));
    assert_eq!(ctx.height(&so).unwrap(), frac(1, 2));
    assert_eq!(
        ctx.height_pairing(&so, &SectionPoint::Zero, &[]).unwrap(),
        rat(0)
    );
    assert_eq!(
        ctx.height_pairing(&so.neg(), &so, &[]).unwrap(),
        frac(-1, 2)
    );
    // Forcing s_o onto the identity component at t = 0 drops that Corr term.
    let ov = ComponentOverride {
        place: Place::at(rat(0)),
        first: 0,
        second: 0,
    };
    assert_eq!(ctx.height_pairing(&so, &so, &[ov]).unwrap(), rat(1));
    assert!(ctx.height(&pt("(1, 1)")).is_err());
}

#[test]
fn group_law_basics() {
    let e = example(EXAMPLE_A3.quartic);
    let (a, b) = (pt(EXAMPLE_A3.s1_tilde), pt(EXAMPLE_A3.s2_tilde));
    assert_eq!(e.add(&a, &b).unwrap(), pt(EXAMPLE_A3.s2));
    assert_eq!(
        e.multiple(3, &a).unwrap(),
        e.add(&e.double(&a).unwrap(), &a).unwrap()
    );
    assert_eq!(e.multiple(-2, &a).unwrap(), e.double(&a).unwrap().neg());
    assert!(e.add(&a, &a.neg()).unwrap().is_zero());
    assert!(e.add(&a, &pt("(1, 2)")).is_err());
    let sp = e.specialize(&rat(3)).unwrap();
    assert_eq!(
        e.add(&a, &b).unwrap().specialize(&rat(3)),
        sp.add(&a.specialize(&rat(3)), &b.specialize(&rat(3)))
            .unwrap()
    );
    assert!(e.specialize(&rat(0)).is_err());
}

/// Truncated power series in `τ = t − t₀`, three terms.
type Series = [Rational; 3];

fn s_mul(a: &Series, b: &Series) -> Series {
    let mut c: Series = Default::default();
    for i in 0..3 {
        for j in 0..3 - i {
            c[i + j] += &a[i] * &b[j];
        }
    }
    c
}

fn s_inv(a: &Series) -> Series {
    let i0 = a[0].recip();
    let i1 = -(&a[1] * &i0) * &i0;
    let i2 = -(&a[1] * &i1 + &a[2] * &i0) * &i0;
    [i0, i1, i2]
}

fn series_of(p: &UniPoly, t0: &Rational) -> Series {
    let q = p.compose(&UniPoly::from_coeffs(vec![t0.clone(), rat(1)]));
    [q.coeff(0), q.coeff(1), q.coeff(2)]
}

/// Halves by lifting each rational root of the specialized halving quartic to a
/// power series and testing the truncation as an exact polynomial abscissa.
fn halve_by_series(e: &WeierstrassCurve, p: &SectionPoint) -> Option<SectionPoint> {
    let (x, _) = p.polynomial_coords().unwrap();
    let [a, b, c] = [1, 2, 3].map(|k| e.c(k).clone());
    let four = UniPoly::from_ints(&[4]);
    let fx = &four * x;
    let coeffs = [
        &(&(&b * &b) - &(&(&four * &a) * &c)) - &(&fx * &c),
        &(&UniPoly::from_ints(&[-8]) * &c) - &(&fx * &b),
        &(&UniPoly::from_ints(&[-2]) * &b) - &(&fx * &a),
        -&fx,
        UniPoly::one(),
    ];
    let t0 = (1..)
        .map(rat)
        .find(|t| e.discriminant().eval(t) != rat(0))
        .unwrap();
    let cs: Vec<Series> = coeffs.iter().map(|k| series_of(k, &t0)).collect();
    let eval = |xs: &Series| {
        let mut acc: Series = Default::default();
        for k in cs.iter().rev() {
            acc = s_mul(&acc, xs);
            for i in 0..3 {
                acc[i] += &k[i];
            }
        }
        acc
    };
    let deriv = |xs: &Series| {
        let mut acc: Series = Default::default();
        for (d, k) in cs.iter().enumerate().skip(1).rev() {
            acc = s_mul(&acc, xs);
            for i in 0..3 {
                acc[i] += &k[i] * rat(d as i64);
            }
        }
        acc
    };
    let at_t0 = UniPoly::from_coeffs(cs.iter().map(|k| k[0].clone()).collect());
    let mut roots = rational_roots(&at_t0);
    roots.dedup();
    for r in roots {
        let mut xs: Series = [r, rat(0), rat(0)];
        for _ in 0..2 {
            let f = eval(&xs);
            let step = s_mul(&f, &s_inv(&deriv(&xs)));
            for i in 0..3 {
                xs[i] -= &step[i];
            }
        }
        let tau = UniPoly::from_coeffs(xs.to_vec());
        let xh = tau.compose(&UniPoly::from_coeffs(vec![-t0.clone(), rat(1)]));
        let rhs = e.rhs(&RatFn::from_poly(xh.clone()));
        if let Some(yh) = rhs.as_poly().and_then(is_perfect_square) {
            for y in [yh.clone(), -&yh] {
                let h = SectionPoint::from_polys(xh.clone(), y);
                if e.double(&h).unwrap() == *p {
                    return Some(h);
                }
            }
        }
    }
    None
}

#[test]
fn halving_agrees_with_series_lifting() {
    for ex in [&EXAMPLE_2A1, &EXAMPLE_A3] {
        let e = example(ex.quartic);
        for s in [ex.s1, ex.s2] {
            let s = pt(s);
            let got = halve(&e, &s).unwrap();
            let oracle = halve_by_series(&e, &s);
            assert_eq!(got.is_some(), oracle.is_some(), "{}", ex.id);
            if let (Some(g), Some(o)) = (got, oracle) {
                assert!(g == o || g == o.neg());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `P` with small polynomial coordinates, `c₃` chosen so that `P` lies on the curve.
    #[test]
    fn halving_is_sound_on_random_points(
        x in prop::collection::vec(-4i64..=4, 1..=3),
        y in prop::collection::vec(-4i64..=4, 1..=4),
        c1 in prop::collection::vec(-3i64..=3, 1..=3),
        c2 in prop::collection::vec(-3i64..=3, 1..=5),
    ) {
        let (x, y) = (UniPoly::from_ints(&x), UniPoly::from_ints(&y));
        let (c1, c2) = (UniPoly::from_ints(&c1), UniPoly::from_ints(&c2));
        let cubic_part = &(&(&x * &x) * &x) + &(&(&c1 * &(&x * &x)) + &(&c2 * &x));
        let c3 = &(&y * &y) - &cubic_part;
        let e = WeierstrassCurve::new(c1, c2, c3);
        prop_assume!(e.is_ok());
        let e = e.unwrap();
        let p = SectionPoint::from_polys(x, y);
        let got = halve(&e, &p);
        prop_assume!(got.is_ok());
        let got = got.unwrap();
        prop_assert_eq!(got.is_some(), halve_by_series(&e, &p).is_some());
        if let Some(h) = got {
            prop_assert_eq!(e.double(&h).unwrap(), p);
        }
    }
}
