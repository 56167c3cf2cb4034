use std::collections::BTreeMap;

use mwq_core::arith::{
    coprime_base, frac, interpolate, is_perfect_square, parse_bipoly, parse_ratfn, parse_unipoly,
    poly_gcd, rat, rational_roots, resultant_u, root_branch_candidates, squarefree_decompose,
    BiPoly, RatFn, Rational, UniPoly,
};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 0..6)
        .prop_map(|c| UniPoly::from_coeffs(c.into_iter().map(|(n, d)| frac(n, d)).collect()))
}

fn nonzero_poly() -> impl Strategy<Value = UniPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(poly(), 0..4).prop_map(BiPoly::from_coeffs)
}

/// Rational roots by the classical candidate list `±a/b`, `a | c₀`, `b | c_n`.
fn divisor_candidate_roots(p: &UniPoly) -> Vec<Rational> {
    let ints = p.primitive_integer();
    let lo = ints.iter().position(|c| c != &0.into()).unwrap();
    let c0: i64 = ints[lo].clone().try_into().unwrap();
    let cn: i64 = ints.last().unwrap().clone().try_into().unwrap();
    let divisors = |n: i64| (1..=n.abs()).filter(move |d| n % d == 0);
    let mut out = Vec::new();
    if lo > 0 {
        out.extend(std::iter::repeat(rat(0)).take(lo));
    }
    let mut seen = Vec::new();
    for a in divisors(c0) {
        for b in divisors(cn) {
            for r in [frac(a, b), frac(-a, b)] {
                if seen.contains(&r) {
                    continue;
                }
                seen.push(r.clone());
                let lin = UniPoly::linear_root(&r);
                let mut cur = p.clone();
                while let Some(q) = cur.exact_div(&lin) {
                    out.push(r.clone());
                    cur = q;
                }
            }
        }
    }
    out.sort();
    out
}

/// Determinant over Q by Gaussian elimination.
fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = rat(1);
    for i in 0..n {
        let Some(p) = (i..n).find(|&r| m[r][i] != rat(0)) else {
            return rat(0);
        };
        if p != i {
            m.swap(p, i);
            d = -d;
        }
        d *= m[i][i].clone();
        for r in i + 1..n {
            let f = &m[r][i] / &m[i][i];
            for c in i..n {
                let s = &f * &m[i][c];
                m[r][c] -= s;
            }
        }
    }
    d
}

fn sylvester_resultant(f: &UniPoly, g: &UniPoly) -> Rational {
    let (m, n) = (f.deg() as usize, g.deg() as usize);
    let size = m + n;
    let mut rows = Vec::new();
    for (p, k, shifts) in [(f, m, n), (g, n, m)] {
        for s in 0..shifts {
            let mut row = vec![rat(0); size];
            for i in 0..=k {
                row[s + i] = p.coeff(k - i);
            }
            rows.push(row);
        }
    }
    det(rows)
}

#[test]
fn parses_mixed_forms() {
    let p = parse_unipoly("(t - 1)^2*(2*t + 3)/4").unwrap();
    assert_eq!(
        p,
        UniPoly::from_coeffs(vec![frac(3, 4), frac(-1, 1), frac(-1, 4), frac(1, 2)])
    );
    let f = parse_bipoly("u^3 + t*u - 2").unwrap();
    assert_eq!(f.coeff(1), UniPoly::t());
    assert_eq!(f.coeff(0), UniPoly::from_ints(&[-2]));
    let r = parse_ratfn("(t^2 - 1)/(t - 1)").unwrap();
    assert_eq!(r.as_poly(), Some(&UniPoly::from_ints(&[1, 1])));
}

#[test]
fn rejects_malformed_input() {
    for bad in ["t^", "(t + 1", "t ** 2", "2 $ t", "t^-1"] {
        assert!(parse_unipoly(bad).is_err(), "{bad}");
    }
    assert!(parse_ratfn("1/(t - t)").is_err());
}

#[test]
fn perfect_square_detection() {
    let p = parse_unipoly("3*t^2 - t + 5/2").unwrap();
    let sq = &p * &p;
    let r = is_perfect_square(&sq).unwrap();
    assert!(r == p || r == -&p);
    assert!(is_perfect_square(&(&sq * &UniPoly::from_ints(&[1, 1]))).is_none());
    assert!(is_perfect_square(&sq.scale(&rat(2))).is_none());
    assert!(is_perfect_square(&UniPoly::from_ints(&[-4])).is_none());
}

#[test]
fn coprime_base_splits_shared_factors() {
    let a = parse_unipoly("t*(t - 1)^2").unwrap();
    let b = parse_unipoly("(t - 1)*(t + 2)").unwrap();
    let mut base: Vec<String> = coprime_base(&[a.clone(), b.clone()])
        .iter()
        .map(|p| p.monic().to_string())
        .collect();
    base.sort();
    assert_eq!(base, ["t", "t + 2", "t - 1"]);
}

#[test]
fn roots_found_past_small_divisors() {
    // Root 1024/3 has many divisor candidates; the lifting must still find it.
    let p = parse_unipoly("(3*t - 1024)*(t^2 + 7)*(5*t + 2)^2").unwrap();
    assert_eq!(
        rational_roots(&p),
        vec![frac(-2, 5), frac(-2, 5), frac(1024, 3)]
    );
}

#[test]
fn interpolation_detects_inconsistent_points() {
    let pts: Vec<_> = [(0, 1), (1, 2), (2, 5), (3, 11)]
        .iter()
        .map(|&(x, y)| (rat(x), rat(y)))
        .collect();
    assert_eq!(interpolate(&pts, 2).unwrap(), None);
    assert!(interpolate(&pts[..2], 2).is_err());
    let fit = interpolate(&pts[..3], 2).unwrap().unwrap();
    assert_eq!(fit, UniPoly::from_ints(&[1, 0, 1]));
}

#[test]
fn branch_candidates_recover_the_hidden_polynomial() {
    let f = parse_unipoly("t^2/2 - 3*t + 1").unwrap();
    let pts: Vec<Rational> = (1..=6).map(rat).collect();
    let roots: Vec<Vec<Rational>> = pts
        .iter()
        .map(|x| vec![f.eval(x), -f.eval(x) + rat(1)])
        .collect();
    let cands = root_branch_candidates(&pts, &roots, 2).unwrap();
    assert!(cands.contains(&f));
    for c in &cands {
        assert!(pts.iter().zip(&roots).all(|(x, r)| r.contains(&c.eval(x))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parse_round_trip(p in poly(), f in bipoly()) {
        prop_assert_eq!(parse_unipoly(&p.to_string()).unwrap(), p);
        prop_assert_eq!(parse_bipoly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&a - &b) + &b) == a);
    }

    #[test]
    fn division_with_remainder(a in poly(), d in nonzero_poly()) {
        let (q, r) = a.div_rem(&d);
        prop_assert_eq!(&(&q * &d) + &r, a);
        prop_assert!(r.is_zero() || r.deg() < d.deg());
    }

    #[test]
    fn gcd_divides_and_is_maximal(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = poly_gcd(&ac, &bc);
        prop_assert!(g.divides(&ac) && g.divides(&bc));
        prop_assert!(c.divides(&g));
    }

    #[test]
    fn squarefree_decomposition_reassembles(a in nonzero_poly(), b in nonzero_poly()) {
        let p = &(&a * &b) * &(&b * &b);
        let parts = squarefree_decompose(&p);
        let mut prod = UniPoly::one();
        for (f, k) in &parts {
            prod = &prod * &f.pow(*k);
            prop_assert!(poly_gcd(f, &f.derivative()).is_constant());
        }
        for (i, (f, _)) in parts.iter().enumerate() {
            for (g, _) in &parts[i + 1..] {
                prop_assert!(poly_gcd(f, g).is_constant());
            }
        }
        prop_assert!(prod.monic() == p.monic());
    }

    #[test]
    fn rational_roots_match_divisor_candidates(
        roots in prop::collection::vec((-12i64..=12, 1i64..=6), 0..4),
        rest in prop::collection::vec(-5i64..=5, 1..4),
    ) {
        let mut p = UniPoly::from_ints(&rest);
        prop_assume!(!p.is_zero());
        for (n, d) in &roots {
            p = &p * &UniPoly::linear_root(&frac(*n, *d));
        }
        prop_assume!(!p.is_constant());
        let got = rational_roots(&p);
        prop_assert_eq!(&got, &divisor_candidate_roots(&p));
        for (n, d) in &roots {
            prop_assert!(got.contains(&frac(*n, *d)));
        }
    }

    #[test]
    fn resultant_commutes_with_specialization(
        f in bipoly(), g in bipoly(), t0 in (-6i64..=6, 1i64..=3),
    ) {
        prop_assume!(f.deg_u().unwrap_or(0) >= 1 && g.deg_u().unwrap_or(0) >= 1);
        let t0 = frac(t0.0, t0.1);
        let (fs, gs) = (f.eval_t(&t0), g.eval_t(&t0));
        prop_assume!(fs.deg() == f.deg_u().unwrap() as i64 && gs.deg() == g.deg_u().unwrap() as i64);
        prop_assert_eq!(resultant_u(&f, &g).eval(&t0), sylvester_resultant(&fs, &gs));
    }

    #[test]
    fn interpolation_reproduces(p in poly(), extra in 0usize..3) {
        let d = p.degree().unwrap_or(0);
        let pts: Vec<_> = (0..(d + 1 + extra) as i64).map(|x| (rat(x), p.eval(&rat(x)))).collect();
        prop_assert_eq!(interpolate(&pts, d).unwrap(), Some(p));
    }

    #[test]
    fn twist_at_infinity_is_an_involution(p in poly(), k in 5i64..8) {
        let r = RatFn::from_poly(p.clone());
        prop_assert_eq!(r.twist_at_infinity(k).twist_at_infinity(k), r);
    }

    #[test]
    fn ratfn_field_laws(a in nonzero_poly(), b in nonzero_poly(), c in poly()) {
        let x = &RatFn::from_poly(c) / &RatFn::from_poly(a.clone());
        let y = RatFn::new(b.clone(), a);
        let back = &(&x * &y) / &y;
        prop_assert_eq!(back, x);
    }
}

#[test]
fn squarefree_multiplicities() {
    let p = parse_unipoly("(t - 1)^3*(t + 1)^2*t").unwrap();
    let m: BTreeMap<u32, String> = squarefree_decompose(&p)
        .into_iter()
        .map(|(f, k)| (k, f.monic().to_string()))
        .collect();
    assert_eq!(m[&1], "t");
    assert_eq!(m[&2], "t + 1");
    assert_eq!(m[&3], "t - 1");
}
