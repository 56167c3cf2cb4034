//! Halving sections and 2-torsion, by specialization, interpolation and exact verification.

use num_traits::Zero;

use super::curve::{SectionPoint, WeierstrassCurve};
use crate::arith::{
    is_perfect_square, rat, rational_roots, root_branch_candidates, Rational, UniPoly,
};
use crate::error::{Error, Result};

/// The first `count` non-negative integers where the fiber is smooth.
pub fn specialization_points(e: &WeierstrassCurve, count: usize) -> Vec<Rational> {
    let d = e.discriminant();
    (0..)
        .map(rat)
        .filter(|t| !d.eval(t).is_zero())
        .take(count)
        .collect()
}

/// `X⁴ − 2bX² − 8cX + b² − 4ac − 4x(X³ + aX² + bX + c)` over Q: its roots are the
/// abscissae of the points whose double has abscissa `x`.
pub fn halving_quartic(a: &Rational, b: &Rational, c: &Rational, x: &Rational) -> UniPoly {
    let four_x = x * rat(4);
    UniPoly::from_coeffs(vec![
        b * b - rat(4) * a * c - &four_x * c,
        -rat(8) * c - &four_x * b,
        -rat(2) * b - &four_x * a,
        -four_x,
        rat(1),
    ])
}

/// `S` with `2S = P`, if one exists with polynomial coordinates of degrees ≤ 2 and ≤ 3.
pub fn halve(e: &WeierstrassCurve, p: &SectionPoint) -> Result<Option<SectionPoint>> {
    if !e.on_curve(p) {
        return Err(Error::invalid(format!("point {p} is not on the curve")));
    }
    let (x, y) = p
        .polynomial_coords()
        .ok_or_else(|| Error::invalid("halving needs a section with polynomial coordinates"))?;
    if x.deg() > 2 || y.deg() > 3 {
        return Err(Error::invalid("halving needs deg x ≤ 2 and deg y ≤ 3"));
    }
    let pts = specialization_points(e, 5);
    let roots: Vec<Vec<Rational>> = pts
        .iter()
        .map(|t0| {
            let [a, b, c] = [1, 2, 3].map(|k| e.c(k).eval(t0));
            rational_roots(&halving_quartic(&a, &b, &c, &x.eval(t0)))
        })
        .collect();
    for f in root_branch_candidates(&pts, &roots, 2)? {
        let rhs = e.rhs(&f.clone().into());
        let Some(g) = is_perfect_square(rhs.as_poly().expect("polynomial")) else {
            continue;
        };
        for g in [g.clone(), -g] {
            let s = SectionPoint::from_polys(f.clone(), g);
            if e.double(&s)? == *p {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

/// Roots of the cubic in Q[t]; every root in Q(t) is one of degree ≤ 2.
pub fn two_torsion_roots(e: &WeierstrassCurve) -> Vec<UniPoly> {
    let pts = specialization_points(e, 5);
    let roots: Vec<Vec<Rational>> = pts
        .iter()
        .map(|t0| rational_roots(&e.cubic().eval_t(t0)))
        .collect();
    root_branch_candidates(&pts, &roots, 2)
        .expect("enough points")
        .into_iter()
        .filter(|r| e.cubic().eval_u(r).is_zero())
        .collect()
}

/// Whether the Mordell-Weil group has no 2-torsion.
pub fn two_torsion_free(e: &WeierstrassCurve) -> bool {
    two_torsion_roots(e).is_empty()
}
