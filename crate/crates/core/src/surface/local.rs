//! Residue arithmetic at a place and the component met by a section.

use num_traits::Zero;

use super::curve::{SectionPoint, WeierstrassCurve};
use super::fibers::{Kodaira, Place, PlaceData};
use crate::arith::rational::rat_sqrt;
use crate::arith::{poly_gcd, poly_xgcd, rat, RatFn, Rational, UniPoly};
use crate::error::{Error, Result};

/// The curve, uniformizing polynomial and point in coordinates adapted to `place`.
pub(crate) fn local_view(
    e: &WeierstrassCurve,
    place: &Place,
    p: &SectionPoint,
) -> (WeierstrassCurve, UniPoly, SectionPoint) {
    match place {
        Place::Finite(f) => (e.clone(), f.clone(), p.clone()),
        Place::Infinity => (e.at_infinity(), UniPoly::t(), p.at_infinity()),
    }
}

/// `r mod m`, when the denominator of `r` is invertible modulo `m`.
pub(crate) fn reduce_mod(r: &RatFn, m: &UniPoly) -> Option<UniPoly> {
    let (g, s, _) = poly_xgcd(r.den(), m);
    if !g.is_constant() {
        return None;
    }
    Some((r.num() * &s).div_rem(m).1)
}

fn inverse_mod(a: &UniPoly, m: &UniPoly) -> Option<UniPoly> {
    let (g, s, _) = poly_xgcd(a, m);
    (g.is_constant() && !g.is_zero()).then(|| s.div_rem(m).1)
}

/// Order along `p`, `None` standing for `+∞`.
pub(crate) fn ord(r: &RatFn, p: &UniPoly) -> Option<i64> {
    r.valuation(p)
}

/// Whether `r` vanishes along `p`, requiring the same answer on every factor of `p`.
pub(crate) fn vanishes_uniformly(r: &RatFn, p: &UniPoly) -> Result<bool> {
    if r.is_zero() {
        return Ok(true);
    }
    let g = poly_gcd(r.num(), p);
    if g.is_constant() {
        Ok(false)
    } else if g.degree() == p.degree() {
        Ok(true)
    } else {
        Err(Error::NeedsManualComponent(format!(
            "the place {p} splits with respect to this section"
        )))
    }
}

/// Whether the section meets the singular point of the Weierstrass fiber at `p`.
pub(crate) fn through_singular_point(
    curve: &WeierstrassCurve,
    kodaira: Kodaira,
    p: &UniPoly,
    x: &RatFn,
) -> Result<bool> {
    if ord(x, p).is_some_and(|o| o < 0) {
        return Ok(false);
    }
    match kodaira {
        Kodaira::I(0) => Ok(false),
        Kodaira::I(_) => vanishes_uniformly(&curve.rhs_derivative(x), p),
        _ => {
            let s = &x.scale(&rat(3)) + &RatFn::from_poly(curve.c(1).clone());
            vanishes_uniformly(&s, p)
        }
    }
}

/// Index of the component of the fiber at `pd` met by `pt`; `0` is the identity component.
pub fn component_of(e: &WeierstrassCurve, pd: &PlaceData, pt: &SectionPoint) -> Result<usize> {
    let (curve, p, pt) = local_view(e, &pd.place, pt);
    let Some((x, y)) = pt.coords() else {
        return Ok(0);
    };
    if pd.m_v == 1 || !through_singular_point(&curve, pd.kodaira, &p, x)? {
        return Ok(0);
    }
    match pd.kodaira {
        Kodaira::I(n) => component_i_n(&curve, &p, n, x, y, &pd.place),
        k => match k.simple_components().as_slice() {
            [] => Err(Error::Inconsistency(format!(
                "section through the singular point of a {k} fiber"
            ))),
            [c] => Ok(*c),
            _ => Err(Error::NeedsManualComponent(format!(
                "several simple components on the {k} fiber over {}",
                pd.place
            ))),
        },
    }
}

fn component_i_n(
    curve: &WeierstrassCurve,
    p: &UniPoly,
    n: u32,
    x: &RatFn,
    y: &RatFn,
    place: &Place,
) -> Result<usize> {
    let n_us = n as usize;
    let modulus = p.pow(n);
    let x0 = reduce_mod(x, &modulus).ok_or_else(|| Error::Inconsistency("pole of x".into()))?;
    // Newton iteration for the root of F' lifting the node.
    let (c1, c2) = (curve.c(1), curve.c(2));
    let mut m = x0.clone();
    for _ in 0..=n {
        let f1 = &(&(&m * &m).scale(&rat(3)) + &(c1 * &m).scale(&rat(2))) + c2;
        let f2 = &m.scale(&rat(6)) + &c1.scale(&rat(2));
        let inv = inverse_mod(&f2.div_rem(&modulus).1, &modulus)
            .ok_or_else(|| Error::Inconsistency("node is not ordinary".into()))?;
        let step = (&f1 * &inv).div_rem(&modulus).1;
        if step.is_zero() {
            break;
        }
        m = (&m - &step).div_rem(&modulus).1;
    }
    let dx = (&x0 - &m).div_rem(&modulus).1;
    let ox = if dx.is_zero() {
        n as i64
    } else {
        dx.valuation(p).unwrap() as i64
    };
    let oy = ord(y, p).unwrap_or(n as i64);
    let a = ox.min(oy).min(n as i64) as usize;
    if 2 * a >= n_us {
        return if n % 2 == 0 {
            Ok(n_us / 2)
        } else {
            Err(Error::Inconsistency(format!(
                "section meets I{n} node too deeply"
            )))
        };
    }
    if p.degree() != Some(1) {
        return Err(Error::NeedsManualComponent(format!(
            "orientation of the I{n} cycle over {place} needs a residue field square root"
        )));
    }
    let t0 = -p.coeff(0);
    let pa = RatFn::from_poly(p.pow(a as u32));
    let xl = (dx.div_rem(&p.pow(a as u32)).0).eval(&t0);
    let yl = (y / &pa).eval(&t0).expect("y integral");
    if xl.is_zero() || yl.is_zero() {
        return Err(Error::Inconsistency("unbalanced orders at a node".into()));
    }
    let slope: Rational = yl / xl;
    let a2 = (&x.scale(&rat(3)) + &RatFn::from_poly(c1.clone()))
        .eval(&t0)
        .expect("x integral");
    let alpha = rat_sqrt(&a2).ok_or_else(|| {
        Error::Inconsistency("non-split node met off the middle component".into())
    })?;
    if slope == -alpha.clone() {
        Ok(a)
    } else if slope == alpha {
        Ok(n_us - a)
    } else {
        Err(Error::Inconsistency(
            "slope at the node is not a tangent direction".into(),
        ))
    }
}
