//! Intersection numbers of sections and the height pairing.

use std::collections::HashMap;

use num_traits::Zero;

use super::curve::{SectionPoint, WeierstrassCurve};
use super::fibers::{all_fibers, Kodaira, Place, PlaceData};
use super::local::{component_of, local_view, ord, through_singular_point};
use crate::arith::{coprime_base, rat, RatFn, Rational, UniPoly};
use crate::error::{Error, Result};

/// `P·O`, read off the poles of `x(P)`.
pub fn section_o_intersection(p: &SectionPoint) -> Result<u32> {
    let x = p
        .x()
        .ok_or_else(|| Error::invalid("the zero section has no intersection with itself here"))?;
    let dd = x.den().deg();
    if dd % 2 != 0 {
        return Err(Error::Inconsistency(
            "denominator of x is not a square".into(),
        ));
    }
    let excess = (x.num().deg() - dd - 2).max(0);
    if excess % 2 != 0 {
        return Err(Error::Inconsistency(
            "odd pole order of x at infinity".into(),
        ));
    }
    Ok(((dd + excess) / 2) as u32)
}

/// Caller-supplied component indices for two sections at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentOverride {
    pub place: Place,
    pub first: usize,
    pub second: usize,
}

/// A rational elliptic surface with its singular fibers.
#[derive(Clone, Debug)]
pub struct HeightContext {
    pub curve: WeierstrassCurve,
    pub chi: Rational,
    pub places: Vec<PlaceData>,
}

impl HeightContext {
    pub fn new(curve: WeierstrassCurve) -> Result<Self> {
        let places = all_fibers(&curve)?;
        let euler: u32 = places.iter().map(|p| p.euler_contribution()).sum();
        if euler != 12 {
            return Err(Error::Inconsistency(format!(
                "Euler numbers sum to {euler}, not 12"
            )));
        }
        Ok(HeightContext {
            curve,
            chi: rat(1),
            places,
        })
    }

    pub fn euler_sum(&self) -> u32 {
        self.places.iter().map(|p| p.euler_contribution()).sum()
    }

    pub fn reducible_places(&self) -> impl Iterator<Item = &PlaceData> {
        self.places.iter().filter(|p| p.is_reducible())
    }

    pub fn place(&self, place: &Place) -> Option<&PlaceData> {
        self.places.iter().find(|p| p.place == *place)
    }

    /// Components met by both sections at every reducible fiber.
    fn components(
        &self,
        p: &SectionPoint,
        q: &SectionPoint,
        overrides: &[ComponentOverride],
    ) -> Result<HashMap<Place, (usize, usize)>> {
        for o in overrides {
            let pd = self
                .place(&o.place)
                .ok_or_else(|| Error::invalid(format!("no singular fiber over {}", o.place)))?;
            pd.corr(o.first, o.second)?;
        }
        let mut out = HashMap::new();
        for pd in self.reducible_places() {
            let c = match overrides.iter().find(|o| o.place == pd.place) {
                Some(o) => (o.first, o.second),
                None => (
                    component_of(&self.curve, pd, p)?,
                    component_of(&self.curve, pd, q)?,
                ),
            };
            out.insert(pd.place.clone(), c);
        }
        Ok(out)
    }

    /// `Σ_v Corr_v(P, Q)`, summing conjugate places.
    pub fn corr_sum(
        &self,
        p: &SectionPoint,
        q: &SectionPoint,
        overrides: &[ComponentOverride],
    ) -> Result<Rational> {
        let comps = self.components(p, q, overrides)?;
        let mut s = Rational::zero();
        for pd in self.reducible_places() {
            let (i, j) = comps[&pd.place];
            s += pd.corr(i, j)? * rat(pd.place.degree() as i64);
        }
        Ok(s)
    }

    pub fn section_pair_intersection(
        &self,
        p: &SectionPoint,
        q: &SectionPoint,
        overrides: &[ComponentOverride],
    ) -> Result<u32> {
        if p.is_zero() || q.is_zero() {
            return Err(Error::invalid(
                "intersection with the zero section is computed separately",
            ));
        }
        if p == q {
            return Err(Error::invalid(
                "self-intersection is not a pair intersection",
            ));
        }
        let comps = self.components(p, q, overrides)?;
        let e = &self.curve;
        let mut total = 0u32;
        for b in pair_base(e, &self.places, p, q) {
            let fiber = self.places.iter().find(|pd| match &pd.place {
                Place::Finite(f) => b.divides(f),
                Place::Infinity => false,
            });
            let c = local_pair(e, &b, p, q, fiber, &comps)?;
            total += c * b.degree().unwrap() as u32;
        }
        let inf = self.place(&Place::Infinity).expect("infinity is listed");
        let (ei, s, pi) = local_view(e, &Place::Infinity, p);
        let qi = q.at_infinity();
        total += local_pair(&ei, &s, &pi, &qi, Some(inf), &comps)?;
        Ok(total)
    }

    /// `⟨P, Q⟩ = χ + PO + QO − PQ − Σ Corr_v(P, Q)`, and `2χ + 2PO − Σ Corr_v(P, P)` when `P = Q`.
    pub fn height_pairing(
        &self,
        p: &SectionPoint,
        q: &SectionPoint,
        overrides: &[ComponentOverride],
    ) -> Result<Rational> {
        for s in [p, q] {
            if !self.curve.on_curve(s) {
                return Err(Error::invalid(format!("point {s} is not on the curve")));
            }
        }
        if p.is_zero() || q.is_zero() {
            return Ok(Rational::zero());
        }
        let corr = self.corr_sum(p, q, overrides)?;
        let po = rat(section_o_intersection(p)? as i64);
        if p == q {
            return Ok(&self.chi * rat(2) + po * rat(2) - corr);
        }
        let qo = rat(section_o_intersection(q)? as i64);
        let pq = rat(self.section_pair_intersection(p, q, overrides)? as i64);
        Ok(&self.chi + po + qo - pq - corr)
    }

    pub fn height(&self, p: &SectionPoint) -> Result<Rational> {
        self.height_pairing(p, p, &[])
    }
}

/// Finite place groups along which the two sections may meet.
fn pair_base(
    e: &WeierstrassCurve,
    places: &[PlaceData],
    p: &SectionPoint,
    q: &SectionPoint,
) -> Vec<UniPoly> {
    let (xp, yp) = p.coords().unwrap();
    let (xq, yq) = q.coords().unwrap();
    let dx = xp - xq;
    let dy = yp - yq;
    let mut polys = vec![
        dx.num().clone(),
        dy.num().clone(),
        xp.den().clone(),
        xq.den().clone(),
        e.discriminant(),
    ];
    for x in [xp, xq] {
        polys.push(e.rhs_derivative(x).num().clone());
        polys.push(
            (&x.scale(&rat(3)) + &RatFn::from_poly(e.c(1).clone()))
                .num()
                .clone(),
        );
    }
    if !yp.is_zero() && !yq.is_zero() {
        polys.push((&(xp / yp) - &(xq / yq)).num().clone());
    }
    // Keep distinct fibers in distinct base elements.
    polys.extend(places.iter().filter_map(|pd| match &pd.place {
        Place::Finite(f) => Some(f.clone()),
        Place::Infinity => None,
    }));
    coprime_base(&polys)
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Local intersection multiplicity along one place group.
fn local_pair(
    e: &WeierstrassCurve,
    b: &UniPoly,
    p: &SectionPoint,
    q: &SectionPoint,
    fiber: Option<&PlaceData>,
    comps: &HashMap<Place, (usize, usize)>,
) -> Result<u32> {
    let (xp, yp) = p.coords().unwrap();
    let (xq, yq) = q.coords().unwrap();
    let at_o = |x: &RatFn| ord(x, b).is_some_and(|o| o < 0);
    match (at_o(xp), at_o(xq)) {
        (true, true) => {
            let dz = &(xp / yp) - &(xq / yq);
            return ord(&dz, b)
                .map(|o| o as u32)
                .ok_or_else(|| Error::invalid("the sections coincide"));
        }
        (false, false) => {}
        _ => return Ok(0),
    }
    let m = min_opt(ord(&(xp - xq), b), ord(&(yp - yq), b))
        .ok_or_else(|| Error::invalid("the sections coincide"))?;
    if m <= 0 {
        return Ok(0);
    }
    let Some(pd) = fiber.filter(|pd| pd.is_reducible()) else {
        return Ok(m as u32);
    };
    if !through_singular_point(e, pd.kodaira, b, xp)? {
        return Ok(m as u32);
    }
    if let Place::Finite(f) = &pd.place {
        if f != b {
            return Err(Error::NeedsManualIntersection(format!(
                "sections meet at a singular point over part of the place {f}"
            )));
        }
    }
    let (i, j) = comps[&pd.place];
    if i != j {
        return Ok(0);
    }
    let k = match pd.kodaira {
        Kodaira::I(n) => i.min(n as usize - i) as i64,
        Kodaira::III => 1,
        k => {
            return Err(Error::NeedsManualIntersection(format!(
                "sections meet at the singular point of a {k} fiber"
            )))
        }
    };
    if m < k {
        return Err(Error::Inconsistency("negative local intersection".into()));
    }
    Ok((m - k) as u32)
}

/// `P·Q` for distinct nonzero sections.
pub fn section_pair_intersection(
    e: &WeierstrassCurve,
    p: &SectionPoint,
    q: &SectionPoint,
) -> Result<u32> {
    HeightContext::new(e.clone())?.section_pair_intersection(p, q, &[])
}
