//! Intersection of a conic `u = q(t)` with a prepared quartic.

use super::prepared::{Conic, PreparedQuartic};
use crate::arith::{is_perfect_square, rational_roots, squarefree_decompose, UniPoly};
use crate::error::{Error, Result};
use crate::surface::{section_o_intersection, Place, SectionPoint};

/// Points of `C ∩ Q` sharing a multiplicity: a rational point, a group of
/// conjugate points cut out by a squarefree polynomial, or the marked point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contact {
    pub place: Place,
    pub multiplicity: u32,
    /// Number of geometric points in the group.
    pub points: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyReport {
    pub is_even_tangential: bool,
    pub contact: Vec<Contact>,
    /// `h` with `h² = f(t, q(t))`, when the leading coefficient is a rational square.
    pub sqrt_witness: Option<UniPoly>,
    /// `f(t, q(t))`.
    pub restriction: UniPoly,
}

impl TangencyReport {
    pub fn point_count(&self) -> u32 {
        self.contact.iter().map(|c| c.points).sum()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.contact.iter().map(|c| c.points * c.multiplicity).sum()
    }

    /// Local intersection numbers, one per geometric point, in increasing order.
    pub fn multiset(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .contact
            .iter()
            .flat_map(|c| std::iter::repeat(c.multiplicity).take(c.points as usize))
            .collect();
        v.sort_unstable();
        v
    }
}

/// Contact points and multiplicities of `C` with `Q`; the remainder of the
/// Bézout number 8 sits at the marked point.
pub fn even_tangency(quartic: &PreparedQuartic, conic: &Conic) -> Result<TangencyReport> {
    let g = quartic.f().eval_u(conic.q());
    if g.is_zero() {
        return Err(Error::invalid("the conic is a component of the quartic"));
    }
    let mut contact = Vec::new();
    for (fac, e) in squarefree_decompose(&g) {
        let mut rest = fac.clone();
        for r in rational_roots(&fac) {
            let lin = UniPoly::linear_root(&r);
            rest = rest.exact_div(&lin).expect("root divides");
            contact.push(Contact {
                place: Place::Finite(lin),
                multiplicity: e,
                points: 1,
            });
        }
        if !rest.is_constant() {
            contact.push(Contact {
                points: rest.degree().unwrap() as u32,
                place: Place::Finite(rest.monic()),
                multiplicity: e,
            });
        }
    }
    let dg = g.degree().unwrap() as u32;
    if dg > 8 {
        return Err(Error::Inconsistency(
            "restriction has degree above 8".into(),
        ));
    }
    if dg < 8 {
        contact.push(Contact {
            place: Place::Infinity,
            multiplicity: 8 - dg,
            points: 1,
        });
    }
    let is_even = contact.iter().all(|c| c.multiplicity % 2 == 0);
    let report = TangencyReport {
        is_even_tangential: is_even,
        sqrt_witness: if is_even { is_perfect_square(&g) } else { None },
        contact,
        restriction: g,
    };
    if report.total_multiplicity() != 8 {
        return Err(Error::Inconsistency(
            "intersection multiplicities do not sum to 8".into(),
        ));
    }
    Ok(report)
}

/// The two sections `(q, ±h)` over an even tangential conic, `+` first.
pub fn lift_conic(
    quartic: &PreparedQuartic,
    conic: &Conic,
) -> Result<(SectionPoint, SectionPoint)> {
    let rep = even_tangency(quartic, conic)?;
    if !rep.is_even_tangential {
        return Err(Error::invalid("the conic is not even tangential"));
    }
    let h = rep.sqrt_witness.ok_or_else(|| {
        Error::invalid("f(t, q(t)) is a square only after a quadratic extension of Q")
    })?;
    let plus = SectionPoint::from_polys(conic.q().clone(), h.clone());
    let minus = SectionPoint::from_polys(conic.q().clone(), -h);
    for s in [&plus, &minus] {
        if !quartic.surface().on_curve(s) {
            return Err(Error::Inconsistency(
                "lifted section is off the curve".into(),
            ));
        }
    }
    Ok((plus, minus))
}

/// The conic `u = x(P)` of a section with polynomial `x` of degree ≤ 2 and `P·O = 0`.
pub fn conic_from_section(p: &SectionPoint) -> Result<Conic> {
    let x = p
        .x()
        .ok_or_else(|| Error::invalid("the zero section has no conic"))?;
    let q = x
        .as_poly()
        .ok_or_else(|| Error::invalid("x-coordinate is not a polynomial"))?;
    if section_o_intersection(p)? != 0 {
        return Err(Error::invalid("the section meets the zero section"));
    }
    Conic::new(q.clone())
}
