//! Singular fibers: places of bad reduction, Kodaira types, and the
//! intersection data of their components.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::curve::WeierstrassCurve;
use crate::arith::{
    coprime_base, parse_unipoly, rational_roots, squarefree_part, Rational, UniPoly,
};
use crate::error::{Error, Result};
use crate::lattice::{invert, AdeLabel, Family};

/// A place of P¹: a monic irreducible (or uniformly behaving squarefree)
/// polynomial in `t`, or `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(UniPoly),
    Infinity,
}

impl Place {
    /// `t − a`.
    pub fn at(a: Rational) -> Place {
        Place::Finite(UniPoly::linear_root(&a))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    /// `inf`, a rational number `a` (the place `t = a`), or a polynomial.
    pub fn parse(text: &str) -> Result<Place> {
        let s = text.trim();
        if matches!(s, "inf" | "oo" | "∞" | "infinity") {
            return Ok(Place::Infinity);
        }
        let p = parse_unipoly(s)?;
        if p.is_constant() {
            return Ok(Place::at(p.coeff(0)));
        }
        Ok(Place::Finite(p.monic()))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Finite(p) if p.degree() == Some(1) => {
                write!(f, "{}", crate::arith::rational::fmt_rational(&-p.coeff(0)))
            }
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kodaira {
    /// `I_n`; `I_0` is a smooth fiber.
    I(u32),
    II,
    III,
    IV,
    /// `I_n*`.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// From `(ord c₄, ord c₆, ord Δ)` of a minimal model in residue characteristic 0.
    pub fn from_orders(oc4: Option<u32>, oc6: Option<u32>, od: u32) -> Result<Kodaira> {
        let oc4 = oc4.unwrap_or(u32::MAX);
        let oc6 = oc6.unwrap_or(u32::MAX);
        if od == 0 {
            return Ok(Kodaira::I(0));
        }
        if oc4 == 0 {
            return Ok(Kodaira::I(od));
        }
        if oc4 >= 4 && oc6 >= 6 && od >= 12 {
            return Err(Error::invalid("non-minimal model"));
        }
        if od >= 7 && oc4.saturating_mul(3) < od {
            return Ok(Kodaira::IStar(od - 6));
        }
        Ok(match od {
            2 => Kodaira::II,
            3 => Kodaira::III,
            4 => Kodaira::IV,
            6 => Kodaira::IStar(0),
            8 => Kodaira::IVStar,
            9 => Kodaira::IIIStar,
            10 => Kodaira::IIStar,
            _ => {
                return Err(Error::Inconsistency(format!(
                    "no Kodaira type for ord Δ = {od}"
                )))
            }
        })
    }

    pub fn euler_number(&self) -> u32 {
        match *self {
            Kodaira::I(n) => n,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::IStar(n) => n + 6,
            Kodaira::IVStar => 8,
            Kodaira::IIIStar => 9,
            Kodaira::IIStar => 10,
        }
    }

    /// Number of irreducible components.
    pub fn component_count(&self) -> usize {
        match *self {
            Kodaira::I(0) => 1,
            Kodaira::I(n) => n as usize,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::IStar(n) => n as usize + 5,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }

    /// Root lattice spanned by the non-identity components.
    pub fn root_label(&self) -> Option<AdeLabel> {
        let (f, n) = match *self {
            Kodaira::I(n) if n >= 2 => (Family::A, n - 1),
            Kodaira::III => (Family::A, 1),
            Kodaira::IV => (Family::A, 2),
            Kodaira::IStar(n) => (Family::D, n + 4),
            Kodaira::IVStar => (Family::E, 6),
            Kodaira::IIIStar => (Family::E, 7),
            Kodaira::IIStar => (Family::E, 8),
            _ => return None,
        };
        Some(AdeLabel { family: f, n })
    }

    /// Indices (1-based, as components) of the multiplicity-one components other than `Θ₀`.
    pub fn simple_components(&self) -> Vec<usize> {
        match *self {
            Kodaira::I(n) => (1..n as usize).collect(),
            Kodaira::III => vec![1],
            Kodaira::IV => vec![1, 2],
            Kodaira::IStar(n) => {
                let m = n as usize + 4;
                vec![1, m - 1, m]
            }
            Kodaira::IVStar => vec![1, 6],
            Kodaira::IIIStar => vec![7],
            _ => vec![],
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
            Kodaira::IV => f.write_str("IV"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => f.write_str("IV*"),
            Kodaira::IIIStar => f.write_str("III*"),
            Kodaira::IIStar => f.write_str("II*"),
        }
    }
}

/// Local data of the fiber over one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceData {
    pub place: Place,
    pub kodaira: Kodaira,
    pub m_v: usize,
    /// Intersection matrix of the non-identity components (negative definite).
    pub a_v: Vec<Vec<i64>>,
    pub ord_disc: u32,
}

impl PlaceData {
    pub fn new(place: Place, kodaira: Kodaira, ord_disc: u32) -> Self {
        let a_v = match kodaira.root_label() {
            Some(l) => l
                .gram()
                .gram()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| -x.to_integer().to_i64().unwrap())
                        .collect()
                })
                .collect(),
            None => vec![],
        };
        PlaceData {
            m_v: kodaira.component_count(),
            place,
            kodaira,
            a_v,
            ord_disc,
        }
    }

    /// Euler number of the fiber times the degree of the place.
    pub fn euler_contribution(&self) -> u32 {
        self.kodaira.euler_number() * self.place.degree() as u32
    }

    pub fn is_reducible(&self) -> bool {
        self.m_v > 1
    }

    /// `Corr_v` for sections meeting components `i` and `j`: the `(i, j)` entry of `−A_v⁻¹`.
    pub fn corr(&self, i: usize, j: usize) -> Result<Rational> {
        if i >= self.m_v || j >= self.m_v {
            return Err(Error::invalid(format!(
                "component index out of range for {} fiber",
                self.kodaira
            )));
        }
        if i == 0 || j == 0 {
            return Ok(Rational::from_integer(0.into()));
        }
        let simple = self.kodaira.simple_components();
        if !simple.contains(&i) || !simple.contains(&j) {
            return Err(Error::invalid(
                "sections only meet multiplicity-one components",
            ));
        }
        let m: Vec<Vec<Rational>> = self
            .a_v
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Rational::from_integer((-x).into()))
                    .collect()
            })
            .collect();
        let inv = invert(&m).expect("Cartan matrix is invertible");
        Ok(inv[i - 1][j - 1].clone())
    }
}

/// Closed form of `Corr_v` on an `I_n` fiber.
pub fn corr_i_n(n: u32, i: u32, j: u32) -> Rational {
    if i == 0 || j == 0 {
        return Rational::from_integer(0.into());
    }
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    Rational::new((a * (n - b)).into(), n.into())
}

fn orders(e: &WeierstrassCurve, p: &UniPoly) -> (Option<u32>, Option<u32>, u32) {
    (
        e.c4().valuation(p),
        e.c6().valuation(p),
        e.discriminant().valuation(p).expect("nonzero discriminant"),
    )
}

/// Fiber data over one place; rejects places of good reduction.
pub fn kodaira_type_at(e: &WeierstrassCurve, place: &Place) -> Result<PlaceData> {
    let d = kodaira_type_any(e, place)?;
    if d.ord_disc == 0 {
        return Err(Error::invalid(format!("the fiber over {place} is smooth")));
    }
    Ok(d)
}

fn kodaira_type_any(e: &WeierstrassCurve, place: &Place) -> Result<PlaceData> {
    let (curve, p) = match place {
        Place::Finite(p) => {
            if p.is_constant() {
                return Err(Error::invalid("a place needs a non-constant polynomial"));
            }
            (e.clone(), p.clone())
        }
        Place::Infinity => (e.at_infinity(), UniPoly::t()),
    };
    let (a, b, c) = orders(&curve, &p);
    Ok(PlaceData::new(
        place.clone(),
        Kodaira::from_orders(a, b, c)?,
        c,
    ))
}

/// Finite places dividing the discriminant: rational roots split off, the rest
/// refined so that `Δ`, `c₄` and `c₆` have uniform orders along each.
pub fn bad_places(e: &WeierstrassCurve) -> Vec<UniPoly> {
    let disc = e.discriminant();
    let mut inputs: Vec<UniPoly> = rational_roots(&squarefree_part(&disc))
        .iter()
        .map(UniPoly::linear_root)
        .collect();
    inputs.extend([disc.clone(), e.c4(), e.c6()]);
    let mut places: Vec<UniPoly> = coprime_base(&inputs)
        .into_iter()
        .filter(|b| b.divides(&disc))
        .collect();
    places.sort_by(|a, b| {
        a.deg().cmp(&b.deg()).then_with(|| {
            if a.deg() == 1 {
                (-a.coeff(0)).cmp(&-b.coeff(0))
            } else {
                a.to_string().cmp(&b.to_string())
            }
        })
    });
    places
}

/// All bad finite places and `∞` (included even when smooth).
pub fn all_fibers(e: &WeierstrassCurve) -> Result<Vec<PlaceData>> {
    let mut out = Vec::new();
    for p in bad_places(e) {
        out.push(kodaira_type_any(e, &Place::Finite(p))?);
    }
    out.push(kodaira_type_any(e, &Place::Infinity)?);
    Ok(out)
}
