//! The quadratic-residue symbol `(C/Q)`, splitting certificates, Zariski-pair
//! verdicts and dihedral-cover feasibility.

use std::fmt;

use serde::Serialize;

use super::config::{genus_from_sing, singular_configuration, CombinatorialType, Configuration};
use super::prepared::{Conic, PreparedQuartic};
use super::tangency::{even_tangency, lift_conic};
use crate::arith::{rational_roots, root_branch_candidates, BiPoly, RatFn, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::lattice::AdeSum;
use crate::surface::{halve, specialization_points, SectionPoint};

/// `f(t, u) = (a₁(u − q) + a₃)² + (u − q + a₂)²(u − q)`, exhibiting the splitting
/// of `Q` in the double cover branched along `u = q(t)`.
///
/// If `s_o = (q − a₂, a₃ − a₁a₂)` then `a₁` is the tangent slope at `s_o` and
/// `2s_o = (q, −a₃)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingCertificate {
    pub q: UniPoly,
    pub a1: UniPoly,
    pub a2: UniPoly,
    pub a3: UniPoly,
}

impl SplittingCertificate {
    pub fn rhs(&self) -> BiPoly {
        let w = &BiPoly::u() - &BiPoly::from_t(self.q.clone());
        let l = &(&w * &BiPoly::from_t(self.a1.clone())) + &BiPoly::from_t(self.a3.clone());
        let m = &w + &BiPoly::from_t(self.a2.clone());
        &(&l * &l) + &(&(&m * &m) * &w)
    }

    /// Exact coefficient-wise check of the identity and of `deg a_k ≤ k`.
    pub fn verify(&self, f: &BiPoly) -> bool {
        self.a1.deg() <= 1 && self.a2.deg() <= 2 && self.a3.deg() <= 3 && self.rhs() == *f
    }

    /// The section whose double is `(q, −a₃)`.
    pub fn half_section(&self) -> SectionPoint {
        SectionPoint::from_polys(&self.q - &self.a2, &self.a3 - &(&self.a1 * &self.a2))
    }
}

impl fmt::Display for SplittingCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a1 = {}, a2 = {}, a3 = {}", self.a1, self.a2, self.a3)
    }
}

/// The certificate attached to a conic through `s_o`, whose double lies over the conic.
pub fn splitting_certificate(
    q: &PreparedQuartic,
    conic: &Conic,
    s_o: &SectionPoint,
) -> Result<SplittingCertificate> {
    let e = q.surface();
    let d = e.double(s_o)?;
    let (xd, yd) = d
        .polynomial_coords()
        .ok_or_else(|| Error::invalid("2·s_o does not have polynomial coordinates"))?;
    if xd != conic.q() {
        return Err(Error::invalid("2·s_o does not lie over the conic"));
    }
    let (xo, yo) = s_o.coords().expect("nonzero");
    let slope = &e.rhs_derivative(xo) / &yo.scale(&Rational::from_integer(2.into()));
    let a1 = slope
        .as_poly()
        .ok_or_else(|| Error::Inconsistency("tangent slope is not a polynomial".into()))?
        .clone();
    let a2 = (&RatFn::from_poly(conic.q().clone()) - xo)
        .as_poly()
        .ok_or_else(|| Error::invalid("s_o needs a polynomial x-coordinate"))?
        .clone();
    let cert = SplittingCertificate {
        q: conic.q().clone(),
        a1,
        a2,
        a3: -yd,
    };
    if !cert.verify(q.f()) {
        return Err(Error::Inconsistency(
            "splitting certificate fails its identity".into(),
        ));
    }
    Ok(cert)
}

/// Searches for a certificate directly from the coefficient equations, with no
/// reference to the group law: in `w = u − q`, `f = w³ + A₂w² + A₁w + h²` forces
/// `a₃ = ±h`, `a₂ = (A₂ − a₁²)/2` and `(A₂ − a₁²)² ± 8a₁h − 4A₁ = 0`.
pub fn find_splitting_certificate(
    q: &PreparedQuartic,
    conic: &Conic,
) -> Result<Option<SplittingCertificate>> {
    let h = even_tangency(q, conic)?
        .sqrt_witness
        .ok_or_else(|| Error::invalid("the conic does not lift to sections over Q(t)"))?;
    let e = q.surface();
    let qq = conic.q();
    let r = |k: i64| Rational::from_integer(k.into());
    let a2c = &qq.scale(&r(3)) + e.c(1);
    let a1c = &(&(qq * qq).scale(&r(3)) + &(e.c(1) * qq).scale(&r(2))) + e.c(2);
    let pts = specialization_points(e, 5);
    for sign in [1i64, -1] {
        let a3 = h.scale(&r(sign));
        let roots: Vec<Vec<Rational>> = pts
            .iter()
            .map(|t0| {
                let (b2, b1, hh) = (a2c.eval(t0), a1c.eval(t0), a3.eval(t0));
                // z⁴ − 2A₂z² + 8a₃z + A₂² − 4A₁
                let quartic = UniPoly::from_coeffs(vec![
                    &b2 * &b2 - r(4) * &b1,
                    r(8) * &hh,
                    -r(2) * &b2,
                    r(0),
                    r(1),
                ]);
                rational_roots(&quartic)
            })
            .collect();
        for a1 in root_branch_candidates(&pts, &roots, 1)? {
            let a2 = (&a2c - &(&a1 * &a1)).scale(&Rational::new(1.into(), 2.into()));
            let cert = SplittingCertificate {
                q: qq.clone(),
                a1,
                a2,
                a3: a3.clone(),
            };
            if cert.verify(q.f()) {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SymbolRoute {
    #[serde(rename = "genus0")]
    Genus0,
    #[serde(rename = "genus>=2")]
    GenusAtLeast2,
    #[serde(rename = "halving")]
    Halving,
    #[serde(rename = "halving-absence")]
    HalvingAbsence,
}

impl fmt::Display for SymbolRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolRoute::Genus0 => "genus0",
            SymbolRoute::GenusAtLeast2 => "genus>=2",
            SymbolRoute::Halving => "halving",
            SymbolRoute::HalvingAbsence => "halving-absence",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SymbolResult {
    /// `+1` or `−1`.
    pub value: i8,
    pub route: SymbolRoute,
    /// A section `s_o` with `2s_o = s_C^±`.
    pub witness: Option<SectionPoint>,
    pub certificate: Option<SplittingCertificate>,
    pub genus: i64,
}

/// `(C/Q)` from the section `s` over `C`.
pub fn symbol_of_section(
    q: &PreparedQuartic,
    conic: &Conic,
    s: &SectionPoint,
    sing: &AdeSum,
) -> Result<SymbolResult> {
    let genus = genus_from_sing(sing);
    let fast = |value, route| SymbolResult {
        value,
        route,
        witness: None,
        certificate: None,
        genus,
    };
    if genus == 0 {
        return Ok(fast(1, SymbolRoute::Genus0));
    }
    if genus >= 2 {
        return Ok(fast(-1, SymbolRoute::GenusAtLeast2));
    }
    match halve(q.surface(), s)? {
        Some(s_o) => {
            let cert = splitting_certificate(q, conic, &s_o)?;
            Ok(SymbolResult {
                value: 1,
                route: SymbolRoute::Halving,
                witness: Some(s_o),
                certificate: Some(cert),
                genus,
            })
        }
        None => Ok(fast(-1, SymbolRoute::HalvingAbsence)),
    }
}

/// `(C/Q)` for an even tangential conic.
pub fn qr_symbol(q: &PreparedQuartic, conic: &Conic) -> Result<SymbolResult> {
    let cfg = singular_configuration(q)?;
    let (plus, _) = lift_conic(q, conic)?;
    symbol_of_section(q, conic, &plus, &cfg.sing_type)
}

pub fn combinatorial_type(q: &PreparedQuartic, conic: &Conic) -> Result<CombinatorialType> {
    let cfg = singular_configuration(q)?;
    let rep = even_tangency(q, conic)?;
    if !rep.is_even_tangential {
        return Err(Error::invalid("the conic is not even tangential"));
    }
    Ok(CombinatorialType {
        sing_type: cfg.sing_type,
        line_class: cfg.line_class,
        contact_multiset: rep.multiset(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ZariskiPair,
    Inconclusive,
    NotComparable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug)]
pub struct ZariskiReport {
    pub types: [CombinatorialType; 2],
    pub symbols: [SymbolResult; 2],
    pub verdict: Verdict,
}

/// Equal combinatorial types with opposite symbols give a Zariski pair.
pub fn zariski_pair_check(
    first: (&PreparedQuartic, &Conic),
    second: (&PreparedQuartic, &Conic),
) -> Result<ZariskiReport> {
    let t1 = combinatorial_type(first.0, first.1)?;
    let t2 = combinatorial_type(second.0, second.1)?;
    let s1 = qr_symbol(first.0, first.1)?;
    let s2 = qr_symbol(second.0, second.1)?;
    let verdict = if t1 != t2 {
        Verdict::NotComparable
    } else if s1.value != s2.value {
        Verdict::ZariskiPair
    } else {
        Verdict::Inconclusive
    };
    Ok(ZariskiReport {
        types: [t1, t2],
        symbols: [s1, s2],
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Feasibility {
    /// `Q⁺ ∼ Q⁻ ∼ (2,2)`: `D_{2n}`-covers branched at `2C + nQ` exist for every `n ≥ 3`.
    AllN,
    /// `(C/Q) = 1`, but whether `Q⁺ ∼ Q⁻` is not decided.
    Undetermined,
    /// No `D_{2p}`-cover with branch locus `C + Q` for odd primes `p ≥ 5`.
    NoOddPrime,
}

impl fmt::Display for Feasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Feasibility::AllN => "D_2n-covers branched at 2C+nQ exist for all n >= 3",
            Feasibility::Undetermined => "undetermined: Q+ ~ Q- not decided",
            Feasibility::NoOddPrime => "no D_2p-cover branched along C+Q for odd primes p >= 5",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    pub configuration: Configuration,
    pub symbol: SymbolResult,
    pub feasibility: Feasibility,
}

pub fn dihedral_feasibility(q: &PreparedQuartic, conic: &Conic) -> Result<FeasibilityReport> {
    let cfg = singular_configuration(q)?;
    let symbol = qr_symbol(q, conic)?;
    let special = ["2A1", "A3"].map(|s| s.parse::<AdeSum>().unwrap());
    let feasibility = match symbol.value {
        1 if special.contains(&cfg.sing_type) => Feasibility::AllN,
        1 => Feasibility::Undetermined,
        _ => Feasibility::NoOddPrime,
    };
    Ok(FeasibilityReport {
        configuration: cfg,
        symbol,
        feasibility,
    })
}
