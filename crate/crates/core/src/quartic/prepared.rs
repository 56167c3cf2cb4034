//! Plane quartics in prepared form and conics through the marked point.
//!
//! In the affine chart `u = U/V`, `t = T/V` a prepared quartic reads
//! `f(t, u) = u³ + c₁(t)u² + c₂(t)u + c₃(t)` with `deg c_k ≤ k + 1`; the marked
//! point is `x = [1, 0, 0]` and its tangent line is `V = 0`.

use std::fmt;

use num_traits::Zero;

use crate::arith::parse::split_equation;
use crate::arith::{parse_bipoly, parse_unipoly, BiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::surface::{two_torsion_free, WeierstrassCurve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreparedQuartic {
    f: BiPoly,
    curve: WeierstrassCurve,
}

impl PreparedQuartic {
    /// Normalizes the `u³` coefficient to 1 and checks the prepared form and irreducibility.
    pub fn new(f: BiPoly) -> Result<Self> {
        if f.deg_u() != Some(3) || !f.coeff(3).is_constant() {
            return Err(Error::invalid(
                "a prepared quartic is a cubic in u with constant leading coefficient",
            ));
        }
        let f = f.scale(&f.coeff(3).lead().recip());
        for k in 1..=3 {
            let d = f.coeff(3 - k).deg();
            if d > k as i64 + 1 {
                return Err(Error::Degree(format!("deg c{k} = {d} > {}", k + 1)));
            }
        }
        let curve = WeierstrassCurve::from_cubic(&f)?;
        let q = PreparedQuartic { f, curve };
        q.contact_at_x()?;
        if !two_torsion_free(&q.curve) {
            return Err(Error::invalid(
                "the quartic is reducible: the cubic has a root in Q[t]",
            ));
        }
        Ok(q)
    }

    /// Accepts `<expr> = <expr>` or a bare expression in `t, u`.
    pub fn parse(text: &str) -> Result<Self> {
        let f = match split_equation(text)? {
            Some((l, r)) => &parse_bipoly(l)? - &parse_bipoly(r)?,
            None => parse_bipoly(text)?,
        };
        Self::new(f)
    }

    pub fn f(&self) -> &BiPoly {
        &self.f
    }

    /// The rational elliptic surface `y² = f(t, u)`.
    pub fn surface(&self) -> &WeierstrassCurve {
        &self.curve
    }

    /// `I_x(l_x, Q)`, read from the top coefficients `[t^{k+1}] c_k`.
    pub fn contact_at_x(&self) -> Result<u32> {
        for k in 1..=3 {
            if !self.curve.c(k).coeff(k + 1).is_zero() {
                return Ok(k as u32 + 1);
            }
        }
        Err(Error::invalid(
            "the tangent line V = 0 is a component of the quartic",
        ))
    }
}

impl fmt::Display for PreparedQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

/// The conic `u = q(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    q: UniPoly,
}

impl Conic {
    /// Requires `deg q = 2`.
    pub fn new(q: UniPoly) -> Result<Self> {
        match q.deg() {
            2 => Ok(Conic { q }),
            d if d > 2 => Err(Error::Degree(format!(
                "conic u = q(t) needs deg q ≤ 2, got {d}"
            ))),
            _ => Err(Error::invalid("degenerate conic: deg q < 2")),
        }
    }

    /// Allows `deg q < 2`, the union of `V = 0` and a line.
    pub fn new_allow_degenerate(q: UniPoly) -> Result<Self> {
        if q.deg() > 2 {
            return Err(Error::Degree(format!(
                "conic u = q(t) needs deg q ≤ 2, got {}",
                q.deg()
            )));
        }
        Ok(Conic { q })
    }

    /// Accepts `u = <poly in t>` or the polynomial alone.
    pub fn parse(text: &str) -> Result<Self> {
        let rhs = match split_equation(text)? {
            Some((l, r)) => {
                if l.trim() != "u" {
                    return Err(Error::invalid("a conic is written u = q(t)"));
                }
                r
            }
            None => text,
        };
        Self::new(parse_unipoly(rhs)?)
    }

    pub fn q(&self) -> &UniPoly {
        &self.q
    }

    pub fn is_degenerate(&self) -> bool {
        self.q.deg() < 2
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u = {}", self.q)
    }
}
