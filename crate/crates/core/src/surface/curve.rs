//! Weierstrass curves `y² = u³ + c₁u² + c₂u + c₃` over Q(t) and their group law.

use std::fmt;

use crate::arith::parse::split_equation;
use crate::arith::{parse_bipoly, parse_ratfn, rat, BiPoly, RatFn, Rational, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    c: [UniPoly; 3],
}

impl WeierstrassCurve {
    /// Requires `deg c_k ≤ 2k` and a nonzero discriminant.
    pub fn new(c1: UniPoly, c2: UniPoly, c3: UniPoly) -> Result<Self> {
        for (k, c) in [&c1, &c2, &c3].into_iter().enumerate() {
            if c.deg() > 2 * (k as i64 + 1) {
                return Err(Error::Degree(format!(
                    "deg c{} = {} > {}",
                    k + 1,
                    c.deg(),
                    2 * (k + 1)
                )));
            }
        }
        let e = WeierstrassCurve { c: [c1, c2, c3] };
        if e.discriminant().is_zero() {
            return Err(Error::invalid(
                "singular cubic: discriminant vanishes identically",
            ));
        }
        Ok(e)
    }

    /// From a monic cubic in `u` with coefficients in Q[t].
    pub fn from_cubic(f: &BiPoly) -> Result<Self> {
        if f.deg_u() != Some(3) || f.coeff(3) != UniPoly::one() {
            return Err(Error::invalid("expected a monic cubic in u"));
        }
        Self::new(f.coeff(2), f.coeff(1), f.coeff(0))
    }

    /// Accepts `y^2 = <cubic>` or the cubic alone.
    pub fn parse(text: &str) -> Result<Self> {
        let rhs = match split_equation(text)? {
            Some((lhs, rhs)) => {
                if lhs.replace(' ', "") != "y^2" {
                    return Err(Error::invalid("left-hand side must be y^2"));
                }
                rhs
            }
            None => text,
        };
        Self::from_cubic(&parse_bipoly(rhs)?)
    }

    pub fn c(&self, k: usize) -> &UniPoly {
        &self.c[k - 1]
    }

    pub fn cubic(&self) -> BiPoly {
        BiPoly::from_coeffs(vec![
            self.c[2].clone(),
            self.c[1].clone(),
            self.c[0].clone(),
            UniPoly::one(),
        ])
    }

    /// `u³ + c₁u² + c₂u + c₃` at a rational function.
    pub fn rhs(&self, x: &RatFn) -> RatFn {
        let [a, b, c] = self.c.each_ref().map(|p| RatFn::from_poly(p.clone()));
        &(&(&(x + &a) * x + &b) * x) + &c
    }

    /// `3u² + 2c₁u + c₂`.
    pub fn rhs_derivative(&self, x: &RatFn) -> RatFn {
        let a = RatFn::from_poly(self.c[0].scale(&rat(2)));
        let b = RatFn::from_poly(self.c[1].clone());
        &(&(&x.scale(&rat(3)) + &a) * x) + &b
    }

    /// Discriminant of the cubic in `u`.
    pub fn discriminant(&self) -> UniPoly {
        let [a, b, c] = &self.c;
        let ab = a * b;
        &(&(&(&(&ab * &ab) - &(&(b * b) * b).scale(&rat(4)))
            - &(&(&(a * a) * a) * c).scale(&rat(4)))
            - &(c * c).scale(&rat(27)))
            + &(&ab * c).scale(&rat(18))
    }

    /// `c₄ = 16(c₁² − 3c₂)`.
    pub fn c4(&self) -> UniPoly {
        (&(&self.c[0] * &self.c[0]) - &self.c[1].scale(&rat(3))).scale(&rat(16))
    }

    /// `c₆ = −64c₁³ + 288c₁c₂ − 864c₃`.
    pub fn c6(&self) -> UniPoly {
        let [a, b, c] = &self.c;
        &(&(&(a * a) * a).scale(&rat(-64)) + &(a * b).scale(&rat(288))) - &c.scale(&rat(864))
    }

    /// The model at `t = ∞` in the variable `s = 1/t`: `c_k ↦ s^{2k} c_k(1/s)`.
    pub fn at_infinity(&self) -> WeierstrassCurve {
        let tw = |p: &UniPoly, k: i64| {
            RatFn::from_poly(p.clone())
                .twist_at_infinity(2 * k)
                .as_poly()
                .expect("degree bound keeps the twist polynomial")
                .clone()
        };
        WeierstrassCurve {
            c: [tw(&self.c[0], 1), tw(&self.c[1], 2), tw(&self.c[2], 3)],
        }
    }

    /// The curve over Q at `t = t₀`, as a curve with constant coefficients.
    pub fn specialize(&self, t0: &Rational) -> Result<WeierstrassCurve> {
        let [a, b, c] = self.c.each_ref().map(|p| UniPoly::constant(p.eval(t0)));
        let e = WeierstrassCurve { c: [a, b, c] };
        if e.discriminant().is_zero() {
            return Err(Error::invalid(format!("singular fiber at t = {t0}")));
        }
        Ok(e)
    }

    pub fn on_curve(&self, p: &SectionPoint) -> bool {
        match p {
            SectionPoint::Zero => true,
            SectionPoint::Affine { x, y } => &(y * y) == &self.rhs(x),
        }
    }

    fn require(&self, p: &SectionPoint) -> Result<()> {
        if self.on_curve(p) {
            Ok(())
        } else {
            Err(Error::invalid(format!("point {p} is not on the curve")))
        }
    }

    pub fn negate(&self, p: &SectionPoint) -> Result<SectionPoint> {
        self.require(p)?;
        Ok(p.neg())
    }

    pub fn add(&self, p: &SectionPoint, q: &SectionPoint) -> Result<SectionPoint> {
        self.require(p)?;
        self.require(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn double(&self, p: &SectionPoint) -> Result<SectionPoint> {
        self.add(p, p)
    }

    /// `n·P` for any integer `n`.
    pub fn multiple(&self, n: i64, p: &SectionPoint) -> Result<SectionPoint> {
        self.require(p)?;
        let mut acc = SectionPoint::Zero;
        let mut base = if n < 0 { p.neg() } else { p.clone() };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    pub(crate) fn add_unchecked(&self, p: &SectionPoint, q: &SectionPoint) -> SectionPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (SectionPoint::Zero, _) => return q.clone(),
            (_, SectionPoint::Zero) => return p.clone(),
            (SectionPoint::Affine { x: x1, y: y1 }, SectionPoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let lambda = if x1 != x2 {
            &(y2 - y1) / &(x2 - x1)
        } else if y1 == y2 && !y1.is_zero() {
            &self.rhs_derivative(x1) / &y1.scale(&rat(2))
        } else {
            return SectionPoint::Zero;
        };
        let a = RatFn::from_poly(self.c[0].clone());
        let x3 = &(&(&(&lambda * &lambda) - &a) - x1) - x2;
        let y3 = -(y1 + &(&lambda * &(&x3 - x1)));
        SectionPoint::Affine { x: x3, y: y3 }
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.cubic())
    }
}

/// A section: the zero section `O` or an affine point over Q(t).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SectionPoint {
    Zero,
    Affine { x: RatFn, y: RatFn },
}

impl SectionPoint {
    pub fn new(x: RatFn, y: RatFn) -> Self {
        SectionPoint::Affine { x, y }
    }

    pub fn from_polys(x: UniPoly, y: UniPoly) -> Self {
        SectionPoint::Affine {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SectionPoint::Zero)
    }

    pub fn coords(&self) -> Option<(&RatFn, &RatFn)> {
        match self {
            SectionPoint::Zero => None,
            SectionPoint::Affine { x, y } => Some((x, y)),
        }
    }

    pub fn x(&self) -> Option<&RatFn> {
        self.coords().map(|c| c.0)
    }

    pub fn y(&self) -> Option<&RatFn> {
        self.coords().map(|c| c.1)
    }

    pub fn neg(&self) -> SectionPoint {
        match self {
            SectionPoint::Zero => SectionPoint::Zero,
            SectionPoint::Affine { x, y } => SectionPoint::Affine {
                x: x.clone(),
                y: -y,
            },
        }
    }

    /// Coordinates as polynomials, when both are.
    pub fn polynomial_coords(&self) -> Option<(&UniPoly, &UniPoly)> {
        let (x, y) = self.coords()?;
        Some((x.as_poly()?, y.as_poly()?))
    }

    /// The point in the coordinates at `t = ∞`: `(s²x(1/s), s³y(1/s))`.
    pub fn at_infinity(&self) -> SectionPoint {
        match self {
            SectionPoint::Zero => SectionPoint::Zero,
            SectionPoint::Affine { x, y } => SectionPoint::Affine {
                x: x.twist_at_infinity(2),
                y: y.twist_at_infinity(3),
            },
        }
    }

    /// The reduction at `t = t₀` on the specialized curve; a pole gives `O`.
    pub fn specialize(&self, t0: &Rational) -> SectionPoint {
        match self {
            SectionPoint::Zero => SectionPoint::Zero,
            SectionPoint::Affine { x, y } => match (x.eval(t0), y.eval(t0)) {
                (Some(a), Some(b)) => SectionPoint::Affine {
                    x: RatFn::constant(a),
                    y: RatFn::constant(b),
                },
                _ => SectionPoint::Zero,
            },
        }
    }

    /// Accepts `O` or `(x, y)` with `x, y` rational functions in `t`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if s == "O" || s == "0" || s == "Zero" {
            return Ok(SectionPoint::Zero);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::invalid("expected a point '(x, y)' or 'O'"))?;
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    if split.is_some() {
                        return Err(Error::invalid("a point has two coordinates"));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(|| Error::invalid("a point has two coordinates"))?;
        Ok(SectionPoint::Affine {
            x: parse_ratfn(&inner[..i])?,
            y: parse_ratfn(&inner[i + 1..])?,
        })
    }
}

impl fmt::Display for SectionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionPoint::Zero => f.write_str("O"),
            SectionPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}
