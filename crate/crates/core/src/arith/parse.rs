//! Parser for polynomial text: rational literals, `t`, `u`, `+ - * / ^`, parentheses.
//!
//! Division is allowed by expressions free of `u`, so the same grammar reads
//! polynomials in `t, u` and rational functions in `t`.

use super::bipoly::BiPoly;
use super::ratfn::RatFn;
use super::rational::{parse_rational, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Value `num / den` with `den` a polynomial in `t`.
#[derive(Clone, Debug)]
struct Frac {
    num: BiPoly,
    den: UniPoly,
}

impl Frac {
    fn from_bi(b: BiPoly) -> Self {
        Frac {
            num: b,
            den: UniPoly::one(),
        }
    }

    fn add(&self, o: &Frac) -> Frac {
        let n = &(&self.num * &BiPoly::from_t(o.den.clone()))
            + &(&o.num * &BiPoly::from_t(self.den.clone()));
        Frac {
            num: n,
            den: &self.den * &o.den,
        }
        .reduce()
    }

    fn neg(&self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
        .reduce()
    }

    fn reduce(self) -> Frac {
        let mut g = self.den.clone();
        for c in self.num.coeffs() {
            g = super::unipoly::poly_gcd(&g, c);
        }
        if g.is_constant() {
            return self;
        }
        Frac {
            num: BiPoly::from_coeffs(self.num.coeffs().iter().map(|c| c.div_rem(&g).0).collect()),
            den: self.den.div_rem(&g).0,
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' {
                acc.add(&rhs)
            } else {
                acc.add(&rhs.neg())
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = acc.mul(&rhs);
            } else {
                let d = match rhs.num.as_t_poly() {
                    Some(d) => d,
                    None => {
                        self.pos = at;
                        return self.err("division by an expression involving u");
                    }
                };
                if d.is_zero() {
                    self.pos = at;
                    return self.err("division by zero");
                }
                acc = acc.mul(&Frac {
                    num: BiPoly::from_t(rhs.den.clone()),
                    den: d,
                });
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected a non-negative integer exponent");
            }
            let e: u32 = match std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
            {
                Ok(e) if e <= 64 => e,
                _ => {
                    self.pos = start;
                    return self.err("exponent too large");
                }
            };
            let mut acc = Frac::from_bi(BiPoly::from_t(UniPoly::one()));
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Frac::from_bi(BiPoly::from_t(UniPoly::t())))
            }
            Some(b'u') => {
                self.pos += 1;
                Ok(Frac::from_bi(BiPoly::u()))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let lit = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let q: Rational = parse_rational(lit).expect("digits parse");
                Ok(Frac::from_bi(BiPoly::from_t(UniPoly::constant(q))))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_frac(text: &str) -> Result<Frac> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Polynomial in `t` and `u`.
pub fn parse_bipoly(text: &str) -> Result<BiPoly> {
    let v = parse_frac(text)?;
    if !v.den.is_constant() {
        return Err(Error::invalid(
            "expected a polynomial, found a rational function",
        ));
    }
    Ok(v.num.scale(&v.den.lead().recip()))
}

/// Polynomial in `t` alone.
pub fn parse_unipoly(text: &str) -> Result<UniPoly> {
    parse_bipoly(text)?
        .as_t_poly()
        .ok_or_else(|| Error::invalid("expected a polynomial in t only"))
}

/// Rational function in `t`.
pub fn parse_ratfn(text: &str) -> Result<RatFn> {
    let v = parse_frac(text)?;
    let n = v
        .num
        .as_t_poly()
        .ok_or_else(|| Error::invalid("expected a rational function in t only"))?;
    Ok(RatFn::new(n, v.den))
}

/// Splits `lhs = rhs`; returns `None` when no `=` is present.
pub fn split_equation(text: &str) -> Result<Option<(&str, &str)>> {
    let parts: Vec<&str> = text.split('=').collect();
    match parts.len() {
        1 => Ok(None),
        2 => Ok(Some((parts[0].trim(), parts[1].trim()))),
        _ => Err(Error::Syntax {
            pos: parts[0].len() + parts[1].len() + 1,
            msg: "more than one '='".into(),
        }),
    }
}
