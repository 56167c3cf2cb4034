//! Rational functions in `t`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::rational::Rational;
use super::unipoly::{forward_owned, poly_gcd, UniPoly};

/// `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: UniPoly,
    den: UniPoly,
}

impl RatFn {
    /// Panics on a zero denominator.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn::zero();
        }
        let g = poly_gcd(&num, &den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let l = den.lead().recip();
        RatFn {
            num: num.scale(&l),
            den: den.scale(&l),
        }
    }

    pub fn zero() -> Self {
        RatFn {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFn {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<&UniPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn recip(&self) -> RatFn {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> RatFn {
        RatFn::new(self.num.scale(c), self.den.clone())
    }

    /// Order at the place `p` (negative for poles); `None` for zero.
    pub fn valuation(&self, p: &UniPoly) -> Option<i64> {
        let a = self.num.valuation(p)? as i64;
        Some(a - self.den.valuation(p).unwrap() as i64)
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.deg() - self.den.deg())
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!num_traits::Zero::is_zero(&d)).then(|| self.num.eval(x) / d)
    }

    pub fn pow(&self, e: u32) -> RatFn {
        RatFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Rewrites `r(t)` as `s^k · r(1/s)` in the variable `s`.
    pub fn twist_at_infinity(&self, k: i64) -> RatFn {
        if self.is_zero() {
            return RatFn::zero();
        }
        let rev = |p: &UniPoly| {
            let mut v = p.coeffs().to_vec();
            v.reverse();
            UniPoly::from_coeffs(v)
        };
        // r(1/s) = s^(dd - dn) · rev(num)/rev(den)
        let shift = k + self.den.deg() - self.num.deg();
        let (mut n, mut d) = (rev(&self.num), rev(&self.den));
        let s = UniPoly::t();
        if shift >= 0 {
            n = &n * &s.pow(shift as u32);
        } else {
            d = &d * &s.pow((-shift) as u32);
        }
        RatFn::new(n, d)
    }
}

impl From<UniPoly> for RatFn {
    fn from(p: UniPoly) -> Self {
        RatFn::from_poly(p)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den.clone());
        }
        RatFn::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        self + &(-o)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, o: &RatFn) -> RatFn {
        assert!(!o.is_zero(), "division by zero rational function");
        RatFn::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(Add, add, RatFn);
forward_owned!(Sub, sub, RatFn);
forward_owned!(Mul, mul, RatFn);
forward_owned!(Div, div, RatFn);

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}
