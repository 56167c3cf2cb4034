//! Polynomials in `u` with coefficients in Q[t].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::rational::{rat, Rational};
use super::unipoly::{forward_owned, UniPoly};

/// `Σ coeffs[k]·u^k`, top coefficient nonzero unless zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    /// The variable `u`.
    pub fn u() -> Self {
        Self::from_coeffs(vec![UniPoly::zero(), UniPoly::one()])
    }

    pub fn from_t(p: UniPoly) -> Self {
        Self::from_coeffs(vec![p])
    }

    pub fn from_coeffs(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> UniPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn deg_u(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree in `t` and `u`; `-1` for zero.
    pub fn total_degree(&self) -> i64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| k as i64 + c.deg())
            .max()
            .unwrap_or(-1)
    }

    /// Substitutes `u = q(t)`.
    pub fn eval_u(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Specializes `t = t0`, giving a polynomial in `u` (stored as a `UniPoly`).
    pub fn eval_t(&self, t0: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| c.eval(t0)).collect())
    }

    pub fn derivative_u(&self) -> BiPoly {
        BiPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&rat(k as i64)))
                .collect(),
        )
    }

    pub fn derivative_t(&self) -> BiPoly {
        BiPoly::from_coeffs(self.coeffs.iter().map(|c| c.derivative()).collect())
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        BiPoly::from_coeffs(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Returns the polynomial as a `UniPoly` in `t` when it does not involve `u`.
    pub fn as_t_poly(&self) -> Option<UniPoly> {
        match self.coeffs.len() {
            0 => Some(UniPoly::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{k}"),
            };
            let cs = c.to_string();
            parts.push(if k == 0 {
                cs
            } else if *c == UniPoly::one() {
                mono
            } else if c.coeffs().iter().filter(|x| !x.is_zero()).count() == 1
                && !cs.starts_with('-')
            {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        BiPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        BiPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut v = vec![UniPoly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        BiPoly::from_coeffs(v)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

forward_owned!(Add, add, BiPoly);
forward_owned!(Sub, sub, BiPoly);
forward_owned!(Mul, mul, BiPoly);

/// Resultant with respect to `u`, by fraction-free elimination of the Sylvester matrix.
pub fn resultant_u(f: &BiPoly, g: &BiPoly) -> UniPoly {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of zero polynomial");
    let m = f.deg_u().unwrap();
    let n = g.deg_u().unwrap();
    if m == 0 {
        return f.coeff(0).pow(n as u32);
    }
    if n == 0 {
        return g.coeff(0).pow(m as u32);
    }
    let size = m + n;
    let mut a = vec![vec![UniPoly::zero(); size]; size];
    for i in 0..n {
        for k in 0..=m {
            a[i][i + k] = f.coeff(m - k);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            a[n + i][i + k] = g.coeff(n - k);
        }
    }
    bareiss_det(a)
}

/// Determinant of a square matrix over Q[t].
pub fn bareiss_det(mut a: Vec<Vec<UniPoly>>) -> UniPoly {
    let size = a.len();
    if size == 0 {
        return UniPoly::one();
    }
    let mut sign = false;
    let mut prev = UniPoly::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[size - 1][size - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}
