//! Rational roots and interpolation.
//!
//! Rational roots are found by lifting the simple roots of the squarefree part
//! modulo a good prime `p` to `p^k` and reconstructing fractions. Every rational
//! root `a/b` has `b | lead` and `a | const`, so once `p^k > 2·|const|·|lead|`
//! the reconstruction is unique and the search is complete.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use super::unipoly::{squarefree_part, UniPoly};
use crate::error::{Error, Result};

/// All rational roots, listed with multiplicity in increasing order.
pub fn rational_roots(p: &UniPoly) -> Vec<Rational> {
    assert!(!p.is_zero(), "rational roots of the zero polynomial");
    let mut roots = Vec::new();
    let mut cur = p.clone();
    let t = UniPoly::t();
    while cur.coeff(0).is_zero() && !cur.is_zero() && !cur.is_constant() {
        roots.push(Rational::zero());
        cur = cur.exact_div(&t).expect("t divides");
    }
    if !cur.is_constant() {
        for r in simple_rational_roots(&squarefree_part(&cur)) {
            let lin = UniPoly::linear_root(&r);
            while let Some(q) = cur.exact_div(&lin) {
                roots.push(r.clone());
                cur = q;
            }
        }
    }
    roots.sort();
    roots
}

/// Distinct rational roots of a squarefree polynomial with nonzero constant term.
fn simple_rational_roots(s: &UniPoly) -> Vec<Rational> {
    let z = s.primitive_integer();
    let n = z.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Rational::new(-z[0].clone(), z[1].clone())];
    }
    let bound_a = z[0].abs();
    let bound_b = z[n].abs();
    let target = BigInt::from(2) * &bound_a * &bound_b;
    let p = good_prime(&z);
    let pb = BigInt::from(p);
    let dz: Vec<BigInt> = (1..=n).map(|k| &z[k] * BigInt::from(k)).collect();
    let mut out = Vec::new();
    for r0 in 0..p {
        if eval_mod(&z, &BigInt::from(r0), &pb).is_zero() {
            let mut r = BigInt::from(r0);
            let mut m = pb.clone();
            while m <= target {
                m = &m * &m;
                let fv = eval_mod(&z, &r, &m);
                let dv = eval_mod(&dz, &r, &m);
                let inv = mod_inverse(&dv, &m).expect("simple root has invertible derivative");
                r = (r - fv * inv).mod_floor(&m);
            }
            if let Some(q) = reconstruct(&r, &m, &bound_a, &bound_b) {
                if s.eval(&q).is_zero() {
                    out.push(q);
                }
            }
        }
    }
    out
}

fn eval_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for a in c.iter().rev() {
        acc = (acc * x + a).mod_floor(m);
    }
    acc
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Finds `a/b ≡ r (mod m)` with `|a| <= na`, `0 < b <= nb`.
fn reconstruct(r: &BigInt, m: &BigInt, na: &BigInt, nb: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > na {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || &s1.abs() > nb {
        return None;
    }
    Some(Rational::new(r1, s1))
}

/// Smallest odd prime not dividing the leading coefficient for which the
/// reduction stays squarefree.
fn good_prime(z: &[BigInt]) -> u64 {
    let n = z.len() - 1;
    let mut p = 3u64;
    loop {
        if is_prime(p) {
            let pb = BigInt::from(p);
            let red: Vec<u64> = z
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("small residue"))
                .collect();
            if red[n] != 0 {
                let der: Vec<u64> = (1..=n).map(|k| red[k] * (k as u64 % p) % p).collect();
                if fp_gcd_degree(red, der, p) == 0 {
                    return p;
                }
            }
        }
        p += 2;
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Degree of gcd over F_p (0 when coprime).
fn fp_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let inv = fp_pow(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * inv % p;
            let off = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[off + j] = (a[off + j] + p - c * bj % p) % p;
            }
            fp_trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// The polynomial of degree at most `max_degree` through `points`, or `None`
/// when the points are inconsistent with that bound.
pub fn interpolate(points: &[(Rational, Rational)], max_degree: usize) -> Result<Option<UniPoly>> {
    if points.len() < max_degree + 1 {
        return Err(Error::invalid("too few interpolation points"));
    }
    for i in 0..points.len() {
        for j in 0..i {
            if points[i].0 == points[j].0 {
                return Err(Error::invalid("duplicate interpolation abscissa"));
            }
        }
    }
    let base = &points[..=max_degree];
    let mut acc = UniPoly::zero();
    for (i, (xi, yi)) in base.iter().enumerate() {
        let mut basis = UniPoly::constant(yi.clone());
        for (j, (xj, _)) in base.iter().enumerate() {
            if i != j {
                basis = (&basis * &UniPoly::linear_root(xj)).scale(&(xi - xj).recip());
            }
        }
        acc = &acc + &basis;
    }
    Ok(points[max_degree + 1..]
        .iter()
        .all(|(x, y)| acc.eval(x) == *y)
        .then_some(acc))
}

/// Polynomials `f` of degree at most `max_degree` with `f(points[i]) ∈ roots[i]` for
/// every `i`, found by interpolating each branch choice over the first
/// `max_degree + 1` points. Complete whenever every true `f` is among them.
pub fn root_branch_candidates(
    points: &[Rational],
    roots: &[Vec<Rational>],
    max_degree: usize,
) -> Result<Vec<UniPoly>> {
    let k = max_degree + 1;
    if points.len() != roots.len() || points.len() < k {
        return Err(Error::invalid("too few specializations"));
    }
    let dedup = |v: &[Rational]| {
        let mut v = v.to_vec();
        v.dedup();
        v
    };
    let heads: Vec<Vec<Rational>> = roots[..k].iter().map(|r| dedup(r)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    if heads.iter().any(|h| h.is_empty()) {
        return Ok(out);
    }
    loop {
        let pts: Vec<(Rational, Rational)> = (0..k)
            .map(|i| (points[i].clone(), heads[i][idx[i]].clone()))
            .collect();
        let f = interpolate(&pts, max_degree)?.expect("exactly determined");
        if (k..points.len()).all(|i| roots[i].contains(&f.eval(&points[i]))) && !out.contains(&f) {
            out.push(f);
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            idx[i] += 1;
            if idx[i] < heads[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
