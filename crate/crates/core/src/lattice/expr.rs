//! Text notation for lattices with torsion.
//!
//! Terms joined by `+`: `A3`, `D4*` (dual), `A1*^3` (repeated), `<1/6>` (rank one),
//! `[[2,1],[1,2]]/6` (matrix with optional divisor), `Z3` or `Z3^2` (cyclic torsion),
//! and `0` for the trivial group.

use super::ade::AdeLabel;
use super::gram::{dual_gram, GramLattice};
use crate::arith::rational::parse_rational;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Free part and cyclic torsion orders of a finitely generated abelian group with pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    pub free: GramLattice,
    pub torsion: Vec<u32>,
}

fn split_top(s: &str) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '[' | '<' | '(' => depth += 1,
            ']' | '>' | ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn split_power(term: &str) -> Result<(&str, usize)> {
    match term.rfind('^') {
        Some(i) if !term[i..].contains(']') && !term[i..].contains('>') => {
            let k: usize = term[i + 1..]
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad exponent in '{term}'")))?;
            Ok((term[..i].trim(), k))
        }
        _ => Ok((term, 1)),
    }
}

fn parse_matrix(body: &str) -> Result<Vec<Vec<Rational>>> {
    let inner = body
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::invalid(format!("bad matrix '{body}'")))?;
    let mut rows = Vec::new();
    for row in inner.split(']') {
        let row = row.trim().trim_start_matches(',').trim();
        if row.is_empty() {
            continue;
        }
        let row = row
            .strip_prefix('[')
            .ok_or_else(|| Error::invalid(format!("bad matrix row '{row}'")))?;
        rows.push(
            row.split(',')
                .map(|x| {
                    parse_rational(x).ok_or_else(|| Error::invalid(format!("bad entry '{x}'")))
                })
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(rows)
}

fn parse_term(term: &str) -> Result<(GramLattice, Vec<u32>)> {
    let term = term.trim();
    let (body, k) = split_power(term)?;
    let body = body
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .trim();
    let (g, tors) = if body == "0" {
        (GramLattice::trivial(), vec![])
    } else if let Some(rest) = body.strip_prefix('Z') {
        let n: u32 = rest
            .trim_start_matches('/')
            .parse()
            .map_err(|_| Error::invalid(format!("bad torsion term '{body}'")))?;
        (GramLattice::trivial(), vec![n])
    } else if let Some(q) = body.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        let q = parse_rational(q)
            .ok_or_else(|| Error::invalid(format!("bad rank-one term '{body}'")))?;
        (GramLattice::new(vec![vec![q]])?, vec![])
    } else if body.starts_with('[') {
        let (m, d) = match body.rfind("]/") {
            Some(i) => (
                &body[..=i],
                parse_rational(&body[i + 2..]).ok_or_else(|| Error::invalid("bad divisor"))?,
            ),
            None => (body, Rational::from_integer(1.into())),
        };
        let rows = parse_matrix(m)?;
        let inv = d.recip();
        (
            GramLattice::new(
                rows.into_iter()
                    .map(|r| r.into_iter().map(|x| x * &inv).collect())
                    .collect(),
            )?,
            vec![],
        )
    } else if let Some(l) = body.strip_suffix('*') {
        (dual_gram(&l.parse::<AdeLabel>()?.gram()), vec![])
    } else {
        (body.parse::<AdeLabel>()?.gram(), vec![])
    };
    let mut acc = GramLattice::trivial();
    let mut t = Vec::new();
    for _ in 0..k {
        acc = acc.direct_sum(&g);
        t.extend(tors.iter().copied());
    }
    Ok((acc, t))
}

pub fn parse_lattice(s: &str) -> Result<LatticeData> {
    let mut free = GramLattice::trivial();
    let mut torsion = Vec::new();
    for term in split_top(s) {
        let (g, t) = parse_term(term)?;
        free = free.direct_sum(&g);
        torsion.extend(t);
    }
    Ok(LatticeData { free, torsion })
}
