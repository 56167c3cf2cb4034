//! ADE root lattices and singularity labels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gram::GramLattice;
use crate::arith::rat;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// A simple root lattice or simple singularity `A_n`, `D_n`, `E_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AdeLabel {
    pub family: Family,
    pub n: u32,
}

impl AdeLabel {
    pub fn new(family: Family, n: u32) -> Result<Self> {
        let ok = match family {
            Family::A => n >= 1,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
        };
        if ok {
            Ok(AdeLabel { family, n })
        } else {
            Err(Error::invalid(format!("no root lattice {family:?}{n}")))
        }
    }

    pub fn a(n: u32) -> Self {
        AdeLabel {
            family: Family::A,
            n,
        }
    }

    /// Dynkin diagram edges on nodes `0..n`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n as usize;
        match self.family {
            Family::A => (1..n).map(|i| (i - 1, i)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            // Bourbaki numbering 1-3-4-5-..., with 2 attached to 4.
            Family::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((3..n).map(|i| (i - 1, i)));
                e
            }
        }
    }

    pub fn gram(&self) -> GramLattice {
        let n = self.n as usize;
        let mut g = vec![vec![rat(0); n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = rat(2);
        }
        for (i, j) in self.edges() {
            g[i][j] = rat(-1);
            g[j][i] = rat(-1);
        }
        GramLattice::new(g).expect("Cartan matrices are positive definite")
    }

    /// Order of the discriminant group `L^∨/L`.
    pub fn discriminant_group_order(&self) -> u32 {
        match (self.family, self.n) {
            (Family::A, n) => n + 1,
            (Family::D, _) => 4,
            (Family::E, 6) => 3,
            (Family::E, 7) => 2,
            _ => 1,
        }
    }

    /// Number of roots.
    pub fn root_count(&self) -> u32 {
        let n = self.n;
        match self.family {
            Family::A => n * (n + 1),
            Family::D => 2 * n * (n - 1),
            Family::E => [72, 126, 240][(n - 6) as usize],
        }
    }

    /// δ-invariant of the plane curve singularity.
    pub fn delta(&self) -> u32 {
        match self.family {
            Family::A => self.n.div_ceil(2),
            Family::D => self.n / 2 + 1,
            Family::E => [3, 4, 4][(self.n - 6) as usize],
        }
    }
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.n)
    }
}

impl FromStr for AdeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let fam = match s.chars().next() {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::invalid(format!("bad ADE label '{s}'"))),
        };
        let n: u32 = s[1..]
            .parse()
            .map_err(|_| Error::invalid(format!("bad ADE label '{s}'")))?;
        AdeLabel::new(fam, n)
    }
}

/// A multiset of ADE labels such as `A2+2A1`, kept sorted (largest first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AdeSum(pub Vec<AdeLabel>);

impl AdeSum {
    pub fn new(mut v: Vec<AdeLabel>) -> Self {
        v.sort_by(|a, b| b.cmp(a));
        AdeSum(v)
    }

    pub fn labels(&self) -> &[AdeLabel] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gram(&self) -> GramLattice {
        self.0
            .iter()
            .fold(GramLattice::trivial(), |acc, l| acc.direct_sum(&l.gram()))
    }

    pub fn delta(&self) -> u32 {
        self.0.iter().map(|l| l.delta()).sum()
    }
}

impl fmt::Display for AdeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let j = (i..self.0.len())
                .find(|&j| self.0[j] != self.0[i])
                .unwrap_or(self.0.len());
            let k = j - i;
            parts.push(if k == 1 {
                self.0[i].to_string()
            } else {
                format!("{k}{}", self.0[i])
            });
            i = j;
        }
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for AdeSum {
    type Err = Error;
    /// Accepts `0`, empty, or terms like `2A1`, `A3`, joined by `+`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" || s == "∅" {
            return Ok(AdeSum::default());
        }
        let mut v = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
            let mult: usize = if digits.is_empty() {
                1
            } else {
                digits
                    .parse()
                    .map_err(|_| Error::invalid("bad multiplicity"))?
            };
            let label: AdeLabel = term[digits.len()..].parse()?;
            v.extend(std::iter::repeat(label).take(mult));
        }
        Ok(AdeSum::new(v))
    }
}
