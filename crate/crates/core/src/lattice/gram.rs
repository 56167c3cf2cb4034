//! Positive-definite rational Gram lattices and short-vector enumeration.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::rational::{floor, fmt_rational};
use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Rational>>;

/// Integer coordinates with respect to the lattice basis.
pub type LatticeVector = Vec<i64>;

/// Lattice given by a symmetric positive-definite Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    gram: Matrix,
}

impl GramLattice {
    pub fn new(gram: Matrix) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("Gram matrix is not square"));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::invalid("Gram matrix is not symmetric"));
                }
            }
        }
        let l = GramLattice { gram };
        if l.ldl().iter().any(|d| !d.is_positive()) {
            return Err(Error::invalid("Gram matrix is not positive definite"));
        }
        Ok(l)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn trivial() -> Self {
        GramLattice { gram: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.gram[i][j]
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        Self::new(
            self.gram
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        )
    }

    /// Diagonal of the LDLᵀ factorization.
    fn ldl(&self) -> Vec<Rational> {
        fincke_pohst_form(&self.gram)
            .iter()
            .enumerate()
            .map(|(i, r)| r[i].clone())
            .collect()
    }

    pub fn det(&self) -> Rational {
        self.ldl().iter().fold(Rational::one(), |a, d| a * d)
    }

    pub fn pair(&self, v: &[i64], w: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in w.iter().enumerate() {
                if b != 0 {
                    acc += &self.gram[i][j] * rat(a * b);
                }
            }
        }
        acc
    }

    pub fn norm(&self, v: &[i64]) -> Rational {
        self.pair(v, v)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, o: &GramLattice) -> GramLattice {
        let (a, b) = (self.rank(), o.rank());
        let mut g = vec![vec![Rational::zero(); a + b]; a + b];
        for i in 0..a {
            for j in 0..a {
                g[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[a + i][a + j] = o.gram[i][j].clone();
            }
        }
        GramLattice { gram: g }
    }

    /// Gram of the sublattice spanned by the given columns.
    pub fn restrict(&self, basis: &[LatticeVector]) -> Result<GramLattice> {
        GramLattice::new(
            basis
                .iter()
                .map(|v| basis.iter().map(|w| self.pair(v, w)).collect())
                .collect(),
        )
    }

    /// Smallest nonzero norm.
    pub fn minimum_norm(&self) -> Option<Rational> {
        let bound = (0..self.rank()).map(|i| self.gram[i][i].clone()).min()?;
        enumerate_up_to(self, &bound)
            .iter()
            .filter(|v| v.iter().any(|&x| x != 0))
            .map(|v| self.norm(v))
            .min()
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .gram
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(fmt_rational).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Gram of the dual lattice in the dual basis: the inverse matrix.
pub fn dual_gram(l: &GramLattice) -> GramLattice {
    GramLattice {
        gram: invert(&l.gram).expect("positive definite matrix is invertible"),
    }
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let d = &f * &a[c][k];
                    a[r][k] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coefficients with `Q(x) = Σ_i q[i][i]·(x_i + Σ_{j>i} q[i][j]·x_j)²`.
fn fincke_pohst_form(g: &Matrix) -> Matrix {
    let n = g.len();
    let mut q = g.clone();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            if !q[i][i].is_zero() {
                q[i][j] = &q[i][j] / &q[i][i];
            }
        }
        for k in i + 1..n {
            for l in k..n {
                let d = &q[k][i] * &q[i][l];
                q[k][l] -= d;
            }
        }
    }
    q
}

/// All vectors of norm at most `bound`, including zero, in lexicographic order.
pub fn enumerate_up_to(l: &GramLattice, bound: &Rational) -> Vec<LatticeVector> {
    let n = l.rank();
    let q = fincke_pohst_form(&l.gram);
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    if n == 0 {
        return vec![Vec::new()];
    }
    descend(&q, n - 1, bound.clone(), &mut x, &mut out);
    out.sort();
    out
}

fn descend(q: &Matrix, i: usize, rem: Rational, x: &mut Vec<i64>, out: &mut Vec<LatticeVector>) {
    let n = x.len();
    let mut c = Rational::zero();
    for j in i + 1..n {
        if x[j] != 0 {
            c -= &q[i][j] * rat(x[j]);
        }
    }
    let fits = |v: i64| -> Option<Rational> {
        let d = rat(v) - &c;
        let r = &rem - &q[i][i] * &d * &d;
        (!r.is_negative()).then_some(r)
    };
    let start = floor(&c).to_i64().expect("coordinate fits in i64");
    let visit = |v: i64, r: Rational, x: &mut Vec<i64>, out: &mut Vec<LatticeVector>| {
        x[i] = v;
        if i == 0 {
            out.push(x.clone());
        } else {
            descend(q, i - 1, r, x, out);
        }
    };
    let mut v = start;
    while let Some(r) = fits(v) {
        visit(v, r, x, out);
        v -= 1;
    }
    let mut v = start + 1;
    while let Some(r) = fits(v) {
        visit(v, r, x, out);
        v += 1;
    }
    x[i] = 0;
}

/// All vectors `v` with `vᵀGv = q` exactly, in lexicographic order.
pub fn enumerate_by_norm(l: &GramLattice, q: &Rational) -> Vec<LatticeVector> {
    enumerate_up_to(l, q)
        .into_iter()
        .filter(|v| l.norm(v) == *q)
        .collect()
}

/// Integer basis of `{v ∈ L : ⟨v, e⟩ = 0 for all e}` and its Gram matrix.
pub fn orthogonal_complement_gram(
    ambient: &GramLattice,
    embedded: &[LatticeVector],
) -> Result<(GramLattice, Vec<LatticeVector>)> {
    let n = ambient.rank();
    if embedded.iter().any(|e| e.len() != n) {
        return Err(Error::invalid("embedded vector has wrong length"));
    }
    if ambient.restrict(embedded).is_err() {
        return Err(Error::invalid("embedded vectors are linearly dependent"));
    }
    let rows: Vec<Vec<Rational>> = embedded
        .iter()
        .map(|e| {
            (0..n)
                .map(|j| (0..n).map(|i| &ambient.gram[i][j] * rat(e[i])).sum())
                .collect()
        })
        .collect();
    let basis = integer_kernel(&rows);
    let g = ambient.restrict(&basis)?;
    Ok((g, basis))
}

/// Basis of the integer kernel of a rational matrix, via unimodular column operations.
pub fn integer_kernel(rows: &[Vec<Rational>]) -> Vec<LatticeVector> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter()
                .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let col_op =
        |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, k: &BigInt| {
            for row in a.iter_mut() {
                let d = &row[src] * k;
                row[dst] -= d;
            }
            for row in u.iter_mut() {
                let d = &row[src] * k;
                row[dst] -= d;
            }
        };
    let swap = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in u.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut piv = 0;
    for r in 0..a.len() {
        loop {
            let best = (piv..n)
                .filter(|&j| !a[r][j].is_zero())
                .min_by_key(|&j| a[r][j].abs());
            let Some(b) = best else { break };
            swap(&mut a, &mut u, piv, b);
            let mut done = true;
            for j in piv + 1..n {
                if !a[r][j].is_zero() {
                    let k = a[r][j].div_floor(&a[r][piv]);
                    col_op(&mut a, &mut u, j, piv, &k);
                    if !a[r][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                piv += 1;
                break;
            }
        }
    }
    (piv..n)
        .map(|j| {
            (0..n)
                .map(|i| u[i][j].to_i64().expect("kernel entry fits in i64"))
                .collect()
        })
        .collect()
}

/// Integer matrix `B` (as columns) with `Bᵀ·G_big·B = G_small`.
pub fn find_sublattice_embedding(
    big: &GramLattice,
    small: &GramLattice,
) -> Option<Vec<LatticeVector>> {
    all_sublattice_embeddings(big, small, 1).into_iter().next()
}

/// Up to `cap` embeddings, in a deterministic search order.
pub fn all_sublattice_embeddings(
    big: &GramLattice,
    small: &GramLattice,
    cap: usize,
) -> Vec<Vec<LatticeVector>> {
    sublattice_embeddings_where(big, small, cap, |_| true)
}

/// Like [`all_sublattice_embeddings`], with every basis image drawn from vectors passing `keep`.
pub fn sublattice_embeddings_where(
    big: &GramLattice,
    small: &GramLattice,
    cap: usize,
    keep: impl Fn(&LatticeVector) -> bool,
) -> Vec<Vec<LatticeVector>> {
    let k = small.rank();
    if k == 0 {
        return vec![Vec::new()];
    }
    if small.det() / big.det() < Rational::zero() || big.rank() < k {
        return Vec::new();
    }
    let cands: Vec<Vec<LatticeVector>> = (0..k)
        .map(|i| {
            let mut v = enumerate_by_norm(big, small.entry(i, i));
            v.retain(|x| keep(x));
            v
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<LatticeVector> = Vec::new();
    embed_step(big, small, &cands, &mut chosen, &mut out, cap);
    out
}

fn embed_step(
    big: &GramLattice,
    small: &GramLattice,
    cands: &[Vec<LatticeVector>],
    chosen: &mut Vec<LatticeVector>,
    out: &mut Vec<Vec<LatticeVector>>,
    cap: usize,
) {
    let i = chosen.len();
    if i == cands.len() {
        if big
            .restrict(chosen)
            .map(|g| g.gram == small.gram)
            .unwrap_or(false)
        {
            out.push(chosen.clone());
        }
        return;
    }
    for v in &cands[i] {
        if out.len() >= cap {
            return;
        }
        if chosen
            .iter()
            .enumerate()
            .all(|(j, w)| big.pair(v, w) == *small.entry(i, j))
        {
            chosen.push(v.clone());
            embed_step(big, small, cands, chosen, out, cap);
            chosen.pop();
        }
    }
}

/// Exact isometry test: an embedding between lattices of equal rank and determinant.
pub fn is_isometric(a: &GramLattice, b: &GramLattice) -> bool {
    a.rank() == b.rank() && a.det() == b.det() && find_sublattice_embedding(a, b).is_some()
}

/// Whether `v` lies in the integer span of the columns `basis`.
pub fn in_integer_span(basis: &[LatticeVector], v: &[i64]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|&x| x == 0);
    }
    let n = v.len();
    let k = basis.len();
    // Solve B z = v over Q via normal equations on the columns, then test integrality.
    let bt_b: Matrix = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| rat((0..n).map(|r| basis[i][r] * basis[j][r]).sum()))
                .collect()
        })
        .collect();
    let bt_v: Vec<Rational> = (0..k)
        .map(|i| rat((0..n).map(|r| basis[i][r] * v[r]).sum()))
        .collect();
    let Some(inv) = invert(&bt_b) else {
        return false;
    };
    let z: Vec<Rational> = (0..k)
        .map(|i| (0..k).map(|j| &inv[i][j] * &bt_v[j]).sum())
        .collect();
    if z.iter().any(|x| !x.is_integer()) {
        return false;
    }
    (0..n).all(|r| {
        let s: Rational = (0..k).map(|i| &z[i] * rat(basis[i][r])).sum();
        s == rat(v[r])
    })
}
