//! Exact rational, polynomial and rational-function arithmetic.

pub mod bipoly;
pub mod parse;
pub mod ratfn;
pub mod rational;
pub mod roots;
pub mod unipoly;

pub use bipoly::{resultant_u, BiPoly};
pub use parse::{parse_bipoly, parse_ratfn, parse_unipoly};
pub use ratfn::RatFn;
pub use rational::{frac, parse_rational, rat, Rational};
pub use roots::{interpolate, rational_roots, root_branch_candidates};
pub use unipoly::{
    coprime_base, is_perfect_square, poly_gcd, poly_xgcd, squarefree_decompose, squarefree_part,
    UniPoly,
};
