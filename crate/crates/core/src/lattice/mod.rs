//! Positive definite lattices over Q, ADE root systems, and the configuration table.

pub mod ade;
pub mod expr;
pub mod gram;
pub mod table;

pub use ade::{AdeLabel, AdeSum, Family};
pub use expr::{parse_lattice, LatticeData};
pub use gram::{
    all_sublattice_embeddings, dual_gram, enumerate_by_norm, enumerate_up_to,
    find_sublattice_embedding, in_integer_span, integer_kernel, invert, is_isometric,
    orthogonal_complement_gram, sublattice_embeddings_where, GramLattice, LatticeVector, Matrix,
};
pub use table::{
    admissible_embeddings, builtin_table, count_etc, count_qretc, lookup_rows, pairs_integrally,
    qretc_vectors, table_row, LineClass, MWStructure, TableRow,
};
