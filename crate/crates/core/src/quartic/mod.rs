//! Plane quartics with a marked smooth point and their even tangential conics.

pub mod config;
pub mod prepared;
pub mod symbol;
pub mod tangency;

pub use config::{genus_from_sing, singular_configuration, CombinatorialType, Configuration};
pub use prepared::{Conic, PreparedQuartic};
pub use symbol::{
    combinatorial_type, dihedral_feasibility, find_splitting_certificate, qr_symbol,
    splitting_certificate, symbol_of_section, zariski_pair_check, Feasibility, FeasibilityReport,
    SplittingCertificate, SymbolResult, SymbolRoute, Verdict, ZariskiReport,
};
pub use tangency::{conic_from_section, even_tangency, lift_conic, Contact, TangencyReport};
