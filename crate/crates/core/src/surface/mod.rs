//! Rational elliptic surfaces `y² = u³ + c₁(t)u² + c₂(t)u + c₃(t)`.

pub mod curve;
pub mod fibers;
pub mod halve;
pub mod height;
pub mod local;

pub use curve::{SectionPoint, WeierstrassCurve};
pub use fibers::{all_fibers, bad_places, corr_i_n, kodaira_type_at, Kodaira, Place, PlaceData};
pub use halve::{
    halve, halving_quartic, specialization_points, two_torsion_free, two_torsion_roots,
};
pub use height::{
    section_o_intersection, section_pair_intersection, ComponentOverride, HeightContext,
};
pub use local::component_of;
