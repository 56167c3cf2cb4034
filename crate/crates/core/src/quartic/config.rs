//! Singularities of the quartic and the class of the tangent line, read from
//! the singular fibers of the surface.

use serde::Serialize;

use super::prepared::PreparedQuartic;
use crate::error::{Error, Result};
use crate::lattice::{lookup_rows, AdeLabel, AdeSum, Family, LineClass, TableRow};
use crate::surface::{HeightContext, Kodaira, Place, PlaceData};

#[derive(Clone, Debug)]
pub struct Configuration {
    /// Singularity type of the quartic.
    pub sing_type: AdeSum,
    pub line_class: LineClass,
    pub contact_at_x: u32,
    /// Root lattice of all reducible fibers.
    pub root_lattice: AdeSum,
    pub fibers: Vec<PlaceData>,
    /// Matching rows of the configuration table.
    pub rows: Vec<u32>,
}

impl Configuration {
    pub fn table_rows(&self) -> Vec<&'static TableRow> {
        lookup_rows(&self.sing_type, self.line_class, Some(&self.root_lattice))
    }
}

/// The singularity met by a finite fiber of the given type.
fn singularity_of(k: Kodaira) -> Result<Option<AdeLabel>> {
    Ok(match k {
        Kodaira::I(0) | Kodaira::I(1) | Kodaira::II => None,
        Kodaira::I(n) => Some(AdeLabel::a(n - 1)),
        Kodaira::III => Some(AdeLabel::a(1)),
        Kodaira::IV => Some(AdeLabel::a(2)),
        Kodaira::IStar(n) => Some(AdeLabel::new(Family::D, n + 4)?),
        Kodaira::IVStar => Some(AdeLabel::new(Family::E, 6)?),
        Kodaira::IIIStar => Some(AdeLabel::new(Family::E, 7)?),
        Kodaira::IIStar => {
            return Err(Error::invalid(
                "a II* fiber does not come from a plane quartic",
            ))
        }
    })
}

/// `(Ξ_Q, line class)` with supporting data; rejects configurations outside the table.
pub fn singular_configuration(q: &PreparedQuartic) -> Result<Configuration> {
    let ctx = HeightContext::new(q.surface().clone())?;
    let ix = q.contact_at_x()?;
    let mut sing = Vec::new();
    let mut roots = Vec::new();
    let mut class = None;
    for pd in &ctx.places {
        if let Some(l) = pd.kodaira.root_label() {
            roots.extend(std::iter::repeat(l).take(pd.place.degree()));
        }
        match pd.place {
            Place::Infinity => {
                class = Some(match pd.kodaira {
                    Kodaira::I(2) | Kodaira::III => LineClass::S,
                    Kodaira::I(3) | Kodaira::IV => LineClass::B,
                    Kodaira::I(n) if n >= 4 => {
                        sing.push(AdeLabel::a(n - 3));
                        LineClass::Sb
                    }
                    k => {
                        return Err(Error::invalid(format!(
                            "fiber {k} at infinity does not match a tangent line at a smooth point"
                        )))
                    }
                });
            }
            Place::Finite(_) => {
                if let Some(l) = singularity_of(pd.kodaira)? {
                    sing.extend(std::iter::repeat(l).take(pd.place.degree()));
                }
            }
        }
    }
    let class = class.expect("infinity is always listed");
    let expect_ix = match ctx.place(&Place::Infinity).unwrap().kodaira {
        Kodaira::III => Some(3),
        Kodaira::IV => Some(4),
        Kodaira::I(_) => Some(2),
        _ => None,
    };
    if expect_ix != Some(ix) {
        return Err(Error::Inconsistency(format!(
            "fiber at infinity disagrees with I_x(l_x, Q) = {ix}"
        )));
    }
    let mut cfg = Configuration {
        sing_type: AdeSum::new(sing),
        line_class: class,
        contact_at_x: ix,
        root_lattice: AdeSum::new(roots),
        fibers: ctx.places,
        rows: vec![],
    };
    cfg.rows = cfg.table_rows().iter().map(|r| r.row_no).collect();
    if cfg.rows.is_empty() {
        return Err(Error::invalid(format!(
            "configuration ({}, {}) with root lattice {} is not in the table",
            cfg.sing_type, cfg.line_class, cfg.root_lattice
        )));
    }
    Ok(cfg)
}

/// Geometric genus of the normalization: `3 − Σ δ`.
pub fn genus_from_sing(sing: &AdeSum) -> i64 {
    3 - sing.delta() as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CombinatorialType {
    pub sing_type: AdeSum,
    pub line_class: LineClass,
    /// Local intersection numbers `I_P(C, Q)` over `P ∈ C ∩ Q`, sorted.
    pub contact_multiset: Vec<u32>,
}
