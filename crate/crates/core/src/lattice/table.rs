//! The 60 configurations of irreducible quartics with a marked smooth point:
//! Mordell-Weil lattice data and the counts of even tangential conics.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::ade::AdeSum;
use super::expr::parse_lattice;
use super::gram::{
    enumerate_by_norm, in_integer_span, sublattice_embeddings_where, GramLattice, LatticeVector,
};
use crate::arith::rational::rat_sqrt;
use crate::arith::{frac, rat};
use crate::error::{Error, Result};

/// How the tangent line at the marked point meets the quartic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LineClass {
    /// Simple tangent, transverse elsewhere (`I_x` is 2 or 3).
    #[serde(rename = "s")]
    S,
    /// Bitangent, or `I_x = 4`.
    #[serde(rename = "b")]
    B,
    /// Simple tangent through a singular point.
    #[serde(rename = "sb")]
    Sb,
}

impl fmt::Display for LineClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineClass::S => "s",
            LineClass::B => "b",
            LineClass::Sb => "sb",
        })
    }
}

impl FromStr for LineClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "s" => Ok(LineClass::S),
            "b" => Ok(LineClass::B),
            "sb" => Ok(LineClass::Sb),
            _ => Err(Error::invalid(format!("unknown line class '{s}'"))),
        }
    }
}

/// Free part, torsion, and the narrow sublattice embedded in the free part.
#[derive(Clone, Debug)]
pub struct MWStructure {
    pub mw_free: GramLattice,
    /// Orders of the cyclic torsion factors.
    pub torsion: Vec<u32>,
    pub narrow: GramLattice,
    /// Columns: a basis of the narrow lattice in `mw_free` coordinates.
    pub narrow_basis: Vec<LatticeVector>,
}

/// Whether `v` pairs integrally with all of `l`.
///
/// A section through the identity component of every fiber has integral height
/// pairing with every section, so the narrow lattice only uses such vectors.
pub fn pairs_integrally(l: &GramLattice, v: &[i64]) -> bool {
    let n = l.rank();
    (0..n).all(|j| {
        let mut e = vec![0i64; n];
        e[j] = 1;
        l.pair(&e, v).is_integer()
    })
}

/// Embeddings of the narrow lattice into the free part that pair integrally with it.
pub fn admissible_embeddings(
    mw_free: &GramLattice,
    narrow: &GramLattice,
    cap: usize,
) -> Vec<Vec<LatticeVector>> {
    sublattice_embeddings_where(mw_free, narrow, cap, |v| pairs_integrally(mw_free, v))
}

impl MWStructure {
    pub fn new(mw_free: GramLattice, torsion: Vec<u32>, narrow: GramLattice) -> Result<Self> {
        let basis = admissible_embeddings(&mw_free, &narrow, 1)
            .pop()
            .ok_or_else(|| Error::Inconsistency("narrow lattice does not embed".into()))?;
        Self::with_basis(mw_free, torsion, narrow, basis)
    }

    pub fn with_basis(
        mw_free: GramLattice,
        torsion: Vec<u32>,
        narrow: GramLattice,
        narrow_basis: Vec<LatticeVector>,
    ) -> Result<Self> {
        if torsion.iter().any(|t| t % 2 == 0) {
            return Err(Error::Inconsistency("even torsion order".into()));
        }
        if narrow.rank() != mw_free.rank() || narrow_basis.len() != narrow.rank() {
            return Err(Error::Inconsistency("narrow lattice rank mismatch".into()));
        }
        if narrow.rank() > 0 && mw_free.restrict(&narrow_basis)?.gram() != narrow.gram() {
            return Err(Error::Inconsistency("embedding Gram identity fails".into()));
        }
        if !narrow_basis.iter().all(|v| pairs_integrally(&mw_free, v)) {
            return Err(Error::Inconsistency(
                "narrow basis pairs non-integrally with the free part".into(),
            ));
        }
        let m = MWStructure {
            mw_free,
            torsion,
            narrow,
            narrow_basis,
        };
        m.index()?;
        Ok(m)
    }

    /// `[mw_free : MW⁰] = sqrt(det MW⁰ / det mw_free)`.
    pub fn index(&self) -> Result<u64> {
        let r = self.narrow.det() / self.mw_free.det();
        let s = rat_sqrt(&r)
            .filter(|s| s.is_integer())
            .ok_or_else(|| Error::Inconsistency("index is not an integer".into()))?;
        Ok(u64::try_from(s.to_integer()).expect("small index"))
    }
}

/// Half the number of norm-2 vectors of the narrow lattice.
pub fn count_etc(mw: &MWStructure) -> usize {
    enumerate_by_norm(&mw.narrow, &rat(2)).len() / 2
}

/// Norm-1/2 vectors of `mw_free` whose double lies in the narrow lattice.
pub fn qretc_vectors(mw: &MWStructure, basis: &[LatticeVector]) -> Vec<LatticeVector> {
    if mw.mw_free.rank() == 0 {
        return Vec::new();
    }
    enumerate_by_norm(&mw.mw_free, &frac(1, 2))
        .into_iter()
        .filter(|s| {
            let d: Vec<i64> = s.iter().map(|x| 2 * x).collect();
            in_integer_span(basis, &d)
        })
        .collect()
}

/// Half the number of norm-1/2 vectors `s` with `2s` in the narrow lattice.
pub fn count_qretc(mw: &MWStructure) -> usize {
    qretc_vectors(mw, &mw.narrow_basis).len() / 2
}

/// One row of the configuration table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub row_no: u32,
    pub sing_type: AdeSum,
    pub line_class: LineClass,
    /// Root lattice of reducible fibers, as listed.
    pub root_lattice: AdeSum,
    /// Root lattice implied by the fiber dictionary (differs from the listed one only where flagged).
    pub root_lattice_decoded: AdeSum,
    pub mw: MWStructure,
    pub expected_etc: usize,
    pub expected_qretc: usize,
    pub notes: Vec<&'static str>,
}

/// (row, Ξ, line class, R, MW, MW⁰, ETC, QRETC)
type RawRow = (
    u32,
    &'static str,
    &'static str,
    &'static str,
    &'static str,
    &'static str,
    usize,
    usize,
);

const M37: &str = "[[3,1,-1],[1,7,3],[-1,3,7]]/10";
const N37: &str = "[[4,-1,1],[-1,2,-1],[1,-1,2]]";
const M41: &str = "[[7,1,2],[1,7,2],[2,2,4]]/12";
const N41: &str = "[[2,0,-1],[0,2,-1],[-1,-1,4]]";
const M46: &str = "[[2,1,0,-1],[1,5,3,1],[0,3,6,3],[-1,1,3,5]]/6";
const N46: &str = "[[4,-1,0,1],[-1,2,-1,0],[0,-1,2,-1],[1,0,-1,2]]";

const RAW: [RawRow; 60] = [
    (1, "A6", "s", "A6+A1", "<1/14>", "<14>", 0, 0),
    (2, "A6", "sb", "A8", "Z3", "0", 0, 0),
    (3, "E6", "s", "E6+A1", "<1/6>", "<6>", 0, 0),
    (4, "E6", "b", "E6+A2", "Z3", "0", 0, 0),
    (5, "A5", "s", "A5+A1", "A1*+<1/6>", "A1+<6>", 1, 1),
    (6, "A5", "b", "A5+A2", "A1*+Z3", "A1", 1, 1),
    (7, "A5", "sb", "A7", "<1/8>", "<8>", 0, 0),
    (8, "D5", "s", "D5+A1", "A1*+<1/4>", "A1+<4>", 1, 1),
    (9, "D5", "b", "D5+A2", "<1/12>", "<12>", 0, 0),
    (10, "D4", "s", "D4+A1", "A1*^3", "A1^3", 3, 3),
    (
        11,
        "D4",
        "b",
        "D4+A2",
        "[[2,1],[1,2]]/6",
        "[[4,-2],[-2,4]]",
        0,
        0,
    ),
    (12, "A4+A2", "s", "A4+A2+A1", "<1/30>", "<30>", 0, 0),
    (13, "A4+A2", "sb", "2A4", "Z5", "0", 0, 0),
    (
        14,
        "A4+A1",
        "s",
        "A4+2A1",
        "[[2,1],[1,3]]/10",
        "[[6,-2],[-2,4]]",
        0,
        0,
    ),
    (15, "A4+A1", "b", "A4+A2+A1", "<1/30>", "<30>", 0, 0),
    (16, "A4+A1", "sb", "A4+A3", "<1/20>", "<20>", 0, 0),
    (17, "A4+A1", "sb", "A6+A1", "<1/14>", "<14>", 0, 0),
    (18, "A3+A2", "s", "A3+A2+A1", "A1*+<1/12>", "A1+<12>", 1, 1),
    (19, "A3+A2", "sb", "A4+A3", "<1/20>", "<20>", 0, 0),
    (20, "A3+A2", "sb", "A5+A2", "A1*+Z3", "A1", 1, 1),
    (21, "A3+A1", "s", "A3+2A1", "A1*^2+<1/4>", "A1^2+<4>", 2, 2),
    (22, "A3+A1", "b", "A3+A2+A1", "A1*+<1/12>", "A1+<12>", 1, 1),
    (23, "A3+A1", "sb", "A5+A1", "A1*+<1/6>", "A1+<6>", 1, 1),
    (24, "A3+A1", "sb", "2A3", "<1/4>^2", "<4>^2", 0, 0),
    (25, "3A2", "s", "3A2+A1", "<1/6>+Z3", "<6>", 0, 0),
    (26, "3A2", "b", "4A2", "Z3^2", "0", 0, 0),
    (27, "2A2+A1", "s", "2A2+2A1", "<1/6>^2", "<6>^2", 0, 0),
    (28, "2A2+A1", "b", "3A2+A1", "<1/6>+Z3", "<6>", 0, 0),
    (29, "2A2+A1", "sb", "A4+A2+A1", "<1/30>", "<30>", 0, 0),
    (
        30,
        "A2+2A1",
        "s",
        "A2+3A1",
        "A1*+[[2,1],[1,2]]/6",
        "A1+[[4,-2],[-2,4]]",
        1,
        1,
    ),
    (31, "A2+2A1", "b", "2A2+2A1", "<1/6>^2", "<6>^2", 0, 0),
    (
        32,
        "A2+2A1",
        "sb",
        "A4+2A1",
        "[[2,1],[1,3]]/10",
        "[[6,-2],[-2,4]]",
        0,
        0,
    ),
    (
        33,
        "A2+2A1",
        "sb",
        "A3+A2+A1",
        "A1*+<1/12>",
        "A1+<12>",
        1,
        1,
    ),
    (34, "3A1", "s", "4A1", "A1*^4", "A1^4", 4, 4),
    (
        35,
        "3A1",
        "b",
        "A2+3A1",
        "A1*+[[2,1],[1,2]]/6",
        "A1+[[4,-2],[-2,4]]",
        1,
        1,
    ),
    (36, "3A1", "sb", "A3+2A1", "A1*^2+<1/4>", "A1^2+<4>", 2, 2),
    (37, "A4", "s", "A4+A1", M37, N37, 3, 0),
    (
        38,
        "A4",
        "b",
        "A4+A2",
        "[[2,1],[1,8]]/15",
        "[[8,-1],[-1,2]]",
        1,
        0,
    ),
    (
        39,
        "A4",
        "sb",
        "A6",
        "[[2,1],[1,4]]/7",
        "[[4,-1],[-1,2]]",
        1,
        0,
    ),
    (40, "A3", "s", "A3+A1", "A3*+A1*", "A3+A1", 7, 1),
    (41, "A3", "b", "A3+A2", M41, N41, 2, 0),
    (42, "A3", "sb", "A5", "A2*+A1*", "A2+A1", 4, 1),
    (43, "2A2", "s", "2A2+A1", "A2*+<1/6>", "A2+<6>", 3, 0),
    (44, "2A2", "b", "3A2", "A2*+Z3", "A2", 3, 0),
    (
        45,
        "2A2",
        "sb",
        "A4+A2",
        "[[2,1],[1,8]]/15",
        "[[8,-1],[-1,2]]",
        1,
        0,
    ),
    (46, "A2+A1", "s", "A2+2A1", M46, N46, 6, 0),
    (47, "A2+A1", "b", "2A2+A1", "A2*+<1/6>", "A2+<6>", 3, 0),
    (48, "A2+A1", "sb", "A4+A1", M37, N37, 3, 0),
    (49, "A2+A1", "sb", "A4+A1", M41, N41, 2, 0),
    (50, "2A1", "s", "3A1", "D4*+A1*", "D4+A1", 13, 1),
    (51, "2A1", "b", "A2+2A1", M46, N46, 6, 0),
    (52, "2A1", "sb", "A3+A1", "A3*+A1*", "A3+A1", 7, 1),
    (53, "A2", "s", "A2+A1", "A5*", "A5", 15, 0),
    (54, "A2", "b", "2A2", "A2*^2", "A2^2", 6, 0),
    (55, "A2", "sb", "A4", "A4*", "A4", 10, 0),
    (56, "A1", "s", "2A1", "D6*", "D6", 30, 0),
    (57, "A1", "b", "A2+A1", "A5*", "A5", 15, 0),
    (58, "A1", "sb", "A3", "D5*", "D5", 20, 0),
    (59, "0", "s", "A1", "E7*", "E7", 63, 0),
    (60, "0", "b", "A2", "E6*", "E6", 36, 0),
];

fn build_row(r: &RawRow) -> Result<TableRow> {
    let &(row_no, xi, class, root, mw, mw0, etc, qretc) = r;
    let m = parse_lattice(mw)?;
    let n = parse_lattice(mw0)?;
    if !n.torsion.is_empty() {
        return Err(Error::Inconsistency(format!(
            "row {row_no}: torsion in narrow lattice"
        )));
    }
    let mut notes = Vec::new();
    let mut decoded: AdeSum = root.parse()?;
    match row_no {
        35 => notes
            .push("line class listed as s with the lattice data and b with the counts; b is used"),
        48 => notes.push("shares the listed root lattice A4+A1 with row 49"),
        49 => {
            notes.push("listed root lattice A4+A1 conflicts with the Gram data, which fits A3+A2");
            decoded = "A3+A2".parse()?;
        }
        _ => {}
    }
    Ok(TableRow {
        row_no,
        sing_type: xi.parse()?,
        line_class: class.parse()?,
        root_lattice: root.parse()?,
        root_lattice_decoded: decoded,
        mw: MWStructure::new(m.free, m.torsion, n.free)
            .map_err(|e| Error::Inconsistency(format!("row {row_no}: {e}")))?,
        expected_etc: etc,
        expected_qretc: qretc,
        notes,
    })
}

/// All 60 rows, built once; panics on a transcription error.
pub fn builtin_table() -> &'static [TableRow] {
    static TABLE: OnceLock<Vec<TableRow>> = OnceLock::new();
    TABLE.get_or_init(|| {
        RAW.iter()
            .map(|r| build_row(r).unwrap_or_else(|e| panic!("table data: {e}")))
            .collect()
    })
}

pub fn table_row(row_no: u32) -> Option<&'static TableRow> {
    builtin_table().iter().find(|r| r.row_no == row_no)
}

/// Rows matching a singularity type, line class and decoded root lattice.
pub fn lookup_rows(
    sing: &AdeSum,
    class: LineClass,
    root: Option<&AdeSum>,
) -> Vec<&'static TableRow> {
    builtin_table()
        .iter()
        .filter(|r| r.sing_type == *sing && r.line_class == class)
        .filter(|r| root.is_none_or(|x| r.root_lattice_decoded == *x))
        .collect()
}
