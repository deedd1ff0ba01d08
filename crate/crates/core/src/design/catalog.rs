//! Named candidate sets.
//!
//! `bibd_4x6`, `oa18_2x3x3x3` and `pb8_2pow7` are small enough to live
//! inline. The two larger arrays are vendored CSV files under `data/`, each
//! carrying its construction and source in comment lines.

use crate::design::{CandidateSet, FactorSpec};
use crate::error::{Error, Result};
use crate::io;

pub const NAMES: [&str; 5] = [
    "bibd_4x6",
    "oa18_2x3x3x3",
    "oa40_2pow20",
    "pb8_2pow7",
    "oa27_3pow4",
];

const OA40_CSV: &str = include_str!("../../data/oa40_2pow20.csv");
const OA27_CSV: &str = include_str!("../../data/oa27_3pow4.csv");

// Rows of the 4 x 6 grid holding a bullet; treatment (row) then block.
const BIBD_CELLS: [(usize, usize); 12] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (1, 0),
    (1, 3),
    (1, 4),
    (2, 1),
    (2, 3),
    (2, 5),
    (3, 2),
    (3, 4),
    (3, 5),
];

// Transposed layout: one row per factor.
const OA18_T: [[usize; 18]; 4] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [0, 0, 0, 1, 1, 1, 2, 2, 2, 0, 0, 0, 1, 1, 1, 2, 2, 2],
    [0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2],
    [0, 1, 2, 1, 2, 0, 2, 0, 1, 1, 2, 0, 2, 0, 1, 0, 1, 2],
];

// '+' is level 1, '-' is level 0.
const PB8: [&str; 8] = [
    "+++++++", "++----+", "+-++---", "+---++-", "-++-+--", "-+-+-+-", "--+--++", "---++-+",
];

/// Looks up a named candidate set.
pub fn catalog(name: &str) -> Result<CandidateSet> {
    let named = |f: FactorSpec, pts: Vec<Vec<usize>>| CandidateSet::new(f, pts, Some(name.to_string()));
    match name {
        "bibd_4x6" => named(
            FactorSpec::new(vec![4, 6])?,
            BIBD_CELLS.iter().map(|&(a, b)| vec![a, b]).collect(),
        ),
        "oa18_2x3x3x3" => named(
            FactorSpec::new(vec![2, 3, 3, 3])?,
            (0..18).map(|i| OA18_T.iter().map(|row| row[i]).collect()).collect(),
        ),
        "pb8_2pow7" => named(
            FactorSpec::new(vec![2; 7])?,
            PB8.iter()
                .map(|r| r.chars().map(|c| (c == '+') as usize).collect())
                .collect(),
        ),
        "oa40_2pow20" => {
            let cs = io::parse_candidate_csv(OA40_CSV, &FactorSpec::new(vec![2; 20])?)?;
            named(cs.factors().clone(), cs.points().to_vec())
        }
        "oa27_3pow4" => {
            let cs = io::parse_candidate_csv(OA27_CSV, &FactorSpec::new(vec![3; 4])?)?;
            named(cs.factors().clone(), cs.points().to_vec())
        }
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}
