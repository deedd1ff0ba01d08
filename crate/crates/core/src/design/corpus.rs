//! Named design/model pairs used throughout the examples, the command line
//! and the test suites.

use crate::design::catalog::catalog;
use crate::design::{build_full_factorial, model_matrix, CandidateSet, Coding, FactorSpec, ModelMatrix, ModelSpec};
use crate::error::{Error, Result};

pub const CORPUS_NAMES: [&str; 16] = [
    "2pow4_main",
    "2pow4_2way",
    "2pow5_main",
    "2pow5_3way",
    "2x3x4_main",
    "2x3x4_2way",
    "2x3x4_main_bc",
    "3x3x4_2way",
    "quadratic_7",
    "grid_4x6_main",
    "bibd_4x6_main",
    "oa18_main",
    "oa40_main",
    "pb8_main",
    "oa27_main",
    "oa27_2way",
];

#[derive(Clone, Debug)]
pub struct Corpus {
    pub name: String,
    pub candidates: CandidateSet,
    pub model: ModelSpec,
}

impl Corpus {
    pub fn model_matrix(&self) -> Result<ModelMatrix> {
        model_matrix(&self.candidates, &self.model)
    }
}

fn full(levels: &[usize]) -> Result<CandidateSet> {
    build_full_factorial(&FactorSpec::new(levels.to_vec())?)
}

/// Looks up a corpus entry. Indicator coding unless noted: `pb8_main` uses
/// the +/-1 coding, `quadratic_7` the monomials 1, x, x^2 on -3..3, and
/// `2x3x4_main_bc` adds the interaction of the second and third factors.
pub fn corpus(name: &str) -> Result<Corpus> {
    let (candidates, model) = match name {
        "2pow4_main" | "2pow5_main" | "2x3x4_main" | "grid_4x6_main" => {
            let cs = full(match name {
                "2pow4_main" => &[2, 2, 2, 2],
                "2pow5_main" => &[2, 2, 2, 2, 2],
                "2x3x4_main" => &[2, 3, 4],
                _ => &[4, 6],
            })?;
            let m = ModelSpec::main_effects(cs.factors(), Coding::Indicator01);
            (cs, m)
        }
        "2pow4_2way" | "2x3x4_2way" | "3x3x4_2way" => {
            let cs = full(match name {
                "2pow4_2way" => &[2, 2, 2, 2],
                "2x3x4_2way" => &[2, 3, 4],
                _ => &[3, 3, 4],
            })?;
            let m = ModelSpec::hierarchical(cs.factors(), Coding::Indicator01, 2);
            (cs, m)
        }
        "2pow5_3way" => {
            let cs = full(&[2; 5])?;
            let m = ModelSpec::hierarchical(cs.factors(), Coding::Indicator01, 3);
            (cs, m)
        }
        "2x3x4_main_bc" => {
            let cs = full(&[2, 3, 4])?;
            let m = ModelSpec::main_effects(cs.factors(), Coding::Indicator01).with_interaction(cs.factors(), &[1, 2]);
            (cs, m)
        }
        "quadratic_7" => {
            let cs = full(&[7])?;
            let m = ModelSpec::polynomial(&[vec![0], vec![1], vec![2]], vec![(-3..=3).collect()]);
            (cs, m)
        }
        "bibd_4x6_main" | "oa18_main" | "oa40_main" | "oa27_main" => {
            let cs = catalog(match name {
                "bibd_4x6_main" => "bibd_4x6",
                "oa18_main" => "oa18_2x3x3x3",
                "oa40_main" => "oa40_2pow20",
                _ => "oa27_3pow4",
            })?;
            let m = ModelSpec::main_effects(cs.factors(), Coding::Indicator01);
            (cs, m)
        }
        "oa27_2way" => {
            let cs = catalog("oa27_3pow4")?;
            let m = ModelSpec::hierarchical(cs.factors(), Coding::Indicator01, 2);
            (cs, m)
        }
        "pb8_main" => {
            let cs = catalog("pb8_2pow7")?;
            let m = ModelSpec::main_effects(cs.factors(), Coding::PlusMinusOne);
            (cs, m)
        }
        other => return Err(Error::UnknownCatalog(other.to_string())),
    };
    Ok(Corpus {
        name: name.to_string(),
        candidates,
        model,
    })
}
