//! Text formats.
//!
//! * candidate sets: CSV with header `f1,...,fm`, one point per row, integer
//!   level indices; lines starting with `#` are comments.
//! * matrices: 4ti2 style, first line `rows cols` then the entries row by row.
//! * circuit files: 4ti2 style, header `count K` then one vector per line.
//! * fractions: 0-based row indices separated by whitespace or commas.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::design::{CandidateSet, FactorSpec, Fraction, ModelSpec};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a candidate-set CSV. When `factors` is `None` the level counts are
/// inferred as one more than the largest level seen (at least 2).
pub fn parse_candidate_csv_with(text: &str, factors: Option<&FactorSpec>) -> Result<CandidateSet> {
    let body: String = data_lines(text).map(|l| format!("{l}\n")).collect();
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(body.as_bytes());
    let header = rdr.headers()?.clone();
    for (i, h) in header.iter().enumerate() {
        if h != format!("f{}", i + 1) {
            return Err(Error::Parse(format!("header column {} is `{h}`, expected `f{}`", i + 1, i + 1)));
        }
    }
    let m = header.len();
    let mut points = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let pt = rec
            .iter()
            .map(|x| x.parse::<usize>().map_err(|e| Error::Parse(format!("level `{x}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if pt.len() != m {
            return Err(Error::Parse(format!("row with {} fields, expected {m}", pt.len())));
        }
        points.push(pt);
    }
    let factors = match factors {
        Some(f) => f.clone(),
        None => FactorSpec::new(
            (0..m)
                .map(|f| points.iter().map(|p| p[f] + 1).max().unwrap_or(2).max(2))
                .collect(),
        )?,
    };
    CandidateSet::new(factors, points, None)
}

pub fn parse_candidate_csv(text: &str, factors: &FactorSpec) -> Result<CandidateSet> {
    parse_candidate_csv_with(text, Some(factors))
}

pub fn write_candidate_csv(cs: &CandidateSet) -> String {
    let m = cs.factors().num_factors();
    let mut out = (1..=m).map(|i| format!("f{i}")).collect::<Vec<_>>().join(",");
    out.push('\n');
    for p in cs.points() {
        out.push_str(&p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

pub fn parse_model_spec(json: &str) -> Result<ModelSpec> {
    Ok(serde_json::from_str(json)?)
}

pub fn write_model_spec(spec: &ModelSpec) -> Result<String> {
    Ok(serde_json::to_string_pretty(spec)?)
}

pub fn write_matrix_4ti2(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let line: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn parse_numbers(text: &str) -> Result<Vec<BigInt>> {
    data_lines(text)
        .flat_map(|l| l.split_whitespace())
        .map(|t| BigInt::from_str(t).map_err(|e| Error::Parse(format!("integer `{t}`: {e}"))))
        .collect()
}

pub fn parse_matrix_4ti2(text: &str) -> Result<IntMatrix> {
    let nums = parse_numbers(text)?;
    if nums.len() < 2 {
        return Err(Error::Parse("missing `rows cols` header".into()));
    }
    let to_usize = |x: &BigInt| {
        usize::try_from(x).map_err(|_| Error::Parse(format!("bad dimension {x}")))
    };
    let (rows, cols) = (to_usize(&nums[0])?, to_usize(&nums[1])?);
    let body = nums[2..].to_vec();
    if body.len() != rows * cols {
        return Err(Error::Parse(format!(
            "header says {rows}x{cols} but {} entries follow",
            body.len()
        )));
    }
    IntMatrix::from_vec(rows, cols, body)
}

/// Writes vectors as a 4ti2 circuit file.
pub fn write_vectors_4ti2(len: usize, vectors: &[IntVector]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", vectors.len(), len);
    for v in vectors {
        let line: Vec<String> = v.0.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a 4ti2 circuit file (same layout as a matrix file).
pub fn parse_vectors_4ti2(text: &str) -> Result<(usize, Vec<IntVector>)> {
    let m = parse_matrix_4ti2(text)?;
    let vs = (0..m.rows()).map(|r| IntVector(m.row(r).to_vec())).collect();
    Ok((m.cols(), vs))
}

pub fn parse_fraction(text: &str, parent_size: usize) -> Result<Fraction> {
    let rows = data_lines(text)
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("row index `{t}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Fraction::new(parent_size, rows)
}

pub fn write_fraction(frac: &Fraction) -> String {
    let mut s = frac.rows().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::build_full_factorial;
    use proptest::prelude::*;

    #[test]
    fn candidate_csv_round_trip() {
        let cs = build_full_factorial(&FactorSpec::new(vec![2, 3]).unwrap()).unwrap();
        let text = write_candidate_csv(&cs);
        assert!(text.starts_with("f1,f2\n0,0\n"));
        let back = parse_candidate_csv_with(&format!("# comment\n{text}"), None).unwrap();
        assert_eq!(back.points(), cs.points());
        assert_eq!(back.factors(), cs.factors());
    }

    #[test]
    fn candidate_csv_errors() {
        assert!(parse_candidate_csv_with("a,b\n0,1\n", None).is_err());
        assert!(parse_candidate_csv_with("f1,f2\n0,x\n", None).is_err());
        assert!(parse_candidate_csv_with("f1\n0\n0\n", None).is_err());
    }

    #[test]
    fn matrix_format() {
        let m = IntMatrix::from_rows(&[[1, -2, 0], [3, 4, 5]]);
        let text = write_matrix_4ti2(&m);
        assert_eq!(text, "2 3\n1 -2 0\n3 4 5\n");
        assert!(parse_matrix_4ti2("2 2\n1 2 3\n").is_err());
    }

    #[test]
    fn fraction_parse() {
        let f = parse_fraction("# rows\n3, 1 2\n0\n", 5).unwrap();
        assert_eq!(f.rows(), &[0, 1, 2, 3]);
        assert!(parse_fraction("9", 5).is_err());
    }

    proptest! {
        #[test]
        fn matrix_text_round_trip(rows in 0usize..5, cols in 1usize..5, seed in proptest::collection::vec(-1000i64..1000, 25)) {
            let data: Vec<BigInt> = seed.iter().take(rows * cols).map(|&x| BigInt::from(x)).collect();
            prop_assume!(data.len() == rows * cols);
            let m = IntMatrix::from_vec(rows, cols, data).unwrap();
            prop_assert_eq!(parse_matrix_4ti2(&write_matrix_4ti2(&m)).unwrap(), m);
        }
    }
}
