//! Export a model matrix in 4ti2 text, read it back, compute circuits, write
//! the circuit file with its metadata and diff it against itself after a
//! reload, as one would against an external tool's output.
//!
//! cargo run --release -p robcirc --example file_roundtrip

use robcirc::circuits::{compute_circuits, EnumerationOptions};
use robcirc::design::corpus::corpus;
use robcirc::io;

fn main() -> robcirc::Result<()> {
    let mm = corpus("2x3x4_2way")?.model_matrix()?;
    let text = io::write_matrix_4ti2(&mm.transpose());
    let a = io::parse_matrix_4ti2(&text)?;
    let basis = compute_circuits(&a, None, &EnumerationOptions::default())?;
    println!("{}", basis.summary_line());
    println!("{}", serde_json::to_string_pretty(&basis.metadata())?);

    let (len, vectors) = io::parse_vectors_4ti2(&basis.to_4ti2())?;
    let diff = basis.diff(&vectors)?;
    println!(
        "reloaded {} vectors of length {len}: equal={}",
        vectors.len(),
        diff.is_equal()
    );
    Ok(())
}
