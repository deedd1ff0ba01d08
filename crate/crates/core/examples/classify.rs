//! Symmetry classes of a circuit basis: orbits under factor and level
//! relabellings, and the coarser grouping by sorted nonzero entries.
//!
//! cargo run --release -p robcirc --example classify [corpus name]

use itertools::Itertools;
use robcirc::circuits::symmetry::{classify_by_entry_pattern, classify_circuits, entry_pattern, SymmetryGroup};
use robcirc::circuits::{circuits_of_model, EnumerationOptions};
use robcirc::design::corpus::corpus;

fn main() -> robcirc::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "2pow4_2way".into());
    let c = corpus(&name)?;
    let basis = circuits_of_model(&c.model_matrix()?, None, &EnumerationOptions::default())?;
    println!("{name}: {}", basis.summary_line());
    for class in classify_by_entry_pattern(&basis) {
        println!(
            "  pattern [{}]: {} circuits on {} points",
            entry_pattern(&class.representative).iter().join(" "),
            class.size,
            class.support_size
        );
    }
    let group = SymmetryGroup::for_candidate_set(&c.candidates)?;
    let orbits = classify_circuits(&basis, &group)?;
    println!("  {} orbits, sizes {}", orbits.len(), orbits.iter().map(|o| o.size).join(","));
    Ok(())
}
