//! The 12-point block design inside the 4 x 6 grid: circuits by
//! restriction, robustness of every 10-run sub-fraction, and the
//! determinant identities that hold because the model matrix is totally
//! unimodular.
//!
//! Points are printed 1-based in catalog order.
//!
//! cargo run --release -p robcirc --example bibd_robustness

use std::collections::BTreeMap;

use itertools::Itertools;
use robcirc::circuits::{circuits_of_model, restrict_circuits, EnumerationOptions};
use robcirc::design::catalog::catalog;
use robcirc::design::corpus::corpus;
use robcirc::design::{submatrix, Fraction};
use robcirc::robustness::{robustness, tu_equivalence_check};

fn main() -> robcirc::Result<()> {
    let grid = corpus("grid_4x6_main")?;
    let grid_basis = circuits_of_model(&grid.model_matrix()?, None, &EnumerationOptions::default())?;
    println!("grid: {}", grid_basis.summary_line());

    let bibd = catalog("bibd_4x6")?;
    let rows = bibd
        .points()
        .iter()
        .map(|p| grid.candidates.index_of(p).expect("block design point lies on the grid"))
        .collect();
    let restricted = restrict_circuits(&grid_basis, &Fraction::new(grid.candidates.len(), rows)?)?;
    println!("inside the block design: {}", restricted.summary_line());
    for c in restricted.circuits() {
        println!("  {}", c.vector().0.iter().map(|x| format!("{x:>2}")).join(" "));
    }

    let mm = corpus("bibd_4x6_main")?.model_matrix()?;
    let mut by_value: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    let mut identities = true;
    for pair in (0..12).combinations(2) {
        let keep = (0..12).filter(|r| !pair.contains(r)).collect();
        let x = submatrix(&mm, &Fraction::new(12, keep)?)?;
        let r = robustness(&x, None)?;
        identities &= tu_equivalence_check(&x)?.holds();
        by_value.entry(r.decimal(1)).or_default().push((pair[0] + 1, pair[1] + 1));
    }
    for (r, pairs) in &by_value {
        println!("r={r}: {} removals", pairs.len());
    }
    let best = by_value.values().next_back().expect("66 removals scored");
    println!(
        "best removals: {}",
        best.iter().map(|(a, b)| format!("{{{a},{b}}}")).join(",")
    );
    println!("det(X^t X) = saturated count on every sub-fraction: {identities}");
    Ok(())
}
