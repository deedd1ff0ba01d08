//! Column-deletion circuits of the saturated 8-run Plackett-Burman design:
//! a zero entry marks a run whose removal, together with the column, leaves
//! a singular matrix.
//!
//! cargo run --release -p robcirc --example column_deletion

use robcirc::circuits::column_deletion_circuits;
use robcirc::design::corpus::corpus;

fn main() -> robcirc::Result<()> {
    let mm = corpus("pb8_main")?.model_matrix()?;
    let table = column_deletion_circuits(&mm)?;
    for c in &table {
        let entries: Vec<String> = c.circuit.0.iter().map(|x| format!("{x:>2}")).collect();
        println!("{:>6}: {}  zeros={}", c.label, entries.join(" "), c.zeros);
    }
    let zeros: usize = table.iter().map(|c| c.zeros).sum();
    println!(
        "{}",
        if zeros == 0 {
            "every 7-run sub-fraction estimates every 7-term sub-model"
        } else {
            "some sub-fractions are singular"
        }
    );
    Ok(())
}
