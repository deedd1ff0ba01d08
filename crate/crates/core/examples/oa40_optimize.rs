//! Circuit exchange on the 40-run two-level array from seeded random starts
//! of 22, 23 and 24 runs.
//!
//! cargo run --release -p robcirc --example oa40_optimize [starts]

use robcirc::circuits::{circuits_of_model, EnumerationOptions};
use robcirc::design::corpus::corpus;
use robcirc::design::submatrix;
use robcirc::optimizer::{optimize, ExchangeConfig, Variant};
use robcirc::robustness::robustness;
use robcirc::sim::seeded_fraction;

fn main() -> robcirc::Result<()> {
    let starts: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let mm = corpus("oa40_main")?.model_matrix()?;
    // Every circuit of this array has four points, so the exhaustive basis
    // is small.
    let basis = circuits_of_model(&mm, None, &EnumerationOptions::default())?;
    println!("{}", basis.summary_line());
    for n in [22, 23, 24] {
        let mut finals = Vec::new();
        let mut steps = 0;
        for seed in 0..starts {
            let start = seeded_fraction(mm.n(), n, seed)?;
            let cfg = ExchangeConfig {
                seed,
                variant: Variant::Full,
                ..Default::default()
            };
            let (end, trace) = optimize(&start, &basis, &cfg)?;
            steps += trace.steps.len();
            finals.push(robustness(&submatrix(&mm, &end)?, None)?);
        }
        finals.sort_by(|a, b| a.robustness.cmp(&b.robustness));
        finals.dedup_by(|a, b| a.robustness == b.robustness);
        println!(
            "n={n}: {} starts, {:.1} exchanges on average, final {}",
            starts,
            steps as f64 / starts as f64,
            finals.iter().map(|r| r.summary_line()).collect::<Vec<_>>().join(" | ")
        );
    }
    Ok(())
}
