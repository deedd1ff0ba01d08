//! Random-start study of the exchange algorithm on the four reference
//! designs, printed as one CSV table per design and variant.
//!
//! cargo run --release -p robcirc --example simulate_tables [replicates] [seed]

use robcirc::optimizer::Variant;
use robcirc::sim::{run_simulation, table_csv, SimConfig};

const STUDY: [(&str, &[usize]); 4] = [
    ("2pow4_main", &[8, 10, 12, 14]),
    ("2pow5_main", &[8, 10, 12, 14]),
    ("2x3x4_main", &[14, 16, 18]),
    ("2x3x4_main_bc", &[14, 16, 18, 20]),
];

fn main() -> robcirc::Result<()> {
    let mut args = std::env::args().skip(1);
    let replicates = args.next().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(2024);
    for variant in [Variant::Full, Variant::Reduced] {
        for (design, sizes) in STUDY {
            let rows = sizes
                .iter()
                .map(|&n| {
                    let cfg = SimConfig {
                        replicates,
                        ..SimConfig::new(design, n, seed, variant)
                    };
                    run_simulation(&cfg).map(|(s, _)| s)
                })
                .collect::<robcirc::Result<Vec<_>>>()?;
            println!("# {design} {variant:?}");
            print!("{}", table_csv(&rows));
        }
    }
    Ok(())
}
