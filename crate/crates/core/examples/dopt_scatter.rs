//! D-efficiency against robustness for random 7-run fractions of the 2^4
//! factorial, plus the D-optimal fraction found by exhaustive search.
//!
//! cargo run --release -p robcirc --example dopt_scatter > scatter.csv

use robcirc::design::corpus::corpus;
use robcirc::sim::{dopt_csv, dopt_scatter};

fn main() -> robcirc::Result<()> {
    let c = corpus("2pow4_main")?;
    let mm = c.model_matrix()?;
    let points = dopt_scatter(&c.candidates, &mm, 7, 500, 7, false)?;
    print!("{}", dopt_csv(&points));
    let best = points.last().expect("the D-optimal point is appended");
    let max_r = points.iter().map(|p| p.robustness).fold(0.0, f64::max);
    eprintln!(
        "D-optimal fraction: D={:.2} r={:.4}; best sampled robustness {:.4}",
        best.d_efficiency, best.robustness, max_r
    );
    Ok(())
}
