//! Circuit bases of the reference designs, with support histograms and
//! symmetry classes (orbits under relabelling, and entry patterns).
//!
//! cargo run --release -p robcirc --example circuit_counts [name ...]

use std::time::Instant;

use robcirc::circuits::symmetry::{classify_by_entry_pattern, classify_circuits, SymmetryGroup};
use robcirc::circuits::{circuits_of_model, EnumerationOptions};
use robcirc::design::corpus::corpus;

fn main() -> robcirc::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let jobs: Vec<(String, Option<usize>)> = if args.is_empty() {
        [
            ("2pow4_main", None),
            ("2pow4_2way", None),
            ("2x3x4_2way", None),
            ("quadratic_7", None),
            ("oa18_main", None),
            ("bibd_4x6_main", None),
            ("grid_4x6_main", None),
            ("oa40_main", Some(4)),
        ]
        .into_iter()
        .map(|(n, b)| (n.to_string(), b))
        .collect()
    } else {
        args.iter()
            .map(|a| match a.split_once(':') {
                Some((n, b)) => (n.to_string(), b.parse().ok()),
                None => (a.clone(), None),
            })
            .collect()
    };
    for (name, bound) in jobs {
        let c = corpus(&name)?;
        let mm = c.model_matrix()?;
        let t = Instant::now();
        let basis = circuits_of_model(&mm, bound, &EnumerationOptions::default())?;
        let mut line = format!(
            "{name}: K={} p={} {} strategy={:?} time={:.2?}",
            mm.n(),
            mm.p(),
            basis.summary_line(),
            basis.strategy(),
            t.elapsed()
        );
        if let Ok(group) = SymmetryGroup::for_candidate_set(&c.candidates) {
            let classes = classify_circuits(&basis, &group)?;
            line.push_str(&format!(" orbits={}", classes.len()));
        }
        line.push_str(&format!(" patterns={}", classify_by_entry_pattern(&basis).len()));
        println!("{line}");
    }
    Ok(())
}
