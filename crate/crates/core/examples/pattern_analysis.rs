//! Histogram of 2-bit pattern ratios over 300-bit segments. Data that looks
//! uniform overall is often skewed segment by segment, which is what the
//! per-strand code choice exploits.
//!
//! ```not_rust
//! cargo run --release --example pattern_analysis -- [path]
//! ```

use dpdna::corpus;
use dpdna::pipeline::pattern_report;

fn main() -> dpdna::Result<()> {
    let inputs = match std::env::args().nth(1) {
        Some(p) => vec![(p.clone(), std::fs::read(&p)?)],
        None => vec![
            ("random".to_string(), corpus::random_bytes(1 << 20, 1)),
            ("images".to_string(), corpus::image_set(1 << 20, 2)),
            ("text".to_string(), corpus::english_text(1 << 20, 3)),
        ],
    };
    for (name, data) in inputs {
        println!("== {name}");
        println!("{}", pattern_report(&data, 300)?);
    }
    Ok(())
}
