//! Compare payload and overall densities with the Church, rotating-ternary
//! and fixed 1.6 bits/nt baselines on text, random bytes and images.
//!
//! ```not_rust
//! cargo run --release --example baseline_bench -- [path]
//! ```

use dpdna::config::SystemConfig;
use dpdna::corpus;
use dpdna::pipeline::baseline_compare;

fn main() -> dpdna::Result<()> {
    let cfg = SystemConfig::default();
    let inputs = match std::env::args().nth(1) {
        Some(p) => vec![(p.clone(), std::fs::read(&p)?)],
        None => vec![
            ("text".to_string(), corpus::english_text(1 << 20, 1)),
            ("random".to_string(), corpus::random_bytes(1 << 20, 2)),
            ("images".to_string(), corpus::image_set(1 << 20, 3)),
        ],
    };
    for (name, data) in inputs {
        let table = baseline_compare(&data, &cfg)?;
        println!("{name} ({} bytes, cap {} nt)\n{table}", data.len(), table.strand_cap_nt);
    }
    Ok(())
}
