//! Payload and overall density as the strand cap grows.
//!
//! ```not_rust
//! cargo run --release --example length_sweep -- [--homo 2|3]
//! ```

use dpdna::config::SystemConfig;
use dpdna::corpus;
use dpdna::pipeline::length_sweep;

fn main() -> dpdna::Result<()> {
    let homo = std::env::args().skip_while(|a| a != "--homo").nth(1).and_then(|v| v.parse().ok()).unwrap_or(2);
    let cfg = SystemConfig::default().with_homo(homo);
    let caps = [100, 150, 200, 300, 400, 500, 600, 700];
    let data = corpus::mixed(1 << 20, 5);
    println!("Homo-{homo}, {} bytes of mixed input", data.len());
    println!("{:>5} {:>8} {:>8} {:>8}", "cap", "segment", "payload", "overall");
    for row in length_sweep(&data, &cfg, &caps)? {
        println!("{:>5} {:>8} {:>8.4} {:>8.4}", row.cap, row.segment_bits, row.report.payload_density, row.report.overall_density);
    }
    Ok(())
}
