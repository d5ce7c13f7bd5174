//! Push encoded strands through a noisy channel and count how many still
//! pass their integrity check.
//!
//! ```not_rust
//! cargo run --release --example error_channel
//! ```

use dpdna::config::SystemConfig;
use dpdna::corpus;
use dpdna::pipeline::{encode_bytes, inject_errors, parse_all, ErrorRates};

fn main() -> dpdna::Result<()> {
    let cfg = SystemConfig::default();
    let out = encode_bytes(&corpus::image_set(100_000, 4), "images", &cfg)?;
    let clean = out.sequences();
    println!("{} strands", clean.len());
    for (label, rates) in [
        ("substitution 0.008", ErrorRates::substitution(0.008)),
        ("substitution 0.001", ErrorRates::substitution(0.001)),
        ("indel 0.001 each", ErrorRates { substitution: 0.0, insertion: 0.001, deletion: 0.001 }),
    ] {
        let (noisy, log) = inject_errors(&clean, rates, cfg.seed)?;
        let parsed = parse_all(&noisy, &cfg);
        let ok = parsed.iter().zip(&out.strands).filter(|(r, o)| r.as_ref().is_ok_and(|r| r.payload_bits == o.payload_bits)).count();
        let silent = parsed.iter().zip(&out.strands).filter(|(r, o)| r.as_ref().is_ok_and(|r| r.payload_bits != o.payload_bits)).count();
        println!("{label:<20} {log:?}\n{:<20} intact {ok}, flagged {}, silent {silent}", "", clean.len() - ok - silent);
    }
    Ok(())
}
