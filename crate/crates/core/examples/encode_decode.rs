//! Encode a file (or a built-in sample) into strands and decode it back.
//!
//! ```not_rust
//! cargo run --release --example encode_decode -- [path] [--homo 2|3] [--cap N]
//! ```

use std::env;

use dpdna::config::SystemConfig;
use dpdna::corpus;
use dpdna::fasta::strand_header;
use dpdna::pipeline::{decode_strands, density_report, encode_bytes};

fn main() -> dpdna::Result<()> {
    let mut cfg = SystemConfig::default();
    let mut path = None;
    let mut args = env::args().skip(1);
    while let Some(a) = args.next() {
        match a.as_str() {
            "--homo" => cfg.homo_max_run = args.next().and_then(|v| v.parse().ok()).unwrap_or(3),
            "--cap" => cfg.strand_cap_nt = args.next().and_then(|v| v.parse().ok()).unwrap_or(150),
            _ => path = Some(a),
        }
    }
    let data = match &path {
        Some(p) => std::fs::read(p)?,
        None => corpus::english_text(50_000, 1),
    };

    let encoded = encode_bytes(&data, path.as_deref().unwrap_or("sample.txt"), &cfg)?;
    for s in encoded.strands.iter().take(3) {
        println!(">{}\n{}", strand_header(s), s.full_seq);
    }
    println!("...");
    println!("{}", density_report(&encoded.strands)?);

    let back = decode_strands(&encoded.sequences(), &encoded.manifest)?;
    assert_eq!(back, data);
    println!("decoded {} bytes, sha256 {}", back.len(), encoded.manifest.sha256);
    Ok(())
}
