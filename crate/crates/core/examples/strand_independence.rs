//! Corrupt one nucleotide in one strand and show that every other strand
//! still decodes to the same bits, while the damaged one is flagged.
//!
//! ```not_rust
//! cargo run --release --example strand_independence
//! ```

use dpdna::config::SystemConfig;
use dpdna::corpus;
use dpdna::pipeline::{decode_strands, encode_bytes, parse_all};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> dpdna::Result<()> {
    let cfg = SystemConfig::default();
    let out = encode_bytes(&corpus::english_text(20_000, 3), "text", &cfg)?;
    let clean = out.sequences();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    for _ in 0..5 {
        let k = rng.gen_range(0..clean.len());
        let mut seqs = clean.clone();
        let mut s = seqs[k].clone().into_inner();
        let p = rng.gen_range(0..s.len());
        s[p] = s[p].rotate(rng.gen_range(1..4));
        seqs[k] = s.into();

        let parsed = parse_all(&seqs, &cfg);
        let others_intact = parsed
            .iter()
            .zip(&out.strands)
            .enumerate()
            .filter(|(i, _)| *i != k)
            .all(|(_, (r, orig))| r.as_ref().is_ok_and(|r| r.payload_bits == orig.payload_bits));
        let verdict = match &parsed[k] {
            Ok(r) if r.payload_bits == out.strands[k].payload_bits => "bits unchanged".to_string(),
            Ok(_) => "CHANGED AND UNDETECTED".to_string(),
            Err(e) => format!("flagged: {e}"),
        };
        println!("strand {k:>4}, nt {p:>3}: others intact = {others_intact}; strand {k} {verdict}");
        if let Err(e) = decode_strands(&seqs, &out.manifest) {
            println!("    full decode: {e}");
        }
    }
    Ok(())
}
