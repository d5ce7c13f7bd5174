//! Break one encoded strand into its fields and parse it back.
//!
//! ```not_rust
//! cargo run --example strand_layout
//! ```

use dpdna::config::SystemConfig;
use dpdna::nucleotide::BitSegment;
use dpdna::pipeline::plan_strand;
use dpdna::strand::parse_strand;

fn main() -> dpdna::Result<()> {
    let cfg = SystemConfig::default();
    let seg = BitSegment::from_bytes(b"Hello, DNA storage");
    let seg = seg.slice(0..seg.len().min(128));
    let (sel, rec, _) = plan_strand(&seg, 42, &cfg)?;

    println!("scheme {} (wire id {}), {} of {} bits, {} nt", rec.scheme, rec.wire_id(), sel.choice.bits_used, seg.len(), rec.total_nt());
    let l = &rec.layout;
    for (name, range) in [
        ("primer F", &l.primer_forward),
        ("encoding", &l.encoding),
        ("index", &l.index),
        ("payload", &l.payload),
        ("ecc", &l.ecc),
        ("primer R", &l.primer_reverse),
    ] {
        let part: String = rec.full_seq[range.clone()].iter().map(|n| n.to_char()).collect();
        println!("{name:<9} {:>3}..{:<3} {part}", range.start, range.end);
    }
    let back = parse_strand(&rec.full_seq, &cfg)?;
    assert_eq!(back, rec);
    println!("parsed back: index {}, {} payload bits", back.index, back.payload_bits.len());
    Ok(())
}
