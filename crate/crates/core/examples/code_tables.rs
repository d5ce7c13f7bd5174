//! Print the five rotating code tables and encode one segment with each.
//!
//! ```not_rust
//! cargo run --example code_tables
//! ```

use dpdna::codec::{decode_with, encode_with, xx_density, SchemeId};
use dpdna::nucleotide::{max_homopolymer_run, pattern_histogram, BitSegment, Nucleotide};

fn main() -> dpdna::Result<()> {
    for scheme in SchemeId::DPDNA {
        println!("{}", scheme.table().expect("rotating scheme").render());
    }

    let seg: BitSegment = "11 11 11 01 00 10 11 11 00 00".parse()?;
    let h = pattern_histogram(&seg)?;
    println!("segment {seg}  counts [00 01 10 11] = {:?}", h.counts());
    for scheme in SchemeId::DPDNA {
        let s = encode_with(scheme, &seg, Nucleotide::A)?;
        assert_eq!(decode_with(scheme, &s, Nucleotide::A)?, seg);
        let predicted = match scheme.doubled_pattern() {
            Some(xx) => format!("{:.3}", xx_density(xx, &h)?),
            None => "2.000".into(),
        };
        println!(
            "{:<8} {:<16} {:>2} nt  {:.3} bits/nt (predicted {predicted})  longest run {}",
            scheme.name(),
            s.to_string(),
            s.len(),
            seg.len() as f64 / s.len() as f64,
            max_homopolymer_run(&s),
        );
    }
    Ok(())
}
