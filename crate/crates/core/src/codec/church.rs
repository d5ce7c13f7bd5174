//! One-bit-per-nucleotide baseline and the fixed-rate accounting baseline.

use crate::nucleotide::{BitSegment, DnaSeq, Nucleotide};

/// Bit 1 becomes A or C, bit 0 becomes T or G; each class alternates its two
/// letters independently, restarting with A / T for every strand.
pub fn church_encode(b: &BitSegment) -> DnaSeq {
    let mut one_alt = false;
    let mut zero_alt = false;
    b.as_bits()
        .iter()
        .map(|&bit| {
            if bit == 1 {
                let n = if one_alt { Nucleotide::C } else { Nucleotide::A };
                one_alt = !one_alt;
                n
            } else {
                let n = if zero_alt { Nucleotide::G } else { Nucleotide::T };
                zero_alt = !zero_alt;
                n
            }
        })
        .collect()
}

pub fn church_decode(s: &[Nucleotide]) -> BitSegment {
    let mut out = BitSegment::with_capacity(s.len());
    for n in s {
        out.push(matches!(n, Nucleotide::A | Nucleotide::C) as u8);
    }
    out
}

/// Nucleotides the 1.6 bits/nt accounting baseline charges for `bits` bits.
pub fn blawat_density(bits: u64) -> u64 {
    (bits * 5).div_ceil(8)
}
