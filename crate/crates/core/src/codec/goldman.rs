//! Rotating ternary baseline.
//!
//! Each byte becomes a prefix-free trit codeword: values `0..236` use the
//! five-trit base-3 expansion of the byte, values `236..256` use six-trit
//! codewords whose five-trit prefixes (`236..243`) are unused as five-trit
//! words. Trit `t` after previous nucleotide `p` emits `p + 1 + t` in the
//! cyclic order, so consecutive nucleotides always differ.

use crate::error::{Error, Result};
use crate::nucleotide::{DnaSeq, Nucleotide};

/// Bytes below this value map to five trits.
pub const FIVE_TRIT_WORDS: u16 = 236;
const SIX_TRIT_BASE: u16 = FIVE_TRIT_WORDS * 3;

/// Expected trits per byte on uniformly distributed bytes: 1300 / 256.
pub const MEAN_TRITS_PER_BYTE: f64 = (236.0 * 5.0 + 20.0 * 6.0) / 256.0;

/// Trit codeword for a byte, most significant trit first.
pub fn byte_to_trits(b: u8) -> ([u8; 6], usize) {
    let (mut value, len) = if (b as u16) < FIVE_TRIT_WORDS {
        (b as u16, 5)
    } else {
        (SIX_TRIT_BASE + (b as u16 - FIVE_TRIT_WORDS), 6)
    };
    let mut trits = [0u8; 6];
    for slot in trits[..len].iter_mut().rev() {
        *slot = (value % 3) as u8;
        value /= 3;
    }
    (trits, len)
}

pub fn goldman_encode(bytes: &[u8], start: Nucleotide) -> DnaSeq {
    let mut out = DnaSeq::with_capacity(bytes.len() * 6);
    let mut prev = start;
    for &b in bytes {
        let (trits, len) = byte_to_trits(b);
        for &t in &trits[..len] {
            prev = prev.rotate(1 + t);
            out.push(prev);
        }
    }
    out
}

/// Number of nucleotides the baseline needs for `bytes`.
pub fn goldman_len(bytes: &[u8]) -> usize {
    bytes.iter().map(|&b| if (b as u16) < FIVE_TRIT_WORDS { 5 } else { 6 }).sum()
}

pub fn goldman_decode(s: &[Nucleotide], start: Nucleotide) -> Result<Vec<u8>> {
    let mut trits = Vec::with_capacity(s.len());
    let mut prev = start;
    for (pos, &n) in s.iter().enumerate() {
        let t = n.index().wrapping_sub(prev.index()).wrapping_sub(1) & 3;
        if t == 3 {
            return Err(Error::InvalidTransition { pos, prev, got: n });
        }
        trits.push(t);
        prev = n;
    }

    let mut out = Vec::with_capacity(trits.len() / 5);
    let mut i = 0;
    while i < trits.len() {
        if i + 5 > trits.len() {
            return Err(Error::NoTritMatch { pos: i });
        }
        let value = trits[i..i + 5].iter().fold(0u16, |acc, &t| acc * 3 + t as u16);
        if value < FIVE_TRIT_WORDS {
            out.push(value as u8);
            i += 5;
            continue;
        }
        let sixth = *trits.get(i + 5).ok_or(Error::NoTritMatch { pos: i })?;
        let byte = value * 3 + sixth as u16 - SIX_TRIT_BASE + FIVE_TRIT_WORDS;
        if byte > 255 {
            return Err(Error::NoTritMatch { pos: i });
        }
        out.push(byte as u8);
        i += 6;
    }
    Ok(out)
}
