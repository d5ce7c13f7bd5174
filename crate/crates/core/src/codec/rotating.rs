//! Bit-segment level encoders for the 2bit-code and the xx-codes.

use crate::codec::table::SchemeId;
use crate::error::{Error, Result};
use crate::nucleotide::{BitSegment, DnaSeq, Nucleotide, Pattern, PatternHistogram};

/// Encodes with the table of `scheme`, starting after `start`.
pub fn encode_with(scheme: SchemeId, b: &BitSegment, start: Nucleotide) -> Result<DnaSeq> {
    let table = scheme.table().ok_or_else(|| Error::Config(format!("{scheme} is not a rotating code")))?;
    if !b.len().is_multiple_of(2) {
        return Err(Error::OddBitLength(b.len()));
    }
    let mut out = DnaSeq::with_capacity(b.len());
    table.encode_into(b.pattern_iter(), start, &mut out);
    Ok(out)
}

pub fn decode_with(scheme: SchemeId, s: &[Nucleotide], start: Nucleotide) -> Result<BitSegment> {
    let table = scheme.table().ok_or_else(|| Error::Config(format!("{scheme} is not a rotating code")))?;
    let mut patterns = Vec::with_capacity(s.len());
    table.decode_into(s, start, &mut patterns, None)?;
    Ok(BitSegment::from_patterns(&patterns))
}

pub fn two_bit_encode(b: &BitSegment, start: Nucleotide) -> Result<DnaSeq> {
    encode_with(SchemeId::TwoBit, b, start)
}

pub fn two_bit_decode(s: &[Nucleotide], start: Nucleotide) -> Result<BitSegment> {
    decode_with(SchemeId::TwoBit, s, start)
}

pub fn xx_encode(xx: Pattern, b: &BitSegment, start: Nucleotide) -> Result<DnaSeq> {
    encode_with(SchemeId::unbalanced(xx), b, start)
}

pub fn xx_decode(xx: Pattern, s: &[Nucleotide], start: Nucleotide) -> Result<BitSegment> {
    decode_with(SchemeId::unbalanced(xx), s, start)
}

/// Bits per nucleotide of the xx-code on a segment with histogram `h`.
pub fn xx_density(xx: Pattern, h: &PatternHistogram) -> Result<f64> {
    let total = h.total();
    if total == 0 {
        return Err(Error::EmptyHistogram);
    }
    Ok(2.0 * total as f64 / (total + h.count(xx)) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nucleotide::{max_homopolymer_run, pattern_histogram};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use Nucleotide::*;

    fn bits(s: &str) -> BitSegment {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> DnaSeq {
        s.parse().unwrap()
    }

    fn random_bits(rng: &mut ChaCha8Rng, max_patterns: usize) -> BitSegment {
        let n = rng.gen_range(0..=max_patterns);
        let mut seg = BitSegment::with_capacity(2 * n);
        for _ in 0..2 * n {
            seg.push(rng.gen_range(0..2));
        }
        seg
    }

    /// Start nucleotide prepended, so runs count the boundary.
    fn with_start(start: Nucleotide, s: &DnaSeq) -> Vec<Nucleotide> {
        std::iter::once(start).chain(s.iter().copied()).collect()
    }

    #[test]
    fn two_bit_examples() {
        assert_eq!(two_bit_encode(&bits("10"), C).unwrap(), seq("T"));
        assert_eq!(two_bit_encode(&bits("11111111"), A).unwrap(), seq("AAAA"));
        assert_eq!(two_bit_encode(&bits("000000"), A).unwrap(), seq("CGT"));
        assert_eq!(two_bit_decode(&seq("T"), C).unwrap(), bits("10"));
        assert_eq!(two_bit_decode(&seq("AAAA"), A).unwrap(), bits("11111111"));
        assert_eq!(two_bit_decode(&seq("CGT"), A).unwrap(), bits("000000"));
        assert!(matches!(two_bit_encode(&bits("101"), A), Err(Error::OddBitLength(3))));
    }

    #[test]
    fn xx_examples() {
        assert_eq!(xx_encode(Pattern::P11, &bits("1100"), C).unwrap(), seq("CTA"));
        assert_eq!(xx_decode(Pattern::P11, &seq("CTA"), C).unwrap(), bits("1100"));
        assert_eq!(xx_encode(Pattern::P00, &bits("11111111"), A).unwrap(), seq("CGTA"));
        assert_eq!(xx_decode(Pattern::P00, &seq("CGTA"), A).unwrap(), bits("11111111"));
    }

    #[test]
    fn xx_decode_rejects_repeated_pair() {
        let err = xx_decode(Pattern::P11, &seq("CCA"), C).unwrap_err();
        assert!(matches!(err, Error::BadPairSecond { pos: 1, expected: T, got: C }));
        assert!(matches!(xx_decode(Pattern::P11, &seq("C"), C), Err(Error::DanglingPair { pos: 0 })));
        assert!(matches!(
            xx_decode(Pattern::P11, &seq("GGC"), C),
            Err(Error::BadPairSecond { pos: 2, expected: A, got: C })
        ));
    }

    #[test]
    fn xx_density_examples() {
        let uniform = PatternHistogram::from_counts([25, 25, 25, 25]);
        assert_eq!(xx_density(Pattern::P11, &uniform).unwrap(), 1.6);
        let h = PatternHistogram::from_counts([0, 10, 7, 3]);
        assert_eq!(xx_density(Pattern::P00, &h).unwrap(), 2.0);
        let h = pattern_histogram(&bits("11101101")).unwrap();
        assert_eq!(xx_density(Pattern::P00, &h).unwrap(), 2.0);
        assert!(matches!(xx_density(Pattern::P00, &PatternHistogram::default()), Err(Error::EmptyHistogram)));
    }

    #[test]
    fn eleven_code_uniform_segment_is_one_point_six() {
        let seg = BitSegment::from_patterns(&Pattern::ALL.repeat(25));
        let out = xx_encode(Pattern::P11, &seg, G).unwrap();
        assert_eq!(out.len(), 125);
        assert_eq!(seg.len() as f64 / out.len() as f64, 1.6);
    }

    #[test]
    fn round_trip_ten_thousand_segments_every_code() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let seg = random_bits(&mut rng, 80);
            let start = Nucleotide::from_index(rng.gen_range(0..4));
            for scheme in SchemeId::DPDNA {
                let s = encode_with(scheme, &seg, start).unwrap();
                assert_eq!(decode_with(scheme, &s, start).unwrap(), seg, "{scheme}");
            }
        }
    }

    #[test]
    fn marginals_are_balanced_on_uniform_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for scheme in SchemeId::DPDNA {
            let mut counts = [0usize; 4];
            let mut total = 0;
            let mut prev = A;
            let table = scheme.table().unwrap();
            while total < 1_000_000 {
                let patterns: Vec<Pattern> = (0..1000).map(|_| Pattern::from_value(rng.gen())).collect();
                let mut out = DnaSeq::with_capacity(2000);
                prev = table.encode_into(patterns, prev, &mut out);
                for n in out.iter() {
                    counts[n.index() as usize] += 1;
                }
                total += out.len();
            }
            for c in counts {
                let f = c as f64 / total as f64;
                assert!((f - 0.25).abs() < 0.01, "{scheme}: {counts:?}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        #[test]
        fn two_bit_repeats_exactly_on_eleven(v in prop::collection::vec(0u8..4, 0..200), s in 0u8..4) {
            let start = Nucleotide::from_index(s);
            let patterns: Vec<Pattern> = v.iter().map(|&x| Pattern::from_value(x)).collect();
            let out = two_bit_encode(&BitSegment::from_patterns(&patterns), start).unwrap();
            let full = with_start(start, &out);
            for i in 0..patterns.len() {
                prop_assert_eq!(full[i + 1] == full[i], patterns[i] == Pattern::P11);
            }
            let mut longest = 0;
            let mut cur = 0;
            for p in &patterns {
                cur = if *p == Pattern::P11 { cur + 1 } else { 0 };
                longest = longest.max(cur);
            }
            prop_assert_eq!(max_homopolymer_run(&full), longest + 1);
        }

        #[test]
        fn xx_codes_never_exceed_run_two(v in prop::collection::vec(0u8..4, 0..200), s in 0u8..4, x in 0u8..4) {
            let start = Nucleotide::from_index(s);
            let xx = Pattern::from_value(x);
            let seg = BitSegment::from_patterns(&v.iter().map(|&x| Pattern::from_value(x)).collect::<Vec<_>>());
            let out = xx_encode(xx, &seg, start).unwrap();
            prop_assert!(max_homopolymer_run(&with_start(start, &out)) <= 2);
            let h = pattern_histogram(&seg).unwrap();
            prop_assert_eq!(out.len() as u64, h.total() + h.count(xx));
            prop_assert_eq!(xx_decode(xx, &out, start).unwrap(), seg);
        }

        #[test]
        fn xx_density_bounds(c in prop::array::uniform4(0u64..50), x in 0u8..4) {
            let h = PatternHistogram::from_counts(c);
            prop_assume!(h.total() > 0);
            let xx = Pattern::from_value(x);
            let d = xx_density(xx, &h).unwrap();
            prop_assert!((1.0..=2.0).contains(&d));
            prop_assert_eq!(d == 2.0, h.count(xx) == 0);
            prop_assert_eq!(d == 1.6, 4 * h.count(xx) == h.total());
        }
    }
}
