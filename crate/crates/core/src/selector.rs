//! Per-segment code selection.
//!
//! Two candidates are computed for every segment: the xx-code doubling the
//! least frequent 2-bit pattern, and the longest prefix the 2bit-code can
//! encode without exceeding the homopolymer limit. A full-length feasible
//! prefix always wins. A shorter one wins only when cutting the strand early
//! still raises the per-strand density once metadata is counted.

use serde::{Deserialize, Serialize};

use crate::codec::{xx_density, SchemeId, TWO_BIT_OFFSETS};
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::nucleotide::{pattern_histogram, BitSegment, Nucleotide, Pattern, PatternHistogram};

/// Density of the 2bit-code.
pub const TWO_BIT_DENSITY: f64 = 2.0;

/// Tie-break order when several patterns share the minimum count.
pub const TIE_PREFERENCE: [Pattern; 4] = [Pattern::P11, Pattern::P10, Pattern::P01, Pattern::P00];

/// Least frequent pattern; ties resolved by [`TIE_PREFERENCE`].
pub fn select_unbalanced(h: &PatternHistogram) -> Pattern {
    select_unbalanced_among(h, [true; 4]).expect("all patterns enabled")
}

/// Least frequent pattern among the enabled ones.
pub fn select_unbalanced_among(h: &PatternHistogram, enabled: [bool; 4]) -> Option<Pattern> {
    let mut best: Option<Pattern> = None;
    for p in TIE_PREFERENCE {
        if !enabled[p.value() as usize] {
            continue;
        }
        if best.is_none_or(|b| h.count(p) < h.count(b)) {
            best = Some(p);
        }
    }
    best
}

/// Last emitted nucleotide and the length of the run it ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunState {
    pub prev: Nucleotide,
    pub run: usize,
}

impl RunState {
    pub fn start(prev: Nucleotide) -> Self {
        Self { prev, run: 1 }
    }

    /// Advances over one 2bit-code emission.
    #[inline]
    pub fn step_two_bit(self, v: Pattern) -> Self {
        let next = self.prev.rotate(TWO_BIT_OFFSETS[v.value() as usize]);
        if next == self.prev {
            Self { prev: next, run: self.run + 1 }
        } else {
            Self { prev: next, run: 1 }
        }
    }

    /// Advances over one arbitrary nucleotide.
    #[inline]
    pub fn step(self, n: Nucleotide) -> Self {
        if n == self.prev {
            Self { prev: n, run: self.run + 1 }
        } else {
            Self { prev: n, run: 1 }
        }
    }
}

/// Scans 2bit-code emissions from `state`; returns how many leading patterns
/// keep every run at or below `max_run`, and the state after them.
pub fn two_bit_scan<I>(patterns: I, mut state: RunState, max_run: usize) -> (usize, RunState)
where
    I: IntoIterator<Item = Pattern>,
{
    let mut ok = 0;
    for v in patterns {
        let next = state.step_two_bit(v);
        if next.run > max_run {
            break;
        }
        state = next;
        ok += 1;
    }
    (ok, state)
}

/// Longest even prefix of `b` whose 2bit-code encoding after `start` has no
/// run longer than `max_run`; the start nucleotide counts towards runs.
pub fn max_feasible_2bit_prefix(b: &BitSegment, start: Nucleotide, max_run: usize) -> usize {
    2 * two_bit_scan(b.pattern_iter(), RunState::start(start), max_run).0
}

/// Audit record of the early-cut density comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VlDecision {
    /// Segment length in bits.
    pub l: usize,
    /// Bits excluded from the high-density candidate.
    pub m: usize,
    /// Density of the low-density (xx-code) candidate.
    pub eps1: f64,
    /// Density of the high-density (2bit-code) candidate.
    pub eps2: f64,
    /// Metadata nucleotides per strand.
    pub l_meta: f64,
    /// ECC overhead applied to both payload sizes.
    pub ecc_overhead: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub take_high_density: bool,
}

/// Compares `L / (L/eps1 + L_meta)` against `(L-M) / ((L-M)/eps2 + L_meta)`.
pub fn evaluate_vl(l: usize, m: usize, eps1: f64, eps2: f64, l_meta: f64) -> VlDecision {
    evaluate_vl_with_overhead(l, m, eps1, eps2, l_meta, 0.0)
}

/// As [`evaluate_vl`], with payload nucleotides on both sides scaled by
/// `1 + ecc_overhead`.
pub fn evaluate_vl_with_overhead(
    l: usize,
    m: usize,
    eps1: f64,
    eps2: f64,
    l_meta: f64,
    ecc_overhead: f64,
) -> VlDecision {
    let scale = 1.0 + ecc_overhead;
    let lf = l as f64;
    let kept = (l - m.min(l)) as f64;
    let lhs = lf / (lf * scale / eps1 + l_meta);
    let rhs = kept / (kept * scale / eps2 + l_meta);
    VlDecision { l, m, eps1, eps2, l_meta, ecc_overhead, lhs, rhs, take_high_density: lhs < rhs }
}

/// Outcome of code selection for one segment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeChoice {
    pub scheme: SchemeId,
    /// Leading bits of the segment this strand carries.
    pub bits_used: usize,
    /// Payload nucleotides those bits occupy under `scheme`.
    pub payload_nt: usize,
    /// `bits_used / payload_nt`.
    pub epsilon: f64,
}

impl CodeChoice {
    fn new(scheme: SchemeId, bits_used: usize, payload_nt: usize) -> Self {
        Self { scheme, bits_used, payload_nt, epsilon: bits_used as f64 / payload_nt as f64 }
    }
}

/// Full selection record, including both candidates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub choice: CodeChoice,
    /// The xx-code candidate.
    pub dpac: CodeChoice,
    /// Longest feasible 2bit-code prefix, when the 2bit-code is enabled.
    pub two_bit_prefix: Option<usize>,
    /// Set when an early cut was evaluated.
    pub vl: Option<VlDecision>,
}

/// Chooses the code for a segment whose payload follows `start`.
pub fn choose_code(b: &BitSegment, start: Nucleotide, cfg: &SystemConfig) -> Result<CodeChoice> {
    Ok(choose_code_at(b, RunState::start(start), cfg, |_| true)?.choice)
}

/// Code selection with an explicit incoming run and an extra admission test
/// for 2bit-code prefixes (used to check fields encoded after the payload).
pub fn choose_code_at(
    b: &BitSegment,
    state: RunState,
    cfg: &SystemConfig,
    mut admit_two_bit: impl FnMut(usize) -> bool,
) -> Result<Selection> {
    let h = pattern_histogram(b)?;
    if h.total() == 0 {
        return Err(Error::EmptyPayload);
    }
    let l = b.len();
    let xx = select_unbalanced_among(&h, cfg.schemes.xx)
        .ok_or_else(|| Error::Config("no xx-code enabled".into()))?;
    let eps1 = xx_density(xx, &h)?;
    let dpac = CodeChoice::new(SchemeId::unbalanced(xx), l, (h.total() + h.count(xx)) as usize);
    let mut selection = Selection { choice: dpac, dpac, two_bit_prefix: None, vl: None };
    if !cfg.schemes.two_bit {
        return Ok(selection);
    }

    let mut prefix = max_feasible_2bit_prefix_at(b, state, cfg.homo_max_run);
    selection.two_bit_prefix = Some(prefix);
    if prefix == l {
        if admit_two_bit(prefix) {
            selection.choice = CodeChoice::new(SchemeId::TwoBit, l, l / 2);
            return Ok(selection);
        }
        prefix -= 2;
    }
    if !cfg.schemes.variable_length {
        return Ok(selection);
    }
    let l_meta = cfg.meta_nt() as f64;
    while prefix > 0 {
        let vl = evaluate_vl_with_overhead(l, l - prefix, eps1, TWO_BIT_DENSITY, l_meta, cfg.ecc_overhead_ratio);
        selection.vl = Some(vl);
        if !vl.take_high_density {
            break;
        }
        if admit_two_bit(prefix) {
            selection.choice = CodeChoice::new(SchemeId::TwoBit, prefix, prefix / 2);
            break;
        }
        prefix -= 2;
    }
    Ok(selection)
}

fn max_feasible_2bit_prefix_at(b: &BitSegment, state: RunState, max_run: usize) -> usize {
    2 * two_bit_scan(b.pattern_iter(), state, max_run).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{encode_with, two_bit_encode, xx_encode};
    use crate::config::SchemeMask;
    use crate::nucleotide::max_homopolymer_run;
    use proptest::prelude::*;
    use Nucleotide::*;

    fn repeat(p: &str, n: usize) -> BitSegment {
        p.repeat(n).parse().unwrap()
    }

    /// Brute-force oracle: longest even prefix whose encoding passes.
    fn feasible_prefix_oracle(b: &BitSegment, start: Nucleotide, x: usize) -> usize {
        let mut best = 0;
        for len in (0..=b.len()).step_by(2) {
            let enc = two_bit_encode(&b.slice(0..len), start).unwrap();
            let mut full = vec![start];
            full.extend_from_slice(&enc);
            if max_homopolymer_run(&full) <= x {
                best = len;
            } else {
                break;
            }
        }
        best
    }

    #[test]
    fn select_examples() {
        assert_eq!(select_unbalanced(&PatternHistogram::from_counts([10, 20, 30, 40])), Pattern::P00);
        assert_eq!(select_unbalanced(&PatternHistogram::from_counts([5, 5, 5, 5])), Pattern::P11);
        let h = pattern_histogram(&"11101101".parse().unwrap()).unwrap();
        assert_eq!(select_unbalanced(&h), Pattern::P00);
    }

    #[test]
    fn tie_break_is_order_independent() {
        // every assignment of counts from {1, 2} to the four patterns
        for mask in 0u8..16 {
            let counts: [u64; 4] = std::array::from_fn(|i| 1 + ((mask >> i) & 1) as u64);
            let chosen = select_unbalanced(&PatternHistogram::from_counts(counts));
            let min = *counts.iter().min().unwrap();
            let expected = TIE_PREFERENCE.into_iter().find(|p| counts[p.value() as usize] == min).unwrap();
            assert_eq!(chosen, expected, "{counts:?}");
        }
    }

    #[test]
    fn feasible_prefix_examples() {
        let zeros = repeat("0", 300);
        assert_eq!(max_feasible_2bit_prefix(&zeros, A, 2), 300);
        assert_eq!(feasible_prefix_oracle(&zeros, A, 2), 300);
        let ones = repeat("1", 300);
        assert_eq!(max_feasible_2bit_prefix(&ones, A, 3), 4);
        assert_eq!(feasible_prefix_oracle(&ones, A, 3), 4);
        let alt = repeat("0011", 75);
        for start in Nucleotide::ALL {
            assert_eq!(max_feasible_2bit_prefix(&alt, start, 2), 300);
            assert_eq!(feasible_prefix_oracle(&alt, start, 2), 300);
        }
    }

    #[test]
    fn vl_examples() {
        let d = evaluate_vl(300, 20, 1.6, 2.0, 58.0);
        assert!((d.lhs - 1.2219).abs() < 5e-4, "{}", d.lhs);
        assert!((d.rhs - 1.4141).abs() < 5e-4, "{}", d.rhs);
        assert!(d.take_high_density);
        assert!(evaluate_vl(300, 0, 1.7, 2.0, 58.0).take_high_density);
        let d = evaluate_vl(300, 298, 1.6, 2.0, 58.0);
        assert!((d.rhs - 2.0 / 59.0).abs() < 1e-12);
        assert!(!d.take_high_density);
    }

    #[test]
    fn choose_all_zeros_uses_two_bit() {
        let cfg = SystemConfig::default();
        let c = choose_code(&repeat("0", 300), A, &cfg).unwrap();
        assert_eq!((c.scheme, c.bits_used, c.payload_nt, c.epsilon), (SchemeId::TwoBit, 300, 150, 2.0));
    }

    #[test]
    fn choose_all_ones_falls_back_to_an_unused_pattern_code() {
        let cfg = SystemConfig::default().with_homo(3);
        let c = choose_code(&repeat("1", 300), A, &cfg).unwrap();
        assert_eq!((c.scheme, c.bits_used, c.payload_nt, c.epsilon), (SchemeId::Code10, 300, 150, 2.0));
        // 00, 01 and 10 never occur, so any of their codes gives 2.0; the tie rule picks 10
        for xx in [Pattern::P00, Pattern::P01] {
            assert_eq!(xx_encode(xx, &repeat("1", 300), A).unwrap().len(), 150);
        }
        let out = xx_encode(Pattern::P10, &repeat("1", 300), A).unwrap();
        assert_eq!(out.len(), 150);
    }

    #[test]
    fn choose_uniform_segment_uses_11_code() {
        let cfg = SystemConfig::default().with_schemes(SchemeMask::DPAC_ONLY);
        let seg = repeat("00011011", 40);
        let c = choose_code(&seg, C, &cfg).unwrap();
        assert_eq!((c.scheme, c.bits_used, c.payload_nt), (SchemeId::Code11, 320, 200));
        assert_eq!(c.epsilon, 1.6);

        // balanced blocks with a doubled '11' fail the Homo-2 scan after 7 patterns;
        // 300 bits cannot be exactly uniform, 38/38/37/37 leaves 11 as the minimum
        let cfg = SystemConfig::default().with_homo(2);
        let seg: BitSegment = format!("{}{}", "0001100001101111".repeat(18), "000110110001").parse().unwrap();
        assert_eq!(seg.len(), 300);
        let sel = choose_code_at(&seg, RunState::start(C), &cfg, |_| true).unwrap();
        assert_eq!(sel.two_bit_prefix, Some(14));
        assert!(!sel.vl.unwrap().take_high_density);
        assert_eq!(sel.choice.scheme, SchemeId::Code11);
        assert_eq!(sel.choice.payload_nt, 187);
        assert!((sel.choice.epsilon - 1.6).abs() < 0.01);

        let seg = repeat("0001100001101111", 20);
        let c = choose_code(&seg, C, &cfg).unwrap();
        assert_eq!((c.scheme, c.epsilon), (SchemeId::Code11, 1.6));
    }

    #[test]
    fn admission_failure_steps_the_prefix_down() {
        let cfg = SystemConfig::default();
        let zeros = repeat("0", 128);
        let mut asked = Vec::new();
        let sel = choose_code_at(&zeros, RunState::start(A), &cfg, |p| {
            asked.push(p);
            false
        })
        .unwrap();
        // eps1 == 2.0 here, so no early cut can win
        assert_eq!(asked, vec![128]);
        assert_eq!(sel.choice.scheme, SchemeId::Code11);
        assert!(!sel.vl.unwrap().take_high_density);
    }

    #[test]
    fn vl_cut_is_taken_when_it_pays() {
        let cfg = SystemConfig::default().with_homo(2);
        // uniform body, then a run of '11' patterns near the end
        let seg: BitSegment = format!("{}{}", "00011011".repeat(15), "11111111").parse().unwrap();
        let sel = choose_code_at(&seg, RunState::start(A), &cfg, |_| true).unwrap();
        assert_eq!(sel.choice.scheme, SchemeId::TwoBit);
        let p = sel.two_bit_prefix.unwrap();
        assert_eq!(sel.choice.bits_used, p);
        assert!(p < seg.len());
        assert!(sel.vl.unwrap().take_high_density);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn prefix_matches_oracle_and_is_maximal(v in prop::collection::vec(0u8..4, 1..80), s in 0u8..4, x in 2usize..4) {
            let seg = BitSegment::from_patterns(&v.iter().map(|&p| Pattern::from_value(p)).collect::<Vec<_>>());
            let start = Nucleotide::from_index(s);
            let p = max_feasible_2bit_prefix(&seg, start, x);
            prop_assert_eq!(p, feasible_prefix_oracle(&seg, start, x));
            if p < seg.len() {
                let longer = two_bit_encode(&seg.slice(0..p + 2), start).unwrap();
                let mut full = vec![start];
                full.extend_from_slice(&longer);
                prop_assert!(max_homopolymer_run(&full) > x);
            }
        }

        #[test]
        fn choice_respects_runs_and_density_floor(v in prop::collection::vec(0u8..4, 1..120), s in 0u8..4, x in 2usize..4) {
            let seg = BitSegment::from_patterns(&v.iter().map(|&p| Pattern::from_value(p)).collect::<Vec<_>>());
            let start = Nucleotide::from_index(s);
            let cfg = SystemConfig::default().with_homo(x);
            let sel = choose_code_at(&seg, RunState::start(start), &cfg, |_| true).unwrap();
            prop_assert!(sel.dpac.epsilon >= 1.6);
            let used = seg.slice(0..sel.choice.bits_used);
            let out = encode_with(sel.choice.scheme, &used, start).unwrap();
            prop_assert_eq!(out.len(), sel.choice.payload_nt);
            let mut full = vec![start];
            full.extend_from_slice(&out);
            prop_assert!(max_homopolymer_run(&full) <= x.max(2));
        }

        #[test]
        fn equal_densities_never_cut(l in 2usize..2000, m in 1usize..2000, eps in 1.0f64..2.0, meta in 0.0f64..200.0) {
            prop_assume!(m < l);
            prop_assert!(!evaluate_vl(l, m, eps, eps, meta).take_high_density);
        }
    }
}
