//! File-level encoding and decoding.
//!
//! A file is read as one MSB-first bit stream and cut greedily: each strand
//! takes the next `segment_bits` bits, the selector decides how many of them
//! it actually carries, and whatever it leaves behind starts the next
//! segment.

mod noise;
mod report;

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::codec::{SchemeId, TABLE_VERSION};
use crate::config::SystemConfig;
use crate::error::{Error, Result, StrandFailure};
use crate::nucleotide::{BitSegment, DnaSeq, Nucleotide};
use crate::selector::{choose_code_at, two_bit_scan, CodeChoice, RunState, Selection, VlDecision};
use crate::strand::{assemble_strand, ecc_fill, encode_scheme_field, parse_strand, SchemeWireId, StrandRecord};

pub use noise::{inject_errors, ErrorRates, MutationLog};
pub use report::{
    baseline_compare, baseline_strand_bits, density_report, length_sweep, pattern_report, BaselineRow, BaselineTable,
    DensityReport, PatternReport, SweepRow, RATIO_BINS,
};

pub const FORMAT_VERSION: u32 = 1;

/// Default segment length: the largest even `L` whose worst-case xx-code
/// payload plus ECC, `(1 + ratio) * 0.625 * L` nt, fits beside the metadata.
pub fn segment_bits(cfg: &SystemConfig) -> Result<usize> {
    if let Some(l) = cfg.segment_bits {
        if l < 2 || l % 2 != 0 {
            return Err(Error::Config(format!("segment_bits must be even and at least 2, got {l}")));
        }
        return Ok(l);
    }
    let meta = cfg.meta_nt();
    if cfg.strand_cap_nt < meta + 2 {
        return Err(Error::Config(format!(
            "strand cap {} nt is below the {} nt of metadata plus 2 payload nt",
            cfg.strand_cap_nt, meta
        )));
    }
    let room = (cfg.strand_cap_nt - meta) as u128;
    // (1e6 + ppm) * 5L <= room * 8e6
    let l = (room * 8_000_000 / (5 * (1_000_000 + cfg.ecc_ppm() as u128))) as usize;
    let l = l - l % 2;
    if l < 2 {
        return Err(Error::Config(format!("strand cap {} nt leaves no room for a segment", cfg.strand_cap_nt)));
    }
    Ok(l)
}

/// Per-strand entry of the manifest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestStrand {
    pub index: u64,
    pub scheme: SchemeId,
    pub bits_used: usize,
}

/// Everything needed besides the strands to rebuild the file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub file_name: String,
    pub byte_len: u64,
    pub bit_len: u64,
    /// Bit length after padding. Byte input never needs padding, so this
    /// equals `bit_len`.
    pub padded_bit_len: u64,
    pub bit_order: String,
    pub config: SystemConfig,
    pub wire_ids: BTreeMap<SchemeId, String>,
    pub table_version: u32,
    pub segment_bits: usize,
    pub seed: u64,
    pub strand_count: usize,
    /// Hex SHA-256 of the original bytes.
    pub sha256: String,
    pub strands: Vec<ManifestStrand>,
}

impl Manifest {
    fn check_compatible(&self) -> Result<()> {
        let mismatch = |m: String| Err(Error::ManifestMismatch(m));
        if self.format_version != FORMAT_VERSION {
            return mismatch(format!("format version {} (expected {FORMAT_VERSION})", self.format_version));
        }
        if self.table_version != TABLE_VERSION {
            return mismatch(format!("code table version {} (expected {TABLE_VERSION})", self.table_version));
        }
        if self.wire_ids != wire_map() {
            return mismatch("scheme wire ids differ from this build".into());
        }
        if self.bit_order != "msb-first" {
            return mismatch(format!("unsupported bit order {:?}", self.bit_order));
        }
        if self.strands.len() != self.strand_count {
            return mismatch("strand count disagrees with strand list".into());
        }
        let total: u64 = self.strands.iter().map(|s| s.bits_used as u64).sum();
        if total != self.padded_bit_len || self.bit_len != self.byte_len * 8 {
            return mismatch("strand bit counts do not add up to the file length".into());
        }
        if self.strands.iter().enumerate().any(|(i, s)| s.index != i as u64) {
            return mismatch("strand indices are not dense".into());
        }
        self.config.validate().map_err(|e| Error::ManifestMismatch(e.to_string()))
    }
}

fn wire_map() -> BTreeMap<SchemeId, String> {
    SchemeWireId::table().into_iter().collect()
}

/// How one strand was chosen; written with `--audit`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub index: u64,
    /// Bits offered to the selector.
    pub segment_bits: usize,
    /// Pattern counts `[c00, c01, c10, c11]` of the offered segment.
    pub histogram: [u64; 4],
    pub dpac: CodeChoice,
    pub two_bit_prefix: Option<usize>,
    pub vl: Option<VlDecision>,
    pub choice: CodeChoice,
    /// Times the segment was shortened to fit the cap.
    pub shrinks: usize,
    pub strand_nt: usize,
}

/// Strands plus manifest for one input.
#[derive(Clone, Debug)]
pub struct EncodedFile {
    pub strands: Vec<StrandRecord>,
    pub manifest: Manifest,
    /// Empty unless auditing was requested.
    pub audit: Vec<AuditRecord>,
}

impl EncodedFile {
    pub fn sequences(&self) -> Vec<DnaSeq> {
        self.strands.iter().map(|s| s.full_seq.clone()).collect()
    }
}

/// Chooses a code for `seg` and builds the strand.
///
/// The 2bit-code is admitted only if the whole strand body stays within the
/// run limit: index, payload, ECC filler, and the join with the reverse
/// primer. If an xx-code strand overruns the cap, the segment is shortened
/// and selection repeats.
pub fn plan_strand(seg: &BitSegment, idx: u64, cfg: &SystemConfig) -> Result<(Selection, StrandRecord, usize)> {
    let x = cfg.homo_max_run;
    let two_bit = SchemeWireId::of(SchemeId::TwoBit)?;
    let enc = encode_scheme_field(two_bit, cfg.start_nt());
    let mut index = BitSegment::with_capacity(cfg.index_bits as usize);
    index.push_uint(idx, cfg.index_bits);
    let (ok, after_index) = two_bit_scan(index.pattern_iter(), RunState::start(enc[1]), usize::MAX);
    debug_assert_eq!(ok * 2, index.len());
    let index_ok = two_bit_scan(index.pattern_iter(), RunState::start(enc[1]), x).0 * 2 == index.len();

    let fixed_nt = cfg.primer_forward.len() + enc.len() + cfg.primer_reverse.len();
    let mut seg = seg.clone();
    let mut shrinks = 0;
    loop {
        let admit = |p: usize| {
            if !index_ok || fixed_nt + (index.len() + p + cfg.ecc_bits(p)) / 2 > cfg.strand_cap_nt {
                return false;
            }
            let (_, state) = two_bit_scan(seg.pattern_iter().take(p / 2), after_index, usize::MAX);
            let payload = seg.slice(0..p);
            let ecc = ecc_fill(idx, cfg.index_bits, two_bit, &payload, cfg.ecc_bits(p));
            let (ok, end) = two_bit_scan(ecc.pattern_iter(), state, x);
            if ok * 2 != ecc.len() {
                return false;
            }
            let lead = cfg.primer_reverse.iter().take_while(|&&n| n == end.prev).count();
            end.run + lead <= x || lead == 0
        };
        let sel = choose_code_at(&seg, after_index, cfg, admit)?;
        match assemble_strand(&seg, idx, &sel.choice, cfg) {
            Ok(rec) => return Ok((sel, rec, shrinks)),
            Err(Error::CapacityExceeded { needed, cap }) if sel.choice.scheme != SchemeId::TwoBit => {
                let cut = 2 * (needed - cap);
                if cut >= seg.len() {
                    return Err(Error::CapacityExceeded { needed, cap });
                }
                seg.truncate(seg.len() - cut);
                shrinks += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Encodes `data` into strands; `name` is recorded in the manifest.
pub fn encode_bytes(data: &[u8], name: &str, cfg: &SystemConfig) -> Result<EncodedFile> {
    encode_inner(data, name, cfg, false)
}

/// As [`encode_bytes`], also returning one [`AuditRecord`] per strand.
pub fn encode_bytes_audited(data: &[u8], name: &str, cfg: &SystemConfig) -> Result<EncodedFile> {
    encode_inner(data, name, cfg, true)
}

pub fn encode_file(path: &Path, cfg: &SystemConfig) -> Result<EncodedFile> {
    let data = std::fs::read(path)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    encode_bytes(&data, &name, cfg)
}

fn encode_inner(data: &[u8], name: &str, cfg: &SystemConfig, audit: bool) -> Result<EncodedFile> {
    cfg.validate()?;
    let l = segment_bits(cfg)?;
    let total = data.len() * 8;
    if cfg.index_bits < 64 && (total as u128).div_ceil(2) > 1u128 << cfg.index_bits {
        return Err(Error::Config(format!("{} index bits cannot number the strands of this file", cfg.index_bits)));
    }
    let mut strands = Vec::with_capacity(total / l + 1);
    let mut audits = Vec::new();
    let mut pos = 0;
    while pos < total {
        let idx = strands.len() as u64;
        let seg = BitSegment::from_byte_range(data, pos, l.min(total - pos));
        let (sel, rec, shrinks) = plan_strand(&seg, idx, cfg)?;
        if audit {
            let h = crate::nucleotide::pattern_histogram(&seg)?;
            audits.push(AuditRecord {
                index: idx,
                segment_bits: seg.len(),
                histogram: h.counts(),
                dpac: sel.dpac,
                two_bit_prefix: sel.two_bit_prefix,
                vl: sel.vl,
                choice: sel.choice,
                shrinks,
                strand_nt: rec.total_nt(),
            });
        }
        pos += rec.payload_bits.len();
        strands.push(rec);
    }
    let manifest = Manifest {
        format_version: FORMAT_VERSION,
        file_name: name.to_string(),
        byte_len: data.len() as u64,
        bit_len: total as u64,
        padded_bit_len: total as u64,
        bit_order: "msb-first".into(),
        config: cfg.clone(),
        wire_ids: wire_map(),
        table_version: TABLE_VERSION,
        segment_bits: l,
        seed: cfg.seed,
        strand_count: strands.len(),
        sha256: sha256_hex(data),
        strands: strands
            .iter()
            .map(|s| ManifestStrand { index: s.index, scheme: s.scheme, bits_used: s.payload_bits.len() })
            .collect(),
    };
    Ok(EncodedFile { strands, manifest, audit: audits })
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses every strand independently; order is preserved.
pub fn parse_all<S>(seqs: &[S], cfg: &SystemConfig) -> Vec<Result<StrandRecord>>
where
    S: AsRef<[Nucleotide]> + Sync,
{
    seqs.par_iter().map(|s| parse_strand(s.as_ref(), cfg)).collect()
}

/// Rebuilds the original bytes. Strand order does not matter.
pub fn decode_strands<S>(seqs: &[S], manifest: &Manifest) -> Result<Vec<u8>>
where
    S: AsRef<[Nucleotide]> + Sync,
{
    manifest.check_compatible()?;
    let cfg = &manifest.config;
    let parsed = parse_all(seqs, cfg);
    if !parsed.is_empty()
        && parsed.iter().all(|r| matches!(r, Err(Error::ForwardPrimerMismatch | Error::ReversePrimerMismatch)))
    {
        return Err(Error::ManifestMismatch("no strand carries the manifest's primers".into()));
    }

    let n = manifest.strands.len();
    let mut slots: Vec<Option<StrandRecord>> = vec![None; n];
    let mut failures = Vec::new();
    for (position, r) in parsed.into_iter().enumerate() {
        let rec = match r {
            Ok(rec) => rec,
            Err(e) => {
                let index = match e {
                    Error::ChecksumMismatch { index } => index,
                    _ => None,
                };
                failures.push(StrandFailure { position, index, reason: e.to_string() });
                continue;
            }
        };
        let Some(entry) = manifest.strands.get(rec.index as usize) else {
            failures.push(StrandFailure {
                position,
                index: Some(rec.index),
                reason: format!("index beyond the {n} strands in the manifest"),
            });
            continue;
        };
        if entry.scheme != rec.scheme || entry.bits_used != rec.payload_bits.len() {
            return Err(Error::ManifestMismatch(format!(
                "strand {} is {} with {} bits, manifest says {} with {}",
                rec.index,
                rec.scheme,
                rec.payload_bits.len(),
                entry.scheme,
                entry.bits_used
            )));
        }
        let slot = &mut slots[rec.index as usize];
        match slot {
            Some(prev) if prev.payload_bits != rec.payload_bits => failures.push(StrandFailure {
                position,
                index: Some(rec.index),
                reason: "conflicting copies of this index".into(),
            }),
            Some(_) => {}
            None => *slot = Some(rec),
        }
    }
    if !failures.is_empty() {
        return Err(Error::CorruptStrands(failures));
    }
    let missing: Vec<u64> = slots.iter().enumerate().filter(|(_, s)| s.is_none()).map(|(i, _)| i as u64).collect();
    if !missing.is_empty() {
        return Err(Error::MissingStrands(missing));
    }

    let mut bits = BitSegment::with_capacity(manifest.padded_bit_len as usize);
    for rec in slots.iter().flatten() {
        bits.extend(&rec.payload_bits);
    }
    bits.truncate(manifest.bit_len as usize);
    let bytes = bits.to_bytes();
    if sha256_hex(&bytes) != manifest.sha256 {
        return Err(Error::ManifestMismatch("decoded bytes do not match the manifest digest".into()));
    }
    Ok(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SchemeMask;
    use crate::corpus;
    use crate::nucleotide::max_homopolymer_run;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn segment_bits_examples() {
        assert_eq!(segment_bits(&SystemConfig::default()).unwrap(), 128);
        assert_eq!(segment_bits(&SystemConfig::default().with_cap(300)).unwrap(), 336);
        assert!(matches!(segment_bits(&SystemConfig::default().with_cap(59)), Err(Error::Config(_))));
        assert_eq!(segment_bits(&SystemConfig::default().with_cap(60)).unwrap(), 2);
        let fixed = SystemConfig { segment_bits: Some(200), ..SystemConfig::default() };
        assert_eq!(segment_bits(&fixed).unwrap(), 200);
    }

    /// Worst case stays within the cap: checked against the inequality directly.
    #[test]
    fn segment_bits_is_largest_fitting() {
        for cap in 60..800 {
            let cfg = SystemConfig::default().with_cap(cap);
            let l = segment_bits(&cfg).unwrap();
            let fits = |l: usize| 1.15 * 0.625 * l as f64 <= (cap - 58) as f64 + 1e-9;
            assert!(fits(l), "cap {cap}");
            assert!(!fits(l + 2), "cap {cap}");
        }
    }

    #[test]
    fn empty_file() {
        let out = encode_bytes(&[], "empty", &SystemConfig::default()).unwrap();
        assert!(out.strands.is_empty());
        assert_eq!(out.manifest.bit_len, 0);
        assert_eq!(decode_strands::<DnaSeq>(&[], &out.manifest).unwrap(), Vec::<u8>::new());
    }

    #[test]
    fn all_zeros_reach_two_bits_per_nt() {
        let cfg = SystemConfig::default();
        let out = encode_bytes(&[0u8; 1024], "zeros", &cfg).unwrap();
        let r = density_report(&out.strands).unwrap();
        assert_eq!(r.payload_density, 2.0);
        // most strands are 2bit-code; the rest lost it to a run in the ECC filler
        let two_bit = r.scheme_usage.get(&SchemeId::TwoBit).copied().unwrap_or(0);
        assert!(two_bit * 10 >= out.strands.len() * 7, "{:?}", r.scheme_usage);
        for s in &out.strands {
            assert!(max_homopolymer_run(&s.full_seq) <= 3);
        }
        assert_eq!(decode_strands(&out.sequences(), &out.manifest).unwrap(), vec![0u8; 1024]);
    }

    #[test]
    fn round_trip_over_configs() {
        let data = corpus::mixed(40_000, 3);
        for homo in [2, 3] {
            for cap in [100, 150, 300, 700] {
                let cfg = SystemConfig::default().with_cap(cap).with_homo(homo);
                let out = encode_bytes(&data, "mixed", &cfg).unwrap();
                for s in &out.strands {
                    assert!(s.total_nt() <= cap);
                    assert!(max_homopolymer_run(&s.full_seq) <= 3);
                }
                let mut seqs = out.sequences();
                seqs.shuffle(&mut ChaCha8Rng::seed_from_u64(cap as u64));
                assert_eq!(decode_strands(&seqs, &out.manifest).unwrap(), data, "homo {homo} cap {cap}");
            }
        }
    }

    #[test]
    fn homo_two_strands_have_runs_of_at_most_two_inside_the_body() {
        let cfg = SystemConfig::default().with_homo(2);
        let out = encode_bytes(&corpus::random_bytes(20_000, 4), "r", &cfg).unwrap();
        for s in &out.strands {
            assert!(max_homopolymer_run(&s.full_seq) <= 2, "{}", s.full_seq);
        }
    }

    #[test]
    fn decode_errors() {
        let data = corpus::english_text(5_000, 1);
        let cfg = SystemConfig::default();
        let out = encode_bytes(&data, "t", &cfg).unwrap();
        let seqs = out.sequences();

        let mut missing = seqs.clone();
        missing.remove(7);
        assert!(matches!(decode_strands(&missing, &out.manifest), Err(Error::MissingStrands(v)) if v == vec![7]));

        let mut tampered = seqs.clone();
        let mut s = tampered[3].clone().into_inner();
        let pos = out.strands[3].layout.payload.start + 5;
        s[pos] = s[pos].rotate(1);
        tampered[3] = s.into();
        match decode_strands(&tampered, &out.manifest) {
            Err(Error::CorruptStrands(f)) => assert_eq!(f.len(), 1),
            other => panic!("{other:?}"),
        }

        let other = encode_bytes(&corpus::english_text(5_000, 2), "u", &cfg).unwrap();
        assert!(matches!(decode_strands(&seqs, &other.manifest), Err(Error::ManifestMismatch(_))));

        let mut wrong_primers = out.manifest.clone();
        wrong_primers.config.primer_forward = "ACACACACACACACACACAC".parse().unwrap();
        assert!(matches!(decode_strands(&seqs, &wrong_primers), Err(Error::ManifestMismatch(_))));
    }

    #[test]
    fn dpac_only_mask_never_uses_two_bit() {
        let cfg = SystemConfig::default().with_schemes(SchemeMask::DPAC_ONLY);
        let out = encode_bytes(&corpus::english_text(10_000, 5), "t", &cfg).unwrap();
        assert!(out.strands.iter().all(|s| s.scheme != SchemeId::TwoBit));
        assert_eq!(decode_strands(&out.sequences(), &out.manifest).unwrap(), corpus::english_text(10_000, 5));
    }

    #[test]
    fn encoding_is_deterministic_and_audited() {
        let data = corpus::random_bytes(3_000, 9);
        let cfg = SystemConfig::default();
        let a = encode_bytes_audited(&data, "r", &cfg).unwrap();
        let b = encode_bytes(&data, "r", &cfg).unwrap();
        assert_eq!(a.strands, b.strands);
        assert_eq!(a.manifest, b.manifest);
        assert_eq!(a.audit.len(), a.strands.len());
        for (rec, aud) in a.strands.iter().zip(&a.audit) {
            assert_eq!(aud.choice.scheme, rec.scheme);
            assert_eq!(aud.strand_nt, rec.total_nt());
        }
        let json = serde_json::to_string(&a.manifest).unwrap();
        assert_eq!(serde_json::from_str::<Manifest>(&json).unwrap(), a.manifest);
    }

    #[test]
    fn vl_leftover_moves_to_next_strand() {
        let data = corpus::english_text(20_000, 8);
        let out = encode_bytes_audited(&data, "t", &SystemConfig::default()).unwrap();
        let cut = out.audit.iter().filter(|a| a.choice.bits_used < a.segment_bits).count();
        assert!(cut > 0);
        assert_eq!(decode_strands(&out.sequences(), &out.manifest).unwrap(), data);
    }
}
