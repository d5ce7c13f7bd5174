//! Strand assembly and parsing.
//!
//! Layout, left to right:
//!
//! ```text
//! primerF | Encoding (2 nt) | index | payload | ECC | primerR
//! ```
//!
//! The last nucleotide of the forward primer seeds the rotation. The
//! Encoding field is a 4-bit scheme id rendered with the 11-code; index,
//! payload and ECC filler then form one rotation stream in the scheme the
//! Encoding field names. No state is shared between strands.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::codec::{Emission, SchemeId};
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::nucleotide::{BitSegment, DnaSeq, Nucleotide, Pattern};
use crate::selector::CodeChoice;

/// 4-bit scheme identifier carried in the Encoding field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchemeWireId(u8);

const WIRE_IDS: [(SchemeId, u8); 5] = [
    (SchemeId::TwoBit, 0b0000),
    (SchemeId::Code00, 0b0001),
    (SchemeId::Code01, 0b0010),
    (SchemeId::Code10, 0b0100),
    (SchemeId::Code11, 0b0101),
];

impl SchemeWireId {
    pub fn new(raw: u8) -> Result<Self> {
        Self::scheme_of(raw).map(|_| Self(raw)).ok_or(Error::UnknownScheme(raw))
    }

    pub fn of(scheme: SchemeId) -> Result<Self> {
        WIRE_IDS
            .iter()
            .find(|(s, _)| *s == scheme)
            .map(|&(_, w)| Self(w))
            .ok_or_else(|| Error::Config(format!("{scheme} has no wire id")))
    }

    fn scheme_of(raw: u8) -> Option<SchemeId> {
        WIRE_IDS.iter().find(|(_, w)| *w == raw).map(|&(s, _)| s)
    }

    pub fn raw(self) -> u8 {
        self.0
    }

    pub fn scheme(self) -> SchemeId {
        Self::scheme_of(self.0).expect("validated on construction")
    }

    pub fn patterns(self) -> [Pattern; 2] {
        [Pattern::from_value(self.0 >> 2), Pattern::from_value(self.0)]
    }

    /// The full scheme ↔ id table, for manifests.
    pub fn table() -> Vec<(SchemeId, String)> {
        WIRE_IDS.iter().map(|&(s, w)| (s, format!("{w:04b}"))).collect()
    }
}

impl std::fmt::Display for SchemeWireId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:04b}", self.0)
    }
}

/// Renders the Encoding field with the 11-code, rotating from `start`.
pub fn encode_scheme_field(id: SchemeWireId, start: Nucleotide) -> DnaSeq {
    let mut out = DnaSeq::with_capacity(2);
    eleven_code().encode_into(id.patterns(), start, &mut out);
    out
}

/// Reads the Encoding field from the start of `body`; returns the id and
/// the number of nucleotides it occupied.
pub fn decode_scheme_field(body: &[Nucleotide], start: Nucleotide) -> Result<(SchemeWireId, usize)> {
    let table = eleven_code();
    let mut prev = start;
    let mut pos = 0;
    let mut raw = 0u8;
    for _ in 0..2 {
        let got = *body.get(pos).ok_or(Error::EmptyPayload)?;
        let v = Pattern::ALL
            .into_iter()
            .find(|&v| table.emission(prev, v).first() == got)
            .ok_or(Error::InvalidTransition { pos, prev, got })?;
        raw = (raw << 2) | v.value();
        match table.emission(prev, v) {
            Emission::Single(n) => {
                prev = n;
                pos += 1;
            }
            Emission::Pair(_, b) => {
                prev = b;
                pos += 2;
            }
        }
    }
    Ok((SchemeWireId::new(raw)?, pos))
}

fn eleven_code() -> &'static crate::codec::RotatingTable {
    SchemeId::Code11.table().expect("11-code table")
}

/// Integrity filler: CRC-32 of `index ‖ scheme id ‖ payload`, repeated or
/// truncated to `len` bits.
pub fn ecc_fill(index: u64, index_bits: u32, scheme: SchemeWireId, payload: &BitSegment, len: usize) -> BitSegment {
    let mut out = BitSegment::with_capacity(len);
    if len == 0 {
        return out;
    }
    let mut protected = BitSegment::with_capacity(index_bits as usize + 4 + payload.len());
    protected.push_uint(index, index_bits);
    protected.push_uint(scheme.raw() as u64, 4);
    protected.extend(payload);
    let mut hasher = crc32fast::Hasher::new();
    hasher.update(&(protected.len() as u64).to_le_bytes());
    hasher.update(&protected.to_bytes());
    let crc = hasher.finalize();
    for i in 0..len {
        out.push(((crc >> (31 - (i % 32))) & 1) as u8);
    }
    out
}

/// Recomputes the filler of a parsed strand and compares it.
pub fn ecc_verify(record: &StrandRecord, ecc: &BitSegment, cfg: &SystemConfig) -> bool {
    let Ok(id) = SchemeWireId::of(record.scheme) else {
        return false;
    };
    ecc_fill(record.index, cfg.index_bits, id, &record.payload_bits, ecc.len()) == *ecc
}

/// Nucleotide ranges of each field within a strand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldLayout {
    pub primer_forward: Range<usize>,
    pub encoding: Range<usize>,
    pub index: Range<usize>,
    pub payload: Range<usize>,
    pub ecc: Range<usize>,
    pub primer_reverse: Range<usize>,
}

/// One assembled (or parsed) strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandRecord {
    pub index: u64,
    pub scheme: SchemeId,
    pub payload_bits: BitSegment,
    pub full_seq: DnaSeq,
    pub layout: FieldLayout,
}

impl StrandRecord {
    pub fn payload_nt(&self) -> usize {
        self.layout.payload.len()
    }

    pub fn total_nt(&self) -> usize {
        self.full_seq.len()
    }

    pub fn wire_id(&self) -> SchemeWireId {
        SchemeWireId::of(self.scheme).expect("strands carry DP-DNA schemes")
    }
}

/// Assembles the strand carrying the first `choice.bits_used` bits of `seg`.
pub fn assemble_strand(seg: &BitSegment, idx: u64, choice: &CodeChoice, cfg: &SystemConfig) -> Result<StrandRecord> {
    if choice.bits_used == 0 {
        return Err(Error::EmptyPayload);
    }
    if !choice.bits_used.is_multiple_of(2) {
        return Err(Error::OddBitLength(choice.bits_used));
    }
    if choice.bits_used > seg.len() {
        return Err(Error::Config(format!(
            "choice uses {} bits of a {}-bit segment",
            choice.bits_used,
            seg.len()
        )));
    }
    if cfg.index_bits < 64 && idx >> cfg.index_bits != 0 {
        return Err(Error::Config(format!("index {idx} does not fit in {} bits", cfg.index_bits)));
    }
    let wire = SchemeWireId::of(choice.scheme)?;
    let table = choice.scheme.table().expect("DP-DNA schemes have tables");
    let payload = seg.slice(0..choice.bits_used);
    let ecc = ecc_fill(idx, cfg.index_bits, wire, &payload, cfg.ecc_bits(payload.len()));

    let mut full = DnaSeq::with_capacity(cfg.strand_cap_nt);
    full.extend_from_slice(&cfg.primer_forward);
    let pf_end = full.len();
    let enc = encode_scheme_field(wire, cfg.start_nt());
    full.extend_from_slice(&enc);
    let enc_end = full.len();

    let mut index_bits = BitSegment::with_capacity(cfg.index_bits as usize);
    index_bits.push_uint(idx, cfg.index_bits);
    let mut prev = enc.last().expect("two nucleotides");
    prev = table.encode_into(index_bits.pattern_iter(), prev, &mut full);
    let index_end = full.len();
    prev = table.encode_into(payload.pattern_iter(), prev, &mut full);
    let payload_end = full.len();
    table.encode_into(ecc.pattern_iter(), prev, &mut full);
    let ecc_end = full.len();
    full.extend_from_slice(&cfg.primer_reverse);

    if full.len() > cfg.strand_cap_nt {
        return Err(Error::CapacityExceeded { needed: full.len(), cap: cfg.strand_cap_nt });
    }
    Ok(StrandRecord {
        index: idx,
        scheme: choice.scheme,
        payload_bits: payload,
        layout: FieldLayout {
            primer_forward: 0..pf_end,
            encoding: pf_end..enc_end,
            index: enc_end..index_end,
            payload: index_end..payload_end,
            ecc: payload_end..ecc_end,
            primer_reverse: ecc_end..full.len(),
        },
        full_seq: full,
    })
}

/// Payload length `p` (even, at least 2) with `p + ecc_bits(p) == bits`.
/// The left side is strictly increasing in `p`, so the solution is unique.
pub fn solve_payload_split(bits: usize, cfg: &SystemConfig) -> Option<usize> {
    let (mut lo, mut hi) = (1usize, bits / 2);
    while lo <= hi {
        let mid = lo + (hi - lo) / 2;
        let p = 2 * mid;
        let total = p + cfg.ecc_bits(p);
        match total.cmp(&bits) {
            std::cmp::Ordering::Equal => return Some(p),
            std::cmp::Ordering::Less => lo = mid + 1,
            std::cmp::Ordering::Greater => hi = mid - 1,
        }
    }
    None
}

/// Parses and verifies one strand.
pub fn parse_strand(s: &[Nucleotide], cfg: &SystemConfig) -> Result<StrandRecord> {
    let (pf, pr) = (cfg.primer_forward.len(), cfg.primer_reverse.len());
    if s.len() < pf || s[..pf] != cfg.primer_forward[..] {
        return Err(Error::ForwardPrimerMismatch);
    }
    if s.len() < pf + pr || s[s.len() - pr..] != cfg.primer_reverse[..] {
        return Err(Error::ReversePrimerMismatch);
    }
    let body = &s[pf..s.len() - pr];
    let (wire, enc_len) = decode_scheme_field(body, cfg.start_nt())?;
    let scheme = wire.scheme();
    let table = scheme.table().expect("DP-DNA schemes have tables");

    let mut patterns = Vec::with_capacity(body.len());
    let mut offsets = Vec::with_capacity(body.len());
    table.decode_into(&body[enc_len..], body[enc_len - 1], &mut patterns, Some(&mut offsets))?;
    let decoded = BitSegment::from_patterns(&patterns);

    let index_bits = cfg.index_bits as usize;
    let after_index = decoded.len().checked_sub(index_bits).ok_or(Error::NoPayloadSplit(decoded.len()))?;
    let payload_len = solve_payload_split(after_index, cfg).ok_or(Error::NoPayloadSplit(decoded.len()))?;

    let index = decoded.read_uint(0, cfg.index_bits);
    let payload = decoded.slice(index_bits..index_bits + payload_len);
    let ecc = decoded.slice(index_bits + payload_len..decoded.len());

    let base = pf + enc_len;
    let nt_at = |pattern: usize| base + offsets.get(pattern).copied().unwrap_or(body.len() - enc_len);
    let index_end = nt_at(index_bits / 2);
    let payload_end = nt_at((index_bits + payload_len) / 2);
    let record = StrandRecord {
        index,
        scheme,
        payload_bits: payload,
        full_seq: DnaSeq::from(s),
        layout: FieldLayout {
            primer_forward: 0..pf,
            encoding: pf..base,
            index: base..index_end,
            payload: index_end..payload_end,
            ecc: payload_end..s.len() - pr,
            primer_reverse: s.len() - pr..s.len(),
        },
    };
    if !ecc_verify(&record, &ecc, cfg) {
        return Err(Error::ChecksumMismatch { index: Some(index) });
    }
    Ok(record)
}
