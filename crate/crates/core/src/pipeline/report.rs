//! Density metrics, baseline comparison, length sweeps and pattern-ratio
//! histograms.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codec::{blawat_density, church_encode, goldman_encode, SchemeId};
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::nucleotide::{pattern_histogram, BitSegment};
use crate::strand::StrandRecord;

use super::encode_bytes;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub strands: usize,
    pub payload_bits: u64,
    pub payload_nt: u64,
    /// All strand nucleotides: primers, Encoding field, index, payload and ECC.
    pub total_nt: u64,
    pub payload_density: f64,
    pub overall_density: f64,
    pub scheme_usage: BTreeMap<SchemeId, usize>,
}

pub fn density_report(strands: &[StrandRecord]) -> Result<DensityReport> {
    if strands.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut usage = BTreeMap::new();
    let (mut bits, mut payload_nt, mut total_nt) = (0u64, 0u64, 0u64);
    for s in strands {
        bits += s.payload_bits.len() as u64;
        payload_nt += s.payload_nt() as u64;
        total_nt += s.total_nt() as u64;
        *usage.entry(s.scheme).or_insert(0) += 1;
    }
    Ok(DensityReport {
        strands: strands.len(),
        payload_bits: bits,
        payload_nt,
        total_nt,
        payload_density: bits as f64 / payload_nt as f64,
        overall_density: bits as f64 / total_nt as f64,
        scheme_usage: usage,
    })
}

impl fmt::Display for DensityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} strands, payload {:.4} bits/nt, overall {:.4} bits/nt",
            self.strands, self.payload_density, self.overall_density
        )?;
        let usage: Vec<String> = self.scheme_usage.iter().map(|(s, n)| format!("{s}={n}")).collect();
        write!(f, " [{}]", usage.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineRow {
    pub scheme: String,
    pub payload_density: f64,
    pub overall_density: f64,
    pub strands: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineTable {
    pub bits: u64,
    pub strand_cap_nt: usize,
    pub rows: Vec<BaselineRow>,
}

impl BaselineTable {
    pub fn row(&self, scheme: &str) -> Option<&BaselineRow> {
        self.rows.iter().find(|r| r.scheme == scheme)
    }
}

impl fmt::Display for BaselineTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<18} {:>9} {:>9} {:>9}", "scheme", "payload", "overall", "strands")?;
        for r in &self.rows {
            writeln!(f, "{:<18} {:>9.4} {:>9.4} {:>9}", r.scheme, r.payload_density, r.overall_density, r.strands)?;
        }
        Ok(())
    }
}

/// Largest payload a fixed-rate baseline strand can carry: primers, then
/// index, payload and ECC all written at `rate` bits/nt.
pub fn baseline_strand_bits(rate: f64, cfg: &SystemConfig) -> Result<usize> {
    let primers = cfg.primer_forward.len() + cfg.primer_reverse.len();
    let fits = |b: usize| {
        let body = (cfg.index_bits as usize + b + cfg.ecc_bits(b)) as f64 / rate;
        primers as f64 + body.ceil() <= cfg.strand_cap_nt as f64
    };
    if !fits(1) {
        return Err(Error::Config(format!("cap {} nt fits no baseline payload", cfg.strand_cap_nt)));
    }
    let (mut lo, mut hi) = (1usize, cfg.strand_cap_nt * 2);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// Overall density of a baseline that packs `bits` into strands of
/// [`baseline_strand_bits`], given the measured payload nucleotides.
fn baseline_row(name: &str, bits: u64, payload_nt: u64, cfg: &SystemConfig) -> Result<BaselineRow> {
    let rate = bits as f64 / payload_nt as f64;
    let per = baseline_strand_bits(rate, cfg)? as u64;
    let n = bits.div_ceil(per);
    let ecc: u64 = (0..n).map(|i| cfg.ecc_bits(per.min(bits - i * per) as usize) as u64).sum();
    let primers = (cfg.primer_forward.len() + cfg.primer_reverse.len()) as f64;
    let total = n as f64 * primers + payload_nt as f64 + (n * cfg.index_bits as u64 + ecc) as f64 / rate;
    Ok(BaselineRow { scheme: name.into(), payload_density: rate, overall_density: bits as f64 / total, strands: n as usize })
}

const CHUNK: usize = 1 << 20;

/// Runs Church, rotating ternary, the 1.6 bits/nt accounting baseline, and
/// the selector at Homo-2 and Homo-3 over the same bytes.
pub fn baseline_compare(data: &[u8], cfg: &SystemConfig) -> Result<BaselineTable> {
    if data.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let bits = data.len() as u64 * 8;
    let start = cfg.start_nt();
    let church_nt: u64 = data.chunks(CHUNK).map(|c| church_encode(&BitSegment::from_bytes(c)).len() as u64).sum();
    let goldman_nt: u64 = data.chunks(CHUNK).map(|c| goldman_encode(c, start).len() as u64).sum();
    let mut rows = vec![
        baseline_row("church", bits, church_nt, cfg)?,
        baseline_row("goldman", bits, goldman_nt, cfg)?,
        baseline_row("blawat", bits, blawat_density(bits), cfg)?,
    ];
    for homo in [2, 3] {
        let out = encode_bytes(data, "", &cfg.clone().with_homo(homo))?;
        let r = density_report(&out.strands)?;
        rows.push(BaselineRow {
            scheme: format!("dp-dna-homo{homo}"),
            payload_density: r.payload_density,
            overall_density: r.overall_density,
            strands: r.strands,
        });
    }
    Ok(BaselineTable { bits, strand_cap_nt: cfg.strand_cap_nt, rows })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub cap: usize,
    pub segment_bits: usize,
    pub report: DensityReport,
}

/// Re-encodes `data` at each cap; the segment length follows the cap.
pub fn length_sweep(data: &[u8], cfg: &SystemConfig, caps: &[usize]) -> Result<Vec<SweepRow>> {
    if data.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    caps.par_iter()
        .map(|&cap| {
            let c = SystemConfig { segment_bits: None, ..cfg.clone().with_cap(cap) };
            let out = encode_bytes(data, "", &c)?;
            Ok(SweepRow { cap, segment_bits: out.manifest.segment_bits, report: density_report(&out.strands)? })
        })
        .collect()
}

/// Ratio bins for [`PatternReport`]; the last bin includes 1.0.
pub const RATIO_BINS: [(f64, f64); 9] =
    [(0.0, 0.1), (0.1, 0.2), (0.2, 0.22), (0.22, 0.24), (0.24, 0.26), (0.26, 0.28), (0.28, 0.3), (0.3, 0.4), (0.4, 1.0)];

/// Share of segments whose ratio of each pattern falls in each bin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternReport {
    pub segment_bits: usize,
    pub segments: usize,
    /// Pattern ratios over the whole input, ordered 00, 01, 10, 11.
    pub overall: [f64; 4],
    /// One row per entry of [`RATIO_BINS`].
    pub bins: Vec<[f64; 4]>,
}

pub fn pattern_report(data: &[u8], segment_bits: usize) -> Result<PatternReport> {
    if segment_bits < 2 || !segment_bits.is_multiple_of(2) {
        return Err(Error::Config(format!("segment length must be even and at least 2, got {segment_bits}")));
    }
    let total = data.len() * 8;
    if total == 0 {
        return Err(Error::EmptyCorpus);
    }
    let mut counts = vec![[0usize; 4]; RATIO_BINS.len()];
    let mut overall = [0u64; 4];
    let mut segments = 0;
    for start in (0..total).step_by(segment_bits) {
        let seg = BitSegment::from_byte_range(data, start, segment_bits.min(total - start));
        let h = pattern_histogram(&seg)?;
        for (p, c) in h.counts().into_iter().enumerate() {
            overall[p] += c;
            let ratio = c as f64 / h.total() as f64;
            let bin = RATIO_BINS.iter().position(|&(_, hi)| ratio < hi).unwrap_or(RATIO_BINS.len() - 1);
            counts[bin][p] += 1;
        }
        segments += 1;
    }
    let all: u64 = overall.iter().sum();
    Ok(PatternReport {
        segment_bits,
        segments,
        overall: overall.map(|c| c as f64 / all as f64),
        bins: counts.iter().map(|row| row.map(|c| c as f64 / segments as f64)).collect(),
    })
}

impl fmt::Display for PatternReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} segments of {} bits", self.segments, self.segment_bits)?;
        writeln!(f, "{:<12} {:>7} {:>7} {:>7} {:>7}", "", "'00'", "'01'", "'10'", "'11'")?;
        let pct = |row: &[f64; 4]| row.map(|v| format!("{:.1}%", v * 100.0));
        let o = pct(&self.overall);
        writeln!(f, "{:<12} {:>7} {:>7} {:>7} {:>7}", "overall", o[0], o[1], o[2], o[3])?;
        for (i, ((lo, hi), row)) in RATIO_BINS.iter().zip(&self.bins).enumerate() {
            let close = if i + 1 == RATIO_BINS.len() { ']' } else { ')' };
            let r = pct(row);
            let label = format!("[{lo}, {hi}{close}");
            writeln!(f, "{label:<12} {:>7} {:>7} {:>7} {:>7}", r[0], r[1], r[2], r[3])?;
        }
        Ok(())
    }
}
