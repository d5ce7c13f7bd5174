use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::codec::SchemeId;
use crate::error::{Error, Result};
use crate::nucleotide::{max_homopolymer_run, DnaSeq, Nucleotide, Pattern};

/// Built-in forward primer: 50% GC, runs of at most two, and no 4-mer of
/// either primer has its reverse complement in either primer.
pub const DEFAULT_PRIMER_FORWARD: &str = "GACAACAAGCATACCGTGGA";
pub const DEFAULT_PRIMER_REVERSE: &str = "CGGAGATTAGAGACAGCGAA";

/// Seed for every randomized step whose seed is not given explicitly.
pub const DEFAULT_SEED: u64 = 0x00D9_D7A5;

/// Which schemes the selector may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SchemeMask {
    pub two_bit: bool,
    /// Enabled xx-codes, indexed by doubled pattern.
    pub xx: [bool; 4],
    /// Allow cutting a segment early so a 2bit-code prefix can be used.
    pub variable_length: bool,
}

impl SchemeMask {
    pub const ALL: SchemeMask = SchemeMask { two_bit: true, xx: [true; 4], variable_length: true };
    pub const DPAC_ONLY: SchemeMask = SchemeMask { two_bit: false, xx: [true; 4], variable_length: false };
    pub const ELEVEN_ONLY: SchemeMask =
        SchemeMask { two_bit: false, xx: [false, false, false, true], variable_length: false };

    pub fn allows(&self, scheme: SchemeId) -> bool {
        match scheme {
            SchemeId::TwoBit => self.two_bit,
            other => other.doubled_pattern().is_some_and(|p| self.xx[p.value() as usize]),
        }
    }
}

impl Default for SchemeMask {
    fn default() -> Self {
        Self::ALL
    }
}

impl FromStr for SchemeMask {
    type Err = Error;

    /// `all`, `dpac-only`, `11-only`, `no-vl`, or a comma list drawn from
    /// `2bit`, `00`, `01`, `10`, `11`, `vl`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "all" => return Ok(Self::ALL),
            "dpac-only" | "dpac" => return Ok(Self::DPAC_ONLY),
            "11-only" => return Ok(Self::ELEVEN_ONLY),
            "no-vl" => return Ok(SchemeMask { variable_length: false, ..Self::ALL }),
            _ => {}
        }
        let mut mask = SchemeMask { two_bit: false, xx: [false; 4], variable_length: false };
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match item {
                "2bit" => mask.two_bit = true,
                "vl" => mask.variable_length = true,
                other => {
                    let p: Pattern = other
                        .trim_end_matches("-code")
                        .parse()
                        .map_err(|_| Error::Config(format!("unknown scheme {other:?} in mask")))?;
                    mask.xx[p.value() as usize] = true;
                }
            }
        }
        Ok(mask)
    }
}

impl fmt::Display for SchemeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.two_bit {
            parts.push("2bit");
        }
        for p in Pattern::ALL {
            if self.xx[p.value() as usize] {
                parts.push(p.as_str());
            }
        }
        if self.variable_length {
            parts.push("vl");
        }
        f.write_str(&parts.join(","))
    }
}

impl Serialize for SchemeMask {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SchemeMask {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// System-wide encoding parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemConfig {
    /// Maximum strand length in nucleotides, primers included.
    pub strand_cap_nt: usize,
    /// Longest homopolymer the 2bit-code may produce (Homo-X).
    pub homo_max_run: usize,
    pub primer_forward: DnaSeq,
    pub primer_reverse: DnaSeq,
    pub index_bits: u32,
    pub ecc_overhead_ratio: f64,
    /// Fixed segment length in bits; derived from the cap when absent.
    pub segment_bits: Option<usize>,
    pub schemes: SchemeMask,
    pub seed: u64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            strand_cap_nt: 150,
            homo_max_run: 3,
            primer_forward: DEFAULT_PRIMER_FORWARD.parse().expect("valid primer"),
            primer_reverse: DEFAULT_PRIMER_REVERSE.parse().expect("valid primer"),
            index_bits: 32,
            ecc_overhead_ratio: 0.15,
            segment_bits: None,
            schemes: SchemeMask::ALL,
            seed: DEFAULT_SEED,
        }
    }
}

/// Length of the Encoding field in nucleotides.
pub const ENCODING_FIELD_NT: usize = 2;

impl SystemConfig {
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.strand_cap_nt = cap;
        self
    }

    pub fn with_homo(mut self, x: usize) -> Self {
        self.homo_max_run = x;
        self
    }

    pub fn with_schemes(mut self, mask: SchemeMask) -> Self {
        self.schemes = mask;
        self
    }

    /// Rotation seed of every strand: the last nucleotide of the forward primer.
    pub fn start_nt(&self) -> Nucleotide {
        self.primer_forward.last().unwrap_or(Nucleotide::A)
    }

    pub fn index_nt(&self) -> usize {
        (self.index_bits as usize).div_ceil(2)
    }

    /// Metadata nucleotides per strand: primers, Encoding field, and the
    /// index at a nominal 2 bits/nt.
    pub fn meta_nt(&self) -> usize {
        self.primer_forward.len() + self.primer_reverse.len() + ENCODING_FIELD_NT + self.index_nt()
    }

    /// ECC ratio in parts per million, so field sizes are exact integers.
    pub fn ecc_ppm(&self) -> u64 {
        (self.ecc_overhead_ratio * 1e6).round() as u64
    }

    /// ECC filler length for a payload: `ceil(ratio * payload_bits)`, rounded up to even.
    pub fn ecc_bits(&self, payload_bits: usize) -> usize {
        let raw = (payload_bits as u64 * self.ecc_ppm()).div_ceil(1_000_000) as usize;
        raw + raw % 2
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if !(2..=3).contains(&self.homo_max_run) {
            return fail(format!("homo_max_run must be 2 or 3, got {}", self.homo_max_run));
        }
        if !(0.0..1.0).contains(&self.ecc_overhead_ratio) {
            return fail(format!("ecc_overhead_ratio must be in [0, 1), got {}", self.ecc_overhead_ratio));
        }
        if self.index_bits == 0 || self.index_bits > 64 || !self.index_bits.is_multiple_of(2) {
            return fail(format!("index_bits must be even and in 2..=64, got {}", self.index_bits));
        }
        for (name, p) in [("forward", &self.primer_forward), ("reverse", &self.primer_reverse)] {
            if p.is_empty() {
                return fail(format!("{name} primer is empty"));
            }
            if max_homopolymer_run(p) > 2 {
                return fail(format!("{name} primer contains a homopolymer longer than 2"));
            }
        }
        if self.strand_cap_nt < self.meta_nt() + 1 {
            return fail(format!(
                "strand cap {} nt leaves no room for payload after {} nt of metadata",
                self.strand_cap_nt,
                self.meta_nt()
            ));
        }
        if !self.schemes.xx.iter().any(|&b| b) {
            return fail("at least one xx-code must be enabled".into());
        }
        if let Some(l) = self.segment_bits {
            if l < 2 || l % 2 != 0 {
                return fail(format!("segment_bits must be even and at least 2, got {l}"));
            }
        }
        Ok(())
    }
}
