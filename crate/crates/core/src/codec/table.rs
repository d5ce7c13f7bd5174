//! Per-previous-nucleotide code tables.
//!
//! Every DP-DNA code is a [`RotatingTable`]: for each previous nucleotide a
//! map from 2-bit pattern to one or two emitted nucleotides. Emissions are
//! expressed as offsets in the cyclic order `A, C, G, T`.
//!
//! The 2bit-code uses the offsets `00 -> +1`, `01 -> +3`, `10 -> +2`,
//! `11 -> +0`. An xx-code replaces pattern `xx` with the pair `(p, p+2)`,
//! where `p` is the previous nucleotide; when `xx != 11` the pattern `11`
//! takes over the offset freed by `xx`, since offset 0 marks the pair.

use std::fmt;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nucleotide::{DnaSeq, Nucleotide, Pattern};

/// Bumped whenever any table entry changes; recorded in manifests.
pub const TABLE_VERSION: u32 = 1;

/// 2bit-code offsets indexed by pattern value.
pub const TWO_BIT_OFFSETS: [u8; 4] = [1, 3, 2, 0];

/// Offset of the second nucleotide of a doubled pattern.
pub const PAIR_OFFSET: u8 = 2;

/// Identifier of an encoding scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SchemeId {
    #[serde(rename = "2bit")]
    TwoBit,
    #[serde(rename = "00-code")]
    Code00,
    #[serde(rename = "01-code")]
    Code01,
    #[serde(rename = "10-code")]
    Code10,
    #[serde(rename = "11-code")]
    Code11,
    #[serde(rename = "church")]
    Church,
    #[serde(rename = "goldman")]
    GoldmanTernary,
    #[serde(rename = "blawat")]
    BlawatFixed,
}

impl SchemeId {
    /// The five schemes a DP-DNA strand can carry.
    pub const DPDNA: [SchemeId; 5] =
        [SchemeId::TwoBit, SchemeId::Code00, SchemeId::Code01, SchemeId::Code10, SchemeId::Code11];

    pub const fn unbalanced(xx: Pattern) -> SchemeId {
        match xx {
            Pattern::P00 => SchemeId::Code00,
            Pattern::P01 => SchemeId::Code01,
            Pattern::P10 => SchemeId::Code10,
            Pattern::P11 => SchemeId::Code11,
        }
    }

    /// The doubled pattern of an xx-code.
    pub const fn doubled_pattern(self) -> Option<Pattern> {
        match self {
            SchemeId::Code00 => Some(Pattern::P00),
            SchemeId::Code01 => Some(Pattern::P01),
            SchemeId::Code10 => Some(Pattern::P10),
            SchemeId::Code11 => Some(Pattern::P11),
            _ => None,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            SchemeId::TwoBit => "2bit",
            SchemeId::Code00 => "00-code",
            SchemeId::Code01 => "01-code",
            SchemeId::Code10 => "10-code",
            SchemeId::Code11 => "11-code",
            SchemeId::Church => "church",
            SchemeId::GoldmanTernary => "goldman",
            SchemeId::BlawatFixed => "blawat",
        }
    }

    /// Code table for the five rotating DP-DNA schemes.
    pub fn table(self) -> Option<&'static RotatingTable> {
        match self {
            SchemeId::TwoBit => Some(&TABLES[0]),
            SchemeId::Code00 => Some(&TABLES[1]),
            SchemeId::Code01 => Some(&TABLES[2]),
            SchemeId::Code10 => Some(&TABLES[3]),
            SchemeId::Code11 => Some(&TABLES[4]),
            _ => None,
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

static TABLES: LazyLock<[RotatingTable; 5]> = LazyLock::new(|| {
    [
        RotatingTable::two_bit(),
        RotatingTable::unbalanced(Pattern::P00),
        RotatingTable::unbalanced(Pattern::P01),
        RotatingTable::unbalanced(Pattern::P10),
        RotatingTable::unbalanced(Pattern::P11),
    ]
});

/// What a table emits for one pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emission {
    Single(Nucleotide),
    Pair(Nucleotide, Nucleotide),
}

impl Emission {
    pub fn first(self) -> Nucleotide {
        match self {
            Emission::Single(n) | Emission::Pair(n, _) => n,
        }
    }

    pub fn last(self) -> Nucleotide {
        match self {
            Emission::Single(n) | Emission::Pair(_, n) => n,
        }
    }

    pub fn len(self) -> usize {
        match self {
            Emission::Single(_) => 1,
            Emission::Pair(..) => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotatingTable {
    scheme: SchemeId,
    /// `rows[prev][pattern]`
    rows: [[Emission; 4]; 4],
    /// `first[prev][nucleotide]`: pattern whose emission starts with `nucleotide`.
    first: [[Option<Pattern>; 4]; 4],
}

impl RotatingTable {
    pub fn two_bit() -> Self {
        Self::build(SchemeId::TwoBit, |prev, v| {
            Emission::Single(prev.rotate(TWO_BIT_OFFSETS[v.value() as usize]))
        })
    }

    pub fn unbalanced(xx: Pattern) -> Self {
        Self::build(SchemeId::unbalanced(xx), |prev, v| {
            if v == xx {
                Emission::Pair(prev, prev.rotate(PAIR_OFFSET))
            } else {
                let from = if v == Pattern::P11 { xx } else { v };
                Emission::Single(prev.rotate(TWO_BIT_OFFSETS[from.value() as usize]))
            }
        })
    }

    fn build(scheme: SchemeId, emit: impl Fn(Nucleotide, Pattern) -> Emission) -> Self {
        let mut rows = [[Emission::Single(Nucleotide::A); 4]; 4];
        let mut first = [[None; 4]; 4];
        for prev in Nucleotide::ALL {
            for v in Pattern::ALL {
                let e = emit(prev, v);
                rows[prev.index() as usize][v.value() as usize] = e;
                first[prev.index() as usize][e.first().index() as usize] = Some(v);
            }
        }
        Self { scheme, rows, first }
    }

    pub fn scheme(&self) -> SchemeId {
        self.scheme
    }

    #[inline]
    pub fn emission(&self, prev: Nucleotide, v: Pattern) -> Emission {
        self.rows[prev.index() as usize][v.value() as usize]
    }

    /// Checks row bijectivity, prefix-freeness and distinct pair letters.
    pub fn validate(&self) -> Result<(), String> {
        for prev in Nucleotide::ALL {
            let row = &self.rows[prev.index() as usize];
            let pairs: Vec<_> = row.iter().filter(|e| e.len() == 2).collect();
            if pairs.len() > 1 {
                return Err(format!("row {prev}: more than one doubled pattern"));
            }
            let mut firsts: Vec<_> = row.iter().map(|e| e.first()).collect();
            firsts.sort();
            firsts.dedup();
            if firsts.len() != 4 {
                return Err(format!("row {prev}: emissions share a first nucleotide"));
            }
            for e in row {
                if let Emission::Pair(a, b) = e {
                    if a == b {
                        return Err(format!("row {prev}: pair {a}{b} repeats a nucleotide"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Encodes patterns after `prev`, appending to `out`; returns the new previous nucleotide.
    #[inline]
    pub fn encode_into<I>(&self, patterns: I, mut prev: Nucleotide, out: &mut DnaSeq) -> Nucleotide
    where
        I: IntoIterator<Item = Pattern>,
    {
        for v in patterns {
            match self.emission(prev, v) {
                Emission::Single(n) => {
                    out.push(n);
                    prev = n;
                }
                Emission::Pair(a, b) => {
                    out.push(a);
                    out.push(b);
                    prev = b;
                }
            }
        }
        prev
    }

    /// Number of nucleotides `patterns` would occupy.
    pub fn encoded_len<I: IntoIterator<Item = Pattern>>(&self, patterns: I) -> usize {
        match self.scheme.doubled_pattern() {
            Some(xx) => patterns.into_iter().map(|v| if v == xx { 2 } else { 1 }).sum(),
            None => patterns.into_iter().count(),
        }
    }

    /// Decodes `s` after `start`, appending patterns. When `offsets` is given,
    /// the nucleotide offset of each decoded pattern is pushed to it.
    pub fn decode_into(
        &self,
        s: &[Nucleotide],
        start: Nucleotide,
        out: &mut Vec<Pattern>,
        mut offsets: Option<&mut Vec<usize>>,
    ) -> Result<Nucleotide> {
        let mut prev = start;
        let mut i = 0;
        while i < s.len() {
            let got = s[i];
            let v = self.first[prev.index() as usize][got.index() as usize]
                .ok_or(Error::InvalidTransition { pos: i, prev, got })?;
            if let Some(o) = offsets.as_deref_mut() {
                o.push(i);
            }
            match self.emission(prev, v) {
                Emission::Single(n) => {
                    prev = n;
                    i += 1;
                }
                Emission::Pair(_, b) => {
                    let second = *s.get(i + 1).ok_or(Error::DanglingPair { pos: i })?;
                    if second != b {
                        return Err(Error::BadPairSecond { pos: i + 1, expected: b, got: second });
                    }
                    prev = b;
                    i += 2;
                }
            }
            out.push(v);
        }
        Ok(prev)
    }

    /// Text dump: one row per previous nucleotide, one column per pattern.
    pub fn render(&self) -> String {
        let mut s = format!("{}\nprev |  00 |  01 |  10 |  11\n", self.scheme);
        for prev in Nucleotide::ALL {
            s.push_str(&format!("  {prev}  |"));
            for v in Pattern::ALL {
                let cell = match self.emission(prev, v) {
                    Emission::Single(n) => format!("{n}"),
                    Emission::Pair(a, b) => format!("{a}{b}"),
                };
                s.push_str(&format!(" {cell:>3} |"));
            }
            s.truncate(s.len() - 2);
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for RotatingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
