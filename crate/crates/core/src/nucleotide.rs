//! Alphabet, sequence and bit-pattern primitives.
//!
//! Nucleotides carry a fixed cyclic order `A -> C -> G -> T -> A` with
//! indices 0..=3. Every rotating table in [`crate::codec`] is expressed as an
//! offset in this order, so the order itself is part of the wire format.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the four DNA bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Nucleotide {
    A = 0,
    C = 1,
    G = 2,
    T = 3,
}

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [Nucleotide::A, Nucleotide::C, Nucleotide::G, Nucleotide::T];

    #[inline]
    pub const fn index(self) -> u8 {
        self as u8
    }

    /// Nucleotide at cyclic position `i mod 4`.
    #[inline]
    pub const fn from_index(i: u8) -> Self {
        Self::ALL[(i & 3) as usize]
    }

    /// Step `offset` positions forward in the cyclic order.
    #[inline]
    pub const fn rotate(self, offset: u8) -> Self {
        Self::from_index(self.index().wrapping_add(offset))
    }

    /// Watson-Crick partner: A<->T, C<->G.
    #[inline]
    pub const fn complement(self) -> Self {
        Self::from_index(3 - self.index())
    }

    #[inline]
    pub const fn is_gc(self) -> bool {
        matches!(self, Nucleotide::C | Nucleotide::G)
    }

    pub const fn to_char(self) -> char {
        match self {
            Nucleotide::A => 'A',
            Nucleotide::C => 'C',
            Nucleotide::G => 'G',
            Nucleotide::T => 'T',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'A' | 'a' => Some(Nucleotide::A),
            'C' | 'c' => Some(Nucleotide::C),
            'G' | 'g' => Some(Nucleotide::G),
            'T' | 't' => Some(Nucleotide::T),
            _ => None,
        }
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl TryFrom<char> for Nucleotide {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        Nucleotide::from_char(c).ok_or(Error::InvalidNucleotide(c))
    }
}

pub fn complement(n: Nucleotide) -> Nucleotide {
    n.complement()
}

/// An owned DNA sequence.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct DnaSeq(Vec<Nucleotide>);

impl DnaSeq {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn with_capacity(n: usize) -> Self {
        Self(Vec::with_capacity(n))
    }

    pub fn push(&mut self, n: Nucleotide) {
        self.0.push(n);
    }

    pub fn extend_from_slice(&mut self, other: &[Nucleotide]) {
        self.0.extend_from_slice(other);
    }

    pub fn as_slice(&self) -> &[Nucleotide] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Nucleotide> {
        self.0
    }

    pub fn last(&self) -> Option<Nucleotide> {
        self.0.last().copied()
    }

    pub fn reverse_complement(&self) -> DnaSeq {
        reverse_complement(&self.0)
    }
}

impl Deref for DnaSeq {
    type Target = [Nucleotide];

    fn deref(&self) -> &[Nucleotide] {
        &self.0
    }
}

impl AsRef<[Nucleotide]> for DnaSeq {
    fn as_ref(&self) -> &[Nucleotide] {
        &self.0
    }
}

impl From<Vec<Nucleotide>> for DnaSeq {
    fn from(v: Vec<Nucleotide>) -> Self {
        Self(v)
    }
}

impl From<&[Nucleotide]> for DnaSeq {
    fn from(v: &[Nucleotide]) -> Self {
        Self(v.to_vec())
    }
}

impl FromIterator<Nucleotide> for DnaSeq {
    fn from_iter<I: IntoIterator<Item = Nucleotide>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl Extend<Nucleotide> for DnaSeq {
    fn extend<I: IntoIterator<Item = Nucleotide>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl FromStr for DnaSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars().map(Nucleotide::try_from).collect()
    }
}

impl fmt::Display for DnaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|n| n.to_char()).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for DnaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DnaSeq(\"{self}\")")
    }
}

impl Serialize for DnaSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DnaSeq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn reverse_complement(s: &[Nucleotide]) -> DnaSeq {
    s.iter().rev().map(|n| n.complement()).collect()
}

/// Fraction of bases that are G or C.
pub fn gc_content(s: &[Nucleotide]) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    let gc = s.iter().filter(|n| n.is_gc()).count();
    Ok(gc as f64 / s.len() as f64)
}

/// Length of the longest block of identical consecutive bases (0 for empty input).
pub fn max_homopolymer_run(s: &[Nucleotide]) -> usize {
    let mut best = 0;
    let mut run = 0;
    let mut prev = None;
    for &n in s {
        if Some(n) == prev {
            run += 1;
        } else {
            run = 1;
            prev = Some(n);
        }
        best = best.max(run);
    }
    best
}

/// One of the four 2-bit patterns `00`, `01`, `10`, `11`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Pattern {
    #[serde(rename = "00")]
    P00 = 0,
    #[serde(rename = "01")]
    P01 = 1,
    #[serde(rename = "10")]
    P10 = 2,
    #[serde(rename = "11")]
    P11 = 3,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::P00, Pattern::P01, Pattern::P10, Pattern::P11];

    #[inline]
    pub const fn from_bits(hi: u8, lo: u8) -> Self {
        Self::ALL[(((hi & 1) << 1) | (lo & 1)) as usize]
    }

    #[inline]
    pub const fn value(self) -> u8 {
        self as u8
    }

    #[inline]
    pub const fn from_value(v: u8) -> Self {
        Self::ALL[(v & 3) as usize]
    }

    #[inline]
    pub const fn bits(self) -> (u8, u8) {
        ((self as u8) >> 1, (self as u8) & 1)
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            Pattern::P00 => "00",
            Pattern::P01 => "01",
            Pattern::P10 => "10",
            Pattern::P11 => "11",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "00" => Ok(Pattern::P00),
            "01" => Ok(Pattern::P01),
            "10" => Ok(Pattern::P10),
            "11" => Ok(Pattern::P11),
            _ => Err(Error::InvalidPattern(s.to_string())),
        }
    }
}

/// An ordered bit string, one bit per byte.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitSegment {
    bits: Vec<u8>,
}

impl BitSegment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self { bits: Vec::with_capacity(n) }
    }

    /// Unpacks bytes most-significant bit first.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut seg = Self::with_capacity(bytes.len() * 8);
        for &b in bytes {
            for shift in (0..8).rev() {
                seg.bits.push((b >> shift) & 1);
            }
        }
        seg
    }

    /// Extracts `len` bits starting at bit `start` of an MSB-first byte buffer.
    /// Bits past the end of the buffer read as zero.
    pub fn from_byte_range(bytes: &[u8], start: usize, len: usize) -> Self {
        let mut seg = Self::with_capacity(len);
        for pos in start..start + len {
            let byte = bytes.get(pos / 8).copied().unwrap_or(0);
            seg.bits.push((byte >> (7 - pos % 8)) & 1);
        }
        seg
    }

    pub fn from_patterns(patterns: &[Pattern]) -> Self {
        let mut seg = Self::with_capacity(patterns.len() * 2);
        for &p in patterns {
            seg.push_pattern(p);
        }
        seg
    }

    /// Packs MSB first; a trailing partial byte is zero-filled.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.bits
            .chunks(8)
            .map(|chunk| chunk.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (b << (7 - i))))
            .collect()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> Option<u8> {
        self.bits.get(i).copied()
    }

    #[inline]
    pub fn push(&mut self, bit: u8) {
        self.bits.push(bit & 1);
    }

    #[inline]
    pub fn push_pattern(&mut self, p: Pattern) {
        let (hi, lo) = p.bits();
        self.bits.push(hi);
        self.bits.push(lo);
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_uint(&mut self, value: u64, width: u32) {
        for shift in (0..width).rev() {
            self.bits.push(((value >> shift) & 1) as u8);
        }
    }

    /// Reads `width` bits starting at `start` as an unsigned integer.
    pub fn read_uint(&self, start: usize, width: u32) -> u64 {
        self.bits[start..start + width as usize]
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn extend(&mut self, other: &BitSegment) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> BitSegment {
        BitSegment { bits: self.bits[range].to_vec() }
    }

    pub fn truncate(&mut self, len: usize) {
        self.bits.truncate(len);
    }

    pub fn as_bits(&self) -> &[u8] {
        &self.bits
    }

    /// Non-overlapping 2-bit windows, left to right. Errors on odd length.
    pub fn patterns(&self) -> Result<Vec<Pattern>> {
        if !self.bits.len().is_multiple_of(2) {
            return Err(Error::OddBitLength(self.bits.len()));
        }
        Ok(self.pattern_iter().collect())
    }

    /// Pattern iterator; a dangling final bit is ignored.
    pub fn pattern_iter(&self) -> impl Iterator<Item = Pattern> + '_ {
        self.bits.chunks_exact(2).map(|c| Pattern::from_bits(c[0], c[1]))
    }
}

impl FromStr for BitSegment {
    type Err = Error;

    /// Parses `0`/`1` characters; spaces and underscores are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut seg = BitSegment::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => seg.push(0),
                '1' => seg.push(1),
                ' ' | '_' => {}
                other => return Err(Error::InvalidBit(other)),
            }
        }
        Ok(seg)
    }
}

impl fmt::Display for BitSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSegment(\"{self}\")")
    }
}

/// Counts of the four 2-bit patterns in a segment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternHistogram {
    pub c00: u64,
    pub c01: u64,
    pub c10: u64,
    pub c11: u64,
}

impl PatternHistogram {
    pub fn from_counts(counts: [u64; 4]) -> Self {
        Self { c00: counts[0], c01: counts[1], c10: counts[2], c11: counts[3] }
    }

    pub fn counts(&self) -> [u64; 4] {
        [self.c00, self.c01, self.c10, self.c11]
    }

    pub fn count(&self, p: Pattern) -> u64 {
        self.counts()[p.value() as usize]
    }

    pub fn total(&self) -> u64 {
        self.c00 + self.c01 + self.c10 + self.c11
    }

    /// Share of `p` among all patterns; 0 for an empty histogram.
    pub fn ratio(&self, p: Pattern) -> f64 {
        match self.total() {
            0 => 0.0,
            t => self.count(p) as f64 / t as f64,
        }
    }

    pub fn add(&mut self, p: Pattern) {
        match p {
            Pattern::P00 => self.c00 += 1,
            Pattern::P01 => self.c01 += 1,
            Pattern::P10 => self.c10 += 1,
            Pattern::P11 => self.c11 += 1,
        }
    }

    pub fn from_patterns<I: IntoIterator<Item = Pattern>>(patterns: I) -> Self {
        let mut h = Self::default();
        for p in patterns {
            h.add(p);
        }
        h
    }
}

pub fn pattern_histogram(b: &BitSegment) -> Result<PatternHistogram> {
    if !b.len().is_multiple_of(2) {
        return Err(Error::OddBitLength(b.len()));
    }
    Ok(PatternHistogram::from_patterns(b.pattern_iter()))
}
