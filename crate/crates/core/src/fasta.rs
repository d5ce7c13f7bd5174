//! FASTA reading and writing.
//!
//! Encoded strands are written one per record with the header
//! `>index|scheme-id-bits|length`, e.g. `>17|0101|148`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::nucleotide::{DnaSeq, Nucleotide};
use crate::strand::{SchemeWireId, StrandRecord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastaRecord {
    /// Header text without the leading `>`.
    pub header: String,
    pub seq: DnaSeq,
}

impl AsRef<[Nucleotide]> for FastaRecord {
    fn as_ref(&self) -> &[Nucleotide] {
        &self.seq
    }
}

pub fn strand_header(rec: &StrandRecord) -> String {
    format!("{}|{}|{}", rec.index, rec.wire_id(), rec.total_nt())
}

/// Splits a strand header into index, scheme id and length.
pub fn parse_strand_header(header: &str) -> Result<(u64, SchemeWireId, usize)> {
    let bad = |msg: &str| Error::Fasta { line: 0, msg: format!("{msg}: {header:?}") };
    let mut parts = header.split('|');
    let (Some(idx), Some(id), Some(len), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
        return Err(bad("expected index|scheme|length"));
    };
    let idx = idx.trim().parse().map_err(|_| bad("bad index"))?;
    let raw = u8::from_str_radix(id.trim(), 2).map_err(|_| bad("bad scheme id"))?;
    let len = len.trim().parse().map_err(|_| bad("bad length"))?;
    Ok((idx, SchemeWireId::new(raw)?, len))
}

pub fn write_strands<W: Write>(mut w: W, strands: &[StrandRecord]) -> std::io::Result<()> {
    for s in strands {
        writeln!(w, ">{}", strand_header(s))?;
        writeln!(w, "{}", s.full_seq)?;
    }
    w.flush()
}

pub fn write_fasta<W: Write>(mut w: W, records: &[FastaRecord]) -> std::io::Result<()> {
    for r in records {
        writeln!(w, ">{}", r.header)?;
        writeln!(w, "{}", r.seq)?;
    }
    w.flush()
}

/// Reads records; sequences may span lines and are case-insensitive.
/// Blank lines and `;` comments are skipped.
pub fn read_fasta<R: BufRead>(r: R) -> Result<Vec<FastaRecord>> {
    let mut out: Vec<FastaRecord> = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with(';') {
            continue;
        }
        if let Some(h) = line.strip_prefix('>') {
            out.push(FastaRecord { header: h.trim().to_string(), seq: DnaSeq::new() });
            continue;
        }
        let Some(rec) = out.last_mut() else {
            return Err(Error::Fasta { line: i + 1, msg: "sequence before the first header".into() });
        };
        for c in line.chars() {
            let n = Nucleotide::from_char(c)
                .ok_or_else(|| Error::Fasta { line: i + 1, msg: format!("invalid nucleotide {c:?}") })?;
            rec.seq.push(n);
        }
    }
    Ok(out)
}

/// Reads a primer pair: either two FASTA records or two plain sequence
/// lines (`#` comments allowed).
pub fn read_primers(text: &str) -> Result<(DnaSeq, DnaSeq)> {
    let seqs: Vec<DnaSeq> = if text.trim_start().starts_with('>') {
        read_fasta(text.as_bytes())?.into_iter().map(|r| r.seq).collect()
    } else {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.parse())
            .collect::<Result<_>>()?
    };
    match <[DnaSeq; 2]>::try_from(seqs) {
        Ok([f, r]) => Ok((f, r)),
        Err(v) => Err(Error::Config(format!("primer file must hold exactly two sequences, found {}", v.len()))),
    }
}
