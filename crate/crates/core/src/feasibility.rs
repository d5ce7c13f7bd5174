//! Design-rule checks: homopolymers, GC content, hairpins and length.
//!
//! Each violated rule adds one to a strand's score, so a score lies in 0..=4.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nucleotide::{max_homopolymer_run, Nucleotide};

/// Thresholds for the four rules.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleSet {
    /// Longest allowed homopolymer run.
    pub homopolymer_max: usize,
    pub gc_low: f64,
    pub gc_high: f64,
    /// Shortest inverted repeat counted as a hairpin stem. Random sequence
    /// holds about n²/2 / 4^stem_min inverted-repeat pairs, so short stems
    /// flag nearly every strand; 13 flags well under 1% of 300 nt strands.
    pub stem_min: usize,
    /// Shortest gap between the two arms of a stem.
    pub loop_min: usize,
    pub length_max: usize,
}

impl Default for RuleSet {
    fn default() -> Self {
        Self { homopolymer_max: 3, gc_low: 0.40, gc_high: 0.60, stem_min: 13, loop_min: 3, length_max: 1000 }
    }
}

impl RuleSet {
    pub fn validate(&self) -> Result<()> {
        if self.homopolymer_max == 0 || self.stem_min == 0 || self.length_max == 0 {
            return Err(Error::Config("rule thresholds must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.gc_low) || !(0.0..=1.0).contains(&self.gc_high) || self.gc_low >= self.gc_high {
            return Err(Error::Config(format!("need 0 <= gc_low < gc_high <= 1, got {} and {}", self.gc_low, self.gc_high)));
        }
        Ok(())
    }
}

/// Per-strand result.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrandScore {
    pub homopolymer: bool,
    pub gc: bool,
    pub hairpin: bool,
    pub length: bool,
    pub gc_content: f64,
    pub max_run: usize,
}

impl StrandScore {
    pub fn score(&self) -> u8 {
        [self.homopolymer, self.gc, self.hairpin, self.length].iter().filter(|&&v| v).count() as u8
    }
}

/// GC is measured over the whole strand, primers included. An empty strand
/// counts as 0% GC.
pub fn score_strand(s: &[Nucleotide], rules: &RuleSet) -> StrandScore {
    let gc_content = if s.is_empty() { 0.0 } else { s.iter().filter(|n| n.is_gc()).count() as f64 / s.len() as f64 };
    let max_run = max_homopolymer_run(s);
    StrandScore {
        homopolymer: max_run > rules.homopolymer_max,
        gc: gc_content < rules.gc_low || gc_content > rules.gc_high,
        hairpin: detect_hairpin(s, rules.stem_min, rules.loop_min),
        length: s.len() > rules.length_max,
        gc_content,
        max_run,
    }
}

/// True when some substring of length `stem_min` or more has its reverse
/// complement later in `s`, at least `loop_min` nucleotides past its end.
///
/// Any longer stem contains a stem of exactly `stem_min` with the same gap,
/// so only `stem_min`-mers are compared. A `stem_min` of 0 behaves as 1.
pub fn detect_hairpin(s: &[Nucleotide], stem_min: usize, loop_min: usize) -> bool {
    let k = stem_min.max(1);
    if s.len() < 2 * k + loop_min {
        return false;
    }
    if k > 32 {
        return detect_hairpin_slices(s, k, loop_min);
    }
    let mask = if k == 32 { u64::MAX } else { (1u64 << (2 * k)) - 1 };
    let n = s.len() - k + 1;
    let mut fwd = Vec::with_capacity(n);
    let mut rc = Vec::with_capacity(n);
    let (mut f, mut r) = (0u64, 0u64);
    for (pos, nt) in s.iter().enumerate() {
        let v = nt.index() as u64;
        f = ((f << 2) | v) & mask;
        r = (r >> 2) | ((3 - v) << (2 * (k - 1)));
        if pos + 1 >= k {
            fwd.push(f);
            rc.push(r);
        }
    }
    // arm one at i, arm two at j >= i + k + loop_min
    let shift = k + loop_min;
    let mut seen = HashSet::with_capacity(n);
    for j in shift..n {
        seen.insert(rc[j - shift]);
        if seen.contains(&fwd[j]) {
            return true;
        }
    }
    false
}

fn detect_hairpin_slices(s: &[Nucleotide], k: usize, loop_min: usize) -> bool {
    let shift = k + loop_min;
    let mut seen: HashSet<Vec<Nucleotide>> = HashSet::new();
    for j in shift..=s.len() - k {
        let i = j - shift;
        seen.insert(s[i..i + k].iter().rev().map(|n| n.complement()).collect());
        if seen.contains(&s[j..j + k]) {
            return true;
        }
    }
    false
}

/// Aggregate rule results over a strand set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub rules: RuleSet,
    pub strands: usize,
    pub mean_gc: f64,
    pub gc_violations: usize,
    pub homopolymer_violation: bool,
    pub homopolymer_violations: usize,
    pub max_run: usize,
    pub length_violation: bool,
    pub length_violations: usize,
    pub hairpins: usize,
    pub hairpin_ratio: f64,
    pub average_score: f64,
    /// Number of strands with each score 0..=4.
    pub score_histogram: [usize; 5],
}

#[derive(Default)]
struct Acc {
    n: usize,
    gc_sum: f64,
    gc: usize,
    homo: usize,
    max_run: usize,
    length: usize,
    hairpin: usize,
    hist: [usize; 5],
}

impl Acc {
    fn add(mut self, s: &StrandScore) -> Self {
        self.n += 1;
        self.gc_sum += s.gc_content;
        self.gc += s.gc as usize;
        self.homo += s.homopolymer as usize;
        self.max_run = self.max_run.max(s.max_run);
        self.length += s.length as usize;
        self.hairpin += s.hairpin as usize;
        self.hist[s.score() as usize] += 1;
        self
    }

    fn merge(mut self, o: Acc) -> Self {
        self.n += o.n;
        self.gc_sum += o.gc_sum;
        self.gc += o.gc;
        self.homo += o.homo;
        self.max_run = self.max_run.max(o.max_run);
        self.length += o.length;
        self.hairpin += o.hairpin;
        for (a, b) in self.hist.iter_mut().zip(o.hist) {
            *a += b;
        }
        self
    }
}

/// Scores every strand and aggregates. Errors on an empty set.
pub fn corpus_report<S>(strands: &[S], rules: &RuleSet) -> Result<FeasibilityReport>
where
    S: AsRef<[Nucleotide]> + Sync,
{
    if strands.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let acc = strands
        .par_iter()
        .fold(Acc::default, |acc, s| acc.add(&score_strand(s.as_ref(), rules)))
        .reduce(Acc::default, Acc::merge);
    let n = acc.n as f64;
    let total_score: usize = acc.hist.iter().enumerate().map(|(score, c)| score * c).sum();
    Ok(FeasibilityReport {
        rules: *rules,
        strands: acc.n,
        mean_gc: acc.gc_sum / n,
        gc_violations: acc.gc,
        homopolymer_violation: acc.homo > 0,
        homopolymer_violations: acc.homo,
        max_run: acc.max_run,
        length_violation: acc.length > 0,
        length_violations: acc.length,
        hairpins: acc.hairpin,
        hairpin_ratio: acc.hairpin as f64 / n,
        average_score: total_score as f64 / n,
        score_histogram: acc.hist,
    })
}

impl fmt::Display for FeasibilityReport {
    /// Two-column table: rule, result.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes_no = |b: bool| if b { "Yes" } else { "No" };
        let rows = [
            ("Strands", self.strands.to_string()),
            ("GC content", format!("{:.2}%", self.mean_gc * 100.0)),
            ("Long homopolymer violation", yes_no(self.homopolymer_violation).to_string()),
            ("Long DNA strand length", yes_no(self.length_violation).to_string()),
            ("Hairpin ratio", format!("{:.4}", self.hairpin_ratio)),
            ("Average score per strand", format!("{:.4}", self.average_score)),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            writeln!(f, "{k:<width$}  {v}")?;
        }
        Ok(())
    }
}
