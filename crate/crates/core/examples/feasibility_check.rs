//! Score strands against the design rules and print a corpus report.
//!
//! ```not_rust
//! cargo run --release --example feasibility_check
//! ```

use dpdna::config::SystemConfig;
use dpdna::corpus;
use dpdna::feasibility::{corpus_report, detect_hairpin, score_strand, RuleSet};
use dpdna::nucleotide::DnaSeq;
use dpdna::pipeline::encode_bytes;

fn main() -> dpdna::Result<()> {
    let rules = RuleSet::default();

    let crafted: DnaSeq = format!("AAAAA{}{}", "CCA".repeat(83), "CA".repeat(23)).parse()?;
    let s = score_strand(&crafted, &rules);
    println!("crafted 300 nt strand: GC {:.0}%, longest run {}, score {}", s.gc_content * 100.0, s.max_run, s.score());

    let stem: DnaSeq = "ACGTACTTTGTACGT".parse()?;
    println!("{stem}: hairpin with stem 6 = {}", detect_hairpin(&stem, 6, 3));

    for cap in [150, 300] {
        let cfg = SystemConfig::default().with_cap(cap);
        let out = encode_bytes(&corpus::mixed(300_000, 7), "mixed", &cfg)?;
        println!("\ncap {cap} nt, stem >= {} nt, loop >= {} nt", rules.stem_min, rules.loop_min);
        print!("{}", corpus_report(&out.sequences(), &rules)?);
    }
    Ok(())
}
