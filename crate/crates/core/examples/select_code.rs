//! Walk through code selection for a few hand-made segments, including the
//! early-cut comparison that trades a shorter 2bit-code strand against a
//! full-length xx-code strand.
//!
//! ```not_rust
//! cargo run --example select_code
//! ```

use dpdna::config::{SchemeMask, SystemConfig};
use dpdna::nucleotide::{pattern_histogram, BitSegment};
use dpdna::selector::{choose_code_at, evaluate_vl, max_feasible_2bit_prefix, select_unbalanced, RunState};

fn show(label: &str, seg: &BitSegment, cfg: &SystemConfig) -> dpdna::Result<()> {
    let start = cfg.start_nt();
    let h = pattern_histogram(seg)?;
    let sel = choose_code_at(seg, RunState::start(start), cfg, |_| true)?;
    println!("{label}: {} bits, counts {:?}", seg.len(), h.counts());
    println!("  rarest pattern       {}", select_unbalanced(&h));
    println!("  2bit feasible prefix {} bits (Homo-{})", max_feasible_2bit_prefix(seg, start, cfg.homo_max_run), cfg.homo_max_run);
    if let Some(vl) = sel.vl {
        println!("  early cut M={:<4} lhs {:.4}  rhs {:.4}  -> {}", vl.m, vl.lhs, vl.rhs, if vl.take_high_density { "cut" } else { "keep" });
    }
    let c = sel.choice;
    println!("  chosen {} for {} bits in {} nt ({:.3} bits/nt)\n", c.scheme, c.bits_used, c.payload_nt, c.epsilon);
    Ok(())
}

fn main() -> dpdna::Result<()> {
    let homo3 = SystemConfig::default().with_cap(300);
    let homo2 = homo3.clone().with_homo(2);

    show("all zeros", &"0".repeat(300).parse()?, &homo3)?;
    show("all ones", &"1".repeat(300).parse()?, &homo3)?;
    show("uniform, 2bit off", &"00011011".repeat(40).parse()?, &homo3.clone().with_schemes(SchemeMask::DPAC_ONLY))?;
    show("late run", &format!("{}{}", "00011011".repeat(15), "11111111").parse()?, &homo2)?;
    show("early run", &format!("{}{}", "111111", "00011011".repeat(36)).parse()?, &homo2)?;

    let d = evaluate_vl(300, 20, 1.6, 2.0, 58.0);
    println!("reference comparison L=300 M=20: lhs {:.4} rhs {:.4}", d.lhs, d.rhs);
    Ok(())
}
