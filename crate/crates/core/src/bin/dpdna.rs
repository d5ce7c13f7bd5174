//! Command-line front end.
//!
//! Exit codes: 0 success, 2 I/O, 3 configuration or manifest, 4 data integrity.

use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use dpdna::codec::SchemeId;
use dpdna::config::{SchemeMask, SystemConfig};
use dpdna::fasta::{read_fasta, read_primers, write_strands};
use dpdna::feasibility::{corpus_report, RuleSet};
use dpdna::pipeline::{
    baseline_compare, decode_strands, density_report, encode_bytes, encode_bytes_audited, length_sweep,
    pattern_report, Manifest,
};

const CONFIG_ENV: &str = "DPDNA_CONFIG";

#[derive(Parser)]
#[command(name = "dpdna", version, about = "Pattern-aware DNA storage encoder")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// JSON SystemConfig to start from (default: $DPDNA_CONFIG, then built-ins)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Strand length cap in nt, primers included
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Longest homopolymer allowed for the 2bit-code (2 or 3)
    #[arg(long, global = true)]
    homo: Option<usize>,
    /// File holding the forward and reverse primer
    #[arg(long, global = true)]
    primers: Option<PathBuf>,
    #[arg(long, global = true)]
    index_bits: Option<u32>,
    #[arg(long, global = true)]
    ecc_ratio: Option<f64>,
    /// all, dpac-only, 11-only, no-vl, or a list such as 2bit,11,vl
    #[arg(long, global = true)]
    scheme_mask: Option<SchemeMask>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write one JSON line per strand describing the code choice
    #[arg(long, global = true)]
    audit: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Fasta,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a file into strands plus a manifest
    Encode {
        input: PathBuf,
        /// Strand file (default: <input>.fasta)
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Manifest file (default: <input>.manifest.json)
        #[arg(short, long)]
        manifest: Option<PathBuf>,
    },
    /// Rebuild a file from strands and its manifest
    Decode {
        strands: PathBuf,
        manifest: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Pattern-ratio histogram of a file's segments
    Analyze {
        input: PathBuf,
        #[arg(long, default_value_t = 300)]
        segment_bits: usize,
        /// Also print the five code tables
        #[arg(long)]
        tables: bool,
    },
    /// Design-rule report for a strand file
    Check { strands: PathBuf },
    /// Compare densities against the baselines
    Bench { input: PathBuf },
    /// Densities across strand length caps
    Sweep {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "100,150,200,300,400,500,600,700")]
        caps: Vec<usize>,
    },
}

fn config_error(msg: impl Into<String>) -> anyhow::Error {
    dpdna::Error::Config(msg.into()).into()
}

fn build_config(g: &Global) -> Result<SystemConfig> {
    let path = g.config.clone().or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let mut cfg = match path {
        Some(p) => {
            let text = fs::read_to_string(&p).with_context(|| format!("reading config {}", p.display()))?;
            serde_json::from_str(&text).map_err(|e| config_error(format!("config {}: {e}", p.display())))?
        }
        None => SystemConfig::default(),
    };
    if let Some(v) = g.cap {
        cfg.strand_cap_nt = v;
    }
    if let Some(v) = g.homo {
        cfg.homo_max_run = v;
    }
    if let Some(v) = g.index_bits {
        cfg.index_bits = v;
    }
    if let Some(v) = g.ecc_ratio {
        cfg.ecc_overhead_ratio = v;
    }
    if let Some(v) = g.scheme_mask {
        cfg.schemes = v;
    }
    if let Some(v) = g.seed {
        cfg.seed = v;
    }
    if let Some(p) = &g.primers {
        let text = fs::read_to_string(p).with_context(|| format!("reading primers {}", p.display()))?;
        (cfg.primer_forward, cfg.primer_reverse) = read_primers(&text)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Writes through a sibling temp file and renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn print_json<T: serde::Serialize>(out: &mut impl Write, v: &T) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let cfg = build_config(&cli.global)?;
    let g = &cli.global;
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Encode { input, output, manifest } => {
            let data = read_input(&input)?;
            let name = input.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let encoded =
                if g.audit.is_some() { encode_bytes_audited(&data, &name, &cfg)? } else { encode_bytes(&data, &name, &cfg)? };
            let mut fasta = Vec::new();
            write_strands(&mut fasta, &encoded.strands)?;
            write_atomic(&output.unwrap_or_else(|| with_suffix(&input, ".fasta")), &fasta)?;
            let manifest_path = manifest.unwrap_or_else(|| with_suffix(&input, ".manifest.json"));
            write_atomic(&manifest_path, serde_json::to_string_pretty(&encoded.manifest)?.as_bytes())?;
            if let Some(path) = &g.audit {
                let mut lines = Vec::new();
                for rec in &encoded.audit {
                    serde_json::to_writer(&mut lines, rec)?;
                    lines.push(b'\n');
                }
                write_atomic(path, &lines)?;
            }
            match (g.format, density_report(&encoded.strands)) {
                (Format::Fasta, _) => out.write_all(&fasta)?,
                (Format::Json, Ok(r)) => print_json(&mut out, &r)?,
                (Format::Table, Ok(r)) => writeln!(out, "{r}")?,
                (_, Err(_)) => writeln!(out, "0 strands (empty input)")?,
            }
        }
        Command::Decode { strands, manifest, output } => {
            let text = fs::read_to_string(&manifest).with_context(|| format!("reading {}", manifest.display()))?;
            let manifest: Manifest = serde_json::from_str(&text).map_err(dpdna::Error::from)?;
            let file = fs::File::open(&strands).with_context(|| format!("reading {}", strands.display()))?;
            let records = read_fasta(BufReader::new(file))?;
            let bytes = decode_strands(&records, &manifest)?;
            write_atomic(&output, &bytes)?;
            if g.format == Format::Json {
                print_json(&mut out, &serde_json::json!({ "bytes": bytes.len(), "strands": records.len() }))?;
            } else {
                writeln!(out, "decoded {} bytes from {} strands", bytes.len(), records.len())?;
            }
        }
        Command::Analyze { input, segment_bits, tables } => {
            let report = pattern_report(&read_input(&input)?, segment_bits)?;
            if g.format == Format::Json {
                print_json(&mut out, &report)?;
            } else {
                write!(out, "{report}")?;
            }
            if tables {
                for scheme in SchemeId::DPDNA {
                    writeln!(out, "\n{}", scheme.table().expect("rotating scheme").render())?;
                }
            }
        }
        Command::Check { strands } => {
            let file = fs::File::open(&strands).with_context(|| format!("reading {}", strands.display()))?;
            let records = read_fasta(BufReader::new(file))?;
            let report = corpus_report(&records, &RuleSet::default())?;
            if g.format == Format::Json {
                print_json(&mut out, &report)?;
            } else {
                write!(out, "{report}")?;
            }
        }
        Command::Bench { input } => {
            let table = baseline_compare(&read_input(&input)?, &cfg)?;
            if g.format == Format::Json {
                print_json(&mut out, &table)?;
            } else {
                write!(out, "{table}")?;
            }
        }
        Command::Sweep { input, caps } => {
            let rows = length_sweep(&read_input(&input)?, &cfg, &caps)?;
            if g.format == Format::Json {
                print_json(&mut out, &rows)?;
            } else {
                writeln!(out, "{:>6} {:>8} {:>9} {:>9} {:>8}", "cap", "segment", "payload", "overall", "strands")?;
                for r in rows {
                    writeln!(
                        out,
                        "{:>6} {:>8} {:>9.4} {:>9.4} {:>8}",
                        r.cap, r.segment_bits, r.report.payload_density, r.report.overall_density, r.report.strands
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<dpdna::Error>() {
            return e.exit_code() as u8;
        }
        if cause.is::<io::Error>() {
            return 2;
        }
        if cause.is::<serde_json::Error>() {
            return 3;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(dpdna::Error::CorruptStrands(failures)) = e.downcast_ref::<dpdna::Error>() {
                for f in failures {
                    match f.index {
                        Some(i) => eprintln!("  strand #{} (index {i}): {}", f.position, f.reason),
                        None => eprintln!("  strand #{}: {}", f.position, f.reason),
                    }
                }
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
