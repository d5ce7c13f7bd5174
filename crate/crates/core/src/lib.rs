//! Pattern-aware DNA storage encoding.
//!
//! Data is cut into segments, and each segment is written with whichever
//! rotating code stores it in the fewest nucleotides: the 2 bits/nt
//! 2bit-code when its homopolymer limit allows, otherwise the unbalanced
//! xx-code whose doubled pattern is rarest in the segment. Strands carry
//! primers, a 2-nt scheme field, an index, the payload and a checksum filler,
//! and decode independently of each other.
//!
//! Start with [`pipeline::encode_bytes`] and [`pipeline::decode_strands`];
//! the `examples/` directory has one runnable program per capability.

pub mod codec;
pub mod config;
pub mod corpus;
pub mod error;
pub mod fasta;
pub mod feasibility;
pub mod nucleotide;
pub mod pipeline;
pub mod selector;
pub mod strand;

pub use error::{Error, Result};
