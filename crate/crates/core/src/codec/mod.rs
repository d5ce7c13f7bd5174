//! Code tables and their encoders/decoders: the 2bit-code, the four
//! unbalanced xx-codes, and the Church / rotating-ternary / fixed-rate
//! baselines.

mod church;
mod goldman;
mod rotating;
mod table;

pub use church::{blawat_density, church_decode, church_encode};
pub use goldman::{byte_to_trits, goldman_decode, goldman_encode, goldman_len, MEAN_TRITS_PER_BYTE};
pub use rotating::{
    decode_with, encode_with, two_bit_decode, two_bit_encode, xx_decode, xx_density, xx_encode,
};
pub use table::{Emission, RotatingTable, SchemeId, PAIR_OFFSET, TABLE_VERSION, TWO_BIT_OFFSETS};
