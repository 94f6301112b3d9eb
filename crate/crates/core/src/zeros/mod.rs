//! L-function evaluation on the critical line, zero finding, and zero sets.

pub mod evaluator;
pub mod file;
pub mod scan;
pub mod special;
pub mod zeroset;

pub use evaluator::{CriticalLineEvaluator, LFunction, DEFAULT_PRECISION};
pub use file::{
    format_zero_file, load_zero_file, parse_plain_ordinates, parse_zero_file, save_zero_file,
    GAMMA_DECIMALS,
};
pub use scan::{find_zeros, ZeroScan};
pub use zeroset::{Component, Ordinate, ZeroEntry, ZeroSet};
