//! Decoders for Reed-Muller codes evaluated on arbitrary product sets S^m,
//! built on Reed-Solomon unique, soft and list decoding.

pub mod acceptance;
pub mod error;
pub mod field;
pub mod harness;
pub mod io;
pub mod multipoly;
pub mod poly;
pub mod rational;
pub mod rm;
pub mod rng;
pub mod rs;
pub mod weighted;

pub use error::{Error, Result};
pub use field::{Fe, PrimeField};
pub use multipoly::{grid_coords, grid_index, EvalSet, MultiPoly};
pub use poly::{interpolate, poly_eval, UniPoly};
pub use rational::{Distance, Rational};
pub use rng::SeededRng;
pub use weighted::{hdist, wdist, wdist_symbol, GridWord, Uncertainty, WeightedGridWord, WeightedSymbol};
pub use rm::{
    decode_bivariate, decode_bivariate_fast, decode_fast, decode_soft_fast, decode_soft_recursive, peel_coefficients,
    rm_encode, CodeParams, DecodeStats, FastParams, Probe, RmDecodeOutcome,
};
pub use rs::{Decoded, FailureReason, RsCode, RsContext};
