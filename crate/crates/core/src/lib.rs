//! Coprime bivariate bicycle (BB) codes and their syndrome codes.
//!
//! The crate builds BB quantum LDPC codes in the univariate ring
//! `F2[z]/(z^N - 1)`, derives the cyclic syndrome code generated by
//! `g(z) = gcd(a, b, z^N - 1)`, bounds its distance, and simulates one-round
//! and R-round decoding under phenomenological noise.
//!
//! Module map:
//!
//! * [`galois`]: binary polynomials and `GF(2^m)` arithmetic.
//! * [`gf2la`]: bit-packed dense linear algebra over GF(2).
//! * [`bbcode`]: code construction and the redundancy/rate identities.
//! * [`syndist`]: syndrome-code distance bounds and bounded-distance failure rates.
//! * [`decode`]: belief propagation, OSD, lookup and majority-vote decoders.
//! * [`simkit`]: Monte Carlo pipelines, adjudication and aggregation.
//! * [`cli`]: experiment specs and the command implementations behind the binary.

pub mod bbcode;
pub mod cli;
pub mod decode;
mod error;
pub mod galois;
pub mod gf2la;
pub mod simkit;
pub mod syndist;

pub use bbcode::{BbCode, CodeReport, CodeSpec, Sector};
pub use error::{Error, Result};
pub use galois::{FieldContext, PolyF2};
pub use gf2la::{BitVector, GF2Matrix};
pub use syndist::SyndromeReport;
