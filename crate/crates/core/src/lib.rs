//! Search, extraction and certification of monochromatic exponential
//! patterns ({x,y,x^y}, {x,y,x·nʸ}, Hindman towers, FS/FP, exponential
//! equations) in finite colorings of an initial segment [1..N].
//!
//! The crate is `no_std`-compatible (requires `alloc`); everything that
//! touches the filesystem, subprocesses or a terminal lives in the
//! companion `ramsey-exp-cli` crate.
//!
//! Module map:
//!
//! * [`numbers`] — exact big integers, certified log-domain brackets for
//!   tower-scale values, integer polynomials.
//! * [`colorings`] — colorings of [1..N], window sets, the log-base
//!   induced coloring.
//! * [`patterns`] — finders and verifiers for every pattern family.
//! * [`largeness`] — finite-window thick/syndetic/piecewise-syndetic/IP_r
//!   testers with certificates.
//! * [`extractors`] — constructive extraction procedures (polynomial
//!   return sets, pigeonhole thresholds, the piecewise-syndetic
//!   extraction, polynomial pattern families).
//! * [`counterexample`] — the doubly-thick interval tower that avoids
//!   exponential triples, with mechanically certified inequalities.
//! * [`satgen`] — CNF encodings of pattern-avoiding colorings, threshold
//!   search, verdict caching, and exhaustive search oracles.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod colorings;
pub mod counterexample;
pub mod extractors;
pub mod largeness;
pub mod numbers;
pub mod patterns;
pub mod satgen;

pub use numbers::{Polynomial, ScaleValue, SvOrdering, DEFAULT_BIT_BUDGET};
