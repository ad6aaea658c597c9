//! Exact, desk-scale computation with surreal numbers.
//!
//! The crate represents surreal numbers two ways — as transfinite sign
//! sequences ([`signseq::SignSeq`]) and as Conway normal forms
//! ([`normalform::NormalForm`]) — and implements the maps that connect them:
//! the ω-map, the ε-map, exp/log on suitable domains, and the ι- and κ-maps
//! onto the κ-numbers `κ_a = ω^{ω^{ι_a}}`.
//!
//! Everything is exact: ordinal lengths live in a Cantor-normal-form notation
//! with ε-atoms ([`ordinal::Ordinal`]), finite values are dyadic rationals or
//! arbitrary-precision rationals, and no floating point appears anywhere.
//!
//! Each construction is implemented twice wherever the theory allows it: once
//! by its recursive cut definition and once by a closed sign-sequence formula.
//! The [`verify`] module runs the two routes against each other; a mismatch is
//! reported as data (a failed check), never hidden.
//!
//! Feature flags:
//! - `parallel` (default): run verification suites on a rayon thread pool;
//!   disabling it falls back to equivalent sequential drivers.
//! - `serde`: `Serialize` implementations for report types, used by the CLI's
//!   `--json` output.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

mod error;

pub mod cuts;
pub mod dyadic;
pub mod explog;
pub mod kappa;
pub mod normalform;
pub mod ordinal;
pub mod signseq;
pub mod verify;

pub use error::{Error, Result};
