//! Command-line front end for the surreals kernel.
//!
//! The library half of the `surreals` binary: an expression language over
//! surreal numbers ([`expr`]), its evaluator ([`eval`]), and κ-iterate
//! tables ([`table`]). The binary wires these to subcommands for evaluating
//! expressions, rendering sign sequences and normal forms, exploring the
//! κ/ι/ε maps, and running the kernel's differential-verification suites.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod eval;
pub mod expr;
pub mod table;
