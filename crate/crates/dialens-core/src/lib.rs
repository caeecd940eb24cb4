//! Gödel's Dialectica as an executable program transformation from a
//! simply typed λ-calculus into a target calculus with pairs, a monad and
//! a commutative monoid — together with the numeric reading under which
//! the counters compute reverse-mode gradients, and the concrete
//! categorical constructions (lenses, Dialectica categories, reverse
//! differential functors) with exact law checking.
//!
//! The crate is `no_std` (with `alloc`): everything here is pure symbolic
//! or exact/float arithmetic. IO, the CLI and file formats live in the
//! companion `dialens-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cat;
pub mod dialectica;
pub mod equations;
pub mod gen;
pub mod numeric;
pub mod parse;
pub mod pretty;
pub mod prims;
pub mod source;
pub mod suites;
pub mod target;
pub mod typecheck;
