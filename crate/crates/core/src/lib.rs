//! Exact arithmetic for free Novikov and pre-Lie algebras.
//!
//! The crate provides:
//!
//! - the enumerative substrate (partitions, Catalan words, subexceedent
//!   functions, Lehmer codes, tableaux, set partitions) in [`combinatorics`];
//! - rooted trees and the free pre-Lie algebra in [`trees`];
//! - the free Novikov algebra in its derivation realization in [`novikov`];
//! - the enveloping Hopf algebra, its PBW maps and canonical projections in
//!   [`enveloping`];
//! - the pre-Lie exponential, logarithm and flow expansions in [`explogflow`];
//! - a concrete differential-operator backend over Q\[u\] in [`diffop`];
//! - named cross-verification suites in [`checks`].
//!
//! Every quantity is exact: integers are arbitrary precision and scalars are
//! rationals. All values are immutable and all functions pure, except for the
//! explicitly session-confined memo tables of [`explogflow::FlowTables`].

pub mod arith;
pub mod checks;
pub mod combinatorics;
pub mod diffop;
pub mod enveloping;
pub mod explogflow;
pub mod novikov;
pub mod trees;

pub use arith::{Int, Rat};
