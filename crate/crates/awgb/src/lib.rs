//! Exact symbolic engine for the higher-rank Askey-Wilson presentation A(n)
//! and its connected-subset form aw(n).
//!
//! The crate provides, bottom up:
//! - [`coeff`]: the scalar field Q(q) with exact rational-function arithmetic;
//! - [`ncpoly`]: the free associative algebra over Q(q) on an indexed
//!   generator alphabet (words, polynomials, commutators, q-commutators);
//! - [`presentation`]: the A(n) relation family R1-R3 plus the identity
//!   fixture catalog used by the verification suites;
//! - [`awside`]: the aw(n) relation family over connected-subset generators
//!   and the letterwise translations between the two presentations;
//! - [`ideal`]: degree-truncated two-sided ideal machinery — normal-form
//!   reduction, overlap completion, membership verdicts, an independent
//!   linear-span oracle, and a persistent rule-system cache;
//! - [`morphisms`]: the delta automorphism family, composition, and the
//!   homomorphism / inverse / braid verification batteries;
//! - [`parse`] and [`report`]: the expression mini-language and the JSON
//!   report types used by the CLI.

pub mod awside;
pub mod cli;
pub mod coeff;
pub mod ideal;
pub mod morphisms;
pub mod ncpoly;
pub mod parse;
pub mod presentation;
pub mod report;
