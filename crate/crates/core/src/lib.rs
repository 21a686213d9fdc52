//! A laboratory for a second-order calculus of proofs and refutations:
//! typing, reduction, intuitionistic fragment, natural-deduction
//! embeddings, canonicity and Böhm–Berarducci encodings.
//!
//! ```
//! use prk_lab::reduction::{normalize, Strategy, DEFAULT_FUEL};
//! use prk_lab::surface::{parse_mty, parse_term};
//! use prk_lab::syntax::Context;
//! use prk_lab::typecheck::check;
//!
//! let t = parse_term("wlam+ (_ : a -> a ?-). lam+ (x : a ?+). x").unwrap();
//! let p = parse_mty("a -> a ?+").unwrap();
//! check(&Context::new(), &t, &p).unwrap();
//! let trace = normalize(&t, Strategy::LeftmostOutermost, DEFAULT_FUEL, false);
//! assert!(trace.is_empty());
//! ```

pub mod syntax;
pub mod typecheck;
pub mod intuitionistic;
pub mod reduction;
pub mod embeddings;
pub mod canonicity;
pub mod encodings;
pub mod surface;
pub mod generate;
pub mod golden;
pub mod batch;
pub mod selftest;
pub mod cli;
